//! Space-parameterized filter classes, the reflector `Adh_D`, the coreflector
//! `Base_D`, accessibility and meshable-refinable filters.
//!
//! On a finite set the principal, countably based, countably deep, sequential
//! and unrestricted classes all consist of every kernel. They are kept as
//! distinct tags so that reports name what the statement being checked names,
//! and the collapse is asserted by the harness rather than assumed here.
//! `clF1` is the one class that depends on the space.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::Mutex;

use crate::error::{Error, Result};
use crate::family::{FamilyOfSets, Filter, GroundSet, ProductIndex, Relation, Subset};
use crate::space::{Convergence, FiniteSpace, LimitTable};

/// Default node bound for contour classes.
pub const CONTOUR_NODES: usize = 7;

/// A set of kernels over an `n`-point ground, as a bitset indexed by mask.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KernelSet {
    n: u8,
    words: Vec<u64>,
}

impl KernelSet {
    pub fn empty(n: usize) -> Self {
        let len = (1usize << n).div_ceil(64);
        KernelSet { n: n as u8, words: vec![0; len] }
    }

    pub fn all(n: usize) -> Self {
        let mut s = Self::empty(n);
        for k in Subset::all(n) {
            s.insert(k);
        }
        s
    }

    pub fn degenerate_only(n: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(Subset::empty(n));
        s
    }

    pub fn from_kernels<I: IntoIterator<Item = Subset>>(n: usize, kernels: I) -> Self {
        let mut s = Self::empty(n);
        for k in kernels {
            s.insert(k);
        }
        s
    }

    pub fn ground_size(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn insert(&mut self, k: Subset) {
        let i = k.bits() as usize;
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, k: Subset) -> bool {
        let i = k.bits() as usize;
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn contains_filter(&self, f: Filter) -> bool {
        self.contains(f.kernel())
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset_of(&self, other: &KernelSet) -> bool {
        self.n == other.n && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &KernelSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Members in increasing bitmask order.
    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        let n = self.n as usize;
        self.words.iter().enumerate().flat_map(move |(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(Subset::raw(n, (w * 64 + b) as u32))
            })
        })
    }

    pub fn filters(&self) -> impl Iterator<Item = Filter> + '_ {
        self.iter().map(Filter::principal)
    }

    /// `{a ∪ b : a ∈ self, b ∈ other}`.
    fn sumset(&self, other: &KernelSet) -> KernelSet {
        let mut out = KernelSet::empty(self.n as usize);
        for a in self.iter() {
            for b in other.iter() {
                out.insert(a.union(b));
            }
        }
        out
    }

    /// Closed under unions of kernels, i.e. under filter meets.
    pub fn is_meet_closed(&self) -> bool {
        let v: Vec<Subset> = self.iter().collect();
        v.iter().all(|a| v.iter().all(|b| self.contains(a.union(*b))))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FilterClass {
    /// Only the degenerate filter.
    Degenerate,
    F1,
    Fomega,
    F,
    FwedgeOmega,
    ClF1,
    Seq,
    MeshRefine(Box<FilterClass>, Box<FilterClass>),
    Contour(Box<FilterClass>),
}

impl FilterClass {
    pub fn mesh_refine(j: FilterClass, d: FilterClass) -> Self {
        FilterClass::MeshRefine(Box::new(j), Box::new(d))
    }

    pub fn contour(d: FilterClass) -> Self {
        FilterClass::Contour(Box::new(d))
    }

    /// Tags with no space dependence beyond the ground size.
    pub fn is_all_kernels(&self) -> bool {
        matches!(
            self,
            FilterClass::F1 | FilterClass::Fomega | FilterClass::F | FilterClass::FwedgeOmega | FilterClass::Seq
        )
    }

    /// The classes the harness iterates over by default.
    pub fn registry() -> Vec<FilterClass> {
        use FilterClass::*;
        vec![
            F1,
            Fomega,
            F,
            FwedgeOmega,
            ClF1,
            Seq,
            Degenerate,
            FilterClass::mesh_refine(F1, ClF1),
            FilterClass::mesh_refine(ClF1, ClF1),
            FilterClass::mesh_refine(F1, Degenerate),
            FilterClass::contour(ClF1),
        ]
    }

    /// True when the class collapses to a finite-scale neighbour and has no
    /// separating instance here.
    pub fn collapses_at_finite_scale(&self) -> bool {
        matches!(self, FilterClass::MeshRefine(..)) || self.is_all_kernels() && *self != FilterClass::F1
    }

    pub fn members(&self, space: &FiniteSpace) -> KernelSet {
        let n = space.n();
        match self {
            FilterClass::Degenerate => KernelSet::degenerate_only(n),
            c if c.is_all_kernels() => KernelSet::all(n),
            FilterClass::ClF1 => KernelSet::from_kernels(n, space.closed_sets()),
            FilterClass::MeshRefine(j, d) => {
                let jm = j.members(space);
                let dm = d.members(space);
                let mut out = KernelSet::empty(n);
                for k in Subset::all(n) {
                    if is_mesh_refinable_in(Filter::principal(k), &jm, &dm) {
                        out.insert(k);
                    }
                }
                out
            }
            FilterClass::Contour(d) => int_class_members(d, n, CONTOUR_NODES),
            _ => unreachable!(),
        }
    }

    /// `adh♮D ⊆ D` in `space`. The image family is built member by member.
    pub fn adh_stable(&self, space: &FiniteSpace) -> bool {
        self.adh_stability_refuter(space).is_none()
    }

    pub fn adh_stability_refuter(&self, space: &FiniteSpace) -> Option<Filter> {
        let m = self.members(space);
        let found = m.filters().find(|d| {
            let img = d.as_family().op_image(|a| space.adh_set(a));
            match img.as_filter() {
                Some(g) => !m.contains_filter(g),
                None => true,
            }
        });
        found
    }
}

impl fmt::Display for FilterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterClass::Degenerate => f.write_str("deg"),
            FilterClass::F1 => f.write_str("F1"),
            FilterClass::Fomega => f.write_str("Fw"),
            FilterClass::F => f.write_str("F"),
            FilterClass::FwedgeOmega => f.write_str("Fdw"),
            FilterClass::ClF1 => f.write_str("clF1"),
            FilterClass::Seq => f.write_str("E"),
            FilterClass::MeshRefine(j, d) => write!(f, "mr({j},{d})"),
            FilterClass::Contour(d) => write!(f, "int({d})"),
        }
    }
}

impl FromStr for FilterClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::ClassSyntax(s.to_string());
        match s {
            "deg" => return Ok(FilterClass::Degenerate),
            "F1" => return Ok(FilterClass::F1),
            "Fw" => return Ok(FilterClass::Fomega),
            "F" => return Ok(FilterClass::F),
            "Fdw" => return Ok(FilterClass::FwedgeOmega),
            "clF1" => return Ok(FilterClass::ClF1),
            "E" => return Ok(FilterClass::Seq),
            _ => {}
        }
        if let Some(inner) = s.strip_prefix("int(").and_then(|r| r.strip_suffix(')')) {
            return Ok(FilterClass::contour(inner.parse().map_err(|_| err())?));
        }
        if let Some(inner) = s.strip_prefix("mr(").and_then(|r| r.strip_suffix(')')) {
            let mut depth = 0usize;
            for (i, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth = depth.checked_sub(1).ok_or_else(err)?,
                    ',' if depth == 0 => {
                        let j = inner[..i].parse().map_err(|_| err())?;
                        let d = inner[i + 1..].parse().map_err(|_| err())?;
                        return Ok(FilterClass::mesh_refine(j, d));
                    }
                    _ => {}
                }
            }
        }
        Err(err())
    }
}

type CacheKey = (FilterClass, Vec<u32>);

/// Memoized class membership keyed by class and point-limit masks.
#[derive(Default)]
pub struct ClassCache {
    map: Mutex<HashMap<CacheKey, Arc<KernelSet>>>,
}

static GLOBAL: Lazy<ClassCache> = Lazy::new(ClassCache::default);

impl ClassCache {
    pub fn global() -> &'static ClassCache {
        &GLOBAL
    }

    pub fn members(&self, class: &FilterClass, space: &FiniteSpace) -> Arc<KernelSet> {
        let key = (class.clone(), space.masks());
        if let Some(hit) = self.map.lock().get(&key) {
            return hit.clone();
        }
        let computed = Arc::new(class.members(space));
        self.map.lock().entry(key).or_insert(computed).clone()
    }

    pub fn len(&self) -> usize {
        self.map.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Kernels achievable as contours of cascades with at most `max_nodes` nodes
/// whose node filters belong to `node_class`, labeled into an `n`-point set.
///
/// The node filter of a node with `k` children is judged by `node_class` on the
/// discrete space over its `k` children. A subtree's contour kernel is the
/// union of the contour kernels of the children in the node's kernel, so the
/// achievable sets per subtree size are computed bottom-up.
pub fn int_class_members(node_class: &FilterClass, n: usize, max_nodes: usize) -> KernelSet {
    let max_nodes = max_nodes.min(crate::cascade::MAX_NODES);
    let mut by_size: Vec<KernelSet> = vec![KernelSet::empty(n); max_nodes + 1];
    by_size[1] = KernelSet::from_kernels(n, (0..n).map(|x| Subset::singleton(n, x)));
    let mut node_members: HashMap<usize, KernelSet> = HashMap::new();
    let mut out = KernelSet::empty(n);
    for size in 2..=max_nodes {
        let mut acc = KernelSet::empty(n);
        for parts in compositions(size - 1) {
            let k = parts.len();
            let allowed = node_members
                .entry(k)
                .or_insert_with(|| {
                    let ground = Arc::new(GroundSet::numbered(k).expect("child count within cap"));
                    node_class.members(&FiniteSpace::discrete(ground))
                })
                .clone();
            for kernel in allowed.iter() {
                let mut reach = KernelSet::degenerate_only(n);
                for i in kernel.iter() {
                    reach = reach.sumset(&by_size[parts[i]]);
                }
                acc.union_with(&reach);
            }
        }
        out.union_with(&acc);
        by_size[size] = acc;
    }
    out
}

/// Ordered compositions of `total` into positive parts.
pub(crate) fn compositions(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `F ∈ (J/D)_{#≥}`: every `J`-filter meshing `F` meshes some `D`-filter finer than `F`.
pub fn is_mesh_refinable_in(f: Filter, j: &KernelSet, d: &KernelSet) -> bool {
    mesh_refine_refuter(f, j, d).is_none()
}

/// The first `J`-filter for which no refining witness exists.
pub fn mesh_refine_refuter(f: Filter, j: &KernelSet, d: &KernelSet) -> Option<Filter> {
    j.filters()
        .filter(|jf| jf.mesh(f))
        .find(|&jf| !d.filters().any(|df| df.mesh(jf) && df.finer(f)))
}

pub fn is_mesh_refinable(space: &FiniteSpace, f: Filter, j: &FilterClass, d: &FilterClass) -> bool {
    let cache = ClassCache::global();
    is_mesh_refinable_in(f, &cache.members(j, space), &cache.members(d, space))
}

/// Point limits of `Adh_D` over any convergence:
/// `L'(x) = ⋂ {adh D : D ∈ D, x ∈ ker D}`, with the empty intersection equal to `X`.
/// This is exactly the point form: `D # A↑` iff some `a ∈ A` lies in `ker D`.
pub fn adh_point_limits<C: Convergence>(conv: &C, members: &KernelSet) -> Vec<Subset> {
    let n = conv.size();
    let mut lims = vec![Subset::full(n); n];
    for d in members.iter() {
        let a = conv.adh_kernel(d);
        for x in d.iter() {
            lims[x] = lims[x].intersection(a);
        }
    }
    lims
}

pub fn adh_reflector(space: &FiniteSpace, class: &FilterClass) -> Result<FiniteSpace> {
    let members = ClassCache::global().members(class, space);
    adh_reflector_with(space, &members)
}

pub fn adh_reflector_with(space: &FiniteSpace, members: &KernelSet) -> Result<FiniteSpace> {
    FiniteSpace::new(space.ground().clone(), adh_point_limits(space, members))
        .map_err(|e| Error::Internal(format!("Adh output not centered: {e}")))
}

/// `lim_{Base_D} F = ⋃ {lim D : D ∈ D, D ≤ F}` on every kernel.
pub fn base_table<C: Convergence>(conv: &C, members: &KernelSet) -> LimitTable {
    let n = conv.size();
    let lims: Vec<(Subset, Subset)> = members.iter().map(|d| (d, conv.lim_kernel(d))).collect();
    LimitTable::from_fn(n, |k| {
        lims.iter()
            .filter(|(d, _)| k.is_subset_of(*d))
            .fold(Subset::empty(n), |acc, (_, l)| acc.union(*l))
    })
}

/// `Base_D ξ` as a space: point limits of the raw table, with each point
/// added to its own limit set so that the result is a convergence. For classes
/// containing every principal filter the centering adds nothing.
pub fn base_coreflector(space: &FiniteSpace, class: &FilterClass) -> Result<FiniteSpace> {
    let members = ClassCache::global().members(class, space);
    base_coreflector_with(space, &members)
}

pub fn base_coreflector_with(space: &FiniteSpace, members: &KernelSet) -> Result<FiniteSpace> {
    let n = space.n();
    let raw = base_table(space, members);
    let pointlim = (0..n).map(|x| raw.lim_kernel(Subset::singleton(n, x)).with(x)).collect();
    FiniteSpace::new(space.ground().clone(), pointlim)
}

/// Point limits of `Adh_J Base_D ξ`, every class evaluated at `ξ`.
pub fn adh_base_limits(space: &FiniteSpace, j: &KernelSet, d: &KernelSet) -> Vec<Subset> {
    adh_point_limits(&base_table(space, d), j)
}

/// `(J/D)`-accessibility: `adh_ξ J ⊆ adh_{Base_D ξ} J` for every `J`-filter.
/// Returns the first refuting `J`. The equivalent form `ξ ≥ Adh_J Base_D ξ`
/// is computed alongside and a disagreement is an internal error.
pub fn accessibility_refuter(space: &FiniteSpace, j: &KernelSet, d: &KernelSet) -> Result<Option<Filter>> {
    let base = base_table(space, d);
    let refuter = j.filters().find(|jf| !space.adh(*jf).is_subset_of(base.adh_kernel(jf.kernel())));
    let via_adh = adh_point_limits(&base, j);
    let finer = space.pointlims().iter().zip(&via_adh).all(|(a, b)| a.is_subset_of(*b));
    if finer != refuter.is_none() {
        return Err(Error::Internal(format!(
            "accessibility characterizations disagree on {}",
            space.render()
        )));
    }
    Ok(refuter)
}

pub fn is_accessible(space: &FiniteSpace, j: &FilterClass, d: &FilterClass) -> Result<bool> {
    let cache = ClassCache::global();
    Ok(accessibility_refuter(space, &cache.members(j, space), &cache.members(d, space))?.is_none())
}

/// A counterexample to `J` being `D`-composable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionRefuter {
    pub domain: FiniteSpace,
    pub codomain: FiniteSpace,
    pub h: Filter,
    pub f: Filter,
    pub image: Filter,
}

/// `J` is `D`-composable up to `bound` points: for all spaces `ξ`, `τ` with at
/// most `bound` points, every `H ∈ D(ξ × τ)` and `F ∈ J(ξ)` give `HF ∈ J(τ)`.
pub fn composability_refuter(j: &FilterClass, d: &FilterClass, bound: usize) -> Result<Option<CompositionRefuter>> {
    for nx in 1..=bound {
        for ny in 1..=bound {
            let idx = ProductIndex::new(nx, ny)?;
            for xi in all_spaces(nx)? {
                for tau in all_spaces(ny)? {
                    let prod = xi.product(&tau)?;
                    let hm = d.members(&prod);
                    let jx = j.members(&xi);
                    let jy = j.members(&tau);
                    for h in hm.filters() {
                        let rel = Relation::from_product_set(idx, h.kernel())?;
                        for f in jx.filters() {
                            let image = rel.image(f);
                            if !jy.contains_filter(image) {
                                return Ok(Some(CompositionRefuter { domain: xi, codomain: tau, h, f, image }));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn is_composable(j: &FilterClass, d: &FilterClass, bound: usize) -> Result<bool> {
    Ok(composability_refuter(j, d, bound)?.is_none())
}

/// `F1`-composability, decided at the bound used throughout the crate.
pub fn is_f1_composable(class: &FilterClass) -> bool {
    static MEMO: Lazy<Mutex<HashMap<FilterClass, bool>>> = Lazy::new(Default::default);
    if let Some(&v) = MEMO.lock().get(class) {
        return v;
    }
    let v = is_composable(class, &FilterClass::F1, 2).expect("bounded composability check");
    MEMO.lock().insert(class.clone(), v);
    v
}

/// All `2^(n(n-1))` convergences on the standard `n`-point ground, in
/// lexicographic order of the point-limit masks.
pub fn all_spaces(n: usize) -> Result<Vec<FiniteSpace>> {
    let ground = Arc::new(GroundSet::standard(n)?);
    let mut out = Vec::new();
    let choices: Vec<Vec<Subset>> = (0..n)
        .map(|x| {
            Subset::full(n)
                .difference(Subset::singleton(n, x))
                .subsets()
                .map(|s| s.with(x))
                .collect()
        })
        .collect();
    let mut idx = vec![0usize; n];
    loop {
        let pointlim = idx.iter().enumerate().map(|(x, &i)| choices[x][i]).collect();
        out.push(FiniteSpace::new(ground.clone(), pointlim)?);
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Family-level check that a class member list is what it claims: every
/// member's family is principal with that kernel.
pub fn members_as_families(members: &KernelSet) -> Vec<FamilyOfSets> {
    members.filters().map(Filter::as_family).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteSpace {
        FiniteSpace::from_masks(&[0b001, 0b011, 0b110]).unwrap()
    }

    fn s(idx: &[usize]) -> Subset {
        Subset::from_indices(3, idx.iter().copied()).unwrap()
    }

    #[test]
    fn clf1_on_s3() {
        let m = FilterClass::ClF1.members(&s3());
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![s(&[]), s(&[0]), s(&[0, 1]), s(&[0, 1, 2])]);
    }

    #[test]
    fn f1_on_two_points() {
        let sp = FiniteSpace::from_masks(&[0b01, 0b11]).unwrap();
        assert_eq!(FilterClass::F1.members(&sp).len(), 4);
    }

    #[test]
    fn contour_of_principal_is_principal() {
        assert_eq!(int_class_members(&FilterClass::F1, 3, 7), KernelSet::all(3));
        assert_eq!(int_class_members(&FilterClass::Degenerate, 3, 7), KernelSet::degenerate_only(3));
    }

    #[test]
    fn adh_clf1_on_s3() {
        let a = adh_reflector(&s3(), &FilterClass::ClF1).unwrap();
        assert_eq!(a.pointlim(2), s(&[0, 1, 2]));
        assert_eq!(adh_reflector(&s3(), &FilterClass::F1).unwrap(), s3());
        let deg = adh_reflector(&s3(), &FilterClass::Degenerate).unwrap();
        assert!(deg.pointlims().iter().all(|l| l.is_full()));
    }

    #[test]
    fn base_examples() {
        assert_eq!(base_coreflector(&s3(), &FilterClass::F1).unwrap(), s3());
        assert_eq!(base_coreflector(&s3(), &FilterClass::Seq).unwrap(), s3());
        let deg = base_coreflector(&s3(), &FilterClass::Degenerate).unwrap();
        assert_eq!(deg.masks(), vec![0b001, 0b010, 0b100]);
    }

    #[test]
    fn class_syntax_round_trips() {
        for c in FilterClass::registry() {
            assert_eq!(c.to_string().parse::<FilterClass>().unwrap(), c);
        }
        let nested: FilterClass = "mr(int(clF1),mr(F1,E))".parse().unwrap();
        assert_eq!(nested.to_string(), "mr(int(clF1),mr(F1,E))");
        assert!("mr(F1)".parse::<FilterClass>().is_err());
        assert!("G".parse::<FilterClass>().is_err());
    }

    #[test]
    fn composability() {
        assert!(is_composable(&FilterClass::F1, &FilterClass::F1, 2).unwrap());
        let r = composability_refuter(&FilterClass::ClF1, &FilterClass::F1, 2).unwrap();
        let r = r.expect("images of closed sets need not be closed");
        assert!(!FilterClass::ClF1.members(&r.codomain).contains_filter(r.image));
        assert!(is_f1_composable(&FilterClass::Fomega));
        assert!(!is_f1_composable(&FilterClass::ClF1));
    }

    #[test]
    fn space_counts() {
        assert_eq!(all_spaces(1).unwrap().len(), 1);
        assert_eq!(all_spaces(2).unwrap().len(), 4);
        assert_eq!(all_spaces(3).unwrap().len(), 64);
    }

    #[test]
    fn accessibility_with_f1_base() {
        let sp = s3();
        for j in FilterClass::registry() {
            assert!(is_accessible(&sp, &j, &FilterClass::F1).unwrap());
        }
    }

    #[test]
    fn point_filter_is_mesh_refinable() {
        let sp = s3();
        for x in 0..3 {
            assert!(is_mesh_refinable(&sp, Filter::point(3, x), &FilterClass::F1, &FilterClass::F1));
        }
    }

    #[test]
    fn cache_reuses_entries() {
        let cache = ClassCache::default();
        let a = cache.members(&FilterClass::ClF1, &s3());
        let b = cache.members(&FilterClass::ClF1, &s3());
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(cache.len(), 1);
    }
}
