//! Subsets, isotone families, filters and relations over finite ground sets.
//!
//! Every filter on a finite set is principal. A filter `F` is closed under
//! finite intersections, and a finite set has only finitely many subsets, so
//! the intersection `K` of all members of `F` is itself a member and
//! `F = {K}↑`. The kernel `K` therefore determines the filter, and all of the
//! filter algebra below is bit arithmetic on kernels. The empty kernel encodes
//! the degenerate filter `2^X`, which is kept as an ordinary value.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::MAX_POINTS;

/// An ordered finite set of named points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    names: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyGround);
        }
        if names.len() > MAX_POINTS {
            return Err(Error::TooManyPoints(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicatePoint(name.clone()));
            }
        }
        Ok(GroundSet { names })
    }

    /// Points named `a`, `b`, `c`, ... (or `p0`, `p1`, ... past 26 points).
    pub fn standard(n: usize) -> Result<Self> {
        if n > 26 {
            return Self::new((0..n).map(|i| format!("p{i}")));
        }
        Self::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
    }

    /// Points named `0`, `1`, `2`, ...
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn product(&self, other: &GroundSet) -> Result<Self> {
        let mut names = Vec::with_capacity(self.len() * other.len());
        for x in &self.names {
            for y in &other.names {
                names.push(format!("({x},{y})"));
            }
        }
        Self::new(names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn subset<'a, I>(&self, names: I) -> Result<Subset>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut s = Subset::empty(self.len());
        for name in names {
            s = s.with(self.index_of(name)?);
        }
        Ok(s)
    }

    pub fn render(&self, s: Subset) -> String {
        let parts: Vec<&str> = s.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// A subset of an `n`-point ground set, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    n: u8,
    bits: u32,
}

#[inline]
fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl Subset {
    #[inline]
    pub fn empty(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        Subset { n: n as u8, bits: 0 }
    }

    #[inline]
    pub fn full(n: usize) -> Self {
        Subset { n: n as u8, bits: low_mask(n) }
    }

    #[inline]
    pub fn singleton(n: usize, i: usize) -> Self {
        debug_assert!(i < n);
        Subset { n: n as u8, bits: 1 << i }
    }

    pub fn from_bits(n: usize, bits: u32) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(Error::TooManyPoints(n));
        }
        if bits & !low_mask(n) != 0 {
            return Err(Error::MaskOutOfRange { bits, n });
        }
        Ok(Subset { n: n as u8, bits })
    }

    /// Unchecked constructor for hot loops; the caller guarantees the mask fits.
    #[inline]
    pub fn raw(n: usize, bits: u32) -> Self {
        debug_assert!(bits & !low_mask(n) == 0);
        Subset { n: n as u8, bits }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Result<Self> {
        let mut bits = 0u32;
        for i in indices {
            if i >= n {
                return Err(Error::MaskOutOfRange { bits: 1 << i.min(31), n });
            }
            bits |= 1 << i;
        }
        Subset::from_bits(n, bits)
    }

    /// All `2^n` subsets in increasing bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> + Clone {
        (0..=low_mask(n)).map(move |bits| Subset::raw(n, bits))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn ground_size(self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(self) -> bool {
        self.bits == low_mask(self.n as usize)
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        debug_assert!(i < self.n as usize);
        Subset { n: self.n, bits: self.bits | 1 << i }
    }

    #[inline]
    pub fn union(self, other: Subset) -> Self {
        debug_assert_eq!(self.n, other.n);
        Subset { n: self.n, bits: self.bits | other.bits }
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Self {
        debug_assert_eq!(self.n, other.n);
        Subset { n: self.n, bits: self.bits & other.bits }
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Self {
        debug_assert_eq!(self.n, other.n);
        Subset { n: self.n, bits: self.bits & !other.bits }
    }

    #[inline]
    pub fn complement(self) -> Self {
        Subset { n: self.n, bits: !self.bits & low_mask(self.n as usize) }
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn meets(self, other: Subset) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits & other.bits != 0
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter { bits: self.bits }
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let n = self.n as usize;
        let full = self.bits;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(Subset::raw(n, cur))
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}/{}", self.n)
    }
}

pub struct SubsetIter {
    bits: u32,
}

impl Iterator for SubsetIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let i = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(i)
    }
}

fn check_same(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::GroundMismatch { left, right });
    }
    Ok(())
}

/// An isotone family of subsets, stored as the antichain of its minimal members.
///
/// The empty antichain is the empty family; the antichain `{∅}` is `2^X`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FamilyOfSets {
    n: u8,
    minimals: Vec<Subset>,
}

impl FamilyOfSets {
    /// Up-closure of a list of generators, minimized to an antichain.
    pub fn up_close<I: IntoIterator<Item = Subset>>(n: usize, generators: I) -> Result<Self> {
        let mut gens: Vec<Subset> = Vec::new();
        for g in generators {
            check_same(n, g.ground_size())?;
            gens.push(g);
        }
        Ok(Self::minimize(n, gens))
    }

    fn minimize(n: usize, mut gens: Vec<Subset>) -> Self {
        gens.sort_by_key(|s| (s.len(), s.bits()));
        gens.dedup();
        let mut minimals: Vec<Subset> = Vec::with_capacity(gens.len());
        for g in gens {
            if !minimals.iter().any(|m| m.is_subset_of(g)) {
                minimals.push(g);
            }
        }
        minimals.sort();
        FamilyOfSets { n: n as u8, minimals }
    }

    pub fn empty(n: usize) -> Self {
        FamilyOfSets { n: n as u8, minimals: Vec::new() }
    }

    /// The family `2^X` of all subsets.
    pub fn everything(n: usize) -> Self {
        FamilyOfSets { n: n as u8, minimals: vec![Subset::empty(n)] }
    }

    pub fn principal(a: Subset) -> Self {
        FamilyOfSets { n: a.ground_size() as u8, minimals: vec![a] }
    }

    pub fn ground_size(&self) -> usize {
        self.n as usize
    }

    pub fn minimals(&self) -> &[Subset] {
        &self.minimals
    }

    pub fn is_empty(&self) -> bool {
        self.minimals.is_empty()
    }

    /// True when the family contains the empty set, i.e. equals `2^X`.
    pub fn is_degenerate(&self) -> bool {
        self.minimals.first().is_some_and(|m| m.is_empty())
    }

    pub fn contains(&self, a: Subset) -> bool {
        self.minimals.iter().any(|m| m.is_subset_of(a))
    }

    /// Every member of the represented family, in increasing bitmask order.
    pub fn members(&self) -> impl Iterator<Item = Subset> + '_ {
        Subset::all(self.n as usize).filter(move |&s| self.contains(s))
    }

    pub fn mesh(&self, other: &FamilyOfSets) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.minimals
            .iter()
            .all(|a| other.minimals.iter().all(|b| a.meets(*b)))
    }

    /// True when `a` meets every member of the family.
    pub fn meshes_set(&self, a: Subset) -> bool {
        self.minimals.iter().all(|m| m.meets(a))
    }

    /// The family of all sets meeting every member.
    pub fn grill(&self) -> FamilyOfSets {
        let n = self.n as usize;
        let meeting: Vec<Subset> = Subset::all(n).filter(|&b| self.meshes_set(b)).collect();
        Self::minimize(n, meeting)
    }

    /// `o♮A = {o(A) : A ∈ A}↑`. `o` is applied to every member, not just the
    /// minimal ones, because it need not be monotone.
    pub fn op_image<O: Fn(Subset) -> Subset>(&self, op: O) -> FamilyOfSets {
        let n = self.n as usize;
        let images: Vec<Subset> = self.members().map(&op).collect();
        let m = images.first().map_or(n, |s| s.ground_size());
        Self::minimize(m, images)
    }

    /// The filter represented by this family, if it is one.
    pub fn as_filter(&self) -> Option<Filter> {
        match self.minimals.as_slice() {
            [k] => Some(Filter::principal(*k)),
            _ => None,
        }
    }
}

/// A filter on a finite set, stored by its kernel.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filter {
    kernel: Subset,
}

impl fmt::Debug for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}↑", self.kernel)
    }
}

impl Filter {
    #[inline]
    pub fn principal(kernel: Subset) -> Self {
        Filter { kernel }
    }

    #[inline]
    pub fn point(n: usize, x: usize) -> Self {
        Filter { kernel: Subset::singleton(n, x) }
    }

    #[inline]
    pub fn degenerate(n: usize) -> Self {
        Filter { kernel: Subset::empty(n) }
    }

    /// All `2^n` filters (including the degenerate one) in kernel order.
    pub fn all(n: usize) -> impl Iterator<Item = Filter> + Clone {
        Subset::all(n).map(Filter::principal)
    }

    #[inline]
    pub fn kernel(self) -> Subset {
        self.kernel
    }

    #[inline]
    pub fn ground_size(self) -> usize {
        self.kernel.ground_size()
    }

    #[inline]
    pub fn is_degenerate(self) -> bool {
        self.kernel.is_empty()
    }

    #[inline]
    pub fn contains(self, a: Subset) -> bool {
        self.kernel.is_subset_of(a)
    }

    pub fn as_family(self) -> FamilyOfSets {
        FamilyOfSets::principal(self.kernel)
    }

    /// `F # G`: kernels intersect. The degenerate filter meshes nothing.
    #[inline]
    pub fn mesh(self, other: Filter) -> bool {
        self.kernel.meets(other.kernel)
    }

    #[inline]
    pub fn meshes_set(self, a: Subset) -> bool {
        self.kernel.meets(a)
    }

    /// `self ≥ other`: `self` has every member of `other`.
    #[inline]
    pub fn finer(self, other: Filter) -> bool {
        self.kernel.is_subset_of(other.kernel)
    }

    #[inline]
    pub fn meet(self, other: Filter) -> Filter {
        Filter { kernel: self.kernel.union(other.kernel) }
    }

    #[inline]
    pub fn join(self, other: Filter) -> Filter {
        Filter { kernel: self.kernel.intersection(other.kernel) }
    }

    #[inline]
    pub fn equiv(self, other: Filter) -> bool {
        self.kernel == other.kernel
    }
}

/// Index arithmetic for the product `X × Y`: `(x, y) ↦ x·|Y| + y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductIndex {
    pub left: usize,
    pub right: usize,
}

impl ProductIndex {
    pub fn new(left: usize, right: usize) -> Result<Self> {
        if left * right > MAX_POINTS {
            return Err(Error::TooManyPoints(left * right));
        }
        Ok(ProductIndex { left, right })
    }

    pub fn size(self) -> usize {
        self.left * self.right
    }

    #[inline]
    pub fn pair(self, x: usize, y: usize) -> usize {
        x * self.right + y
    }

    #[inline]
    pub fn split(self, p: usize) -> (usize, usize) {
        (p / self.right, p % self.right)
    }

    pub fn rectangle(self, a: Subset, b: Subset) -> Subset {
        let mut s = Subset::empty(self.size());
        for x in a.iter() {
            for y in b.iter() {
                s = s.with(self.pair(x, y));
            }
        }
        s
    }
}

/// A relation `R ⊆ X × Y`, stored as the image set of each point of `X`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relation {
    cod: u8,
    rows: Vec<Subset>,
}

impl Relation {
    pub fn empty(dom: usize, cod: usize) -> Self {
        Relation { cod: cod as u8, rows: vec![Subset::empty(cod); dom] }
    }

    pub fn identity(n: usize) -> Self {
        Relation { cod: n as u8, rows: (0..n).map(|x| Subset::singleton(n, x)).collect() }
    }

    pub fn from_rows(cod: usize, rows: Vec<Subset>) -> Result<Self> {
        for r in &rows {
            check_same(cod, r.ground_size())?;
        }
        if rows.len() > MAX_POINTS {
            return Err(Error::TooManyPoints(rows.len()));
        }
        Ok(Relation { cod: cod as u8, rows })
    }

    /// The graph of a map given as `images[x] = f(x)`.
    pub fn from_map(cod: usize, images: &[usize]) -> Result<Self> {
        let rows = images
            .iter()
            .map(|&y| {
                if y < cod {
                    Ok(Subset::singleton(cod, y))
                } else {
                    Err(Error::MaskOutOfRange { bits: 1 << y.min(31), n: cod })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(cod, rows)
    }

    /// Reads a subset `K ⊆ X × Y` as a relation.
    pub fn from_product_set(index: ProductIndex, k: Subset) -> Result<Self> {
        check_same(index.size(), k.ground_size())?;
        let mut rel = Relation::empty(index.left, index.right);
        for p in k.iter() {
            let (x, y) = index.split(p);
            rel.rows[x] = rel.rows[x].with(y);
        }
        Ok(rel)
    }

    pub fn to_product_set(&self, index: ProductIndex) -> Subset {
        let mut s = Subset::empty(index.size());
        for (x, row) in self.rows.iter().enumerate() {
            for y in row.iter() {
                s = s.with(index.pair(x, y));
            }
        }
        s
    }

    pub fn domain_size(&self) -> usize {
        self.rows.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.cod as usize
    }

    #[inline]
    pub fn row(&self, x: usize) -> Subset {
        self.rows[x]
    }

    pub fn rows(&self) -> &[Subset] {
        &self.rows
    }

    #[inline]
    pub fn image_set(&self, a: Subset) -> Subset {
        let mut out = Subset::empty(self.cod as usize);
        for x in a.iter() {
            out = out.union(self.rows[x]);
        }
        out
    }

    #[inline]
    pub fn preimage_set(&self, b: Subset) -> Subset {
        let mut out = Subset::empty(self.rows.len());
        for (x, row) in self.rows.iter().enumerate() {
            if row.meets(b) {
                out = out.with(x);
            }
        }
        out
    }

    /// `RF`, with kernel `R(ker F)`. The degenerate filter maps to the degenerate filter.
    #[inline]
    pub fn image(&self, f: Filter) -> Filter {
        Filter::principal(self.image_set(f.kernel()))
    }

    /// `R⁻G`, with kernel `R⁻(ker G)`.
    #[inline]
    pub fn preimage(&self, g: Filter) -> Filter {
        Filter::principal(self.preimage_set(g.kernel()))
    }

    pub fn inverse(&self) -> Relation {
        let dom = self.rows.len();
        let mut inv = Relation::empty(self.cod as usize, dom);
        for (x, row) in self.rows.iter().enumerate() {
            for y in row.iter() {
                inv.rows[y] = inv.rows[y].with(x);
            }
        }
        inv
    }

    pub fn is_map(&self) -> bool {
        self.rows.iter().all(|r| r.len() == 1)
    }

    /// The map `x ↦ f(x)` when the relation is total and single-valued.
    pub fn as_map(&self) -> Result<Vec<usize>> {
        self.rows
            .iter()
            .enumerate()
            .map(|(x, r)| {
                if r.len() == 1 {
                    Ok(r.bits().trailing_zeros() as usize)
                } else {
                    Err(Error::NotAMap(x, r.len()))
                }
            })
            .collect()
    }

    pub fn check_surjective(&self) -> Result<()> {
        let covered = self.image_set(Subset::full(self.rows.len()));
        match covered.complement().iter().next() {
            Some(y) => Err(Error::NotSurjective(y)),
            None => Ok(()),
        }
    }

    pub fn is_surjective(&self) -> bool {
        self.check_surjective().is_ok()
    }
}

/// Image of `F` under a filter `H` on `X × Y`: `HF = {HF : H ∈ H, F ∈ F}↑`.
pub fn rel_image(index: ProductIndex, h: Filter, f: Filter) -> Result<Filter> {
    check_same(index.left, f.ground_size())?;
    Ok(Relation::from_product_set(index, h.kernel())?.image(f))
}

/// `H⁻G = {H⁻G : H ∈ H, G ∈ G}↑`.
pub fn rel_preimage(index: ProductIndex, h: Filter, g: Filter) -> Result<Filter> {
    check_same(index.right, g.ground_size())?;
    Ok(Relation::from_product_set(index, h.kernel())?.preimage(g))
}

/// Shared handle for ground sets carried by spaces.
pub type Ground = Arc<GroundSet>;

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, idx: &[usize]) -> Subset {
        Subset::from_indices(n, idx.iter().copied()).unwrap()
    }

    #[test]
    fn up_close_absorbs_supersets() {
        let fam = FamilyOfSets::up_close(3, [s(3, &[0, 1]), s(3, &[0])]).unwrap();
        assert_eq!(fam.minimals(), &[s(3, &[0])]);
        let fam = FamilyOfSets::up_close(3, [s(3, &[0]), s(3, &[1])]).unwrap();
        assert_eq!(fam.minimals(), &[s(3, &[0]), s(3, &[1])]);
        assert!(FamilyOfSets::up_close(3, []).unwrap().is_empty());
    }

    #[test]
    fn up_close_rejects_mixed_grounds() {
        let err = FamilyOfSets::up_close(3, [s(3, &[0]), s(2, &[0])]).unwrap_err();
        assert_eq!(err, Error::GroundMismatch { left: 3, right: 2 });
    }

    #[test]
    fn mesh_examples() {
        let ab = Filter::principal(s(3, &[0, 1]));
        let bc = Filter::principal(s(3, &[1, 2]));
        assert!(ab.mesh(bc));
        assert!(!Filter::point(3, 0).mesh(Filter::point(3, 1)));
        let deg = Filter::degenerate(3);
        for k in Filter::all(3) {
            assert!(!deg.mesh(k));
        }
        assert!(!deg.as_family().mesh(&ab.as_family()));
    }

    #[test]
    fn grill_of_two_edges() {
        let fam = FamilyOfSets::up_close(3, [s(3, &[0, 1]), s(3, &[1, 2])]).unwrap();
        // brute force: sets meeting both {a,b} and {b,c}
        let brute: Vec<Subset> = Subset::all(3)
            .filter(|b| b.meets(s(3, &[0, 1])) && b.meets(s(3, &[1, 2])))
            .collect();
        let g = fam.grill();
        assert_eq!(g.minimals(), &[s(3, &[1]), s(3, &[0, 2])]);
        assert_eq!(g.members().collect::<Vec<_>>(), brute);
        assert_eq!(g.grill(), fam);
    }

    #[test]
    fn grill_of_point_filter() {
        let g = Filter::point(3, 0).as_family().grill();
        assert_eq!(g, Filter::point(3, 0).as_family());
    }

    #[test]
    fn filter_order_and_lattice() {
        let a = Filter::point(2, 0);
        let ab = Filter::principal(Subset::full(2));
        assert!(a.finer(ab));
        assert!(!ab.finer(a));
        assert_eq!(a.meet(Filter::point(2, 1)), ab);
        assert!(a.join(Filter::point(2, 1)).is_degenerate());
    }

    #[test]
    fn images_and_preimages() {
        let id = Relation::identity(3);
        for f in Filter::all(3) {
            assert_eq!(id.image(f), f);
        }
        let f = Relation::from_map(2, &[0, 0, 1]).unwrap();
        assert_eq!(f.image(Filter::principal(s(3, &[1, 2]))), Filter::principal(Subset::full(2)));
        assert_eq!(f.preimage(Filter::point(2, 0)), Filter::principal(s(3, &[0, 1])));
        assert!(f.image(Filter::degenerate(3)).is_degenerate());
        assert_eq!(f.as_map().unwrap(), vec![0, 0, 1]);
        assert!(f.is_surjective());
        assert_eq!(f.inverse().inverse(), f);
    }

    #[test]
    fn op_image_examples() {
        let fam = Filter::principal(s(3, &[2])).as_family();
        assert_eq!(fam.op_image(|x| x), fam);
        let deg = fam.op_image(|x| Subset::empty(x.ground_size()));
        assert!(deg.is_degenerate());
    }

    #[test]
    fn subsets_of_a_set() {
        let all: Vec<Subset> = s(4, &[0, 2, 3]).subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x.is_subset_of(s(4, &[0, 2, 3]))));
        assert_eq!(Subset::empty(3).subsets().count(), 1);
    }

    #[test]
    fn ground_set_validation() {
        assert!(matches!(GroundSet::new(["a", "a"]), Err(Error::DuplicatePoint(_))));
        assert!(matches!(GroundSet::new(Vec::<String>::new()), Err(Error::EmptyGround)));
        assert!(matches!(GroundSet::standard(17), Err(Error::TooManyPoints(17))));
        let g = GroundSet::standard(3).unwrap();
        assert_eq!(g.subset(["a", "c"]).unwrap(), s(3, &[0, 2]));
        assert_eq!(g.render(s(3, &[0, 2])), "{a,c}");
    }

    #[test]
    fn product_index_round_trip() {
        let idx = ProductIndex::new(2, 3).unwrap();
        for p in 0..6 {
            let (x, y) = idx.split(p);
            assert_eq!(idx.pair(x, y), p);
        }
        let k = idx.rectangle(s(2, &[1]), s(3, &[0, 2]));
        let rel = Relation::from_product_set(idx, k).unwrap();
        assert_eq!(rel.row(1), s(3, &[0, 2]));
        assert_eq!(rel.to_product_set(idx), k);
    }
}
