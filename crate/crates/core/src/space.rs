//! Finite convergence spaces.
//!
//! A convergence on a finite set is determined by its point limits
//! `L(x) = lim {x}↑`. Every filter is `A↑` for a kernel `A`, and
//! `A↑ = ⋀_{a∈A} {a}↑`, so the finite-meet axiom gives
//! `lim A↑ = ⋂_{a∈A} L(a)`. Centeredness is `x ∈ L(x)`. The degenerate filter
//! is the empty meet and converges to every point.
//!
//! [`LimitTable`] keeps an arbitrary kernel-to-limit table for the few places
//! (raw coreflections, the collapse check) where point-determinedness is the
//! thing being tested rather than assumed.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::family::{Filter, GroundSet, ProductIndex, Relation, Subset};

/// Anything with a limit operator on the kernels of an `n`-point set.
pub trait Convergence {
    fn size(&self) -> usize;

    fn lim_kernel(&self, k: Subset) -> Subset;

    /// `adh F = ⋃_{G#F} lim G`, by definition.
    fn adh_kernel(&self, k: Subset) -> Subset {
        let n = self.size();
        let mut out = Subset::empty(n);
        for g in Subset::all(n) {
            if g.meets(k) {
                out = out.union(self.lim_kernel(g));
            }
        }
        out
    }
}

/// Structural flags. Pretopology, paratopology and pseudotopology hold for
/// every finite convergence and are reported as constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpaceKind {
    pub is_topology: bool,
    pub is_p_diagonal: bool,
    pub is_pretopology: bool,
    pub is_paratopology: bool,
    pub is_pseudotopology: bool,
}

#[derive(Clone, Debug)]
pub struct FiniteSpace {
    ground: Arc<GroundSet>,
    pointlim: Vec<Subset>,
}

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        self.pointlim == other.pointlim
    }
}

impl Eq for FiniteSpace {}

impl std::hash::Hash for FiniteSpace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.pointlim.hash(state);
    }
}

impl FiniteSpace {
    pub fn new(ground: Arc<GroundSet>, pointlim: Vec<Subset>) -> Result<Self> {
        let n = ground.len();
        if pointlim.len() != n {
            return Err(Error::GroundMismatch { left: n, right: pointlim.len() });
        }
        for (x, l) in pointlim.iter().enumerate() {
            if l.ground_size() != n {
                return Err(Error::GroundMismatch { left: n, right: l.ground_size() });
            }
            if !l.contains(x) {
                return Err(Error::NotCentered(ground.name(x).to_string()));
            }
        }
        Ok(FiniteSpace { ground, pointlim })
    }

    /// Space on the standard ground `a, b, c, ...` from raw point-limit masks.
    pub fn from_masks(masks: &[u32]) -> Result<Self> {
        let n = masks.len();
        let ground = Arc::new(GroundSet::standard(n)?);
        let pointlim = masks
            .iter()
            .map(|&m| Subset::from_bits(n, m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, pointlim)
    }

    pub fn with_ground(&self, ground: Arc<GroundSet>) -> Result<Self> {
        Self::new(ground, self.pointlim.clone())
    }

    pub fn discrete(ground: Arc<GroundSet>) -> Self {
        let n = ground.len();
        let pointlim = (0..n).map(|x| Subset::singleton(n, x)).collect();
        FiniteSpace { ground, pointlim }
    }

    pub fn indiscrete(ground: Arc<GroundSet>) -> Self {
        let n = ground.len();
        FiniteSpace { ground, pointlim: vec![Subset::full(n); n] }
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.pointlim.len()
    }

    #[inline]
    pub fn pointlim(&self, x: usize) -> Subset {
        self.pointlim[x]
    }

    pub fn pointlims(&self) -> &[Subset] {
        &self.pointlim
    }

    pub fn masks(&self) -> Vec<u32> {
        self.pointlim.iter().map(|s| s.bits()).collect()
    }

    #[inline]
    pub fn lim_set(&self, a: Subset) -> Subset {
        let mut out = Subset::full(self.n());
        for x in a.iter() {
            out = out.intersection(self.pointlim[x]);
        }
        out
    }

    #[inline]
    pub fn lim(&self, f: Filter) -> Subset {
        self.lim_set(f.kernel())
    }

    /// `adh A↑ = ⋃_{a∈A} L(a)`: a filter meshing `A↑` has some `a` in its
    /// kernel, so its limit lies in `L(a)`, and `{a}↑` itself meshes.
    #[inline]
    pub fn adh_set(&self, a: Subset) -> Subset {
        let mut out = Subset::empty(self.n());
        for x in a.iter() {
            out = out.union(self.pointlim[x]);
        }
        out
    }

    #[inline]
    pub fn adh(&self, f: Filter) -> Subset {
        self.adh_set(f.kernel())
    }

    pub fn is_closed(&self, a: Subset) -> bool {
        self.adh_set(a).is_subset_of(a)
    }

    /// Closed sets in increasing bitmask order.
    pub fn closed_sets(&self) -> Vec<Subset> {
        Subset::all(self.n()).filter(|&a| self.is_closed(a)).collect()
    }

    pub fn try_closure(&self, a: Subset) -> Result<Subset> {
        let mut cur = a;
        for _ in 0..=self.n() {
            let next = self.adh_set(cur);
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::Internal(format!("closure of {a:?} did not stabilize")))
    }

    pub fn closure(&self, a: Subset) -> Subset {
        self.try_closure(a).expect("closure is a monotone iteration on a finite lattice")
    }

    /// Kernel of the neighborhood filter of `x` in the topological modification.
    pub fn nbhd_kernel(&self, x: usize) -> Subset {
        let n = self.n();
        let mut out = Subset::empty(n);
        for z in 0..n {
            if self.closure(Subset::singleton(n, z)).contains(x) {
                out = out.with(z);
            }
        }
        out
    }

    pub fn nbhd(&self, x: usize) -> Filter {
        Filter::principal(self.nbhd_kernel(x))
    }

    /// The topological modification: `{x}↑ → y` in `Tξ` iff `x` lies in every
    /// neighborhood of `y`.
    pub fn topologize(&self) -> FiniteSpace {
        let n = self.n();
        let nb: Vec<Subset> = (0..n).map(|y| self.nbhd_kernel(y)).collect();
        let pointlim = (0..n)
            .map(|x| {
                let mut l = Subset::empty(n);
                for (y, k) in nb.iter().enumerate() {
                    if k.contains(x) {
                        l = l.with(y);
                    }
                }
                l
            })
            .collect();
        FiniteSpace { ground: self.ground.clone(), pointlim }
    }

    /// `x ∈ lim N(x)` for every `x`.
    pub fn is_topology(&self) -> bool {
        (0..self.n()).all(|x| self.lim_set(self.nbhd_kernel(x)).contains(x))
    }

    pub fn vicinity_kernel(&self, x: usize) -> Subset {
        let n = self.n();
        let mut out = Subset::empty(n);
        for (y, l) in self.pointlim.iter().enumerate() {
            if l.contains(x) {
                out = out.with(y);
            }
        }
        out
    }

    pub fn vicinity(&self, x: usize) -> Filter {
        Filter::principal(self.vicinity_kernel(x))
    }

    /// `V(F) = ⋃_{F∈F} ⋂_{x∈F} V(x)`. The inner infimum has kernel
    /// `⋃_{x∈F} ker V(x)`; the outer union is attained at `F = ker F`.
    pub fn vicinity_of_filter(&self, f: Filter) -> Filter {
        let mut k = Subset::empty(self.n());
        for x in f.kernel().iter() {
            k = k.union(self.vicinity_kernel(x));
        }
        Filter::principal(k)
    }

    /// `lim F ⊆ lim V(F)` for every kernel.
    pub fn is_p_diagonal(&self) -> bool {
        self.p_diagonal_refuter().is_none()
    }

    pub fn p_diagonal_refuter(&self) -> Option<Filter> {
        Filter::all(self.n()).find(|&f| !self.lim(f).is_subset_of(self.lim(self.vicinity_of_filter(f))))
    }

    pub fn kind(&self) -> SpaceKind {
        SpaceKind {
            is_topology: self.is_topology(),
            is_p_diagonal: self.is_p_diagonal(),
            is_pretopology: true,
            is_paratopology: true,
            is_pseudotopology: true,
        }
    }

    /// `self ≥ other`: the identity is continuous from `self` to `other`.
    pub fn is_finer_than(&self, other: &FiniteSpace) -> bool {
        self.n() == other.n()
            && self.pointlim.iter().zip(&other.pointlim).all(|(a, b)| a.is_subset_of(*b))
    }

    /// Continuity of `f` (given as `f[x]`) into `tau`. Checking point filters
    /// suffices: `lim A↑` is the intersection of point limits and `f` maps
    /// each point-limit into the matching point-limit.
    pub fn is_continuous(&self, f: &[usize], tau: &FiniteSpace) -> bool {
        self.continuity_refuter(f, tau).is_none()
    }

    /// A point `x` with `f(L(x)) ⊄ L_τ(f x)`.
    pub fn continuity_refuter(&self, f: &[usize], tau: &FiniteSpace) -> Option<usize> {
        (0..self.n()).find(|&x| self.pointlim[x].iter().any(|z| !tau.pointlim(f[x]).contains(f[z])))
    }

    /// `f⁻τ`: `L(x) = f⁻(L_τ(f x))`.
    pub fn initial(tau: &FiniteSpace, ground: Arc<GroundSet>, f: &[usize]) -> Result<FiniteSpace> {
        if f.len() != ground.len() {
            return Err(Error::GroundMismatch { left: ground.len(), right: f.len() });
        }
        let rel = Relation::from_map(tau.n(), f)?;
        let pointlim = f.iter().map(|&y| rel.preimage_set(tau.pointlim(y))).collect();
        FiniteSpace::new(ground, pointlim)
    }

    /// `fξ` for a surjective `f`: `L(y) = ⋃_{x∈f⁻y} f(L(x))`.
    pub fn final_(&self, ground: Arc<GroundSet>, f: &[usize]) -> Result<FiniteSpace> {
        if f.len() != self.n() {
            return Err(Error::GroundMismatch { left: self.n(), right: f.len() });
        }
        let m = ground.len();
        let rel = Relation::from_map(m, f)?;
        rel.check_surjective()?;
        let mut pointlim = vec![Subset::empty(m); m];
        for (x, &y) in f.iter().enumerate() {
            pointlim[y] = pointlim[y].union(rel.image_set(self.pointlim[x]));
        }
        FiniteSpace::new(ground, pointlim)
    }

    /// Product convergence on `X × Y`, indexed by [`ProductIndex`].
    pub fn product(&self, other: &FiniteSpace) -> Result<FiniteSpace> {
        let idx = ProductIndex::new(self.n(), other.n())?;
        let ground = Arc::new(self.ground.product(&other.ground)?);
        let mut pointlim = Vec::with_capacity(idx.size());
        for x in 0..self.n() {
            for y in 0..other.n() {
                pointlim.push(idx.rectangle(self.pointlim[x], other.pointlim[y]));
            }
        }
        FiniteSpace::new(ground, pointlim)
    }

    /// `adh_{fξ} D = f(adh_ξ f⁻D)` for every filter `D` on the range.
    pub fn final_adh_identity_check(&self, f: &[usize], m: usize) -> Result<bool> {
        let ground = Arc::new(GroundSet::numbered(m)?);
        let fx = self.final_(ground, f)?;
        let rel = Relation::from_map(m, f)?;
        Ok(Subset::all(m).all(|d| fx.adh_set(d) == rel.image_set(self.adh_set(rel.preimage_set(d)))))
    }

    pub fn table(&self) -> LimitTable {
        LimitTable::from_fn(self.n(), |k| self.lim_set(k))
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = (0..self.n())
            .map(|x| format!("L({})={}", self.ground.name(x), self.ground.render(self.pointlim[x])))
            .collect();
        parts.join(" ")
    }
}

impl Convergence for FiniteSpace {
    fn size(&self) -> usize {
        self.n()
    }

    fn lim_kernel(&self, k: Subset) -> Subset {
        self.lim_set(k)
    }

    fn adh_kernel(&self, k: Subset) -> Subset {
        self.adh_set(k)
    }
}

/// A kernel-indexed limit table, not assumed point-determined or centered.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LimitTable {
    n: u8,
    lims: Vec<Subset>,
}

impl LimitTable {
    pub fn from_fn<F: FnMut(Subset) -> Subset>(n: usize, mut f: F) -> Self {
        LimitTable { n: n as u8, lims: Subset::all(n).map(&mut f).collect() }
    }

    pub fn from_lims(n: usize, lims: Vec<Subset>) -> Result<Self> {
        if lims.len() != 1 << n {
            return Err(Error::Internal(format!("limit table of length {} for {n} points", lims.len())));
        }
        Ok(LimitTable { n: n as u8, lims })
    }

    pub fn lims(&self) -> &[Subset] {
        &self.lims
    }

    pub fn point_limits(&self) -> Vec<Subset> {
        let n = self.n as usize;
        (0..n).map(|x| self.lims[1 << x]).collect()
    }

    /// `lim A↑ = ⋂_{a∈A} lim {a}↑` for every kernel, including `lim ∅↑ = X`.
    pub fn is_point_determined(&self) -> bool {
        let n = self.n as usize;
        let pts = self.point_limits();
        Subset::all(n).all(|k| {
            let expect = k.iter().fold(Subset::full(n), |acc, x| acc.intersection(pts[x]));
            self.lims[k.bits() as usize] == expect
        })
    }

    /// Isotone in the filter order: a finer filter (smaller kernel) has a larger limit.
    pub fn is_isotone(&self) -> bool {
        let n = self.n as usize;
        Subset::all(n).all(|k| k.subsets().all(|j| self.lims[k.bits() as usize].is_subset_of(self.lims[j.bits() as usize])))
    }

    pub fn is_centered(&self) -> bool {
        (0..self.n as usize).all(|x| self.lims[1 << x].contains(x))
    }

    /// `lim (F ∧ G) = lim F ∩ lim G` for every pair of kernels.
    pub fn preserves_meets(&self) -> bool {
        let n = self.n as usize;
        Subset::all(n).all(|a| {
            Subset::all(n).all(|b| {
                self.lims[a.union(b).bits() as usize]
                    == self.lims[a.bits() as usize].intersection(self.lims[b.bits() as usize])
            })
        })
    }
}

impl Convergence for LimitTable {
    fn size(&self) -> usize {
        self.n as usize
    }

    #[inline]
    fn lim_kernel(&self, k: Subset) -> Subset {
        self.lims[k.bits() as usize]
    }
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
    fn s3_limits_and_adherence() {
        let sp = s3();
        assert_eq!(sp.lim_set(s(&[1, 2])), s(&[1]));
        assert_eq!(sp.adh_set(s(&[2])), s(&[1, 2]));
        assert!(sp.adh(Filter::degenerate(3)).is_empty());
        assert!(sp.lim(Filter::degenerate(3)).is_full());
    }

    #[test]
    fn s3_closed_sets_and_closure() {
        let sp = s3();
        assert_eq!(sp.closed_sets(), vec![s(&[]), s(&[0]), s(&[0, 1]), s(&[0, 1, 2])]);
        assert_eq!(sp.closure(s(&[2])), s(&[0, 1, 2]));
        assert_ne!(sp.adh_set(sp.adh_set(s(&[2]))), sp.adh_set(s(&[2])));
    }

    #[test]
    fn s3_vicinities() {
        let sp = s3();
        assert_eq!(sp.vicinity_kernel(0), s(&[0, 1]));
        assert_eq!(sp.vicinity_kernel(1), s(&[1, 2]));
        assert_eq!(sp.vicinity_kernel(2), s(&[2]));
        assert_eq!(sp.vicinity_of_filter(Filter::point(3, 1)), sp.vicinity(1));
    }

    #[test]
    fn s3_is_not_p_diagonal() {
        let sp = s3();
        assert!(!sp.is_topology());
        assert_eq!(sp.p_diagonal_refuter(), Some(Filter::point(3, 1)));
    }

    #[test]
    fn s3_final_example() {
        let sp = s3();
        let g = Arc::new(GroundSet::numbered(2).unwrap());
        let fx = sp.final_(g, &[0, 0, 1]).unwrap();
        assert_eq!(fx.masks(), vec![0b01, 0b11]);
        assert!(sp.final_adh_identity_check(&[0, 0, 1], 2).unwrap());
        assert!(sp.is_continuous(&[0, 0, 1], &fx));
    }

    #[test]
    fn final_rejects_non_surjection() {
        let g = Arc::new(GroundSet::numbered(3).unwrap());
        assert_eq!(s3().final_(g, &[0, 0, 1]).unwrap_err(), Error::NotSurjective(2));
    }

    #[test]
    fn topologize_s3() {
        let t = s3().topologize();
        assert!(t.is_topology());
        assert_eq!(t.topologize(), t);
        assert!(s3().is_finer_than(&t));
        assert_eq!(t.pointlim(2), s(&[0, 1, 2]));
    }

    #[test]
    fn centeredness_is_validated() {
        let err = FiniteSpace::from_masks(&[0b10, 0b10]).unwrap_err();
        assert_eq!(err, Error::NotCentered("a".into()));
    }

    #[test]
    fn product_point_limits() {
        let two = FiniteSpace::from_masks(&[0b01, 0b11]).unwrap();
        let p = two.product(&two).unwrap();
        assert_eq!(p.n(), 4);
        assert_eq!(p.pointlim(3), Subset::full(4));
        assert_eq!(p.pointlim(0), Subset::singleton(4, 0));
    }

    #[test]
    fn tables_of_spaces_are_point_determined() {
        let t = s3().table();
        assert!(t.is_point_determined() && t.is_isotone() && t.is_centered() && t.preserves_meets());
        assert_eq!(t.adh_kernel(s(&[2])), s3().adh_set(s(&[2])));
    }
}
