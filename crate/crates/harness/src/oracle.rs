//! Definitional oracles.
//!
//! Everything here works on families of sets and the raw point-limit data of
//! a space, and shares nothing with the optimized paths beyond [`Subset`].
//! A family on at most six points is a bitset over the `2^n` masks.

use convkit_core::cascade::Multifilter;
use convkit_core::{FiniteSpace, FilterClass, Subset};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fam {
    n: u8,
    bits: u64,
}

impl Fam {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 6, "oracle families live on at most six points");
        Fam { n: n as u8, bits: 0 }
    }

    /// `{s}↑`.
    pub fn up(s: Subset) -> Self {
        let n = s.ground_size();
        let mut out = Fam::empty(n);
        for t in 0..1u32 << n {
            if t & s.bits() == s.bits() {
                out.bits |= 1 << t;
            }
        }
        out
    }

    /// Up-closure of arbitrary sets.
    pub fn up_of(n: usize, sets: impl IntoIterator<Item = Subset>) -> Self {
        sets.into_iter().fold(Fam::empty(n), |acc, s| acc.or(Fam::up(s)))
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    pub fn contains(self, s: Subset) -> bool {
        self.bits >> s.bits() & 1 == 1
    }

    pub fn members(self) -> impl Iterator<Item = Subset> {
        let n = self.n as usize;
        (0..1u32 << n).filter(move |&t| self.bits >> t & 1 == 1).map(move |t| Subset::raw(n, t))
    }

    pub fn and(self, other: Fam) -> Fam {
        Fam { n: self.n, bits: self.bits & other.bits }
    }

    pub fn or(self, other: Fam) -> Fam {
        Fam { n: self.n, bits: self.bits | other.bits }
    }

    pub fn is_subfamily_of(self, other: Fam) -> bool {
        self.bits & !other.bits == 0
    }

    /// Every member of one meets every member of the other.
    pub fn mesh(self, other: Fam) -> bool {
        // no member of `other` lies inside the complement of a member of `self`
        self.members().all(|a| {
            let rest = a.complement().bits();
            let mut s = rest;
            loop {
                if other.bits >> s & 1 == 1 {
                    return false;
                }
                if s == 0 {
                    return true;
                }
                s = (s - 1) & rest;
            }
        })
    }

    /// The filter generated: closure under finite intersections, then up.
    pub fn generated(self) -> Fam {
        let mut cur = self;
        loop {
            let mut next = cur;
            for a in cur.members() {
                for b in cur.members() {
                    next = next.or(Fam::up(a.intersection(b)));
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Image family `{f(A) : A ∈ self}↑` under a map into `m` points.
    pub fn image(self, f: &[usize], m: usize) -> Fam {
        Fam::up_of(
            m,
            self.members().map(|a| a.iter().fold(Subset::empty(m), |acc, x| acc.with(f[x]))),
        )
    }

    /// The kernel of a filter family; `None` when the family is not a filter.
    pub fn kernel(self) -> Option<Subset> {
        let n = self.n as usize;
        let k = self.members().fold(Subset::full(n), |acc, s| acc.intersection(s));
        (self.bits != 0 && Fam::up(k) == self).then_some(k)
    }
}

/// Definitional limits and adherences of one space.
pub struct SpaceOracle {
    n: usize,
    vicinity: Vec<Fam>,
}

impl SpaceOracle {
    /// `V(x) = ⋀ {{y}↑ : {y}↑ → x}`, the coarsest filter converging to `x`.
    pub fn new(space: &FiniteSpace) -> Self {
        let n = space.n();
        let vicinity = (0..n)
            .map(|x| {
                let ys = (0..n).filter(|&y| space.pointlim(y).contains(x));
                ys.fold(Fam::up(Subset::empty(n)), |acc, y| acc.and(Fam::up(Subset::singleton(n, y))))
            })
            .collect();
        SpaceOracle { n, vicinity }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `x ∈ lim F` iff `F` is finer than `V(x)`.
    pub fn lim(&self, f: Fam) -> Subset {
        (0..self.n)
            .filter(|&x| self.vicinity[x].is_subfamily_of(f))
            .fold(Subset::empty(self.n), |acc, x| acc.with(x))
    }

    /// `adh F = ⋃ {lim G : G # F}` over every filter `G`.
    pub fn adh(&self, f: Fam) -> Subset {
        Subset::all(self.n)
            .map(Fam::up)
            .filter(|g| g.mesh(f))
            .fold(Subset::empty(self.n), |acc, g| acc.union(self.lim(g)))
    }

    pub fn is_closed(&self, a: Subset) -> bool {
        self.adh(Fam::up(a)).is_subset_of(a)
    }

    /// Filters of a class as families, or `None` for classes without an oracle.
    pub fn class(&self, class: &FilterClass) -> Option<Vec<Fam>> {
        let n = self.n;
        match class {
            FilterClass::Degenerate => Some(vec![Fam::up(Subset::empty(n))]),
            c if c.is_all_kernels() => Some(Subset::all(n).map(Fam::up).collect()),
            FilterClass::ClF1 => Some(Subset::all(n).filter(|&a| self.is_closed(a)).map(Fam::up).collect()),
            _ => None,
        }
    }

    /// `lim_{Adh_D} F = ⋂ {adh D : D ∈ D, D # F}`.
    pub fn adh_reflect(&self, members: &[Fam], f: Fam) -> Subset {
        members
            .iter()
            .filter(|d| d.mesh(f))
            .fold(Subset::full(self.n), |acc, &d| acc.intersection(self.adh(d)))
    }

    /// `lim_{Base_D} F = ⋃ {lim D : D ∈ D, D ≤ F}`.
    pub fn base(&self, members: &[Fam], f: Fam) -> Subset {
        members
            .iter()
            .filter(|d| d.is_subfamily_of(f))
            .fold(Subset::empty(self.n), |acc, &d| acc.union(self.lim(d)))
    }

    /// Members paired with their adherences, for [`SpaceOracle::compact_at`].
    pub fn with_adherences(&self, members: &[Fam]) -> Vec<(Fam, Subset)> {
        members.iter().map(|&d| (d, self.adh(d))).collect()
    }

    /// `F` is `D`-compact at `A`: `D ∈ D` and `D # F` imply `adh D ∩ A ≠ ∅`.
    pub fn compact_at(&self, members: &[(Fam, Subset)], f: Fam, a: Subset) -> bool {
        members.iter().filter(|(d, _)| d.mesh(f)).all(|(_, adh)| adh.meets(a))
    }

    /// Limits of every principal filter, indexed by kernel mask.
    pub fn lim_table(&self) -> Vec<Subset> {
        Subset::all(self.n).map(|k| self.lim(Fam::up(k))).collect()
    }
}

/// `f` is continuous: `f(lim F) ⊆ lim fF` for every filter `F`.
pub fn is_continuous(dom: &SpaceOracle, f: &[usize], cod: &SpaceOracle) -> bool {
    let m = cod.n();
    Subset::all(dom.n()).map(Fam::up).all(|fam| {
        let image_of_lim = dom.lim(fam).iter().fold(Subset::empty(m), |acc, x| acc.with(f[x]));
        image_of_lim.is_subset_of(cod.lim(fam.image(f, m)))
    })
}

/// Among `candidates`, the one finer than every other, compared by limits of
/// every filter. `None` when no candidate is finest.
pub fn finest(candidates: &[(usize, Vec<Subset>)]) -> Option<usize> {
    let finer = |a: &[Subset], b: &[Subset]| a.iter().zip(b).all(|(x, y)| x.is_subset_of(*y));
    let (best, table) = candidates.iter().fold(None::<&(usize, Vec<Subset>)>, |best, c| match best {
        Some(b) if !finer(&c.1, &b.1) => Some(b),
        _ => Some(c),
    })?;
    candidates.iter().all(|(_, t)| finer(table, t)).then_some(*best)
}

/// The coarsest candidate.
pub fn coarsest(candidates: &[(usize, Vec<Subset>)]) -> Option<usize> {
    let coarser = |a: &[Subset], b: &[Subset]| b.iter().zip(a).all(|(x, y)| x.is_subset_of(*y));
    let (best, table) = candidates.iter().fold(None::<&(usize, Vec<Subset>)>, |best, c| match best {
        Some(b) if !coarser(&c.1, &b.1) => Some(b),
        _ => Some(c),
    })?;
    candidates.iter().all(|(_, t)| coarser(table, t)).then_some(*best)
}

/// `∫_F G = ⋁_{M∈F} ⋀_{x∈M} G(x)` from families.
pub fn contour_along(f: Fam, g: &[Fam]) -> Fam {
    let m = g.first().map_or(0, |h| h.n());
    let mut joined = Fam::empty(m);
    for big in f.members() {
        let meet = big.iter().fold(Fam::up(Subset::empty(m)), |acc, x| acc.and(g[x]));
        joined = joined.or(meet);
    }
    joined.generated()
}

/// Contour of a multifilter by recursion on the tree, each step a family
/// contour.
pub fn contour(phi: &Multifilter) -> Fam {
    fn at(phi: &Multifilter, v: usize) -> Fam {
        let node = &phi.cascade().nodes()[v];
        match node.filter {
            None => Fam::up(Subset::singleton(phi.ground_size(), phi.labels()[v])),
            Some(k) => {
                let children: Vec<Fam> = node.children.iter().map(|&c| at(phi, c)).collect();
                contour_along(Fam::up(k), &children)
            }
        }
    }
    at(phi, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, idx: &[usize]) -> Subset {
        Subset::from_indices(n, idx.iter().copied()).unwrap()
    }

    #[test]
    fn families() {
        let a = Fam::up(s(3, &[0, 1]));
        assert_eq!(a.members().count(), 2);
        assert_eq!(a.kernel(), Some(s(3, &[0, 1])));
        let two = Fam::up(s(3, &[0])).or(Fam::up(s(3, &[1])));
        assert_eq!(two.kernel(), None);
        assert_eq!(two.generated(), Fam::up(Subset::empty(3)));
        assert!(a.mesh(Fam::up(s(3, &[1, 2]))));
        assert!(!a.mesh(Fam::up(s(3, &[2]))));
    }

    #[test]
    fn sierpinski() {
        // b → a, nothing else
        let sp = FiniteSpace::from_masks(&[0b01, 0b11]).unwrap();
        let o = SpaceOracle::new(&sp);
        assert_eq!(o.lim(Fam::up(s(2, &[1]))), s(2, &[0, 1]));
        assert_eq!(o.lim(Fam::up(s(2, &[0, 1]))), s(2, &[0]));
        assert_eq!(o.adh(Fam::up(s(2, &[0]))), s(2, &[0]));
        assert!(o.is_closed(s(2, &[0])));
        assert!(!o.is_closed(s(2, &[1])));
    }

    #[test]
    fn contour_of_two_points() {
        let f = Fam::up(s(2, &[0, 1]));
        let g = [Fam::up(s(3, &[2])), Fam::up(s(3, &[0]))];
        assert_eq!(contour_along(f, &g).kernel(), Some(s(3, &[0, 2])));
    }
}
