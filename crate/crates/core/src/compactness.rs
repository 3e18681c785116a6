//! Compactness of filters and families at families, relative compactness,
//! covers, and the bridge through vicinity filters.

use crate::classes::KernelSet;
use crate::error::{Error, Result};
use crate::family::{FamilyOfSets, Filter, Subset};
use crate::outcome::Verdict;
use crate::space::{Convergence, FiniteSpace};

/// For each kernel `k`, the minimal adherences of the class members meshing `k`,
/// each with the first member realizing it. `adh D # A` is monotone in
/// `adh D`, so the minimal ones decide compactness at any family.
#[derive(Clone, Debug)]
pub struct CompactTable {
    n: u8,
    rows: Vec<Vec<(Subset, Subset)>>,
}

impl CompactTable {
    pub fn new<C: Convergence>(conv: &C, members: &KernelSet) -> Self {
        let n = conv.size();
        let adh: Vec<(Subset, Subset)> = members.iter().map(|d| (d, conv.adh_kernel(d))).collect();
        let rows = Subset::all(n)
            .map(|k| {
                let mut row: Vec<(Subset, Subset)> = Vec::new();
                for &(d, a) in adh.iter().filter(|(d, _)| d.meets(k)) {
                    if row.iter().any(|(_, b)| b.is_subset_of(a)) {
                        continue;
                    }
                    row.retain(|(_, b)| !a.is_subset_of(*b));
                    row.push((d, a));
                }
                row.sort_by_key(|(d, _)| *d);
                row
            })
            .collect();
        CompactTable { n: n as u8, rows }
    }

    pub fn ground_size(&self) -> usize {
        self.n as usize
    }

    /// `(D, adh D)` pairs, minimal in adherence, for members meshing `k`.
    pub fn minimal_adherences(&self, k: Subset) -> &[(Subset, Subset)] {
        &self.rows[k.bits() as usize]
    }

    #[inline]
    pub fn at_set(&self, k: Subset, a: Subset) -> Verdict {
        let row = &self.rows[k.bits() as usize];
        if row.is_empty() {
            return Verdict::Vacuous;
        }
        match row.iter().find(|(_, adh)| !adh.meets(a)) {
            Some(&(d, _)) => Verdict::Refuted(d),
            None => Verdict::Witnessed,
        }
    }

    #[inline]
    pub fn is_compact_at_set(&self, k: Subset, a: Subset) -> bool {
        self.rows[k.bits() as usize].iter().all(|(_, adh)| adh.meets(a))
    }

    #[inline]
    pub fn is_compact_at_point(&self, k: Subset, x: usize) -> bool {
        self.rows[k.bits() as usize].iter().all(|(_, adh)| adh.contains(x))
    }

    pub fn at_family(&self, k: Subset, a: &FamilyOfSets) -> Verdict {
        let row = &self.rows[k.bits() as usize];
        if row.is_empty() {
            return Verdict::Vacuous;
        }
        match row.iter().find(|(_, adh)| !a.meshes_set(*adh)) {
            Some(&(d, _)) => Verdict::Refuted(d),
            None => Verdict::Witnessed,
        }
    }
}

/// `F` is `D`-compact at `A`: every member `D` meshing `F` has `adh D # A`.
/// `F` may be any family of sets; `A` is a family (wrap a set with
/// [`FamilyOfSets::principal`]).
pub fn compact_verdict(space: &FiniteSpace, members: &KernelSet, subject: &FamilyOfSets, at: &FamilyOfSets) -> Verdict {
    let mut exercised = false;
    for d in members.iter() {
        if !Filter::principal(d).as_family().mesh(subject) {
            continue;
        }
        exercised = true;
        if !at.meshes_set(space.adh_set(d)) {
            return Verdict::Refuted(d);
        }
    }
    if exercised {
        Verdict::Witnessed
    } else {
        Verdict::Vacuous
    }
}

pub fn is_compact_at(space: &FiniteSpace, members: &KernelSet, f: Filter, at: &FamilyOfSets) -> bool {
    compact_verdict(space, members, &f.as_family(), at).holds()
}

/// `F` is `(D/J)`-compact at `B`: for `D ∈ D`, if every `J`-filter `J ≤ D`
/// has `adh J # F`, then `adh D # B`.
///
/// When `J` holds every kernel the hypothesis reads `adh♮D # F`, which is
/// `D # V(F)`; in debug builds the result is compared with `D`-compactness of
/// `V(F)`.
pub fn dj_compact_verdict(
    space: &FiniteSpace,
    d_members: &KernelSet,
    j_members: &KernelSet,
    f: Filter,
    b: &FamilyOfSets,
) -> Verdict {
    let mut exercised = false;
    let mut out = None;
    for d in d_members.iter() {
        let hyp = j_members
            .iter()
            .filter(|j| d.is_subset_of(*j))
            .all(|j| space.adh_set(j).meets(f.kernel()));
        if !hyp {
            continue;
        }
        exercised = true;
        if !b.meshes_set(space.adh_set(d)) {
            out = Some(Verdict::Refuted(d));
            break;
        }
    }
    let verdict = out.unwrap_or(if exercised { Verdict::Witnessed } else { Verdict::Vacuous });
    debug_assert!(
        j_members.len() != 1 << space.n()
            || verdict.holds()
                == compact_verdict(space, d_members, &space.vicinity_of_filter(f).as_family(), b).holds(),
        "relative compactness disagrees with compactness of the vicinity filter"
    );
    verdict
}

/// A family of sets used as a cover; kept as a list because covering depends
/// on the listed sets, not on their up-closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub sets: Vec<Subset>,
}

impl Cover {
    /// Every filter converging to a point of `k` contains a listed set.
    pub fn covers(&self, space: &FiniteSpace, k: Subset) -> bool {
        Subset::all(space.n())
            .filter(|&g| space.lim_set(g).meets(k))
            .all(|g| self.sets.iter().any(|s| g.is_subset_of(*s)))
    }
}

/// Largest ground on which additive covers are enumerated definitionally.
pub const COVER_ENUM_MAX: usize = 4;

/// Cover-compactness by quantifying all additive covers: each additive cover
/// of `k` has an element that alone covers `k`. Returns `None` past
/// [`COVER_ENUM_MAX`] points. Families are bitmasks over the `2^n` subsets.
pub fn cover_compact_by_covers(space: &FiniteSpace, k: Subset) -> Option<bool> {
    let n = space.n();
    if n > COVER_ENUM_MAX {
        return None;
    }
    let m = 1usize << n;
    let full: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let single_covers: Vec<bool> = Subset::all(n).map(|s| Cover { sets: vec![s] }.covers(space, k)).collect();
    let mut fam: u64 = 0;
    loop {
        fam = fam.wrapping_add(1) & full;
        if fam == 0 {
            return Some(true);
        }
        if !is_union_closed(fam, m) {
            continue;
        }
        let sets: Vec<Subset> = (0..m).filter(|i| fam >> i & 1 == 1).map(|i| Subset::raw(n, i as u32)).collect();
        if (Cover { sets: sets.clone() }).covers(space, k) && !sets.iter().any(|s| single_covers[s.bits() as usize]) {
            return Some(false);
        }
    }
}

fn is_union_closed(fam: u64, m: usize) -> bool {
    let mut rest = fam;
    while rest != 0 {
        let a = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut others = fam;
        while others != 0 {
            let b = others.trailing_zeros() as usize;
            others &= others - 1;
            if fam >> (a | b) & 1 == 0 {
                return false;
            }
        }
    }
    let _ = m;
    true
}

/// The filter form: every filter whose every member has adherent points in
/// `k` has adherent points in `k`.
pub fn cover_compact_by_filters(space: &FiniteSpace, k: Subset) -> bool {
    let n = space.n();
    Subset::all(n).all(|g| {
        let every_member = Subset::all(n).filter(|m| g.is_subset_of(*m)).all(|m| space.adh_set(m).meets(k));
        !every_member || space.adh_set(g).meets(k)
    })
}

/// Cover-compactness (or cover-countable compactness; every cover of a finite
/// set is countable, so the flag changes nothing). Both characterizations are
/// computed when the definitional one is in range, and must agree.
pub fn is_cover_compact(space: &FiniteSpace, k: Subset, _countable: bool) -> Result<bool> {
    let by_filters = cover_compact_by_filters(space, k);
    match cover_compact_by_covers(space, k) {
        Some(by_covers) if by_covers != by_filters => Err(Error::Internal(format!(
            "cover and filter forms of cover-compactness disagree at {k:?} in {}",
            space.render()
        ))),
        _ => Ok(by_filters),
    }
}

/// Compactness of a set: `{K}↑` is compact at `K` for the class of all filters.
pub fn is_compact_set(space: &FiniteSpace, k: Subset) -> bool {
    let all = KernelSet::all(space.n());
    is_compact_at(space, &all, Filter::principal(k), &FamilyOfSets::principal(k))
}

/// The bridge statements on one space and class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdiagBridge {
    pub p_diagonal: bool,
    pub adh_stable: bool,
    /// Whether `D`-compactness and `(D/F1)`-compactness agree at every filter and set.
    pub equivalence: bool,
    /// Whether `ξ = Adh_D ξ`.
    pub adh_fixed: bool,
    /// First `(F, B)` where `D`-compactness holds and `(D/F1)`-compactness fails.
    pub gap: Option<(Filter, Subset)>,
}

pub fn pdiag_bridge(space: &FiniteSpace, members: &KernelSet) -> PdiagBridge {
    let n = space.n();
    let all = KernelSet::all(n);
    let table = CompactTable::new(space, members);
    let mut gap = None;
    let mut equivalence = true;
    'outer: for f in Filter::all(n) {
        for b in Subset::all(n) {
            let plain = table.is_compact_at_set(f.kernel(), b);
            let rel = dj_compact_verdict(space, members, &all, f, &FamilyOfSets::principal(b)).holds();
            if plain != rel {
                equivalence = false;
                if plain && !rel {
                    gap = Some((f, b));
                    break 'outer;
                }
            }
        }
    }
    let adh_stable = members.iter().all(|d| members.contains(space.adh_set(d)));
    let adh_fixed = crate::classes::adh_point_limits(space, members) == space.pointlims();
    PdiagBridge { p_diagonal: space.is_p_diagonal(), adh_stable, equivalence, adh_fixed, gap }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::FilterClass;

    fn s3() -> FiniteSpace {
        FiniteSpace::from_masks(&[0b001, 0b011, 0b110]).unwrap()
    }

    fn s(idx: &[usize]) -> Subset {
        Subset::from_indices(3, idx.iter().copied()).unwrap()
    }

    #[test]
    fn s3_point_c_compact_at_b() {
        let sp = s3();
        let all = KernelSet::all(3);
        let v = compact_verdict(&sp, &all, &Filter::point(3, 2).as_family(), &FamilyOfSets::principal(s(&[1])));
        assert_eq!(v, Verdict::Witnessed);
        let table = CompactTable::new(&sp, &all);
        assert_eq!(table.at_set(s(&[2]), s(&[1])), Verdict::Witnessed);
        assert_eq!(table.at_set(s(&[2]), s(&[0])), Verdict::Refuted(s(&[2])));
        assert_eq!(table.at_set(s(&[]), s(&[0])), Verdict::Vacuous);
    }

    #[test]
    fn point_filter_compact_at_itself() {
        let sp = s3();
        let all = KernelSet::all(3);
        for x in 0..3 {
            assert!(is_compact_at(&sp, &all, Filter::point(3, x), &Filter::point(3, x).as_family()));
        }
    }

    #[test]
    fn relative_compactness_implies_compactness() {
        let sp = s3();
        let all = KernelSet::all(3);
        let table = CompactTable::new(&sp, &all);
        for f in Filter::all(3) {
            for b in Subset::all(3) {
                if dj_compact_verdict(&sp, &all, &all, f, &FamilyOfSets::principal(b)).holds() {
                    assert!(table.is_compact_at_set(f.kernel(), b));
                }
            }
        }
    }

    #[test]
    fn s3_has_a_relative_compactness_gap() {
        let br = pdiag_bridge(&s3(), &KernelSet::all(3));
        assert!(!br.p_diagonal);
        assert!(br.adh_stable && br.adh_fixed);
        assert!(br.gap.is_some());
    }

    #[test]
    fn covers() {
        let sp = s3();
        assert!(Cover { sets: vec![Subset::full(3)] }.covers(&sp, s(&[0, 2])));
        for k in Subset::all(3) {
            assert!(is_cover_compact(&sp, k, false).unwrap());
            assert!(is_compact_set(&sp, k));
        }
        let one = FiniteSpace::from_masks(&[1]).unwrap();
        for k in Subset::all(1) {
            assert!(is_cover_compact(&one, k, true).unwrap());
        }
    }

    #[test]
    fn table_matches_definition() {
        let sp = s3();
        let m = FilterClass::ClF1.members(&sp);
        let table = CompactTable::new(&sp, &m);
        for f in Filter::all(3) {
            for a in Subset::all(3) {
                let def = compact_verdict(&sp, &m, &f.as_family(), &FamilyOfSets::principal(a));
                assert_eq!(table.at_set(f.kernel(), a).holds(), def.holds());
            }
        }
    }
}
