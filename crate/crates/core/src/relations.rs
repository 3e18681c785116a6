//! Compact relations, adherent, closed, perfect and quotient maps, compactly
//! meshable filters and relations, and the two range theorems.
//!
//! Predicates return the first refuter in bitmask order. Class memberships are
//! passed in as kernel sets (or compact tables built from them) so that each
//! caller decides which space a class is evaluated at.

use std::fmt;
use std::sync::Arc;

use crate::classes::{self, ClassCache, FilterClass, KernelSet};
use crate::compactness::CompactTable;
use crate::error::{Error, Result};
use crate::family::{FamilyOfSets, Filter, GroundSet, Relation, Subset};
use crate::outcome::Outcome;
use crate::space::FiniteSpace;

/// `(A, F)` with `F` compact at `A` in the domain and `RF` not compact at `RA`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationRefuter {
    pub at: Subset,
    pub filter: Filter,
}

/// Definitional `D`-compactness of `R`: for every `A ⊆ X` and every filter
/// `F` compact at `A` in `ξ`, `RF` is compact at `RA` in `τ`.
pub fn compact_relation_refuter(r: &Relation, dom: &CompactTable, cod: &CompactTable) -> Option<RelationRefuter> {
    let n = r.domain_size();
    for a in Subset::all(n) {
        let ra = r.image_set(a);
        for k in Subset::all(n) {
            if dom.is_compact_at_set(k, a) && !cod.is_compact_at_set(r.image_set(k), ra) {
                return Some(RelationRefuter { at: a, filter: Filter::principal(k) });
            }
        }
    }
    None
}

/// Point criterion: `RF` is compact at `Rx` whenever `x ∈ lim_ξ F`.
/// The refuter's `at` is the singleton `{x}`.
pub fn point_criterion_refuter(r: &Relation, xi: &FiniteSpace, cod: &CompactTable) -> Option<RelationRefuter> {
    let n = r.domain_size();
    for k in Subset::all(n) {
        let rk = r.image_set(k);
        for x in xi.lim_set(k).iter() {
            if !cod.is_compact_at_set(rk, r.row(x)) {
                return Some(RelationRefuter { at: Subset::singleton(n, x), filter: Filter::principal(k) });
            }
        }
    }
    None
}

pub fn is_compact_relation(r: &Relation, class: &FilterClass, xi: &FiniteSpace, tau: &FiniteSpace) -> Result<bool> {
    check_relation(r, xi, tau)?;
    let cache = ClassCache::global();
    let dom = CompactTable::new(xi, &cache.members(class, xi));
    let cod = CompactTable::new(tau, &cache.members(class, tau));
    let def = compact_relation_refuter(r, &dom, &cod).is_none();
    if classes::is_f1_composable(class) {
        let point = point_criterion_refuter(r, xi, &cod).is_none();
        if point != def {
            return Err(Error::Internal(format!("point criterion disagrees for class {class}")));
        }
    }
    Ok(def)
}

fn check_relation(r: &Relation, xi: &FiniteSpace, tau: &FiniteSpace) -> Result<()> {
    if r.domain_size() != xi.n() {
        return Err(Error::GroundMismatch { left: xi.n(), right: r.domain_size() });
    }
    if r.codomain_size() != tau.n() {
        return Err(Error::GroundMismatch { left: tau.n(), right: r.codomain_size() });
    }
    Ok(())
}

/// `(H, y)` with `y ∈ adh_τ f(H)` and `adh_ξ H ∩ f⁻y = ∅`.
pub fn adherent_refuter(f: &Relation, xi: &FiniteSpace, tau: &FiniteSpace) -> Option<(Subset, usize)> {
    let fiber = |y: usize| f.preimage_set(Subset::singleton(tau.n(), y));
    for h in Subset::all(xi.n()) {
        let ah = xi.adh_set(h);
        for y in tau.adh_set(f.image_set(h)).iter() {
            if !ah.meets(fiber(y)) {
                return Some((h, y));
            }
        }
    }
    None
}

pub fn is_adherent(f: &Relation, xi: &FiniteSpace, tau: &FiniteSpace) -> Result<bool> {
    check_map(f, xi, tau)?;
    Ok(adherent_refuter(f, xi, tau).is_none())
}

/// A closed set whose image is not closed.
pub fn closed_map_refuter(f: &Relation, xi: &FiniteSpace, tau: &FiniteSpace) -> Option<Subset> {
    xi.closed_sets().into_iter().find(|&h| !tau.is_closed(f.image_set(h)))
}

pub fn is_closed_map(f: &Relation, xi: &FiniteSpace, tau: &FiniteSpace) -> Result<bool> {
    check_map(f, xi, tau)?;
    Ok(closed_map_refuter(f, xi, tau).is_none())
}

fn check_map(f: &Relation, xi: &FiniteSpace, tau: &FiniteSpace) -> Result<()> {
    check_relation(f, xi, tau)?;
    f.as_map().map(|_| ())
}

/// Upper semicontinuity between topologies, from open sets: for each `x` and
/// each open `U ⊇ Rx`, `{x' : Rx' ⊆ U}` is a neighborhood of `x`.
pub fn is_usc(r: &Relation, xi: &FiniteSpace, tau: &FiniteSpace) -> bool {
    let opens: Vec<Subset> = tau.closed_sets().into_iter().map(Subset::complement).collect();
    (0..xi.n()).all(|x| {
        let nb = xi.nbhd_kernel(x);
        opens.iter().filter(|u| r.row(x).is_subset_of(**u)).all(|&u| {
            let upper = (0..xi.n())
                .filter(|&z| r.row(z).is_subset_of(u))
                .fold(Subset::empty(xi.n()), |acc, z| acc.with(z));
            nb.is_subset_of(upper)
        })
    })
}

/// Fibers `f⁻y` that are not compact at themselves.
pub fn noncompact_fiber(f: &Relation, table: &CompactTable) -> Option<usize> {
    let m = f.codomain_size();
    (0..m).find(|&y| {
        let fib = f.preimage_set(Subset::singleton(m, y));
        !table.is_compact_at_set(fib, fib)
    })
}

/// Adherent with fibers compact for the class whose table is given.
pub fn is_perfect_with(f: &Relation, xi: &FiniteSpace, tau: &FiniteSpace, table: &CompactTable) -> Result<bool> {
    check_map(f, xi, tau)?;
    f.check_surjective()?;
    Ok(adherent_refuter(f, xi, tau).is_none() && noncompact_fiber(f, table).is_none())
}

pub fn is_d_perfect(f: &Relation, class: &FilterClass, xi: &FiniteSpace, tau: &FiniteSpace) -> Result<bool> {
    let table = CompactTable::new(xi, &ClassCache::global().members(class, xi));
    is_perfect_with(f, xi, tau, &table)
}

/// `(H, y)` with `H ∈ D`, `y ∈ adh_τ H` and `f⁻y ∩ adh_ξ f⁻H = ∅`.
pub fn quotient_refuter(f: &Relation, xi: &FiniteSpace, tau: &FiniteSpace, members: &KernelSet) -> Option<(Filter, usize)> {
    let m = tau.n();
    for h in members.iter() {
        let pre_adh = xi.adh_set(f.preimage_set(h));
        for y in tau.adh_set(h).iter() {
            if !pre_adh.meets(f.preimage_set(Subset::singleton(m, y))) {
                return Some((Filter::principal(h), y));
            }
        }
    }
    None
}

/// `D`-quotientness with `D` evaluated at the final convergence `fξ`.
pub fn is_d_quotient(f: &Relation, class: &FilterClass, xi: &FiniteSpace, tau: &FiniteSpace) -> Result<bool> {
    check_map(f, xi, tau)?;
    f.check_surjective()?;
    let fx = xi.final_(tau.ground().clone(), &f.as_map()?)?;
    let members = ClassCache::global().members(class, &fx);
    Ok(quotient_refuter(f, xi, tau, &members).is_none())
}

/// The three characterizations of `D`-quotientness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCheck {
    pub quotient: bool,
    pub adh_form: bool,
    pub relation_form: bool,
    pub refuter: Option<(Filter, usize)>,
}

impl QuotientCheck {
    pub fn agree(&self) -> bool {
        self.quotient == self.adh_form && self.quotient == self.relation_form
    }
}

/// Evaluates `D`-quotientness, `τ ≥ Adh_D fξ`, and `D`-compactness of
/// `f : (X, f⁻τ) → (Y, fξ)`, with `D` read at the final convergence on the
/// range and at the initial convergence on the domain.
pub fn quotient_characterizations(
    f: &[usize],
    xi: &FiniteSpace,
    tau: &FiniteSpace,
    class: &FilterClass,
) -> Result<QuotientCheck> {
    let rel = Relation::from_map(tau.n(), f)?;
    rel.check_surjective()?;
    let cache = ClassCache::global();
    let fx = xi.final_(tau.ground().clone(), f)?;
    let init = FiniteSpace::initial(tau, xi.ground().clone(), f)?;
    let d_fx = cache.members(class, &fx);
    let refuter = quotient_refuter(&rel, xi, tau, &d_fx);
    let adh = classes::adh_point_limits(&fx, &d_fx);
    let adh_form = tau.pointlims().iter().zip(&adh).all(|(a, b)| a.is_subset_of(*b));
    let dom = CompactTable::new(&init, &cache.members(class, &init));
    let cod = CompactTable::new(&fx, &d_fx);
    let relation_form = compact_relation_refuter(&rel, &dom, &cod).is_none();
    Ok(QuotientCheck { quotient: refuter.is_none(), adh_form, relation_form, refuter })
}

/// `J ∈ J`, `J # F` implies some `D ∈ D` with `D # J` that is compact at `A`
/// for the class tabulated in `m`. Returns the first `J` with no witness.
pub fn meshable_refuter(f: Subset, at: Subset, j: &KernelSet, d: &KernelSet, m: &CompactTable) -> Option<Filter> {
    j.iter()
        .filter(|jk| jk.meets(f))
        .find(|&jk| !d.iter().any(|dk| dk.meets(jk) && m.is_compact_at_set(dk, at)))
        .map(Filter::principal)
}

pub fn is_meshable_filter(f: Filter, at: Subset, j: &KernelSet, d: &KernelSet, m: &CompactTable) -> bool {
    meshable_refuter(f.kernel(), at, j, d, m).is_none()
}

/// Family-level form: `F` and `A` arbitrary families.
pub fn is_meshable_family(
    space: &FiniteSpace,
    f: &FamilyOfSets,
    at: &FamilyOfSets,
    j: &KernelSet,
    d: &KernelSet,
    m: &KernelSet,
) -> bool {
    j.filters().filter(|jf| jf.as_family().mesh(f)).all(|jf| {
        d.filters()
            .any(|df| df.mesh(jf) && crate::compactness::compact_verdict(space, m, &df.as_family(), at).holds())
    })
}

/// `(x, F, J)`: `x ∈ lim_ξ F` and `J` refutes meshability of `RF` at `Rx`.
pub fn meshable_relation_refuter(
    r: &Relation,
    xi: &FiniteSpace,
    j: &KernelSet,
    d: &KernelSet,
    m: &CompactTable,
) -> Option<(usize, Filter, Filter)> {
    for k in Subset::all(r.domain_size()) {
        let rk = r.image_set(k);
        for x in xi.lim_set(k).iter() {
            if let Some(jf) = meshable_refuter(rk, r.row(x), j, d, m) {
                return Some((x, Filter::principal(k), jf));
            }
        }
    }
    None
}

/// Both sides of a range theorem and how they compare.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub outcome: Outcome,
    pub lhs: Option<bool>,
    pub rhs: Option<bool>,
    pub note: String,
}

impl TheoremReport {
    fn not_applicable(note: impl Into<String>) -> Self {
        TheoremReport { outcome: Outcome::NotApplicable, lhs: None, rhs: None, note: note.into() }
    }

    fn compare(lhs: bool, rhs: bool, note: String) -> Self {
        TheoremReport { outcome: Outcome::from_bool(lhs == rhs), lhs: Some(lhs), rhs: Some(rhs), note }
    }
}

fn map_hypotheses(f: &[usize], xi: &FiniteSpace, tau: &FiniteSpace) -> Result<Option<String>> {
    let rel = Relation::from_map(tau.n(), f)?;
    if !rel.is_surjective() {
        return Ok(Some("map is not surjective".into()));
    }
    if !xi.is_continuous(f, tau) {
        return Ok(Some("map is not continuous".into()));
    }
    Ok(None)
}

fn require_inclusion(inner: &KernelSet, outer: &KernelSet, mi: &FilterClass, jo: &FilterClass) -> Result<()> {
    if inner.is_subset_of(outer) {
        Ok(())
    } else {
        Err(Error::ClassInclusion { inner: mi.to_string(), outer: jo.to_string() })
    }
}

/// Quotient range theorem. `M` is read at `fξ` for quotientness and
/// compactness on the range, at `τ` for `τ = Adh_M τ`; `J` and `D` are read at
/// `τ`. The inclusion `M(fξ) ⊆ J(τ)` is checked and its failure is an error.
pub fn theorem_mquot_range(
    f: &[usize],
    xi: &FiniteSpace,
    tau: &FiniteSpace,
    m: &FilterClass,
    j: &FilterClass,
    d: &FilterClass,
) -> Result<TheoremReport> {
    if let Some(why) = map_hypotheses(f, xi, tau)? {
        return Ok(TheoremReport::not_applicable(why));
    }
    let cache = ClassCache::global();
    let fx = xi.final_(tau.ground().clone(), f)?;
    let m_fx = cache.members(m, &fx);
    let m_tau = cache.members(m, tau);
    let j_tau = cache.members(j, tau);
    let d_tau = cache.members(d, tau);
    require_inclusion(&m_fx, &j_tau, m, j)?;
    if classes::adh_point_limits(tau, &m_tau) != tau.pointlims() {
        return Ok(TheoremReport::not_applicable(format!("range is not {m}-adherence-fixed")));
    }
    let rel = Relation::from_map(tau.n(), f)?;
    let quotient = quotient_refuter(&rel, xi, tau, &m_fx).is_none();
    let accessible = classes::accessibility_refuter(tau, &j_tau, &d_tau)?.is_none();
    let init = FiniteSpace::initial(tau, xi.ground().clone(), f)?;
    let m_table = CompactTable::new(&fx, &m_fx);
    let meshable = meshable_relation_refuter(&rel, &init, &j_tau, &d_tau, &m_table).is_none();
    Ok(TheoremReport::compare(
        quotient && accessible,
        meshable,
        format!("quotient={quotient} accessible={accessible} meshable={meshable}"),
    ))
}

/// Perfect range theorem. All classes are read at the space carrying the
/// filters: `M`, `J`, `D` at `ξ` for the inverse relation, `J`, `D` at `τ`
/// for accessibility of the range, `M` at `τ` for `τ = Adh_M τ`.
pub fn theorem_mperfect_range(
    f: &[usize],
    xi: &FiniteSpace,
    tau: &FiniteSpace,
    m: &FilterClass,
    j: &FilterClass,
    d: &FilterClass,
) -> Result<TheoremReport> {
    if let Some(why) = map_hypotheses(f, xi, tau)? {
        return Ok(TheoremReport::not_applicable(why));
    }
    for c in [j, d] {
        if !classes::is_f1_composable(c) {
            return Ok(TheoremReport::not_applicable(format!("{c} is not F1-composable")));
        }
    }
    let cache = ClassCache::global();
    let m_xi = cache.members(m, xi);
    let j_xi = cache.members(j, xi);
    let d_xi = cache.members(d, xi);
    let m_tau = cache.members(m, tau);
    let j_tau = cache.members(j, tau);
    let d_tau = cache.members(d, tau);
    require_inclusion(&m_xi, &j_xi, m, j)?;
    if classes::adh_point_limits(tau, &m_tau) != tau.pointlims() {
        return Ok(TheoremReport::not_applicable(format!("range is not {m}-adherence-fixed")));
    }
    if !xi.is_p_diagonal() {
        return Ok(TheoremReport::not_applicable("domain is not P-diagonal"));
    }
    if !m.adh_stable(xi) {
        return Ok(TheoremReport::not_applicable(format!("adh does not preserve {m} in the domain")));
    }
    let rel = Relation::from_map(tau.n(), f)?;
    let m_table = CompactTable::new(xi, &m_xi);
    let perfect = is_perfect_with(&rel, xi, tau, &m_table)?;
    let accessible = classes::accessibility_refuter(tau, &j_tau, &d_tau)?.is_none();
    let inverse = rel.inverse();
    let meshable = meshable_relation_refuter(&inverse, tau, &j_xi, &d_xi, &m_table).is_none();
    Ok(TheoremReport::compare(
        perfect && accessible,
        meshable,
        format!("perfect={perfect} accessible={accessible} meshable={meshable}"),
    ))
}

/// A notion checked by [`classify_map`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Notion {
    Continuous,
    Adherent,
    Closed,
    CompactRelation(FilterClass),
    Perfect(FilterClass),
    Quotient(FilterClass),
    Meshable(FilterClass, FilterClass, FilterClass),
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Notion::Continuous => f.write_str("continuous"),
            Notion::Adherent => f.write_str("adherent"),
            Notion::Closed => f.write_str("closed"),
            Notion::CompactRelation(d) => write!(f, "compact-relation({d})"),
            Notion::Perfect(d) => write!(f, "perfect({d})"),
            Notion::Quotient(d) => write!(f, "quotient({d})"),
            Notion::Meshable(m, j, d) => write!(f, "meshable({m},{j},{d})"),
        }
    }
}

/// `Some(true/false)` or `None` for not applicable, with a witness or refuter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotionVerdict {
    pub notion: String,
    pub value: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapClassification {
    pub verdicts: Vec<NotionVerdict>,
}

impl MapClassification {
    pub fn get(&self, notion: &str) -> Option<&NotionVerdict> {
        self.verdicts.iter().find(|v| v.notion == notion)
    }
}

/// Classifies a map between two spaces for the given classes.
pub fn classify_map(f: &[usize], xi: &FiniteSpace, tau: &FiniteSpace, classes: &[FilterClass]) -> Result<MapClassification> {
    let rel = Relation::from_map(tau.n(), f)?;
    check_relation(&rel, xi, tau)?;
    let gx = xi.ground().clone();
    let gy = tau.ground().clone();
    let set = |g: &Arc<GroundSet>, s: Subset| g.render(s);
    let mut out = Vec::new();
    let push = |out: &mut Vec<NotionVerdict>, n: Notion, value: Option<bool>, detail: String| {
        out.push(NotionVerdict { notion: n.to_string(), value, detail })
    };

    match xi.continuity_refuter(f, tau) {
        None => push(&mut out, Notion::Continuous, Some(true), "f(L(x)) ⊆ L(f x) for every x".into()),
        Some(x) => push(
            &mut out,
            Notion::Continuous,
            Some(false),
            format!("{{{}}}↑ → {} but its image does not converge to {}", gx.name(x), gx.name(x), gy.name(f[x])),
        ),
    }
    match adherent_refuter(&rel, xi, tau) {
        None => push(&mut out, Notion::Adherent, Some(true), String::new()),
        Some((h, y)) => push(
            &mut out,
            Notion::Adherent,
            Some(false),
            format!("H={} has {} ∈ adh f(H) but adh H misses the fiber", set(&gx, h), gy.name(y)),
        ),
    }
    match closed_map_refuter(&rel, xi, tau) {
        None => push(&mut out, Notion::Closed, Some(true), String::new()),
        Some(h) => push(&mut out, Notion::Closed, Some(false), format!("closed {} has non-closed image", set(&gx, h))),
    }
    let surjective = rel.is_surjective();
    let cache = ClassCache::global();
    for class in classes {
        let dom = CompactTable::new(xi, &cache.members(class, xi));
        let cod = CompactTable::new(tau, &cache.members(class, tau));
        match compact_relation_refuter(&rel, &dom, &cod) {
            None => push(&mut out, Notion::CompactRelation(class.clone()), Some(true), String::new()),
            Some(r) => push(
                &mut out,
                Notion::CompactRelation(class.clone()),
                Some(false),
                format!("F={}↑ compact at {} but its image is not", set(&gx, r.filter.kernel()), set(&gx, r.at)),
            ),
        }
        if !surjective {
            push(&mut out, Notion::Perfect(class.clone()), None, "map is not surjective".into());
            push(&mut out, Notion::Quotient(class.clone()), None, "map is not surjective".into());
            continue;
        }
        let perfect = is_perfect_with(&rel, xi, tau, &dom)?;
        push(&mut out, Notion::Perfect(class.clone()), Some(perfect), String::new());
        let fx = xi.final_(gy.clone(), f)?;
        match quotient_refuter(&rel, xi, tau, &cache.members(class, &fx)) {
            None => push(&mut out, Notion::Quotient(class.clone()), Some(true), String::new()),
            Some((h, y)) => push(
                &mut out,
                Notion::Quotient(class.clone()),
                Some(false),
                format!("H={}↑ has {} in its adherence but no fiber point adheres to f⁻H", set(&gy, h.kernel()), gy.name(y)),
            ),
        }
    }
    if surjective {
        for m in classes {
            for j in classes {
                for d in classes {
                    let value = match theorem_mquot_range(f, xi, tau, m, j, d) {
                        Ok(r) => r.rhs,
                        Err(Error::ClassInclusion { .. }) => None,
                        Err(e) => return Err(e),
                    };
                    push(&mut out, Notion::Meshable(m.clone(), j.clone(), d.clone()), value, String::new());
                }
            }
        }
    }
    Ok(MapClassification { verdicts: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteSpace {
        FiniteSpace::from_masks(&[0b001, 0b011, 0b110]).unwrap()
    }

    fn two() -> FiniteSpace {
        FiniteSpace::from_masks(&[0b01, 0b11]).unwrap()
    }

    #[test]
    fn identity_is_everything() {
        let sp = s3();
        let id = Relation::identity(3);
        for c in [FilterClass::F1, FilterClass::ClF1, FilterClass::F] {
            assert!(is_compact_relation(&id, &c, &sp, &sp).unwrap());
            assert!(is_d_perfect(&id, &c, &sp, &sp).unwrap());
            assert!(is_d_quotient(&id, &c, &sp, &sp).unwrap());
        }
        assert!(is_adherent(&id, &sp, &sp).unwrap());
        assert!(is_closed_map(&id, &sp, &sp).unwrap());
    }

    #[test]
    fn s3_collapse_map_into_two_points() {
        let sp = s3();
        let f = Relation::from_map(2, &[0, 0, 1]).unwrap();
        let tau = two();
        assert!(sp.is_continuous(&[0, 0, 1], &tau));
        assert!(is_compact_relation(&f, &FilterClass::F1, &sp, &tau).unwrap());
        let back = FiniteSpace::from_masks(&[0b01, 0b10]).unwrap();
        assert!(!sp.is_continuous(&[0, 0, 1], &back));
        let dom = CompactTable::new(&sp, &KernelSet::all(3));
        let cod = CompactTable::new(&back, &KernelSet::all(2));
        assert!(compact_relation_refuter(&f, &dom, &cod).is_some());
    }

    #[test]
    fn maps_reject_multivalued_input() {
        let sp = s3();
        let r = Relation::from_rows(3, vec![Subset::full(3); 3]).unwrap();
        assert!(matches!(is_closed_map(&r, &sp, &sp), Err(Error::NotAMap(0, 3))));
    }

    #[test]
    fn non_surjective_perfect_is_error() {
        let sp = s3();
        let f = Relation::from_map(3, &[0, 0, 1]).unwrap();
        assert!(matches!(is_d_perfect(&f, &FilterClass::F1, &sp, &sp), Err(Error::NotSurjective(2))));
    }

    #[test]
    fn quotient_characterizations_agree_on_identity() {
        let sp = s3();
        for c in [FilterClass::F1, FilterClass::ClF1] {
            let q = quotient_characterizations(&[0, 1, 2], &sp, &sp, &c).unwrap();
            assert!(q.quotient && q.agree());
        }
    }

    #[test]
    fn range_theorems_on_identity() {
        let t = s3().topologize();
        let r = theorem_mquot_range(&[0, 1, 2], &t, &t, &FilterClass::F1, &FilterClass::F1, &FilterClass::F1).unwrap();
        assert_eq!(r.outcome, Outcome::Holds);
        assert_eq!((r.lhs, r.rhs), (Some(true), Some(true)));
        let r = theorem_mperfect_range(&[0, 1, 2], &t, &t, &FilterClass::F1, &FilterClass::F1, &FilterClass::F1).unwrap();
        assert_eq!(r.outcome, Outcome::Holds);
    }

    #[test]
    fn usc_of_identity() {
        let t = s3().topologize();
        assert!(is_usc(&Relation::identity(3), &t, &t));
    }

    #[test]
    fn classify_identity() {
        let sp = s3();
        let c = classify_map(&[0, 1, 2], &sp, &sp, &[FilterClass::F1]).unwrap();
        assert!(c.verdicts.iter().all(|v| v.value == Some(true)), "{c:?}");
    }
}
