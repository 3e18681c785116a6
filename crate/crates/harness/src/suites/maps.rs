//! Suites quantified over maps and relations between pairs of spaces.

use std::sync::Arc;

use convkit_core::classes::{adh_point_limits, is_f1_composable};
use convkit_core::compactness::{dj_compact_verdict, CompactTable};
use convkit_core::relations::{
    adherent_refuter, closed_map_refuter, compact_relation_refuter, is_d_quotient, is_perfect_with, is_usc,
    point_criterion_refuter, quotient_characterizations, quotient_refuter, theorem_mperfect_range,
    theorem_mquot_range, TheoremReport,
};
use convkit_core::{Error, FamilyOfSets, FiniteSpace, FilterClass, KernelSet, Outcome, Relation, Subset};

use super::{members, par, show, triples, Bounds};
use crate::enumerate::{self, rng_for, EXHAUSTIVE_MAX};
use crate::report::Tally;
use crate::spacedoc::{dump_with_map, dump_with_relation};

pub(crate) struct MapUnit {
    pub xi: FiniteSpace,
    pub tau: FiniteSpace,
    pub maps: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kind {
    All,
    Surjective,
    ContinuousSurjective,
}

/// Pairs of spaces with the maps between them of the requested kind, for
/// every pair of ground sizes in range. `keep` filters the pairs.
pub(crate) fn map_units(b: &Bounds, salt: u64, kind: Kind, keep: impl Fn(&FiniteSpace, &FiniteSpace) -> bool) -> Vec<MapUnit> {
    let mut out = Vec::new();
    for (n, m) in enumerate::size_pairs(b.max_points) {
        if kind != Kind::All && m > n {
            continue;
        }
        let exhaustive = n <= EXHAUSTIVE_MAX && m <= EXHAUSTIVE_MAX;
        let all_maps = if exhaustive {
            match kind {
                Kind::All => enumerate::maps(n, m),
                _ => enumerate::surjections(n, m),
            }
        } else {
            Vec::new()
        };
        let pairs = enumerate::space_pairs(n, m, b.seed, salt, b.pair_samples());
        for (i, (xi, tau)) in pairs.into_iter().enumerate() {
            if !keep(&xi, &tau) {
                continue;
            }
            let mut maps = if exhaustive {
                all_maps.clone()
            } else {
                let mut rng = rng_for(b.seed, salt ^ (n * 16 + m) as u64, i as u64);
                (0..4)
                    .map(|_| match kind {
                        Kind::All => enumerate::random_map(&mut rng, n, m),
                        _ => enumerate::random_surjection(&mut rng, n, m),
                    })
                    .collect()
            };
            if kind == Kind::ContinuousSurjective {
                maps.retain(|f| xi.is_continuous(f, &tau));
            }
            if !maps.is_empty() {
                out.push(MapUnit { xi, tau, maps });
            }
        }
    }
    out
}

pub(crate) struct RelUnit {
    pub xi: FiniteSpace,
    pub tau: FiniteSpace,
    pub rels: Arc<Vec<Relation>>,
}

pub(crate) fn rel_units(b: &Bounds, salt: u64, keep: impl Fn(&FiniteSpace, &FiniteSpace) -> bool) -> Vec<RelUnit> {
    let mut out = Vec::new();
    for (n, m) in enumerate::size_pairs(b.max_points) {
        let exhaustive = n <= EXHAUSTIVE_MAX && m <= EXHAUSTIVE_MAX;
        let shared = Arc::new(if exhaustive { enumerate::relations(n, m) } else { Vec::new() });
        let pairs = enumerate::space_pairs(n, m, b.seed, salt, b.pair_samples());
        for (i, (xi, tau)) in pairs.into_iter().enumerate() {
            if !keep(&xi, &tau) {
                continue;
            }
            let rels = if exhaustive {
                shared.clone()
            } else {
                let mut rng = rng_for(b.seed, salt ^ (n * 16 + m) as u64, i as u64);
                Arc::new((0..8).map(|_| enumerate::random_relation(&mut rng, n, m)).collect())
            };
            out.push(RelUnit { xi, tau, rels });
        }
    }
    out
}

fn table(class: &FilterClass, space: &FiniteSpace) -> CompactTable {
    CompactTable::new(space, &members(class, space))
}

fn all_table(space: &FiniteSpace) -> CompactTable {
    CompactTable::new(space, &KernelSet::all(space.n()))
}

fn rel_of(f: &[usize], m: usize) -> Relation {
    Relation::from_map(m, f).expect("enumerated maps land in the codomain")
}

fn compact(r: &Relation, dom: &CompactTable, cod: &CompactTable) -> bool {
    compact_relation_refuter(r, dom, cod).is_none()
}

fn adh_fixed(space: &FiniteSpace, class: &FilterClass) -> bool {
    adh_point_limits(space, &members(class, space)) == space.pointlims()
}

pub fn pointsuffice(b: &Bounds) -> Vec<Tally> {
    let units = rel_units(b, 11, |_, _| true);
    par(&units, |u| {
        let mut t = Tally::default();
        for class in &b.classes {
            if !is_f1_composable(class) {
                t.push_many(Outcome::NotApplicable, u.rels.len());
                continue;
            }
            let (dom, cod) = (table(class, &u.xi), table(class, &u.tau));
            for r in u.rels.iter() {
                let def = compact(r, &dom, &cod);
                let point = point_criterion_refuter(r, &u.xi, &cod).is_none();
                t.check(def == point, || {
                    format!("{class}: definitional={def} point={point} {}", dump_with_relation(&u.xi, &u.tau, "R", r))
                });
            }
        }
        t
    })
}

pub fn continuous(b: &Bounds) -> Vec<Tally> {
    let units = map_units(b, 12, Kind::All, |_, _| true);
    par(&units, |u| {
        let mut t = Tally::default();
        let m = u.tau.n();
        for class in &b.classes {
            if !is_f1_composable(class) || !adh_fixed(&u.tau, class) {
                t.push_many(Outcome::NotApplicable, u.maps.len());
                continue;
            }
            let (dx, dy) = (table(class, &u.xi), table(class, &u.tau));
            let (ax, ay) = (all_table(&u.xi), all_table(&u.tau));
            for f in &u.maps {
                let r = rel_of(f, m);
                let cont = u.xi.is_continuous(f, &u.tau);
                let all = compact(&r, &ax, &ay);
                let d = compact(&r, &dx, &dy);
                t.check(cont == all && all == d, || {
                    format!(
                        "{class}: continuous={cont} compact={all} D-compact={d} {}",
                        dump_with_map(&u.xi, &u.tau, "f", f)
                    )
                });
            }
        }
        t
    })
}

pub fn eq_fibers(b: &Bounds) -> Vec<Tally> {
    let units = rel_units(b, 13, |_, tau| tau.is_p_diagonal());
    par(&units, |u| {
        let mut t = Tally::default();
        let topo = u.tau.is_topology();
        for class in &b.classes {
            if !is_f1_composable(class) || !class.adh_stable(&u.tau) {
                t.push_many(Outcome::NotApplicable, u.rels.len());
                continue;
            }
            let int = FilterClass::contour(class.clone());
            let (dx, dy) = (table(class, &u.xi), table(class, &u.tau));
            let (fx, fy) = (table(&FilterClass::F1, &u.xi), table(&FilterClass::F1, &u.tau));
            let ints = topo.then(|| (table(&int, &u.xi), table(&int, &u.tau)));
            for r in u.rels.iter() {
                let images = |tab: &CompactTable| (0..r.domain_size()).all(|x| tab.is_compact_at_set(r.row(x), r.row(x)));
                let one = compact(r, &dx, &dy);
                let f1 = compact(r, &fx, &fy);
                let two = f1 && images(&dy);
                let (three, four) = match &ints {
                    Some((ix, iy)) => (f1 && images(iy), compact(r, ix, iy)),
                    None => (two, one),
                };
                t.check(one == two && two == three && three == four, || {
                    format!(
                        "{class}: (1)={one} (2)={two} (3)={three} (4)={four} {}",
                        dump_with_relation(&u.xi, &u.tau, "R", r)
                    )
                });
            }
        }
        t
    })
}

pub fn usc(b: &Bounds) -> Vec<Tally> {
    let units = rel_units(b, 14, |xi, tau| xi.is_topology() && tau.is_topology());
    par(&units, |u| {
        let mut t = Tally::default();
        let (fx, fy) = (table(&FilterClass::F1, &u.xi), table(&FilterClass::F1, &u.tau));
        for r in u.rels.iter() {
            let c = compact(r, &fx, &fy);
            let s = is_usc(r, &u.xi, &u.tau);
            t.check(c == s, || format!("F1-compact={c} usc={s} {}", dump_with_relation(&u.xi, &u.tau, "R", r)));
        }
        t
    })
}

pub fn closed(b: &Bounds) -> Vec<Tally> {
    let units = map_units(b, 15, Kind::All, |_, _| true);
    par(&units, |u| {
        let mut t = Tally::default();
        let (xi, tau) = (&u.xi, &u.tau);
        let (fx, fy) = (table(&FilterClass::F1, xi), table(&FilterClass::F1, tau));
        let adh_closed = Subset::all(xi.n()).all(|h| xi.is_closed(xi.adh_set(h)));
        for f in &u.maps {
            let r = rel_of(f, tau.n());
            let adherent = adherent_refuter(&r, xi, tau).is_none();
            let inverse = compact(&r.inverse(), &fy, &fx);
            let closed = closed_map_refuter(&r, xi, tau).is_none();
            let ok = adherent == inverse && (!adherent || closed) && (!(closed && adh_closed) || adherent);
            t.check(ok, || {
                format!(
                    "adherent={adherent} inverse-F1-compact={inverse} closed={closed} closed-adherences={adh_closed} {}",
                    dump_with_map(xi, tau, "f", f)
                )
            });
        }
        t
    })
}

pub fn closed_search(b: &Bounds) -> Vec<Tally> {
    let units = map_units(b, 16, Kind::All, |xi, _| !xi.is_topology());
    par(&units, |u| {
        let mut t = Tally::default();
        let (xi, tau) = (&u.xi, &u.tau);
        for f in &u.maps {
            let r = rel_of(f, tau.n());
            let adherent = adherent_refuter(&r, xi, tau);
            let closed = closed_map_refuter(&r, xi, tau).is_none();
            if let (true, Some((h, y))) = (closed, adherent) {
                t.finding(format!(
                    "closed, not adherent at H={} y={}: {}",
                    show(xi, h),
                    tau.ground().name(y),
                    dump_with_map(xi, tau, "f", f)
                ));
            }
            t.check(adherent.is_some() || closed, || format!("adherent but not closed: {}", dump_with_map(xi, tau, "f", f)));
        }
        t
    })
}

fn perfect(r: &Relation, xi: &FiniteSpace, tau: &FiniteSpace, tab: &CompactTable) -> Result<bool, Error> {
    is_perfect_with(r, xi, tau, tab)
}

pub fn dperfect(b: &Bounds) -> Vec<Tally> {
    let units = map_units(b, 17, Kind::Surjective, |xi, _| xi.is_topology());
    par(&units, |u| {
        let mut t = Tally::default();
        let (xi, tau) = (&u.xi, &u.tau);
        for class in &b.classes {
            if !is_f1_composable(class) || !class.adh_stable(xi) {
                t.push_many(Outcome::NotApplicable, u.maps.len());
                continue;
            }
            let int = FilterClass::contour(class.clone());
            let (dx, dy) = (table(class, xi), table(class, tau));
            let (ix, iy) = (table(&int, xi), table(&int, tau));
            for f in &u.maps {
                let r = rel_of(f, tau.n());
                let inv = r.inverse();
                match (perfect(&r, xi, tau, &dx), perfect(&r, xi, tau, &ix)) {
                    (Ok(one), Ok(four)) => {
                        let two = compact(&inv, &dy, &dx);
                        let three = compact(&inv, &iy, &ix);
                        t.check(one == two && two == three && three == four, || {
                            format!(
                                "{class}: (1)={one} (2)={two} (3)={three} (4)={four} {}",
                                dump_with_map(xi, tau, "f", f)
                            )
                        });
                    }
                    (Err(e), _) | (_, Err(e)) => t.fail(format!("{class}: {e}")),
                }
            }
        }
        t
    })
}

pub fn dperfect_search(b: &Bounds) -> Vec<Tally> {
    let units = map_units(b, 18, Kind::Surjective, |xi, _| !xi.is_topology());
    par(&units, |u| {
        let mut t = Tally::default();
        let (xi, tau) = (&u.xi, &u.tau);
        let all = KernelSet::all(xi.n());
        for class in &b.classes {
            if !is_f1_composable(class) {
                t.push_many(Outcome::NotApplicable, u.maps.len());
                continue;
            }
            let dm = members(class, xi);
            let (dx, dy) = (CompactTable::new(xi, &dm), table(class, tau));
            for f in &u.maps {
                let r = rel_of(f, tau.n());
                let one = match perfect(&r, xi, tau, &dx) {
                    Ok(v) => v,
                    Err(e) => {
                        t.fail(format!("{class}: {e}"));
                        continue;
                    }
                };
                let two = compact(&r.inverse(), &dy, &dx);
                let adherent = adherent_refuter(&r, xi, tau).is_none();
                let relative_fibers = (0..tau.n()).all(|y| {
                    let fib = r.preimage_set(Subset::singleton(tau.n(), y));
                    let fam = FamilyOfSets::principal(fib);
                    dj_compact_verdict(xi, &dm, &all, convkit_core::Filter::principal(fib), &fam).holds()
                });
                if one && !two {
                    t.finding(format!("{class}: perfect, inverse not compact: {}", dump_with_map(xi, tau, "f", f)));
                }
                let ok = (!two || one) && (!(adherent && relative_fibers) || two);
                t.check(ok, || {
                    format!(
                        "{class}: perfect={one} inverse={two} adherent={adherent} relative-fibers={relative_fibers} {}",
                        dump_with_map(xi, tau, "f", f)
                    )
                });
            }
        }
        t
    })
}

pub fn dquotient(b: &Bounds) -> Vec<Tally> {
    let units = map_units(b, 19, Kind::Surjective, |_, _| true);
    par(&units, |u| {
        let mut t = Tally::default();
        for class in &b.classes {
            if !is_f1_composable(class) {
                t.push_many(Outcome::NotApplicable, u.maps.len());
                continue;
            }
            for f in &u.maps {
                match quotient_characterizations(f, &u.xi, &u.tau, class) {
                    Ok(q) => t.check(q.agree(), || {
                        format!(
                            "{class}: quotient={} adh-form={} relation-form={} {}",
                            q.quotient,
                            q.adh_form,
                            q.relation_form,
                            dump_with_map(&u.xi, &u.tau, "f", f)
                        )
                    }),
                    Err(e) => t.fail(format!("{class}: {e}")),
                }
            }
        }
        t
    })
}

/// A continuous surjection that is `clF1`-quotient and not `F1`-quotient,
/// with the principal filter refuting `F1`-quotientness.
#[derive(Clone, Debug)]
pub struct QuotientWitness {
    pub xi: FiniteSpace,
    pub tau: FiniteSpace,
    pub map: Vec<usize>,
    pub refuter: Subset,
    pub point: usize,
    pub topological: bool,
}

impl QuotientWitness {
    pub fn describe(&self) -> String {
        format!(
            "H={}↑ with {} ∈ adh_τ H but adh_ξ f⁻H missing f⁻{}; {}",
            show(&self.tau, self.refuter),
            self.tau.ground().name(self.point),
            self.tau.ground().name(self.point),
            dump_with_map(&self.xi, &self.tau, "f", &self.map)
        )
    }
}

fn quotient_gap(xi: &FiniteSpace, tau: &FiniteSpace, f: &[usize]) -> Result<Option<QuotientWitness>, Error> {
    let r = rel_of(f, tau.n());
    let cl = is_d_quotient(&r, &FilterClass::ClF1, xi, tau)?;
    if !cl {
        return Ok(None);
    }
    let all = KernelSet::all(tau.n());
    Ok(quotient_refuter(&r, xi, tau, &all).map(|(h, y)| QuotientWitness {
        xi: xi.clone(),
        tau: tau.clone(),
        map: f.to_vec(),
        refuter: h.kernel(),
        point: y,
        topological: xi.is_topology() && tau.is_topology(),
    }))
}

/// The first witness among continuous surjections on at most `max` points,
/// topological domain and range first.
pub fn quotient_witness(max: usize) -> Option<QuotientWitness> {
    let b = Bounds::default().with_max_points(max.min(EXHAUSTIVE_MAX));
    let units = map_units(&b, 20, Kind::ContinuousSurjective, |_, _| true);
    let mut fallback = None;
    for u in &units {
        for f in &u.maps {
            if let Ok(Some(w)) = quotient_gap(&u.xi, &u.tau, f) {
                if w.topological {
                    return Some(w);
                }
                fallback.get_or_insert(w);
            }
        }
    }
    fallback
}

pub fn quotient_hierarchy(b: &Bounds) -> Vec<Tally> {
    let units = map_units(b, 20, Kind::ContinuousSurjective, |_, _| true);
    let mut out = par(&units, |u| {
        let mut t = Tally::default();
        for f in &u.maps {
            let r = rel_of(f, u.tau.n());
            match (is_d_quotient(&r, &FilterClass::F1, &u.xi, &u.tau), quotient_gap(&u.xi, &u.tau, f)) {
                (Ok(f1), Ok(gap)) => {
                    if let Some(w) = &gap {
                        t.finding(w.describe());
                    }
                    t.check(gap.is_none() || !f1, || format!("F1-quotient with a refuter: {}", dump_with_map(&u.xi, &u.tau, "f", f)));
                }
                (Err(e), _) | (_, Err(e)) => t.fail(e.to_string()),
            }
        }
        t
    });
    let found = out.iter().any(|t| !t.findings.is_empty());
    let mut last = Tally::default();
    last.check(found, || "no clF1-quotient surjection that is not F1-quotient".into());
    out.push(last);
    out
}

fn push_report(t: &mut Tally, label: &str, res: Result<TheoremReport, Error>, repro: impl FnOnce() -> String) {
    match res {
        Ok(rep) if rep.outcome == Outcome::Fails => t.fail(format!("{label}: {} {}", rep.note, repro())),
        Ok(rep) => t.push(rep.outcome),
        Err(Error::ClassInclusion { .. }) => t.push(Outcome::NotApplicable),
        Err(e) => t.fail(format!("{label}: {e}")),
    }
}

fn range_suite(b: &Bounds, salt: u64, rows: &[(FilterClass, FilterClass, FilterClass)], quot: bool, perf: bool) -> Vec<Tally> {
    let units = map_units(b, salt, Kind::ContinuousSurjective, |_, _| true);
    par(&units, |u| {
        let mut t = Tally::default();
        for f in &u.maps {
            for (m, j, d) in rows {
                let repro = || dump_with_map(&u.xi, &u.tau, "f", f);
                if quot {
                    let res = theorem_mquot_range(f, &u.xi, &u.tau, m, j, d);
                    push_report(&mut t, &format!("quotient ({m},{j},{d})"), res, repro);
                }
                if perf {
                    let res = theorem_mperfect_range(f, &u.xi, &u.tau, m, j, d);
                    push_report(&mut t, &format!("perfect ({m},{j},{d})"), res, repro);
                }
            }
        }
        t
    })
}

pub fn mquot_range(b: &Bounds) -> Vec<Tally> {
    range_suite(b, 21, &triples(b), true, false)
}

pub fn mperfect_range(b: &Bounds) -> Vec<Tally> {
    range_suite(b, 22, &triples(b), false, true)
}

/// The `(M, J, D)` rows shared by the two range tables.
pub fn table_rows() -> Vec<(FilterClass, FilterClass, FilterClass)> {
    use FilterClass::{Fomega as W, F, F1};
    vec![
        (F1, F, F1),
        (F1, F1, W),
        (F1, W, W),
        (F1, F, W),
        (F1, F, F),
        (W, W, F1),
        (W, W, W),
        (W, F, W),
        (W, F, F),
        (F, F, F1),
        (F, F, W),
        (F, F, F),
    ]
}

pub fn range_rows(b: &Bounds) -> Vec<Tally> {
    range_suite(b, 23, &table_rows(), true, true)
}
