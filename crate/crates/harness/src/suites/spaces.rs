//! Suites quantified over single spaces (and pairs of convergences on one ground).

use convkit_core::classes::{accessibility_refuter, adh_point_limits, base_table, is_mesh_refinable_in};
use convkit_core::compactness::{dj_compact_verdict, pdiag_bridge, CompactTable};
use convkit_core::relations::meshable_refuter;
use convkit_core::{Convergence, FamilyOfSets, FiniteSpace, FilterClass, KernelSet, Outcome, Subset};

use super::{each_space, members, pairs, par, show, triples, Bounds};
use crate::enumerate;
use crate::report::Tally;
use crate::spacedoc::dump;

pub fn adh_d(b: &Bounds) -> Vec<Tally> {
    let spaces = each_space(b, 1);
    par(&spaces, |sp| {
        let n = sp.n();
        let mut t = Tally::default();
        for class in &b.classes {
            let mem = members(class, sp);
            let table = CompactTable::new(sp, &mem);
            let adh = adh_point_limits(sp, &mem);
            let lim = |k: Subset| k.iter().fold(Subset::full(n), |acc, x| acc.intersection(adh[x]));
            let bad = Subset::all(n)
                .find_map(|k| (0..n).find(|&x| table.is_compact_at_point(k, x) != lim(k).contains(x)).map(|x| (k, x)));
            t.check(bad.is_none(), || {
                let (k, x) = bad.unwrap_or((Subset::empty(n), 0));
                format!("{class}: F={} x={} in {}", show(sp, k), sp.ground().name(x), dump(sp))
            });
        }
        t
    })
}

pub fn accessible(b: &Bounds) -> Vec<Tally> {
    let spaces = each_space(b, 2);
    par(&spaces, |sp| {
        let n = sp.n();
        let mut t = Tally::default();
        for (j, d) in pairs(b) {
            let (jm, dm) = (members(&j, sp), members(&d, sp));
            match accessibility_refuter(sp, &jm, &dm) {
                Err(e) => t.fail(format!("({j}/{d}): {e}")),
                Ok(refuter) => {
                    let accessible = refuter.is_none();
                    let mr = members(&FilterClass::mesh_refine(j.clone(), d.clone()), sp);
                    let raw = base_table(sp, &mr);
                    let fixed = Subset::all(n).all(|k| raw.lim_kernel(k) == sp.lim_set(k));
                    t.check(fixed == accessible, || {
                        format!("({j}/{d}): accessible={accessible} base-fixed={fixed} in {}", dump(sp))
                    });
                }
            }
        }
        t
    })
}

pub fn vicinity(b: &Bounds) -> Vec<Tally> {
    let spaces = each_space(b, 3);
    par(&spaces, |sp| {
        let n = sp.n();
        let all = KernelSet::all(n);
        let mut t = Tally::default();
        for class in &b.classes {
            let mem = members(class, sp);
            let table = CompactTable::new(sp, &mem);
            let bad = Subset::all(n).find_map(|k| {
                let f = convkit_core::Filter::principal(k);
                let v = sp.vicinity_of_filter(f).kernel();
                Subset::all(n)
                    .find(|&bset| {
                        dj_compact_verdict(sp, &mem, &all, f, &FamilyOfSets::principal(bset)).holds()
                            != table.is_compact_at_set(v, bset)
                    })
                    .map(|bset| (k, bset))
            });
            t.check(bad.is_none(), || {
                let (k, bset) = bad.unwrap_or((Subset::empty(n), Subset::empty(n)));
                format!("{class}: F={} B={} in {}", show(sp, k), show(sp, bset), dump(sp))
            });
        }
        t
    })
}

pub fn pdiag(b: &Bounds) -> Vec<Tally> {
    let spaces = each_space(b, 4);
    par(&spaces, |sp| {
        let mut t = Tally::default();
        for class in &b.classes {
            let br = pdiag_bridge(sp, &members(class, sp));
            if br.p_diagonal && br.adh_stable {
                t.check(br.equivalence, || format!("{class}: forms differ in {}", dump(sp)));
            } else {
                t.push(Outcome::NotApplicable);
            }
        }
        t
    })
}

pub fn pdiag_converse(b: &Bounds) -> Vec<Tally> {
    let spaces = each_space(b, 5);
    par(&spaces, |sp| {
        let mut t = Tally::default();
        for class in &b.classes {
            let br = pdiag_bridge(sp, &members(class, sp));
            if br.adh_fixed && br.gap.is_none() {
                t.check(br.p_diagonal, || format!("{class}: not P-diagonal: {}", dump(sp)));
            } else {
                t.push(Outcome::NotApplicable);
            }
        }
        t
    })
}

/// Exploratory: is adherence stability needed for the P-diagonal bridge?
pub fn pdiag_search(b: &Bounds) -> Vec<Tally> {
    let spaces = each_space(b, 6);
    let mut classes = FilterClass::registry();
    for c in &b.classes {
        if !classes.contains(c) {
            classes.push(c.clone());
        }
    }
    par(&spaces, |sp| {
        let mut t = Tally::default();
        for class in &classes {
            let br = pdiag_bridge(sp, &members(class, sp));
            if !br.p_diagonal {
                t.push(Outcome::NotApplicable);
            } else if br.adh_stable {
                t.check(br.equivalence, || format!("{class}: forms differ in {}", dump(sp)));
            } else {
                if !br.equivalence {
                    let gap = br
                        .gap
                        .map(|(f, s)| format!(" gap F={} B={}", show(sp, f.kernel()), show(sp, s)))
                        .unwrap_or_default();
                    t.finding(format!("{class} unstable under adh, forms differ{gap} in {}", dump(sp)));
                }
                t.push(Outcome::Holds);
            }
        }
        t
    })
}

pub fn local(b: &Bounds) -> Vec<Tally> {
    let spaces = each_space(b, 7);
    par(&spaces, |xi| {
        let n = xi.n();
        let thetas = if n <= enumerate::EXHAUSTIVE_MAX {
            enumerate::spaces(n).to_vec()
        } else {
            let salt = xi.masks().iter().fold(7u64, |acc, &m| acc.wrapping_mul(31).wrapping_add(m as u64));
            enumerate::space_list(n, b.seed, salt, 32)
        };
        let mut t = Tally::default();
        for (m, j, d) in triples(b) {
            let (mm, jm, dm) = (members(&m, xi), members(&j, xi), members(&d, xi));
            let adh_m = match FiniteSpace::new(xi.ground().clone(), adh_point_limits(xi, &mm)) {
                Ok(s) => s,
                Err(e) => {
                    t.fail(format!("Adh_{m} is not a convergence: {e}"));
                    continue;
                }
            };
            let base = base_table(&adh_m, &dm);
            let bound = adh_point_limits(&base, &jm);
            let table = CompactTable::new(xi, &mm);
            let good: Vec<Subset> = Subset::all(n)
                .map(|k| {
                    (0..n)
                        .filter(|&x| meshable_refuter(k, Subset::singleton(n, x), &jm, &dm, &table).is_none())
                        .fold(Subset::empty(n), |acc, x| acc.with(x))
                })
                .collect();
            for theta in &thetas {
                let finer = theta.pointlims().iter().zip(&bound).all(|(a, c)| a.is_subset_of(*c));
                let local = Subset::all(n).all(|k| theta.lim_set(k).is_subset_of(good[k.bits() as usize]));
                t.check(finer == local, || {
                    format!("({m},{j},{d}): finer={finer} meshable={local} ξ={} θ={}", dump(xi), dump(theta))
                });
            }
        }
        t
    })
}

/// Rows of the accessibility table, all with `D = Fw`.
pub fn vocabulary_classes() -> Vec<FilterClass> {
    use FilterClass::*;
    vec![F, Fomega, FilterClass::mesh_refine(Fomega, Fomega), FwedgeOmega, F1]
}

pub fn neighborhood_accessible(b: &Bounds) -> Vec<Tally> {
    let spaces = each_space(b, 8);
    let d = FilterClass::Fomega;
    par(&spaces, |sp| {
        let mut t = Tally::default();
        let topo = sp.is_topology();
        for j in vocabulary_classes() {
            if !topo {
                t.push(Outcome::NotApplicable);
                continue;
            }
            let (jm, dm) = (members(&j, sp), members(&d, sp));
            match accessibility_refuter(sp, &jm, &dm) {
                Err(e) => t.fail(format!("{j}: {e}")),
                Ok(r) => {
                    let accessible = r.is_none();
                    let nbhds = (0..sp.n()).all(|x| is_mesh_refinable_in(sp.nbhd(x), &jm, &dm));
                    t.check(accessible == nbhds, || {
                        format!("({j}/{d}): accessible={accessible} neighborhoods={nbhds} in {}", dump(sp))
                    });
                }
            }
        }
        t
    })
}

/// Exploratory: one application of `Adh_clF1` against the topological modification.
pub fn topological_reflector(b: &Bounds) -> Vec<Tally> {
    let spaces = each_space(b, 10);
    par(&spaces, |sp| {
        let mut t = Tally::default();
        let t_xi = sp.topologize();
        match FiniteSpace::new(sp.ground().clone(), adh_point_limits(sp, &members(&FilterClass::ClF1, sp))) {
            Err(e) => t.fail(format!("Adh_clF1 is not a convergence: {e} in {}", dump(sp))),
            Ok(adh) => {
                if adh != t_xi {
                    t.finding(format!(
                        "Adh_clF1 ξ = {} is {}topological, T ξ = {} in {}",
                        dump(&adh),
                        if adh.is_topology() { "" } else { "not " },
                        dump(&t_xi),
                        dump(sp)
                    ));
                }
                // both coarsen ξ
                t.check(sp.is_finer_than(&adh) && sp.is_finer_than(&t_xi), || {
                    format!("Adh_clF1 ξ or T ξ is not coarser than ξ in {}", dump(sp))
                });
            }
        }
        t
    })
}
