//! Closed forms against the definitional oracles, and the finite collapses.

use std::sync::{Arc, OnceLock};

use convkit_core::cascade::{contour_along, shapes};
use convkit_core::classes::{adh_point_limits, base_table};
use convkit_core::compactness::{cover_compact_by_covers, cover_compact_by_filters, is_compact_set, CompactTable};
use convkit_core::{Convergence, Filter, FiniteSpace, FilterClass, KernelSet, Subset};
use rand::Rng;

use super::{each_space, members, par, show, Bounds};
use crate::enumerate;
use crate::oracle::{self, Fam, SpaceOracle};
use crate::report::Tally;
use crate::spacedoc::dump;

/// Cascades in the contour agreement check.
const ORACLE_CASCADE_NODES: usize = 5;

/// Oracles and limit tables of every space on `n ≤ 3` points.
struct Catalog {
    spaces: Arc<Vec<FiniteSpace>>,
    oracles: Vec<SpaceOracle>,
    tables: Vec<(usize, Vec<Subset>)>,
}

fn catalog(n: usize) -> &'static Catalog {
    static CATALOGS: [OnceLock<Catalog>; enumerate::EXHAUSTIVE_MAX + 1] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CATALOGS[n].get_or_init(|| {
        let spaces = enumerate::spaces(n);
        let oracles: Vec<SpaceOracle> = spaces.iter().map(SpaceOracle::new).collect();
        let tables = oracles.iter().enumerate().map(|(i, o)| (i, o.lim_table())).collect();
        Catalog { spaces, oracles, tables }
    })
}

fn kernels(fams: &[Fam]) -> Vec<Subset> {
    let mut out: Vec<Subset> = fams.iter().filter_map(|f| f.kernel()).collect();
    out.sort_by_key(|s| s.bits());
    out
}

fn oracle_classes(b: &Bounds) -> Vec<FilterClass> {
    let mut classes = vec![FilterClass::Degenerate, FilterClass::F1, FilterClass::ClF1];
    for c in &b.classes {
        if !classes.contains(c) && (c.is_all_kernels() || *c == FilterClass::ClF1) {
            classes.push(c.clone());
        }
    }
    classes
}

/// Compares one space against its oracle on every principal filter.
fn space_agreement(sp: &FiniteSpace, classes: &[FilterClass], t: &mut Tally) {
    let n = sp.n();
    let o = SpaceOracle::new(sp);
    let bad = Subset::all(n).find(|&k| sp.lim_set(k) != o.lim(Fam::up(k)) || sp.adh_set(k) != o.adh(Fam::up(k)));
    t.check(bad.is_none(), || format!("lim/adh at {} in {}", show(sp, bad.unwrap_or(Subset::empty(n))), dump(sp)));

    for class in classes {
        let mem = members(class, sp);
        let Some(list) = o.class(class) else { continue };
        let mut closed: Vec<Subset> = mem.iter().collect();
        closed.sort_by_key(|s| s.bits());
        t.check(closed == kernels(&list), || format!("{class} members in {}", dump(sp)));

        let adh = adh_point_limits(sp, &mem);
        let base = base_table(sp, &mem);
        let bad = Subset::all(n).find(|&k| {
            let adh_k = k.iter().fold(Subset::full(n), |acc, x| acc.intersection(adh[x]));
            adh_k != o.adh_reflect(&list, Fam::up(k)) || base.lim_kernel(k) != o.base(&list, Fam::up(k))
        });
        t.check(bad.is_none(), || {
            format!("{class} Adh/Base at {} in {}", show(sp, bad.unwrap_or(Subset::empty(n))), dump(sp))
        });

        let table = CompactTable::new(sp, &mem);
        let pairs = o.with_adherences(&list);
        let bad = Subset::all(n).find_map(|k| {
            Subset::all(n)
                .find(|&a| table.is_compact_at_set(k, a) != o.compact_at(&pairs, Fam::up(k), a))
                .map(|a| (k, a))
        });
        t.check(bad.is_none(), || {
            let (k, a) = bad.unwrap_or((Subset::empty(n), Subset::empty(n)));
            format!("{class} compact F={} A={} in {}", show(sp, k), show(sp, a), dump(sp))
        });
    }
}

/// `fξ` is the finest continuous target, found among all spaces on the range.
fn final_by_search(sp: &FiniteSpace, o: &SpaceOracle, f: &[usize], m: usize, t: &mut Tally) {
    let cat = catalog(m);
    let candidates: Vec<(usize, Vec<Subset>)> = cat
        .tables
        .iter()
        .filter(|(i, _)| oracle::is_continuous(o, f, &cat.oracles[*i]))
        .cloned()
        .collect();
    let closed = enumerate::ground(m).and_then(|g| sp.final_(g, f));
    let found = oracle::finest(&candidates).map(|i| cat.spaces[i].pointlims().to_vec());
    t.check(matches!((&closed, &found), (Ok(c), Some(p)) if c.pointlims() == p.as_slice()), || {
        format!("final along {f:?} of {}", dump(sp))
    });
}

/// `f⁻τ` is the coarsest continuous source, found among all spaces on the domain.
fn initial_by_search(tau: &FiniteSpace, o: &SpaceOracle, f: &[usize], t: &mut Tally) {
    let cat = catalog(f.len());
    let candidates: Vec<(usize, Vec<Subset>)> = cat
        .tables
        .iter()
        .filter(|(i, _)| oracle::is_continuous(&cat.oracles[*i], f, o))
        .cloned()
        .collect();
    let closed = enumerate::ground(f.len()).and_then(|g| FiniteSpace::initial(tau, g, f));
    let found = oracle::coarsest(&candidates).map(|i| cat.spaces[i].pointlims().to_vec());
    t.check(matches!((&closed, &found), (Ok(c), Some(p)) if c.pointlims() == p.as_slice()), || {
        format!("initial along {f:?} into {}", dump(tau))
    });
}

/// `x ∈ lim F` iff `f x ∈ lim fF`, read off every principal filter.
fn initial_by_definition(tau: &FiniteSpace, o: &SpaceOracle, f: &[usize], t: &mut Tally) {
    let n = f.len();
    let ok = enumerate::ground(n).and_then(|g| FiniteSpace::initial(tau, g, f)).is_ok_and(|sigma| {
        Subset::all(n).all(|k| {
            let lim = o.lim(Fam::up(k).image(f, tau.n()));
            let expected = (0..n).filter(|&x| lim.contains(f[x])).fold(Subset::empty(n), |acc, x| acc.with(x));
            sigma.lim_set(k) == expected
        })
    });
    t.check(ok, || format!("initial along {f:?} into {}", dump(tau)));
}

fn contour_agreement(n: usize) -> Tally {
    let mut t = Tally::default();
    for m in 1..=n {
        let tuples = 1usize << (m * n);
        for fk in Subset::all(n) {
            for code in 0..tuples {
                let g: Vec<Filter> = (0..n)
                    .map(|x| Filter::principal(Subset::raw(m, ((code >> (x * m)) & ((1 << m) - 1)) as u32)))
                    .collect();
                let gf: Vec<Fam> = g.iter().map(|h| Fam::up(h.kernel())).collect();
                let closed = contour_along(Filter::principal(fk), &g).map(|h| h.kernel());
                let ok = matches!(closed, Ok(k) if Some(k) == oracle::contour_along(Fam::up(fk), &gf).kernel());
                t.check(ok, || format!("contour along {fk:?} of {g:?}"));
            }
        }
    }
    for shape in shapes(ORACLE_CASCADE_NODES) {
        for phi in super::contour::multifilters(&shape, n) {
            let ok = oracle::contour(&phi).kernel() == Some(phi.contour().filter.kernel());
            t.check(ok, || format!("contour of {shape:?} labels {:?}", phi.labels()));
        }
    }
    t
}

enum Unit {
    Exhaustive(FiniteSpace),
    Sampled(u64),
    Contour(usize),
}

pub fn oracle(b: &Bounds) -> Vec<Tally> {
    let classes = oracle_classes(b);
    let small = b.max_points.min(enumerate::EXHAUSTIVE_MAX);
    let mut units: Vec<Unit> = (1..=small).flat_map(|n| enumerate::spaces(n).to_vec()).map(Unit::Exhaustive).collect();
    if b.max_points > enumerate::EXHAUSTIVE_MAX {
        units.extend((0..b.samples as u64).map(Unit::Sampled));
    }
    units.extend((1..=small).map(Unit::Contour));
    par(&units, |u| match u {
        Unit::Exhaustive(sp) => {
            let mut t = Tally::default();
            space_agreement(sp, &classes, &mut t);
            let o = SpaceOracle::new(sp);
            let n = sp.n();
            for m in 1..=n {
                for f in enumerate::surjections(n, m) {
                    final_by_search(sp, &o, &f, m, &mut t);
                }
            }
            for d in 1..=small {
                for f in enumerate::maps(d, n) {
                    initial_by_search(sp, &o, &f, &mut t);
                }
            }
            t
        }
        Unit::Sampled(i) => {
            let mut rng = enumerate::rng_for(b.seed, 0x0AC1E, *i);
            let n = (enumerate::EXHAUSTIVE_MAX + 1).min(b.max_points);
            let sp = enumerate::random_space(&mut rng, n);
            let o = SpaceOracle::new(&sp);
            let mut t = Tally::default();
            space_agreement(&sp, &classes, &mut t);
            let m = rng.gen_range(1..=enumerate::EXHAUSTIVE_MAX);
            let f = enumerate::random_surjection(&mut rng, n, m);
            final_by_search(&sp, &o, &f, m, &mut t);
            let f = enumerate::random_map(&mut rng, n, n);
            initial_by_definition(&sp, &o, &f, &mut t);
            t
        }
        Unit::Contour(n) => contour_agreement(*n),
    })
}

/// The finite collapses: pretopological limits, `F = Fw = F1`, Base identity.
pub fn collapse(b: &Bounds) -> Vec<Tally> {
    let spaces = each_space(b, 9);
    par(&spaces, |sp| {
        let n = sp.n();
        let mut t = Tally::default();
        let bad = (0..n).find(|&x| !sp.lim(sp.vicinity(x)).contains(x));
        t.check(bad.is_none(), || format!("x ∉ lim V(x) at {:?} in {}", bad, dump(sp)));
        let table = sp.table();
        t.check(table.is_point_determined() && table.preserves_meets() && table.is_isotone(), || {
            format!("limit table not pretopological in {}", dump(sp))
        });
        let all = KernelSet::all(n);
        use FilterClass::*;
        for class in [F1, Fomega, F, FwedgeOmega, Seq, FilterClass::contour(F1)] {
            let mem = members(&class, sp);
            t.check(*mem == all, || format!("{class} is not every filter in {}", dump(sp)));
            let base = base_table(sp, &mem);
            t.check(base == table, || format!("Base_{class} ξ ≠ ξ in {}", dump(sp)));
        }
        let bad = Subset::all(n).find(|&k| {
            !is_compact_set(sp, k)
                || !cover_compact_by_filters(sp, k)
                || (n <= enumerate::EXHAUSTIVE_MAX && cover_compact_by_covers(sp, k) != Some(true))
        });
        t.check(bad.is_none(), || {
            format!("{} is not compact in {}", show(sp, bad.unwrap_or(Subset::empty(n))), dump(sp))
        });
        t
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use convkit_core::Outcome;

    fn all_hold(tallies: &[Tally]) -> bool {
        tallies.iter().all(|t| t.outcomes.iter().all(|o| *o == Outcome::Holds))
    }

    #[test]
    fn two_point_agreement() {
        assert!(all_hold(&oracle(&Bounds::default().with_max_points(2))));
    }

    #[test]
    fn two_point_collapse() {
        assert!(all_hold(&collapse(&Bounds::default().with_max_points(2))));
    }
}
