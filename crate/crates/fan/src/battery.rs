//! Seeded batteries of grid sets and transversals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::contour::fan_as_contour;
use crate::error::Result;
use crate::filter::{sym_finer, sym_mesh, Support, SymFilter};
use crate::grid::GridSet;
use crate::interval::{Aff, AffSet, IntervalSet};
use crate::seq::{check_frechet_witness, frechet_witness, strong_frechet_refuter, SeqTerm};

fn small_set(rng: &mut ChaCha8Rng) -> IntervalSet {
    let mut s = IntervalSet::empty();
    for _ in 0..rng.gen_range(0..3) {
        let lo = rng.gen_range(0..8);
        s = s.union(&IntervalSet::span(lo, lo + rng.gen_range(0..4)));
    }
    if rng.gen_bool(0.5) {
        s = s.union(&IntervalSet::tail_from(rng.gen_range(0..10)));
    }
    s
}

fn aff(rng: &mut ChaCha8Rng) -> Aff {
    Aff::new(rng.gen_range(0..3), rng.gen_range(0..6))
}

fn template(rng: &mut ChaCha8Rng) -> AffSet {
    let mut t = AffSet::empty();
    for _ in 0..rng.gen_range(0..3) {
        let (x, y) = (aff(rng), aff(rng));
        t = t.union(&AffSet::span(x.min(y), x.max(y)));
    }
    if rng.gen_bool(0.5) {
        t = t.union(&AffSet::tail_from(aff(rng)));
    }
    t
}

pub fn random_grid(rng: &mut ChaCha8Rng) -> GridSet {
    let period = rng.gen_range(1..=3);
    let mut g = GridSet::periodic((0..period).map(|_| template(rng)).collect());
    for _ in 0..rng.gen_range(0..4) {
        let c = rng.gen_range(0..10);
        g = g.with_column(c, small_set(rng));
    }
    g
}

pub fn random_transversal(rng: &mut ChaCha8Rng) -> SeqTerm {
    let mut s = SeqTerm::transversal(rng.gen_range(0..6), rng.gen_range(0..4), rng.gen_range(0..6));
    for _ in 0..rng.gen_range(0..3) {
        let pts: Vec<u64> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..12)).collect();
        s = s.with_patch(rng.gen_range(0..10), IntervalSet::points(&pts));
    }
    s
}

pub fn grid_battery(seed: u64, cases: usize) -> Vec<GridSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cases).map(|_| random_grid(&mut rng)).collect()
}

pub fn transversal_battery(seed: u64, cases: usize) -> Vec<SeqTerm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    (0..cases).map(|_| random_transversal(&mut rng)).collect()
}

#[derive(Clone, Debug, Default)]
pub struct BatteryReport {
    pub cases: usize,
    pub meshing: usize,
    pub witnesses_verified: usize,
    pub refuters_verified: usize,
    pub contour_agreements: usize,
    pub fan_order_holds: bool,
    pub failures: Vec<String>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.fan_order_holds
            && self.witnesses_verified == self.meshing
            && self.refuters_verified == self.cases
            && self.contour_agreements == self.cases
    }
}

/// Runs the witness, refuter and contour checks on `cases` generated sets
/// and `cases` generated transversals.
pub fn run_battery(seed: u64, cases: usize) -> Result<BatteryReport> {
    let fan = SymFilter::Fan(Support::AllColumns);
    let cofin = SymFilter::Fan(Support::CofinitelyManyColumns);
    let grids = grid_battery(seed, cases);
    let mut r = BatteryReport { cases, ..Default::default() };
    r.fan_order_holds = sym_finer(&fan, &cofin)? && !sym_finer(&cofin, &fan)?;
    for a in &grids {
        if !sym_mesh(&SymFilter::Principal(a.clone()), &fan)? {
            if frechet_witness(a).is_ok() {
                r.failures.push(format!("witness for non-meshing {a}"));
            }
            continue;
        }
        r.meshing += 1;
        match frechet_witness(a) {
            Ok(w) if check_frechet_witness(a, &w)? => r.witnesses_verified += 1,
            Ok(w) => r.failures.push(format!("unverified witness {} for {a}", SymFilter::Seq(w))),
            Err(e) => r.failures.push(format!("no witness for {a}: {e}")),
        }
    }
    for s in transversal_battery(seed, cases) {
        match strong_frechet_refuter(&SymFilter::ColumnBlocks, &s) {
            Ok(c) if c.verified() && !sym_finer(&fan, &s.filter())? => r.refuters_verified += 1,
            Ok(c) => r.failures.push(format!("unverified refuter {} for {}", c.u, SymFilter::Seq(s))),
            Err(e) => r.failures.push(format!("no refuter for {}: {e}", SymFilter::Seq(s))),
        }
    }
    let d = fan_as_contour(&grids)?;
    r.contour_agreements = d.cases - d.mismatches.len();
    for m in d.mismatches {
        r.failures.push(format!("contour mismatch on {m}"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_battery_passes() {
        let r = run_battery(7, 100).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.meshing > 10 && r.meshing < 100);
    }
}
