//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines show in plain `cargo test`
//! output. Exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use convkit_core::relations::is_d_quotient;
use convkit_core::{FilterClass, Relation, Subset};
use convkit_harness::oracle::{Fam, SpaceOracle};
use convkit_harness::suites::{self, quotient_witness, Bounds, DEFAULT_SEED};
use convkit_harness::Result;

/// Wall-clock limit for the theorem suites of the first criterion.
const THEOREM_SUITE_LIMIT: Duration = Duration::from_secs(60);
/// Wall-clock limit for the fan battery.
const FAN_LIMIT: Duration = Duration::from_secs(5);
/// Seeded four-point draws for the oracle criterion.
const ORACLE_SAMPLES: usize = 10_000;
const FAN_CASES: usize = 1000;

const THEOREM_SUITES: [&str; 8] =
    ["dquotient", "dperfect", "continuous", "pointsuffice", "accessible", "adh-d", "mquot-range", "mperfect-range"];
const EXPLORATORY_SUITES: [&str; 4] = ["closed-search", "dperfect-search", "pdiag-search", "topological-reflector"];

struct Line {
    ok: bool,
    text: String,
}

fn exhaustive_bounds() -> Bounds {
    Bounds {
        max_points: 3,
        classes: vec![FilterClass::F1, FilterClass::ClF1],
        seed: DEFAULT_SEED,
        samples: ORACLE_SAMPLES,
    }
}

fn theorem_suites() -> Result<Line> {
    let b = exhaustive_bounds();
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for id in THEOREM_SUITES {
        let r = suites::run_suite(id, &b, None)?;
        ok &= r.fails == 0 && r.holds > 0;
        parts.push(format!("{id} {}/{}", r.holds, r.instances));
    }
    let elapsed = start.elapsed();
    ok &= elapsed <= THEOREM_SUITE_LIMIT;
    Ok(Line {
        ok,
        text: format!(
            "exhaustive theorem suites, n ≤ 3, D, J, M in {{F1, clF1}}: {} in {:.1} s (limit {} s)",
            parts.join(", "),
            elapsed.as_secs_f64(),
            THEOREM_SUITE_LIMIT.as_secs()
        ),
    })
}

fn oracle_agreement() -> Result<Line> {
    let b = exhaustive_bounds().with_max_points(4);
    let r = suites::run_suite("oracle", &b, None)?;
    Ok(Line {
        ok: r.fails == 0 && r.holds == r.instances,
        text: format!(
            "oracle agreement, all n ≤ 3 and {ORACLE_SAMPLES} seeded n = 4 spaces: {} of {} checks agree",
            r.holds, r.instances
        ),
    })
}

fn contour_suite() -> Result<Line> {
    let r = suites::run_suite("contour-compose", &exhaustive_bounds(), None)?;
    Ok(Line {
        ok: r.fails == 0 && r.holds == r.instances && r.instances > 0,
        text: format!(
            "contour composition, cascades ≤ 7 nodes on n ≤ 3, every J on X × 2: {} of {} multifilters",
            r.holds, r.instances
        ),
    })
}

fn quotient_hierarchy() -> Result<Line> {
    let Some(w) = quotient_witness(3) else {
        return Ok(Line { ok: false, text: "quotient hierarchy: no clF1-quotient, non-F1-quotient surjection found".into() });
    };
    let r = Relation::from_map(w.tau.n(), &w.map)?;
    let cl = is_d_quotient(&r, &FilterClass::ClF1, &w.xi, &w.tau)?;
    let f1 = is_d_quotient(&r, &FilterClass::F1, &w.xi, &w.tau)?;
    // definitional refutation: y ∈ adh_τ H while f⁻y misses adh_ξ f⁻H
    let (ox, ot) = (SpaceOracle::new(&w.xi), SpaceOracle::new(&w.tau));
    let pre = r.preimage_set(w.refuter);
    let fiber = r.preimage_set(Subset::singleton(w.tau.n(), w.point));
    let refutes = ot.adh(Fam::up(w.refuter)).contains(w.point) && !ox.adh(Fam::up(pre)).meets(fiber);
    Ok(Line {
        ok: cl && !f1 && refutes,
        text: format!("quotient hierarchy witness: {}", w.describe()),
    })
}

fn fan_battery() -> Result<Line> {
    let start = Instant::now();
    let r = convkit_fan::battery::run_battery(DEFAULT_SEED, FAN_CASES)?;
    let elapsed = start.elapsed();
    Ok(Line {
        ok: r.passed() && r.cases == FAN_CASES && elapsed <= FAN_LIMIT,
        text: format!(
            "fan battery, {} cases: {} meshing sets with verified witnesses {}, refuters {}, contour agreements {} in {:.2} s (limit {} s)",
            r.cases,
            r.meshing,
            r.witnesses_verified,
            r.refuters_verified,
            r.contour_agreements,
            elapsed.as_secs_f64(),
            FAN_LIMIT.as_secs()
        ),
    })
}

fn reproducible_findings() -> Result<Line> {
    let b = exhaustive_bounds().with_max_points(4);
    let mut ok = true;
    let mut parts = Vec::new();
    for id in EXPLORATORY_SUITES {
        let first = suites::run_suite(id, &b, Some(1))?;
        let second = suites::run_suite(id, &b, None)?;
        ok &= first.finding_digest == second.finding_digest && first.digest == second.digest && first.fails == 0;
        parts.push(format!("{id} {} findings {}", first.findings, &first.finding_digest[..12]));
    }
    Ok(Line { ok, text: format!("exploratory findings reproducible across runs: {}", parts.join(", ")) })
}

fn collapses() -> Result<Line> {
    let r = suites::run_suite("collapse", &exhaustive_bounds().with_max_points(4), None)?;
    Ok(Line {
        ok: r.fails == 0 && r.holds == r.instances,
        text: format!("finite collapses: {} of {} checks hold", r.holds, r.instances),
    })
}

fn main() -> ExitCode {
    let criteria: [fn() -> Result<Line>; 7] = [
        theorem_suites,
        oracle_agreement,
        contour_suite,
        quotient_hierarchy,
        fan_battery,
        reproducible_findings,
        collapses,
    ];
    let mut all = true;
    for (i, c) in criteria.iter().enumerate() {
        let line = c().unwrap_or_else(|e| Line { ok: false, text: format!("error: {e}") });
        all &= line.ok;
        println!("criterion {} {}: {}", i + 1, if line.ok { "PASS" } else { "FAIL" }, line.text);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
