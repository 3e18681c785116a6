//! Theorem suites: one per statement, each exhaustive within its bounds.
//!
//! A suite turns its bounds into units of work, runs them on a worker pool
//! and merges the per-unit tallies in unit order, so the digest does not
//! depend on the number of workers.

mod agreement;
mod contour;
mod maps;
mod spaces;

use std::sync::Arc;
use std::time::Instant;

use convkit_core::{ClassCache, FiniteSpace, FilterClass, KernelSet, Subset};
use rayon::prelude::*;

use crate::enumerate;
use crate::error::{HarnessError, Result};
use crate::report::{ReportHeader, SuiteReport, Tally};

pub use contour::{contour_units, multifilters};
pub use maps::quotient_witness;

pub const DEFAULT_SEED: u64 = 2024;
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Clone, Debug)]
pub struct Bounds {
    pub max_points: usize,
    pub classes: Vec<FilterClass>,
    pub seed: u64,
    /// Seeded draws for grounds beyond the exhaustive range. Per-space suites
    /// draw a tenth of this, pair suites a hundredth; the oracle suite all.
    pub samples: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_points: enumerate::EXHAUSTIVE_MAX,
            classes: vec![FilterClass::F1, FilterClass::ClF1],
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
        }
    }
}

impl Bounds {
    pub fn with_max_points(mut self, n: usize) -> Self {
        self.max_points = n;
        self
    }

    pub fn space_samples(&self) -> usize {
        (self.samples / 10).max(1)
    }

    pub fn pair_samples(&self) -> usize {
        (self.samples / 100).max(1)
    }
}

pub struct Suite {
    pub id: &'static str,
    pub summary: &'static str,
    pub exploratory: bool,
    run: fn(&Bounds) -> Vec<Tally>,
}

pub fn registry() -> &'static [Suite] {
    const S: &[Suite] = &[
        Suite {
            id: "adh-d",
            summary: "F is D-compact at {x} iff x ∈ lim_{Adh_D ξ} F",
            exploratory: false,
            run: spaces::adh_d,
        },
        Suite {
            id: "accessible",
            summary: "accessibility iff ξ ≥ Adh_J Base_D ξ; ξ = Base_(J/D)#≥ ξ iff accessible",
            exploratory: false,
            run: spaces::accessible,
        },
        Suite {
            id: "vicinity",
            summary: "F is (D/F1)-compact at B iff V(F) is D-compact at B",
            exploratory: false,
            run: spaces::vicinity,
        },
        Suite {
            id: "pdiag",
            summary: "P-diagonal and adh♮D ⊆ D give (D/F1)-compactness = D-compactness",
            exploratory: false,
            run: spaces::pdiag,
        },
        Suite {
            id: "pdiag-converse",
            summary: "ξ = Adh_D ξ and D-compact ⇒ (D/F1)-compact give P-diagonality",
            exploratory: false,
            run: spaces::pdiag_converse,
        },
        Suite {
            id: "pointsuffice",
            summary: "for F1-composable D, D-compact relations are decided at convergent filters",
            exploratory: false,
            run: maps::pointsuffice,
        },
        Suite {
            id: "continuous",
            summary: "τ = Adh_D τ: continuous iff compact relation iff D-compact relation",
            exploratory: false,
            run: maps::continuous,
        },
        Suite {
            id: "eq-fibers",
            summary: "D-compact relations into P-diagonal τ through F1-compactness and compact images",
            exploratory: false,
            run: maps::eq_fibers,
        },
        Suite {
            id: "usc",
            summary: "between topologies, F1-compact relations are the upper semicontinuous ones",
            exploratory: false,
            run: maps::usc,
        },
        Suite {
            id: "closed",
            summary: "adherent iff f⁻ is F1-compact; adherent ⇒ closed; closed with closed adherences ⇒ adherent",
            exploratory: false,
            run: maps::closed,
        },
        Suite {
            id: "closed-search",
            summary: "closed maps that are not adherent, on non-topological domains",
            exploratory: true,
            run: maps::closed_search,
        },
        Suite {
            id: "dperfect",
            summary: "topological ξ: D-perfect iff f⁻ D-compact iff f⁻ ∫D-compact iff ∫D-perfect",
            exploratory: false,
            run: maps::dperfect,
        },
        Suite {
            id: "dperfect-search",
            summary: "D-perfect maps with f⁻ not D-compact, on non-topological domains",
            exploratory: true,
            run: maps::dperfect_search,
        },
        Suite {
            id: "dquotient",
            summary: "D-quotient iff τ ≥ Adh_D fξ iff f: (X, f⁻τ) → (Y, fξ) is D-compact",
            exploratory: false,
            run: maps::dquotient,
        },
        Suite {
            id: "quotient-hierarchy",
            summary: "a clF1-quotient surjection that is not F1-quotient",
            exploratory: false,
            run: maps::quotient_hierarchy,
        },
        Suite {
            id: "contour-compose",
            summary: "the composed multifilter has contour J(∫Φ)",
            exploratory: false,
            run: contour::contour_compose_suite,
        },
        Suite {
            id: "local",
            summary: "θ ≥ Adh_J Base_D Adh_M ξ iff θ-convergent filters are M-compactly (J/D)#",
            exploratory: false,
            run: spaces::local,
        },
        Suite {
            id: "mquot-range",
            summary: "M-quotient onto (J/D)-accessible range iff f is M-compactly (J/D)#",
            exploratory: false,
            run: maps::mquot_range,
        },
        Suite {
            id: "mperfect-range",
            summary: "M-perfect onto (J/D)-accessible range iff f⁻ is M-compactly (J/D)#",
            exploratory: false,
            run: maps::mperfect_range,
        },
        Suite {
            id: "neighborhood-accessible",
            summary: "topological ξ is (J/Fw)-accessible iff every neighborhood filter is (J/Fw)#≥",
            exploratory: false,
            run: spaces::neighborhood_accessible,
        },
        Suite {
            id: "range-rows",
            summary: "the twelve (M, J, D) rows of both range theorems",
            exploratory: false,
            run: maps::range_rows,
        },
        Suite {
            id: "oracle",
            summary: "closed forms against definitional oracles",
            exploratory: false,
            run: agreement::oracle,
        },
        Suite {
            id: "collapse",
            summary: "finite convergences are pretopological; F = Fw = F1; Base identity",
            exploratory: false,
            run: agreement::collapse,
        },
        Suite {
            id: "topological-reflector",
            summary: "spaces where one application of Adh_clF1 differs from the topological modification",
            exploratory: true,
            run: spaces::topological_reflector,
        },
        Suite {
            id: "pdiag-search",
            summary: "P-diagonal spaces where adh♮D ⊄ D and the compactness forms differ",
            exploratory: true,
            run: spaces::pdiag_search,
        },
    ];
    S
}

pub fn find(id: &str) -> Result<&'static Suite> {
    registry().iter().find(|s| s.id == id).ok_or_else(|| {
        let ids: Vec<&str> = registry().iter().map(|s| s.id).collect();
        HarnessError::Usage(format!("unknown suite `{id}`; known: {}", ids.join(", ")))
    })
}

/// Runs a suite on a pool of `jobs` workers (all cores when `None`).
pub fn run_suite(id: &str, bounds: &Bounds, jobs: Option<usize>) -> Result<SuiteReport> {
    let suite = find(id)?;
    if bounds.max_points == 0 || bounds.max_points > crate::max_points_cap() {
        return Err(HarnessError::Usage(format!(
            "--max-points must be between 1 and {}",
            crate::max_points_cap()
        )));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(|e| HarnessError::Usage(format!("worker pool: {e}")))?;
    let start = Instant::now();
    let units = pool.install(|| (suite.run)(bounds));
    let header = ReportHeader {
        suite: suite.id.to_string(),
        summary: suite.summary.to_string(),
        exploratory: suite.exploratory,
        max_points: bounds.max_points,
        seed: bounds.seed,
        classes: bounds.classes.iter().map(|c| c.to_string()).collect(),
    };
    Ok(SuiteReport::assemble(header, units, start.elapsed().as_millis()))
}

pub(crate) fn members(class: &FilterClass, space: &FiniteSpace) -> Arc<KernelSet> {
    ClassCache::global().members(class, space)
}

pub(crate) fn par<U: Sync>(units: &[U], f: impl Fn(&U) -> Tally + Sync + Send) -> Vec<Tally> {
    units.par_iter().map(f).collect()
}

/// Every space of every size up to the bound.
pub(crate) fn each_space(b: &Bounds, salt: u64) -> Vec<FiniteSpace> {
    (1..=b.max_points)
        .flat_map(|n| enumerate::space_list(n, b.seed, salt, b.space_samples()))
        .collect()
}

pub(crate) fn show(space: &FiniteSpace, s: Subset) -> String {
    space.ground().render(s)
}

/// Triples `(M, J, D)` from the bound's classes.
pub(crate) fn triples(b: &Bounds) -> Vec<(FilterClass, FilterClass, FilterClass)> {
    let c = &b.classes;
    c.iter()
        .flat_map(|m| c.iter().flat_map(move |j| c.iter().map(move |d| (m.clone(), j.clone(), d.clone()))))
        .collect()
}

pub(crate) fn pairs(b: &Bounds) -> Vec<(FilterClass, FilterClass)> {
    let c = &b.classes;
    c.iter().flat_map(|j| c.iter().map(move |d| (j.clone(), d.clone()))).collect()
}
