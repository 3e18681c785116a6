//! Definitional oracles, exhaustive theorem suites, the space and cascade
//! file formats, and the `convkit` command line.

pub mod cascadedoc;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod oracle;
pub mod report;
pub mod spacedoc;
pub mod suites;

pub use error::{HarnessError, Result};

/// Ceiling on `--max-points`; the oracle families stop at six points.
pub const HARD_MAX_POINTS: usize = 6;

/// The `--max-points` cap, lowered by `CONVKIT_MAX_POINTS` when set.
pub fn max_points_cap() -> usize {
    std::env::var("CONVKIT_MAX_POINTS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map_or(HARD_MAX_POINTS, |n| n.min(HARD_MAX_POINTS))
}
