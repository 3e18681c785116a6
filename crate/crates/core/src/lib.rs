//! Exact filter calculus on finite convergence spaces.
//!
//! Every structure here is finite and every predicate is decided by exhaustive
//! bit arithmetic. Filters are principal (see [`family`]), convergences are
//! point-determined (see [`space`]), and filter classes are space-parameterized
//! sets of kernels (see [`classes`]).

pub mod cascade;
pub mod classes;
pub mod compactness;
pub mod error;
pub mod family;
pub mod outcome;
pub mod relations;
pub mod space;

/// Largest supported ground set.
pub const MAX_POINTS: usize = 16;

pub use classes::{ClassCache, FilterClass, KernelSet};
pub use error::{Error, Result};
pub use family::{FamilyOfSets, Filter, GroundSet, ProductIndex, Relation, Subset};
pub use outcome::{Outcome, Verdict};
pub use space::{Convergence, FiniteSpace, LimitTable, SpaceKind};
