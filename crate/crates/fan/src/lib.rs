//! Symbolic filters on ℕ and ℕ×ℕ: the sequential fan, its Fréchet
//! witnesses and its strong-Fréchet refuters.

pub mod battery;
pub mod contour;
pub mod error;
pub mod filter;
pub mod grid;
pub mod interval;
pub mod seq;
pub mod syntax;

pub use contour::{contour_member, fan_as_contour, ContourDerivation};
pub use error::{FanError, Result};
pub use filter::{nat_set, sym_finer, sym_member, sym_mesh, Domain, Support, SymFilter};
pub use grid::{ColumnSet, GridSet};
pub use interval::{Aff, AffSet, IntervalSet};
pub use seq::{
    check_escape, check_frechet_witness, diagonal_escape, frechet_witness, strong_frechet_refuter, Chain,
    RefuterCertificate, SeqTerm,
};
pub use syntax::{parse_filter, parse_picker};
