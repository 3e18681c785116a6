//! Sequences in the fan, the Fréchet witness and the strong-Fréchet refuter.

use std::collections::BTreeMap;

use crate::error::{FanError, Result};
use crate::filter::{sym_finer, sym_member, sym_mesh, Support, SymFilter};
use crate::grid::{affine_tail, GridSet};
use crate::interval::{Aff, AffSet, IntervalSet};

/// A sequence, identified with the filter of its tails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqTerm {
    /// Runs through `{column} × within` in increasing order.
    TailInColumn { column: u64, within: IntervalSet },
    /// Visits `(n, a·n + b)` for `n ≥ from`, except that a patched column
    /// `n` is visited at the finitely many points of `patch[n]` instead.
    Transversal { from: u64, a: i64, b: i64, patch: BTreeMap<u64, IntervalSet> },
}

impl SeqTerm {
    pub fn transversal(from: u64, a: i64, b: i64) -> Self {
        SeqTerm::Transversal { from, a, b, patch: BTreeMap::new() }
    }

    pub fn with_patch(self, column: u64, set: IntervalSet) -> Self {
        match self {
            SeqTerm::Transversal { from, a, b, mut patch } => {
                patch.insert(column, set);
                SeqTerm::Transversal { from, a, b, patch }
            }
            other => other,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SeqTerm::TailInColumn { within, .. } if !within.is_infinite() => {
                Err(FanError::Invalid(format!("column sequence within finite set {within}")))
            }
            SeqTerm::Transversal { from, a, b, patch } => {
                if *a < 0 || a * *from as i64 + b < 0 {
                    return Err(FanError::Invalid(format!("picker {a}n+{b} leaves ℕ")));
                }
                if let Some((c, s)) = patch.iter().find(|(_, s)| s.is_infinite()) {
                    return Err(FanError::Invalid(format!("infinite patch {s} at column {c}")));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// The range of the sequence.
    pub fn point_set(&self) -> Result<GridSet> {
        self.validate()?;
        Ok(match self {
            SeqTerm::TailInColumn { column, within } => GridSet::column(*column, within.clone()),
            SeqTerm::Transversal { from, a, b, patch } => {
                let pick = Aff::new(*a, *b);
                let mut g = GridSet::from_parts(
                    vec![IntervalSet::empty(); *from as usize],
                    vec![AffSet::span(pick, pick)],
                );
                for (&c, s) in patch {
                    g = g.with_column(c, s.clone());
                }
                g
            }
        })
    }

    pub fn filter(&self) -> SymFilter {
        SymFilter::Seq(self.clone())
    }
}

/// A sequence inside `a` converging to the fan point, for any `a` meshing
/// the fan filter: the part of `a` in its first infinite column.
pub fn frechet_witness(a: &GridSet) -> Result<SeqTerm> {
    let fan = SymFilter::Fan(Support::AllColumns);
    if !sym_mesh(&SymFilter::Principal(a.clone()), &fan)? {
        return Err(FanError::NotMeshing(format!("{a} has no infinite column")));
    }
    let column = a
        .infinite_columns()
        .min()
        .ok_or_else(|| FanError::NotMeshing(format!("{a} has no infinite column")))?;
    Ok(SeqTerm::TailInColumn { column, within: a.col(column) })
}

/// Checks a witness: finer than the fan filter and living inside `a`.
pub fn check_frechet_witness(a: &GridSet, seq: &SeqTerm) -> Result<bool> {
    let fan = SymFilter::Fan(Support::AllColumns);
    Ok(sym_finer(&fan, &seq.filter())? && sym_member(a, &seq.filter())?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefuterCertificate {
    /// A member of the fan filter.
    pub u: GridSet,
    /// Range of the sequence, disjoint from `u`.
    pub range: GridSet,
    pub fan_member: bool,
    pub disjoint: bool,
    /// The sequence is finer than the column-block filter.
    pub follows_blocks: bool,
}

impl RefuterCertificate {
    pub fn verified(&self) -> bool {
        self.fan_member && self.disjoint && self.follows_blocks
    }
}

/// For a transversal `σ` finer than the column-block filter `j`, a fan
/// member missing the whole range of `σ`: column `n` keeps only the points
/// above the one picked there.
pub fn strong_frechet_refuter(j: &SymFilter, sigma: &SeqTerm) -> Result<RefuterCertificate> {
    if *j != SymFilter::ColumnBlocks {
        return Err(FanError::Invalid(format!("{j} is not the column-block filter")));
    }
    let SeqTerm::Transversal { from, a, b, patch } = sigma else {
        return Err(FanError::NotTransversal);
    };
    let range = sigma.point_set()?;
    let follows_blocks = sym_finer(j, &sigma.filter())?;
    if !follows_blocks {
        return Err(FanError::Invalid(format!("{} is not finer than {j}", SymFilter::Seq(sigma.clone()))));
    }
    let mut u = GridSet::from_parts(vec![IntervalSet::full(); *from as usize], vec![affine_tail(*a, b + 1)]);
    for (&c, s) in patch {
        let above = s.max().map_or(IntervalSet::full(), |m| IntervalSet::tail_from(m + 1));
        u = u.with_column(c, above);
    }
    let fan_member = sym_member(&u, &SymFilter::Fan(Support::AllColumns))?;
    let disjoint = !u.meets(&range);
    Ok(RefuterCertificate { u, range, fan_member, disjoint, follows_blocks })
}

/// A countable chain of candidate base members, indexed by `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chain {
    /// `B_k = {(n, j) : n ≥ a(k), j ≥ b(k)}`.
    GridTails { a: Aff, b: Aff },
    /// `B_k` has column `n` equal to `[p·n + q·k + r, ∞)`.
    AffineTails { p: i64, q: i64, r: i64 },
}

impl Chain {
    pub fn member(&self, k: u64) -> GridSet {
        match *self {
            Chain::GridTails { a, b } => GridSet::grid_tail(a.at(k).max(0) as u64, b.at(k).max(0) as u64),
            Chain::AffineTails { p, q, r } => GridSet::affine(affine_tail(p, q * k as i64 + r)),
        }
    }
}

/// A member of the fan filter containing no member of the chain.
pub fn diagonal_escape(chain: &Chain) -> Result<GridSet> {
    match *chain {
        // no grid tail fits under a lower bound that grows with the column
        Chain::GridTails { .. } => Ok(GridSet::affine(affine_tail(1, 1))),
        Chain::AffineTails { p, q, r } => {
            if p < 0 || q < 0 || r < 0 {
                return Err(FanError::Invalid("chain parameters must be nonnegative".into()));
            }
            Ok(GridSet::affine(affine_tail(p + q + 1, r + 1)))
        }
    }
}

/// Checks an escape against the first `bound` chain members.
pub fn check_escape(chain: &Chain, u: &GridSet, bound: u64) -> Result<bool> {
    if !sym_member(u, &SymFilter::Fan(Support::AllColumns))? {
        return Ok(false);
    }
    Ok((0..bound).all(|k| !chain.member(k).is_subset_of(u)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Endpoint;

    #[test]
    fn witnesses() {
        let full = frechet_witness(&GridSet::full()).unwrap();
        assert_eq!(full, SeqTerm::TailInColumn { column: 0, within: IntervalSet::full() });
        let col3 = GridSet::column(3, IntervalSet::tail_from(7));
        let w = frechet_witness(&col3).unwrap();
        assert_eq!(w, SeqTerm::TailInColumn { column: 3, within: IntervalSet::tail_from(7) });
        assert!(check_frechet_witness(&col3, &w).unwrap());
        let finite_cols = GridSet::affine(AffSet::span(Aff::ZERO, Aff::new(1, 0)));
        assert!(matches!(frechet_witness(&finite_cols), Err(FanError::NotMeshing(_))));
    }

    #[test]
    fn diagonal_refuter() {
        let sigma = SeqTerm::transversal(0, 1, 0);
        let cert = strong_frechet_refuter(&SymFilter::ColumnBlocks, &sigma).unwrap();
        assert!(cert.verified());
        assert_eq!(cert.u, GridSet::affine(affine_tail(1, 1)));
        assert!(!sym_finer(&SymFilter::Fan(Support::AllColumns), &sigma.filter()).unwrap());
    }

    #[test]
    fn patched_refuter() {
        let sigma = SeqTerm::transversal(0, 1, 0).with_patch(2, IntervalSet::points(&[1, 5]));
        let cert = strong_frechet_refuter(&SymFilter::ColumnBlocks, &sigma).unwrap();
        assert!(cert.verified());
        assert_eq!(cert.u.col(2), IntervalSet::tail_from(6));
        assert_eq!(cert.u.col(3), IntervalSet::tail_from(4));
    }

    #[test]
    fn column_sequence_has_no_refuter() {
        let s = SeqTerm::TailInColumn { column: 3, within: IntervalSet::full() };
        assert_eq!(strong_frechet_refuter(&SymFilter::ColumnBlocks, &s), Err(FanError::NotTransversal));
    }

    #[test]
    fn escapes() {
        let c = Chain::AffineTails { p: 1, q: 2, r: 3 };
        let u = diagonal_escape(&c).unwrap();
        assert!(check_escape(&c, &u, 50).unwrap());
        let g = Chain::GridTails { a: Aff::new(1, 0), b: Aff::new(2, 1) };
        assert!(check_escape(&g, &diagonal_escape(&g).unwrap(), 50).unwrap());
    }
}
