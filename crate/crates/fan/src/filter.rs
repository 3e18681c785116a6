//! Filter terms and their decision procedures.
//!
//! Sets on ℕ are represented as grid sets supported in column 0.
//!
//! Every term reduces to a meet of canonical atoms:
//!
//! | atom            | members `S`                                   |
//! |-----------------|-----------------------------------------------|
//! | `Principal(A)`  | `A ⊆ S`                                       |
//! | `CofiniteOn(P)` | `P ∖ S` finite (`P` infinite)                 |
//! | `FanAll`        | every column of `S` cofinite                  |
//! | `FanCofin`      | cofinitely many columns of `S` cofinite       |
//! | `Blocks`        | some `T_k = {(n, j) : n ≥ k}` inside `S`      |
//!
//! Mesh (`Q` stands for `Principal` or `CofiniteOn` of a set `P`):
//!
//! | pair                          | rule                                  |
//! |-------------------------------|---------------------------------------|
//! | `Principal A`, `Principal B`  | `A ∩ B ≠ ∅`                           |
//! | `Principal A`, `CofiniteOn P` | `A ∩ P` infinite                      |
//! | `CofiniteOn P`, `CofiniteOn Q`| `P ∩ Q` infinite                      |
//! | `Q`, `FanAll`                 | some column of `P` infinite           |
//! | `Q`, `FanCofin`               | infinitely many columns of `P` infinite |
//! | `Q`, `Blocks`                 | infinitely many columns of `P` nonempty |
//! | fans and blocks among themselves | always                             |
//! | meet, anything                | some part meshes                      |
//!
//! Order (`finer(F, G)`: every member of `F` is a member of `G`):
//!
//! | `F`               | `G`               | rule                             |
//! |-------------------|-------------------|----------------------------------|
//! | anything          | meet              | `F` coarser than every part      |
//! | `Principal A`     | anything          | `A ∈ G`                          |
//! | anything          | `Principal ∅`     | always                           |
//! | non-principal     | `Principal B`     | `B = ∅`                          |
//! | `CofiniteOn P`    | non-principal `G` | `P ∈ G`                          |
//! | `FanAll`          | `CofiniteOn P`    | `P` meets finitely many columns  |
//! | `FanCofin`        | `CofiniteOn P`    | never                            |
//! | `Blocks`          | `CofiniteOn P`    | every column of `P` finite       |
//! | `FanAll`          | `FanCofin`        | always                           |
//! | `Blocks`          | `FanCofin`        | always                           |
//! | `X`               | `X`               | always                           |
//! | other fan/blocks pairs |              | never                            |
//! | meet              | anything          | some part finer, else undecided  |

use std::fmt;

use crate::error::{FanError, Result};
use crate::grid::GridSet;
use crate::interval::IntervalSet;
use crate::seq::SeqTerm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Support {
    AllColumns,
    CofinitelyManyColumns,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Nat,
    Grid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymFilter {
    Principal(GridSet),
    PrincipalNat(IntervalSet),
    Cofinite,
    ColumnTail { column: u64, within: IntervalSet },
    GridTail { a: u64, b: u64 },
    /// Generated by the sets `T_k` of all columns `≥ k`.
    ColumnBlocks,
    Fan(Support),
    Seq(SeqTerm),
    Meet(Vec<SymFilter>),
}

#[derive(Clone, Debug)]
enum Atom {
    Principal(GridSet),
    CofiniteOn(GridSet),
    FanAll,
    FanCofin,
    Blocks,
}

/// Embeds a subset of ℕ as column 0.
pub fn nat_set(s: &IntervalSet) -> GridSet {
    GridSet::column(0, s.clone())
}

impl SymFilter {
    pub fn column_tail(column: u64, within: IntervalSet) -> Result<Self> {
        if !within.is_infinite() {
            return Err(FanError::Invalid(format!("column tail within finite set {within}")));
        }
        Ok(SymFilter::ColumnTail { column, within })
    }

    pub fn meet(parts: Vec<SymFilter>) -> Self {
        SymFilter::Meet(parts)
    }

    pub fn domain(&self) -> Result<Domain> {
        Ok(match self {
            SymFilter::PrincipalNat(_) | SymFilter::Cofinite => Domain::Nat,
            SymFilter::Meet(parts) => {
                let mut d = None;
                for p in parts {
                    let pd = p.domain()?;
                    if d.is_some_and(|d| d != pd) {
                        return Err(FanError::DomainMismatch);
                    }
                    d = Some(pd);
                }
                d.ok_or_else(|| FanError::Invalid("empty meet".into()))?
            }
            _ => Domain::Grid,
        })
    }

    fn atoms(&self) -> Result<Vec<Atom>> {
        let mut out = Vec::new();
        self.push_atoms(&mut out)?;
        // principal parts of a meet combine into one principal of the union
        let mut principal: Option<GridSet> = None;
        let mut rest = Vec::new();
        for a in out {
            match a {
                Atom::Principal(s) => {
                    principal = Some(match principal {
                        Some(p) => p.union(&s),
                        None => s,
                    })
                }
                other => rest.push(other),
            }
        }
        if let Some(p) = principal {
            rest.insert(0, Atom::Principal(p));
        }
        Ok(rest)
    }

    fn push_atoms(&self, out: &mut Vec<Atom>) -> Result<()> {
        match self {
            SymFilter::Principal(s) => out.push(Atom::Principal(s.clone())),
            SymFilter::PrincipalNat(s) => out.push(Atom::Principal(nat_set(s))),
            SymFilter::Cofinite => out.push(Atom::CofiniteOn(nat_set(&IntervalSet::full()))),
            SymFilter::ColumnTail { column, within } => {
                if !within.is_infinite() {
                    return Err(FanError::Invalid(format!("column tail within finite set {within}")));
                }
                out.push(Atom::CofiniteOn(GridSet::column(*column, within.clone())))
            }
            SymFilter::GridTail { a, b } => out.push(Atom::Principal(GridSet::grid_tail(*a, *b))),
            SymFilter::ColumnBlocks => out.push(Atom::Blocks),
            SymFilter::Fan(Support::AllColumns) => out.push(Atom::FanAll),
            SymFilter::Fan(Support::CofinitelyManyColumns) => out.push(Atom::FanCofin),
            SymFilter::Seq(s) => out.push(Atom::CofiniteOn(s.point_set()?)),
            SymFilter::Meet(parts) => {
                self.domain()?;
                for p in parts {
                    p.push_atoms(out)?;
                }
            }
        }
        Ok(())
    }
}

fn atom_member(s: &GridSet, a: &Atom) -> bool {
    match a {
        Atom::Principal(p) => p.is_subset_of(s),
        Atom::CofiniteOn(p) => p.difference(s).is_finite(),
        Atom::FanAll => s.infinite_columns().is_everything(),
        Atom::FanCofin => s.infinite_columns().is_cofinite(),
        Atom::Blocks => s.full_columns().is_cofinite(),
    }
}

fn set_of(a: &Atom) -> Option<&GridSet> {
    match a {
        Atom::Principal(p) | Atom::CofiniteOn(p) => Some(p),
        _ => None,
    }
}

fn atom_mesh(x: &Atom, y: &Atom) -> bool {
    use Atom::*;
    match (x, y) {
        (Principal(a), Principal(b)) => a.meets(b),
        (Principal(a), CofiniteOn(p)) | (CofiniteOn(p), Principal(a)) => !a.intersection(p).is_finite(),
        (CofiniteOn(p), CofiniteOn(q)) => !p.intersection(q).is_finite(),
        (q, fan) | (fan, q) if set_of(q).is_some() => {
            let p = set_of(q).unwrap();
            match fan {
                FanAll => !p.infinite_columns().is_empty(),
                FanCofin => p.infinite_columns().is_infinite(),
                Blocks => p.nonempty_columns().is_infinite(),
                _ => unreachable!(),
            }
        }
        _ => true,
    }
}

/// Every member of `coarse` is a member of `fine`.
fn atom_finer(coarse: &Atom, fine: &Atom) -> bool {
    use Atom::*;
    match (coarse, fine) {
        (Principal(a), _) => atom_member(a, fine),
        (_, Principal(b)) => b.is_empty(),
        (CofiniteOn(p), _) => atom_member(p, fine),
        (FanAll, CofiniteOn(p)) => !p.nonempty_columns().is_infinite(),
        (FanCofin, CofiniteOn(_)) => false,
        (Blocks, CofiniteOn(p)) => p.infinite_columns().is_empty(),
        (FanAll, FanAll) | (FanCofin, FanCofin) | (Blocks, Blocks) => true,
        (FanAll, FanCofin) | (Blocks, FanCofin) => true,
        _ => false,
    }
}

fn check_domains(f: &SymFilter, g: &SymFilter) -> Result<()> {
    if f.domain()? != g.domain()? {
        return Err(FanError::DomainMismatch);
    }
    Ok(())
}

pub fn sym_member(s: &GridSet, f: &SymFilter) -> Result<bool> {
    if f.domain()? == Domain::Nat && !s.is_subset_of(&GridSet::column(0, IntervalSet::full())) {
        return Err(FanError::DomainMismatch);
    }
    Ok(f.atoms()?.iter().all(|a| atom_member(s, a)))
}

pub fn sym_mesh(f: &SymFilter, g: &SymFilter) -> Result<bool> {
    check_domains(f, g)?;
    let (fa, ga) = (f.atoms()?, g.atoms()?);
    Ok(fa.iter().any(|x| ga.iter().any(|y| atom_mesh(x, y))))
}

/// `fine` is finer than `coarse`: every member of `coarse` belongs to `fine`.
pub fn sym_finer(coarse: &SymFilter, fine: &SymFilter) -> Result<bool> {
    check_domains(coarse, fine)?;
    let (ca, fa) = (coarse.atoms()?, fine.atoms()?);
    let mut all = true;
    for y in &fa {
        if let Atom::Principal(b) = y {
            if b.is_empty() {
                continue;
            }
        }
        let ok = if let [x] = ca.as_slice() {
            atom_finer(x, y)
        } else if ca.iter().any(|x| atom_finer(x, y)) {
            true
        } else {
            return Err(FanError::Undecided(format!("meet {coarse} against {fine}")));
        };
        all &= ok;
    }
    Ok(all)
}

impl fmt::Display for SymFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::render(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fan_all() -> SymFilter {
        SymFilter::Fan(Support::AllColumns)
    }

    fn fan_cofin() -> SymFilter {
        SymFilter::Fan(Support::CofinitelyManyColumns)
    }

    #[test]
    fn full_column_against_fans() {
        let s = SymFilter::Principal(GridSet::column(5, IntervalSet::full()));
        assert!(sym_mesh(&s, &fan_all()).unwrap());
        assert!(!sym_mesh(&s, &fan_cofin()).unwrap());
        let tail = SymFilter::column_tail(5, IntervalSet::full()).unwrap();
        assert!(sym_finer(&fan_all(), &tail).unwrap());
        assert!(!sym_finer(&fan_cofin(), &tail).unwrap());
    }

    #[test]
    fn fan_order() {
        assert!(sym_finer(&fan_all(), &fan_cofin()).unwrap());
        assert!(!sym_finer(&fan_cofin(), &fan_all()).unwrap());
        assert!(sym_finer(&SymFilter::ColumnBlocks, &fan_cofin()).unwrap());
        assert!(!sym_finer(&SymFilter::ColumnBlocks, &fan_all()).unwrap());
        assert!(sym_mesh(&SymFilter::ColumnBlocks, &fan_all()).unwrap());
    }

    #[test]
    fn nat_domain() {
        let evens_free = SymFilter::PrincipalNat(IntervalSet::tail_from(4));
        assert!(sym_finer(&SymFilter::Cofinite, &evens_free).is_ok_and(|b| !b));
        assert!(sym_finer(&evens_free, &SymFilter::Cofinite).unwrap());
        assert!(sym_mesh(&evens_free, &SymFilter::Cofinite).unwrap());
        assert_eq!(sym_mesh(&SymFilter::Cofinite, &fan_all()), Err(FanError::DomainMismatch));
        let finite = SymFilter::PrincipalNat(IntervalSet::span(0, 9));
        assert!(!sym_mesh(&finite, &SymFilter::Cofinite).unwrap());
    }

    #[test]
    fn meet_rules() {
        let m = SymFilter::meet(vec![fan_all(), SymFilter::ColumnBlocks]);
        assert!(sym_finer(&m, &fan_cofin()).unwrap());
        assert!(sym_finer(&SymFilter::ColumnBlocks, &SymFilter::meet(vec![fan_cofin(), SymFilter::ColumnBlocks])).unwrap());
        let tail = SymFilter::column_tail(2, IntervalSet::full()).unwrap();
        let m2 = SymFilter::meet(vec![fan_cofin(), SymFilter::ColumnBlocks]);
        assert!(matches!(sym_finer(&m2, &tail), Err(FanError::Undecided(_))));
        assert!(sym_finer(&m2, &SymFilter::Principal(GridSet::empty())).unwrap());
    }
}
