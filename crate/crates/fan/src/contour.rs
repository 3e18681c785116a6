//! The fan filter with cofinite support as a contour of column filters.

use crate::error::Result;
use crate::filter::{nat_set, sym_member, Support, SymFilter};
use crate::grid::GridSet;

/// Outcome of comparing the direct membership rule with the contour
/// definition on a battery of sets.
#[derive(Clone, Debug)]
pub struct ContourDerivation {
    pub filter: SymFilter,
    pub cases: usize,
    pub members: usize,
    pub mismatches: Vec<GridSet>,
}

impl ContourDerivation {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Membership through the contour definition: `s` belongs to the contour
/// of the column cofinite filters along the cofinite filter on ℕ when some
/// tail `[m, ∞)` of column indices has every column of `s` in the cofinite
/// filter on ℕ. Past the explicit prefix the columns repeat with the
/// template period, so `m` = start of the templates is the only candidate
/// that needs checking and one period of columns decides it.
pub fn contour_member(s: &GridSet) -> Result<bool> {
    let m = s.start();
    for n in m..m + s.period() as u64 {
        if !sym_member(&nat_set(&s.col(n)), &SymFilter::Cofinite)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn fan_as_contour(battery: &[GridSet]) -> Result<ContourDerivation> {
    let filter = SymFilter::Fan(Support::CofinitelyManyColumns);
    let mut members = 0;
    let mut mismatches = Vec::new();
    for s in battery {
        let direct = sym_member(s, &filter)?;
        members += direct as usize;
        if direct != contour_member(s)? {
            mismatches.push(s.clone());
        }
    }
    Ok(ContourDerivation { filter, cases: battery.len(), members, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{AffSet, IntervalSet};

    #[test]
    fn examples() {
        let all = GridSet::uniform(IntervalSet::tail_from(3));
        let late = GridSet::columns_from(5);
        let even = GridSet::periodic(vec![AffSet::full(), AffSet::empty()]);
        let d = fan_as_contour(&[all.clone(), late.clone(), even.clone()]).unwrap();
        assert!(d.holds());
        assert_eq!(d.members, 2);
        assert!(contour_member(&all).unwrap());
        assert!(contour_member(&late).unwrap());
        assert!(!contour_member(&even).unwrap());
    }
}
