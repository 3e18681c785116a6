//! Subsets of ℕ×ℕ described column by column.
//!
//! Column `n` of a `GridSet` is an explicit `IntervalSet` for `n < start`
//! and `templates[n % period].eval(n)` from `start` on. Boolean operations
//! are computed on the templates symbolically; columns before the point
//! where the symbolic answer settles are materialized into the prefix.

use std::fmt;

use crate::interval::{Aff, AffSet, IntervalSet};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GridSet {
    prefix: Vec<IntervalSet>,
    templates: Vec<AffSet>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl GridSet {
    /// Builds and normalizes. `templates` must be nonempty.
    pub fn from_parts(prefix: Vec<IntervalSet>, templates: Vec<AffSet>) -> Self {
        assert!(!templates.is_empty(), "a grid set needs at least one template");
        let mut g = GridSet { prefix, templates };
        let settle = g.templates.iter().map(AffSet::threshold).max().unwrap_or(0);
        while g.start() < settle {
            let n = g.start();
            let c = g.template_for(n).eval(n);
            g.prefix.push(c);
        }
        g.normalize();
        g
    }

    /// Every column equal to `col`.
    pub fn uniform(col: IntervalSet) -> Self {
        Self::from_parts(Vec::new(), vec![col.to_aff()])
    }

    /// Column `n` is `template.eval(n)` for every `n`.
    pub fn affine(template: AffSet) -> Self {
        Self::from_parts(Vec::new(), vec![template])
    }

    pub fn periodic(templates: Vec<AffSet>) -> Self {
        Self::from_parts(Vec::new(), templates)
    }

    pub fn empty() -> Self {
        Self::uniform(IntervalSet::empty())
    }

    pub fn full() -> Self {
        Self::uniform(IntervalSet::full())
    }

    /// `{n} × col`.
    pub fn column(n: u64, col: IntervalSet) -> Self {
        Self::empty().with_column(n, col)
    }

    /// All columns `≥ k` full.
    pub fn columns_from(k: u64) -> Self {
        Self::grid_tail(k, 0)
    }

    /// `{(n, j) : n ≥ a, j ≥ b}`.
    pub fn grid_tail(a: u64, b: u64) -> Self {
        Self::from_parts(
            vec![IntervalSet::empty(); a as usize],
            vec![IntervalSet::tail_from(b).to_aff()],
        )
    }

    /// The same set with column `n` replaced.
    pub fn with_column(&self, n: u64, col: IntervalSet) -> Self {
        let n = n as usize;
        let mut prefix = self.prefix.clone();
        while prefix.len() <= n {
            let k = prefix.len() as u64;
            prefix.push(self.col(k));
        }
        prefix[n] = col;
        Self::from_parts(prefix, self.templates.clone())
    }

    pub fn period(&self) -> usize {
        self.templates.len()
    }

    /// First column governed by the templates.
    pub fn start(&self) -> u64 {
        self.prefix.len() as u64
    }

    pub fn prefix(&self) -> &[IntervalSet] {
        &self.prefix
    }

    pub fn templates(&self) -> &[AffSet] {
        &self.templates
    }

    pub fn template_for(&self, n: u64) -> &AffSet {
        &self.templates[(n % self.period() as u64) as usize]
    }

    pub fn col(&self, n: u64) -> IntervalSet {
        match self.prefix.get(n as usize) {
            Some(c) => c.clone(),
            None => self.template_for(n).eval(n),
        }
    }

    pub fn contains(&self, n: u64, j: u64) -> bool {
        self.col(n).contains(j)
    }

    fn normalize(&mut self) {
        let p = self.templates.len();
        for d in 1..p {
            if p.is_multiple_of(d) && (0..p).all(|r| self.templates[r] == self.templates[r % d]) {
                self.templates.truncate(d);
                break;
            }
        }
        while let Some(last) = self.prefix.last() {
            let n = self.prefix.len() as u64 - 1;
            let t = self.template_for(n);
            if n >= t.threshold() && *last == t.eval(n) {
                self.prefix.pop();
            } else {
                break;
            }
        }
    }

    fn combine(
        &self,
        other: &GridSet,
        sym: impl Fn(&AffSet, &AffSet) -> AffSet,
        num: impl Fn(&IntervalSet, &IntervalSet) -> IntervalSet,
    ) -> GridSet {
        let p = lcm(self.period(), other.period());
        let mut start = self.start().max(other.start());
        let mut templates = Vec::with_capacity(p);
        for r in 0..p {
            let (s, t) = (&self.templates[r % self.period()], &other.templates[r % other.period()]);
            let out = sym(s, t);
            let mut pts = s.endpoints();
            pts.extend(t.endpoints());
            start = start.max(AffSet::threshold_of(&pts)).max(out.threshold());
            templates.push(out);
        }
        let prefix = (0..start).map(|n| num(&self.col(n), &other.col(n))).collect();
        GridSet::from_parts(prefix, templates)
    }

    pub fn union(&self, other: &GridSet) -> GridSet {
        self.combine(other, AffSet::union, IntervalSet::union)
    }

    pub fn intersection(&self, other: &GridSet) -> GridSet {
        self.combine(other, AffSet::intersection, IntervalSet::intersection)
    }

    pub fn difference(&self, other: &GridSet) -> GridSet {
        self.combine(other, AffSet::difference, IntervalSet::difference)
    }

    pub fn complement(&self) -> GridSet {
        GridSet::full().difference(self)
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.iter().all(IntervalSet::is_empty) && self.templates.iter().all(AffSet::is_empty)
    }

    /// Finitely many points.
    pub fn is_finite(&self) -> bool {
        self.prefix.iter().all(|c| !c.is_infinite()) && self.templates.iter().all(AffSet::is_empty)
    }

    pub fn is_subset_of(&self, other: &GridSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn same_set(&self, other: &GridSet) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    pub fn meets(&self, other: &GridSet) -> bool {
        !self.intersection(other).is_empty()
    }

    /// Columns whose set satisfies `pred`; `pred` must not depend on the
    /// column index once the template shape has settled.
    fn columns_where(&self, pred: impl Fn(&IntervalSet) -> bool, sym: impl Fn(&AffSet) -> bool) -> ColumnSet {
        ColumnSet {
            prefix: self.prefix.iter().map(&pred).collect(),
            pattern: self.templates.iter().map(sym).collect(),
        }
    }

    /// `{n : column n infinite}`; over ℕ infinite columns are cofinite.
    pub fn infinite_columns(&self) -> ColumnSet {
        self.columns_where(IntervalSet::is_infinite, AffSet::is_infinite)
    }

    pub fn nonempty_columns(&self) -> ColumnSet {
        self.columns_where(|c| !c.is_empty(), |t| !t.is_empty())
    }

    pub fn full_columns(&self) -> ColumnSet {
        self.columns_where(IntervalSet::is_full, AffSet::is_full)
    }
}

impl fmt::Display for GridSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (n, c) in self.prefix.iter().enumerate() {
            if !c.is_empty() {
                parts.push(format!("col {n}: {c}"));
            }
        }
        let p = self.period();
        for (r, t) in self.templates.iter().enumerate() {
            if t.is_empty() {
                continue;
            }
            let which = if p == 1 { "n".to_string() } else { format!("n≡{r} mod {p}") };
            parts.push(format!("col {which}, n≥{}: {t}", self.start()));
        }
        if parts.is_empty() {
            return f.write_str("∅");
        }
        f.write_str(&parts.join("; "))
    }
}

impl fmt::Debug for GridSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An eventually periodic set of column indices: explicit flags for the
/// columns before the templates start, then `pattern[n % period]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnSet {
    prefix: Vec<bool>,
    pattern: Vec<bool>,
}

impl ColumnSet {
    pub fn contains(&self, n: u64) -> bool {
        match self.prefix.get(n as usize) {
            Some(&b) => b,
            None => self.pattern[(n % self.pattern.len() as u64) as usize],
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.pattern.iter().any(|&b| b)
    }

    pub fn is_cofinite(&self) -> bool {
        self.pattern.iter().all(|&b| b)
    }

    pub fn is_everything(&self) -> bool {
        self.is_cofinite() && self.prefix.iter().all(|&b| b)
    }

    pub fn is_empty(&self) -> bool {
        !self.is_infinite() && !self.prefix.iter().any(|&b| b)
    }

    pub fn min(&self) -> Option<u64> {
        let horizon = self.prefix.len() + self.pattern.len();
        (0..horizon as u64).find(|&n| self.contains(n))
    }

    /// Number of members when finite.
    pub fn count(&self) -> Option<usize> {
        (!self.is_infinite()).then(|| self.prefix.iter().filter(|&&b| b).count())
    }
}

/// A column whose lower bound grows with the index: `[a·n + b, ∞)`.
pub fn affine_tail(a: i64, b: i64) -> AffSet {
    AffSet::tail_from(Aff::new(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_eq(g: &GridSet, f: impl Fn(u64, u64) -> bool) {
        for n in 0..40 {
            for j in 0..120 {
                assert_eq!(g.contains(n, j), f(n, j), "at ({n},{j}) in {g}");
            }
        }
    }

    #[test]
    fn diagonal_and_above() {
        let diag = GridSet::affine(AffSet::span(Aff::new(1, 0), Aff::new(1, 0)));
        brute_eq(&diag, |n, j| j == n);
        let above = GridSet::affine(affine_tail(1, 1));
        brute_eq(&above, |n, j| j > n);
        assert!(!diag.meets(&above));
        brute_eq(&diag.complement(), |n, j| j != n);
        assert!(diag.union(&above).same_set(&GridSet::affine(affine_tail(1, 0))));
    }

    #[test]
    fn crossing_is_materialized() {
        // [0, 10] vs [n, 2n]: ordering changes around n = 10
        let a = GridSet::uniform(IntervalSet::span(0, 10));
        let b = GridSet::affine(AffSet::span(Aff::new(1, 0), Aff::new(2, 0)));
        brute_eq(&a.union(&b), |n, j| j <= 10 || (n <= j && j <= 2 * n));
        brute_eq(&a.intersection(&b), |n, j| j <= 10 && n <= j && j <= 2 * n);
        brute_eq(&a.difference(&b), |n, j| j <= 10 && !(n <= j && j <= 2 * n));
    }

    #[test]
    fn periodic_and_exceptions() {
        let even = GridSet::periodic(vec![AffSet::full(), AffSet::empty()]);
        brute_eq(&even, |n, _| n % 2 == 0);
        let t = GridSet::grid_tail(3, 2);
        brute_eq(&t, |n, j| n >= 3 && j >= 2);
        brute_eq(&even.intersection(&t), |n, j| n % 2 == 0 && n >= 3 && j >= 2);
        assert!(even.infinite_columns().is_infinite());
        assert!(!even.infinite_columns().is_cofinite());
        let c = GridSet::column(5, IntervalSet::full());
        assert_eq!(c.infinite_columns().min(), Some(5));
        assert_eq!(c.infinite_columns().count(), Some(1));
    }

    #[test]
    fn normalization_is_canonical() {
        let a = GridSet::periodic(vec![AffSet::full(), AffSet::full()]);
        assert_eq!(a, GridSet::full());
        let b = GridSet::full().with_column(2, IntervalSet::full());
        assert_eq!(b, GridSet::full());
        assert!(GridSet::full().difference(&GridSet::full()).is_empty());
    }
}
