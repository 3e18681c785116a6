//! Normalized unions of intervals over ℕ, generic in the endpoint type.
//!
//! `IntervalSet` has numeric endpoints. `AffSet` has endpoints `a·n + b`
//! that are functions of a column index `n`, ordered by their eventual
//! behaviour; it describes a column set that is valid for all large `n`.

use std::cmp::{max, min};
use std::fmt;

/// Endpoint arithmetic needed by the interval algebra.
pub trait Endpoint: Copy + Ord + fmt::Debug {
    const ZERO: Self;
    fn succ(self) -> Self;
    fn pred(self) -> Self;
}

impl Endpoint for u64 {
    const ZERO: Self = 0;

    fn succ(self) -> Self {
        self + 1
    }

    fn pred(self) -> Self {
        self.saturating_sub(1)
    }
}

/// `n ↦ a·n + b`. The derived lexicographic order is the eventual order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Aff {
    pub a: i64,
    pub b: i64,
}

impl Aff {
    pub const fn new(a: i64, b: i64) -> Self {
        Aff { a, b }
    }

    pub const fn constant(b: i64) -> Self {
        Aff { a: 0, b }
    }

    pub fn at(self, n: u64) -> i64 {
        self.a * n as i64 + self.b
    }

    /// Least `n0` such that for all `n ≥ n0` the sign of `self(n) - other(n)`
    /// equals its eventual sign.
    pub fn settles_against(self, other: Aff) -> u64 {
        let da = self.a - other.a;
        let db = self.b - other.b;
        if da == 0 {
            return 0;
        }
        // eventual sign is sign(da); need da·n + db strictly of that sign
        let (da, db) = if da > 0 { (da, db) } else { (-da, -db) };
        if db > 0 {
            0
        } else {
            ((-db) / da + 1) as u64
        }
    }
}

impl Endpoint for Aff {
    const ZERO: Self = Aff { a: 0, b: 0 };

    fn succ(self) -> Self {
        Aff { a: self.a, b: self.b + 1 }
    }

    fn pred(self) -> Self {
        Aff { a: self.a, b: self.b - 1 }
    }
}

impl fmt::Debug for Aff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Aff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, b) => write!(f, "{b}"),
            (1, 0) => write!(f, "n"),
            (a, 0) => write!(f, "{a}n"),
            (1, b) if b > 0 => write!(f, "n+{b}"),
            (1, b) => write!(f, "n{b}"),
            (a, b) if b > 0 => write!(f, "{a}n+{b}"),
            (a, b) => write!(f, "{a}n{b}"),
        }
    }
}

/// A finite union of closed intervals plus an optional tail `[t, ∞)`.
/// Normalized: spans sorted, nonempty, separated by at least one gap point,
/// all below the tail with a gap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Intervals<T> {
    spans: Vec<(T, T)>,
    tail: Option<T>,
}

pub type IntervalSet = Intervals<u64>;
pub type AffSet = Intervals<Aff>;

impl<T: Endpoint> Intervals<T> {
    pub fn empty() -> Self {
        Intervals { spans: Vec::new(), tail: None }
    }

    pub fn full() -> Self {
        Intervals { spans: Vec::new(), tail: Some(T::ZERO) }
    }

    pub fn tail_from(t: T) -> Self {
        Self::new(Vec::new(), Some(t))
    }

    pub fn span(lo: T, hi: T) -> Self {
        Self::new(vec![(lo, hi)], None)
    }

    /// Normalizes arbitrary spans: endpoints below zero are clipped and
    /// empty spans dropped.
    pub fn new(spans: Vec<(T, T)>, tail: Option<T>) -> Self {
        let tail = tail.map(|t| max(t, T::ZERO));
        let mut spans: Vec<(T, T)> = spans
            .into_iter()
            .filter(|&(_, hi)| hi >= T::ZERO)
            .map(|(lo, hi)| (max(lo, T::ZERO), hi))
            .filter(|&(lo, hi)| lo <= hi)
            .collect();
        spans.sort();
        let mut merged: Vec<(T, T)> = Vec::with_capacity(spans.len());
        for (lo, hi) in spans {
            match merged.last_mut() {
                Some(last) if lo <= last.1.succ() => last.1 = max(last.1, hi),
                _ => merged.push((lo, hi)),
            }
        }
        let mut tail = tail;
        if let Some(t) = tail {
            let mut start = t;
            while let Some(&(lo, hi)) = merged.last() {
                if hi.succ() >= start {
                    start = min(start, lo);
                    merged.pop();
                } else {
                    break;
                }
            }
            tail = Some(start);
        }
        Intervals { spans: merged, tail }
    }

    pub fn spans(&self) -> &[(T, T)] {
        &self.spans
    }

    pub fn tail(&self) -> Option<T> {
        self.tail
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty() && self.tail.is_none()
    }

    /// Over ℕ a union of intervals is infinite exactly when it is cofinite.
    pub fn is_infinite(&self) -> bool {
        self.tail.is_some()
    }

    pub fn is_cofinite(&self) -> bool {
        self.tail.is_some()
    }

    pub fn is_full(&self) -> bool {
        self.spans.is_empty() && self.tail == Some(T::ZERO)
    }

    pub fn min(&self) -> Option<T> {
        self.spans.first().map(|s| s.0).or(self.tail)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut spans = self.spans.clone();
        spans.extend(&other.spans);
        let tail = match (self.tail, other.tail) {
            (Some(a), Some(b)) => Some(min(a, b)),
            (a, b) => a.or(b),
        };
        Self::new(spans, tail)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut spans = Vec::new();
        for &(a, b) in &self.spans {
            for &(c, d) in &other.spans {
                spans.push((max(a, c), min(b, d)));
            }
            if let Some(t) = other.tail {
                spans.push((max(a, t), b));
            }
        }
        if let Some(t) = self.tail {
            for &(c, d) in &other.spans {
                spans.push((max(c, t), d));
            }
        }
        let tail = match (self.tail, other.tail) {
            (Some(a), Some(b)) => Some(max(a, b)),
            _ => None,
        };
        Self::new(spans, tail)
    }

    pub fn complement(&self) -> Self {
        let mut spans = Vec::new();
        let mut cursor = T::ZERO;
        for &(lo, hi) in &self.spans {
            if lo > cursor {
                spans.push((cursor, lo.pred()));
            }
            cursor = hi.succ();
        }
        match self.tail {
            Some(t) => {
                if t > cursor {
                    spans.push((cursor, t.pred()));
                }
                Self::new(spans, None)
            }
            None => Self::new(spans, Some(cursor)),
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// Every endpoint, for threshold bookkeeping.
    pub fn endpoints(&self) -> Vec<T> {
        let mut out: Vec<T> = self.spans.iter().flat_map(|&(a, b)| [a, b]).collect();
        out.extend(self.tail);
        out
    }
}

impl IntervalSet {
    pub fn contains(&self, x: u64) -> bool {
        self.tail.is_some_and(|t| x >= t) || self.spans.iter().any(|&(a, b)| a <= x && x <= b)
    }

    pub fn points(values: &[u64]) -> Self {
        Self::new(values.iter().map(|&v| (v, v)).collect(), None)
    }

    /// Largest element of a finite set.
    pub fn max(&self) -> Option<u64> {
        if self.tail.is_some() {
            return None;
        }
        self.spans.last().map(|s| s.1)
    }

    /// Number of elements of a finite set.
    pub fn count(&self) -> Option<u64> {
        if self.tail.is_some() {
            return None;
        }
        Some(self.spans.iter().map(|&(a, b)| b - a + 1).sum())
    }

    /// The constant template with this value in every column.
    pub fn to_aff(&self) -> AffSet {
        let c = |v: u64| Aff::constant(v as i64);
        AffSet::new(self.spans.iter().map(|&(a, b)| (c(a), c(b))).collect(), self.tail.map(c))
    }
}

impl AffSet {
    /// The column set at index `n`.
    pub fn eval(&self, n: u64) -> IntervalSet {
        let spans = self
            .spans
            .iter()
            .filter_map(|&(lo, hi)| {
                let (lo, hi) = (lo.at(n).max(0), hi.at(n));
                (hi >= 0 && lo <= hi).then_some((lo as u64, hi as u64))
            })
            .collect();
        IntervalSet::new(spans, self.tail.map(|t| t.at(n).max(0) as u64))
    }

    /// Least `n0` from which every comparison among these endpoints, their
    /// neighbours and zero has its eventual sign.
    pub fn threshold_of(points: &[Aff]) -> u64 {
        let mut all: Vec<Aff> = Vec::with_capacity(points.len() * 3 + 1);
        for &p in points {
            all.extend([p.pred(), p, p.succ()]);
        }
        all.push(Aff::ZERO);
        all.sort();
        all.dedup();
        let mut t = 0;
        for (i, &f) in all.iter().enumerate() {
            for &g in &all[i + 1..] {
                t = t.max(f.settles_against(g));
            }
        }
        t
    }

    pub fn threshold(&self) -> u64 {
        Self::threshold_of(&self.endpoints())
    }

    /// True when no endpoint depends on the column index.
    pub fn is_constant(&self) -> bool {
        self.endpoints().iter().all(|p| p.a == 0)
    }
}

impl<T: Endpoint + fmt::Display> fmt::Display for Intervals<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        let mut parts: Vec<String> = self
            .spans
            .iter()
            .map(|(a, b)| if a == b { format!("{{{a}}}") } else { format!("[{a},{b}]") })
            .collect();
        if let Some(t) = self.tail {
            parts.push(format!("[{t},∞)"));
        }
        f.write_str(&parts.join("∪"))
    }
}

impl<T: Endpoint + fmt::Display> fmt::Debug for Intervals<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_merges_adjacent() {
        let s = IntervalSet::new(vec![(4, 6), (0, 2), (3, 3)], Some(8));
        assert_eq!(s.spans(), &[(0, 6)]);
        assert_eq!(s.tail(), Some(8));
        let t = IntervalSet::new(vec![(0, 2), (5, 9)], Some(7));
        assert_eq!(t.spans(), &[(0, 2)]);
        assert_eq!(t.tail(), Some(5));
    }

    #[test]
    fn boolean_algebra() {
        let a = IntervalSet::new(vec![(1, 3)], Some(10));
        let b = IntervalSet::new(vec![(2, 12)], None);
        assert_eq!(a.intersection(&b), IntervalSet::new(vec![(2, 3), (10, 12)], None));
        assert_eq!(a.union(&b), IntervalSet::tail_from(1));
        assert_eq!(a.complement(), IntervalSet::new(vec![(0, 0), (4, 9)], None));
        assert_eq!(a.complement().complement(), a);
        assert!(IntervalSet::empty().complement().is_full());
        assert!(IntervalSet::full().complement().is_empty());
    }

    #[test]
    fn affine_eval_and_order() {
        let diag = AffSet::span(Aff::new(1, 0), Aff::new(1, 0));
        assert_eq!(diag.eval(5), IntervalSet::points(&[5]));
        let above = diag.complement();
        assert_eq!(above.spans(), &[(Aff::ZERO, Aff::new(1, -1))]);
        assert_eq!(above.tail(), Some(Aff::new(1, 1)));
        assert_eq!(above.eval(0), IntervalSet::tail_from(1));
        assert!(Aff::new(1, -100) > Aff::new(0, 5));
        assert_eq!(Aff::new(1, -100).settles_against(Aff::new(0, 5)), 106);
    }

    #[test]
    fn clipping_of_negative_constants() {
        let s = AffSet::new(vec![(Aff::constant(-3), Aff::constant(2))], None);
        assert_eq!(s.spans(), &[(Aff::ZERO, Aff::constant(2))]);
        let gone = AffSet::new(vec![(Aff::constant(0), Aff::new(-1, 4))], None);
        assert!(gone.is_empty());
    }
}
