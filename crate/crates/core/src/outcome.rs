//! Three-valued verdicts for predicates and four-valued outcomes for theorem instances.

use std::fmt;

use crate::family::Subset;

/// Result of a universally quantified predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// True, and at least one instance of the hypothesis was exercised.
    Witnessed,
    /// True because the hypothesis never fired.
    Vacuous,
    /// False; the first refuting kernel in bitmask order.
    Refuted(Subset),
}

impl Verdict {
    #[inline]
    pub fn holds(self) -> bool {
        !matches!(self, Verdict::Refuted(_))
    }

    pub fn refuter(self) -> Option<Subset> {
        match self {
            Verdict::Refuted(k) => Some(k),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Witnessed => "true",
            Verdict::Vacuous => "true (vacuous)",
            Verdict::Refuted(_) => "false",
        }
    }
}

/// Outcome of one theorem instance: the hypothesis is checked first, then
/// the conclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Holds,
    Fails,
    NotApplicable,
    Vacuous,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::NotApplicable => "not-applicable",
            Outcome::Vacuous => "vacuous",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}
