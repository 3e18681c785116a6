//! Suite results: per-instance outcomes, bounded witnesses and digests.

use std::fmt::Write as _;

use convkit_core::Outcome;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Witnesses and findings kept in a report; counts and digests cover all.
pub const WITNESS_CAP: usize = 8;

/// Outcomes of one unit of work, in instance order.
#[derive(Default, Debug)]
pub struct Tally {
    pub outcomes: Vec<Outcome>,
    /// Failure notes keyed by local instance index.
    pub notes: Vec<(usize, String)>,
    /// Exploratory findings keyed by local instance index.
    pub findings: Vec<(usize, String)>,
}

impl Tally {
    pub fn push(&mut self, o: Outcome) {
        self.outcomes.push(o);
    }

    pub fn push_many(&mut self, o: Outcome, count: usize) {
        self.outcomes.extend(std::iter::repeat_n(o, count));
    }

    /// Records a checked instance; the note is built only on failure.
    pub fn check(&mut self, ok: bool, note: impl FnOnce() -> String) {
        if !ok {
            self.fail(note());
        } else {
            self.outcomes.push(Outcome::Holds);
        }
    }

    pub fn fail(&mut self, note: String) {
        if self.notes.len() < WITNESS_CAP {
            self.notes.push((self.outcomes.len(), note));
        }
        self.outcomes.push(Outcome::Fails);
    }

    /// Attaches a finding to the instance about to be pushed.
    pub fn finding(&mut self, text: String) {
        self.findings.push((self.outcomes.len(), text));
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Indexed {
    pub index: usize,
    pub text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub summary: String,
    pub exploratory: bool,
    pub max_points: usize,
    pub seed: u64,
    pub classes: Vec<String>,
    pub instances: usize,
    pub holds: usize,
    pub fails: usize,
    pub not_applicable: usize,
    pub vacuous: usize,
    pub findings: usize,
    pub witnesses: Vec<Indexed>,
    pub finding_samples: Vec<Indexed>,
    /// SHA-256 over every instance outcome and finding, in instance order.
    pub digest: String,
    /// SHA-256 over the findings alone.
    pub finding_digest: String,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    /// Merges unit tallies in order. Indices become global.
    pub fn assemble(header: ReportHeader, units: Vec<Tally>, elapsed_ms: u128) -> Self {
        let mut all = Sha256::new();
        let mut found = Sha256::new();
        let mut counts = [0usize; 4];
        let mut witnesses = Vec::new();
        let mut finding_samples = Vec::new();
        let mut findings = 0;
        let mut base = 0;
        let mut line = String::new();
        for unit in units {
            let mut fi = unit.findings.iter().peekable();
            for (i, o) in unit.outcomes.iter().enumerate() {
                counts[*o as usize] += 1;
                line.clear();
                let _ = writeln!(line, "{} {}", base + i, o.tag());
                all.update(line.as_bytes());
                while let Some((_, text)) = fi.next_if(|(j, _)| *j == i) {
                    line.clear();
                    let _ = writeln!(line, "{} finding {text}", base + i);
                    all.update(line.as_bytes());
                    found.update(line.as_bytes());
                    findings += 1;
                    if finding_samples.len() < WITNESS_CAP {
                        finding_samples.push(Indexed { index: base + i, text: text.clone() });
                    }
                }
            }
            for (i, note) in unit.notes {
                if witnesses.len() < WITNESS_CAP {
                    witnesses.push(Indexed { index: base + i, text: note });
                }
            }
            base += unit.outcomes.len();
        }
        SuiteReport {
            suite: header.suite,
            summary: header.summary,
            exploratory: header.exploratory,
            max_points: header.max_points,
            seed: header.seed,
            classes: header.classes,
            instances: base,
            holds: counts[Outcome::Holds as usize],
            fails: counts[Outcome::Fails as usize],
            not_applicable: counts[Outcome::NotApplicable as usize],
            vacuous: counts[Outcome::Vacuous as usize],
            findings,
            witnesses,
            finding_samples,
            digest: hex::encode(all.finalize()),
            finding_digest: hex::encode(found.finalize()),
            elapsed_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.fails == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{status} {}  ({})", self.suite, self.summary);
        let _ = writeln!(
            out,
            "  instances {}  holds {}  fails {}  not-applicable {}  vacuous {}  [{} ms]",
            self.instances, self.holds, self.fails, self.not_applicable, self.vacuous, self.elapsed_ms
        );
        let _ = writeln!(
            out,
            "  max-points {}  seed {}  classes {}",
            self.max_points,
            self.seed,
            self.classes.join(",")
        );
        if self.exploratory || self.findings > 0 {
            let _ = writeln!(out, "  findings {}  finding digest {}", self.findings, self.finding_digest);
            for f in &self.finding_samples {
                let _ = writeln!(out, "    #{}: {}", f.index, f.text);
            }
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "  failure #{}: {}", w.index, w.text);
        }
        let _ = writeln!(out, "  digest {}", self.digest);
        out
    }
}

pub struct ReportHeader {
    pub suite: String,
    pub summary: String,
    pub exploratory: bool,
    pub max_points: usize,
    pub seed: u64,
    pub classes: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header() -> ReportHeader {
        ReportHeader {
            suite: "t".into(),
            summary: String::new(),
            exploratory: false,
            max_points: 1,
            seed: 0,
            classes: vec![],
        }
    }

    #[test]
    fn digest_ignores_unit_boundaries() {
        let mut a = Tally::default();
        a.push(Outcome::Holds);
        a.finding("x".into());
        a.push(Outcome::Vacuous);
        let mut b = Tally::default();
        b.push(Outcome::Holds);
        let mut c = Tally::default();
        c.finding("x".into());
        c.push(Outcome::Vacuous);
        let one = SuiteReport::assemble(header(), vec![a], 0);
        let two = SuiteReport::assemble(header(), vec![b, c], 5);
        assert_eq!(one.digest, two.digest);
        assert_eq!(one.finding_digest, two.finding_digest);
        assert_eq!(two.findings, 1);
        assert_eq!(two.finding_samples[0].index, 1);
    }

    #[test]
    fn failures_are_counted() {
        let mut t = Tally::default();
        t.check(true, || unreachable!());
        t.check(false, || "boom".into());
        let r = SuiteReport::assemble(header(), vec![t], 0);
        assert!(!r.passed());
        assert_eq!(r.witnesses[0].index, 1);
    }
}
