//! Verification reports: one verdict per named check, deterministic order.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Q;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail { witness: String },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// Outcome of a single check: `Err` carries the witness.
pub type Outcome = std::result::Result<(), String>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub dims: BTreeMap<String, usize>,
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), ..Default::default() }
    }

    pub fn record(&mut self, name: impl Into<String>, outcome: Outcome) {
        let verdict = match outcome {
            Ok(()) => Verdict::Pass,
            Err(witness) => Verdict::Fail { witness },
        };
        self.checks.push(Check { name: name.into(), verdict });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.record(name, Ok(()));
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.record(name, Err(witness.into()));
    }

    pub fn inconclusive(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.checks.push(Check { name: name.into(), verdict: Verdict::Inconclusive { reason: reason.into() } });
    }

    pub fn flag(&mut self, name: impl Into<String>, value: bool, witness: impl Into<String>) {
        if value {
            self.pass(name)
        } else {
            self.fail(name, witness)
        }
    }

    pub fn dim(&mut self, name: impl Into<String>, d: usize) {
        self.dims.insert(name.into(), d);
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    /// Append another report's checks under a prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
        for (k, v) in other.dims {
            self.dims.insert(key(&k), v);
        }
        for n in other.notes {
            self.notes.push(if prefix.is_empty() { n } else { format!("{prefix}: {n}") });
        }
        for c in other.checks {
            self.checks.push(Check { name: key(&c.name), verdict: c.verdict });
        }
    }

    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|c| c.verdict.is_fail())
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict.is_pass())
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.verdict.is_fail()).collect()
    }

    pub fn inconclusive_count(&self) -> usize {
        self.checks.iter().filter(|c| matches!(c.verdict, Verdict::Inconclusive { .. })).count()
    }

    pub fn get(&self, name: &str) -> Option<&Verdict> {
        self.checks.iter().find(|c| c.name == name).map(|c| &c.verdict)
    }

    /// Verdict of a named check, treating absence as failure.
    pub fn is_pass(&self, name: &str) -> bool {
        self.get(name).is_some_and(Verdict::is_pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for (k, v) in &self.dims {
            writeln!(f, "  dim {k} = {v}")?;
        }
        for c in &self.checks {
            match &c.verdict {
                Verdict::Pass => writeln!(f, "  PASS {}", c.name)?,
                Verdict::Fail { witness } => writeln!(f, "  FAIL {}: {}", c.name, witness)?,
                Verdict::Inconclusive { reason } => writeln!(f, "  INCONCLUSIVE {}: {}", c.name, reason)?,
            }
        }
        Ok(())
    }
}

/// Compact sparse rendering of a coordinate vector.
pub fn fmt_vec(v: &[Q]) -> String {
    let parts: Vec<String> =
        v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| format!("{i}:{x}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        format!("{{{}}}", parts.join(", "))
    }
}

/// First index where two families differ, as a witness string.
pub fn compare_families(label: &str, lhs: &[Vec<Q>], rhs: &[Vec<Q>]) -> Outcome {
    for (i, (a, b)) in lhs.iter().zip(rhs).enumerate() {
        if a != b {
            return Err(format!("{label} at basis {i}: lhs {} vs rhs {}", fmt_vec(a), fmt_vec(b)));
        }
    }
    Ok(())
}
