//! Law-check reports shared by every checker and oracle.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// The laws the checkers verify, in the order they are checked.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    ActionIdentity,
    ActionCompatibility,
    SupportBound,
    GenerationBound,
    FunctorIdentity,
    FunctorComposition,
    LeftUnit,
    RightUnit,
    /// Equivariance of substitution under the block subgroup.
    Equivariance,
    /// Invariance of substitution under relabeling of the outer inputs.
    Relabeling,
    /// Naturality of a structure map in the free variable.
    Naturality,
    /// Compatibility with the coend relation (dinaturality in the bound variable).
    CoendCompatibility,
    Commutativity,
    MultiplicationUnit,
    /// Substitution respects the commutative multiplication and its unit.
    AlgebraMorphism,
    Associativity,
    ModuleUnit,
    ModuleAssociativity,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("law serializes");
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

/// First counterexample found for one law.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Violation {
    pub law: Law,
    /// Human-readable location: arities, compositions, maps.
    pub location: String,
    /// Element indices involved, 1-based.
    pub witness: Vec<usize>,
}

/// How far a checker goes once a law fails.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Mode {
    /// Check every law; record the first counterexample of each.
    #[default]
    AllLaws,
    /// Stop at the first failing law.
    FirstFailure,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    /// Law instances evaluated.
    pub checked: u64,
    pub violations: Vec<Violation>,
    /// Remarks on checks that could only be partial.
    #[serde(default)]
    pub notices: Vec<String>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            checked: 0,
            violations: Vec::new(),
            notices: Vec::new(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn failed_laws(&self) -> BTreeSet<Law> {
        self.violations.iter().map(|v| v.law).collect()
    }

    pub fn first_failed_law(&self) -> Option<Law> {
        self.violations.first().map(|v| v.law)
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.notices.extend(other.notices);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.is_ok() { "ok" } else { "FAILED" };
        writeln!(f, "{}: {verdict} ({} instances)", self.subject, self.checked)?;
        for v in &self.violations {
            writeln!(f, "  {} at {}: witness {:?}", v.law, v.location, v.witness)?;
        }
        for n in &self.notices {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

/// Largest number of instances visited in one cell of a law before the
/// cell is sampled instead of enumerated.
pub const CELL_BUDGET: usize = 1 << 23;

/// The instances of a cell of `total` tuples to visit: all of them, or
/// `CELL_BUDGET` evenly spaced ones. The flag tells whether it sampled.
pub(crate) fn cell_indices(total: usize) -> (Box<dyn Iterator<Item = usize>>, bool) {
    if total <= CELL_BUDGET {
        (Box::new(0..total), false)
    } else {
        let step = total as u128;
        let budget = CELL_BUDGET as u128;
        (Box::new((0..budget).map(move |i| (i * step / budget) as usize)), true)
    }
}

/// Runs laws in order, each until its first counterexample.
pub(crate) struct LawRunner {
    report: Report,
    mode: Mode,
}

/// Outcome of a single law instance.
pub(crate) type Instance = Option<(String, Vec<usize>)>;

impl LawRunner {
    pub fn new(subject: impl Into<String>, mode: Mode) -> Self {
        LawRunner {
            report: Report::new(subject),
            mode,
        }
    }

    pub fn stopped(&self) -> bool {
        self.mode == Mode::FirstFailure && !self.report.is_ok()
    }

    /// Runs `body`, which calls the visitor on each instance and stops when
    /// it returns `false`.
    pub fn law(&mut self, law: Law, body: impl FnOnce(&mut dyn FnMut(Instance) -> bool)) {
        if self.stopped() {
            return;
        }
        let mut checked = 0u64;
        let mut found = None;
        body(&mut |inst: Instance| {
            checked += 1;
            match inst {
                None => true,
                Some(w) => {
                    found = Some(w);
                    false
                }
            }
        });
        self.report.checked += checked;
        if let Some((location, witness)) = found {
            self.report.violations.push(Violation {
                law,
                location,
                witness: witness.into_iter().map(|i| i + 1).collect(),
            });
        }
    }

    pub fn notice(&mut self, msg: impl Into<String>) {
        self.report.notices.push(msg.into());
    }

    pub fn finish(self) -> Report {
        self.report
    }
}

/// Visits the instances of a law; `check!(visit, cond, loc, witness)` reports
/// a failure and returns from the enclosing closure when asked to stop.
macro_rules! visit {
    ($visit:expr, $ok:expr, $loc:expr, $witness:expr) => {
        if !$ok {
            if !$visit(Some(($loc, $witness))) {
                return;
            }
        } else {
            $visit(None);
        }
    };
}
pub(crate) use visit;
