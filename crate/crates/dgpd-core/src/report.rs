//! Witness-carrying validation reports.
//!
//! Every validator in this crate returns a [`ValidationReport`] rather than a
//! bare boolean: one [`AxiomVerdict`] per axiom scanned, each violation with a
//! concrete witness tuple. Witnesses are resolved to printable names so a
//! report is meaningful away from the table that produced it.

use alloc::string::String;
use alloc::vec::Vec;

/// One concrete counterexample: the tuple of ids it involves plus a
/// human-readable account of what went wrong there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub witness: Vec<String>,
    pub detail: String,
}

/// Scan result for a single axiom. `checked` counts the tuples examined, so
/// an empty violation list over zero tuples is distinguishable from a real
/// pass.
#[derive(Debug, Clone)]
pub struct AxiomVerdict {
    pub axiom: String,
    pub checked: u64,
    pub violations: Vec<Violation>,
}

impl AxiomVerdict {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Full validation outcome for one structure.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    /// Label of the structure validated, e.g. a fixture name.
    pub subject: String,
    pub axioms: Vec<AxiomVerdict>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport {
            subject: subject.into(),
            axioms: Vec::new(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.axioms.iter().all(AxiomVerdict::is_ok)
    }

    pub fn push(&mut self, verdict: AxiomVerdict) {
        self.axioms.push(verdict);
    }

    /// Absorbs `other`, prefixing its axiom labels. Used when a composite
    /// validator embeds the report of an invalid component.
    pub fn absorb(&mut self, prefix: &str, other: ValidationReport) {
        for mut verdict in other.axioms {
            let mut label = String::from(prefix);
            label.push_str(": ");
            label.push_str(&verdict.axiom);
            verdict.axiom = label;
            self.axioms.push(verdict);
        }
    }

    /// First violation in axiom order, if any. Convenient for error paths.
    pub fn first_violation(&self) -> Option<&Violation> {
        self.axioms.iter().flat_map(|a| a.violations.iter()).next()
    }

    pub fn violation_count(&self) -> usize {
        self.axioms.iter().map(|a| a.violations.len()).sum()
    }
}

/// Incremental builder for one axiom scan.
pub struct AxiomScan {
    verdict: AxiomVerdict,
}

impl AxiomScan {
    pub fn new(axiom: impl Into<String>) -> Self {
        AxiomScan {
            verdict: AxiomVerdict {
                axiom: axiom.into(),
                checked: 0,
                violations: Vec::new(),
            },
        }
    }

    pub fn tick(&mut self) {
        self.verdict.checked += 1;
    }

    pub fn violate(&mut self, witness: Vec<String>, detail: String) {
        self.verdict.violations.push(Violation { witness, detail });
    }

    pub fn violation_len(&self) -> usize {
        self.verdict.violations.len()
    }

    pub fn finish(self) -> AxiomVerdict {
        self.verdict
    }
}
