//! Axiom reports shared by the verifiers.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomEntry {
    pub id: String,
    pub status: Status,
    pub witness: Option<Vec<usize>>,
    pub cost: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub entries: Vec<AxiomEntry>,
}

impl AxiomReport {
    pub fn entry(&self, id: &str) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn has_failures(&self) -> bool {
        self.failures().next().is_some()
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    /// Ids in order, for registry comparisons.
    pub fn ids(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.id.as_str()).collect()
    }
}

/// Accumulates one registry entry: tuples scanned and the first failure.
#[derive(Clone, Debug, Default)]
pub struct Scan {
    cost: u64,
    witness: Option<Vec<usize>>,
    note: Option<String>,
    skipped: Option<String>,
    coverage: Vec<String>,
}

impl Scan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tick(&mut self, n: u64) {
        self.cost += n;
    }

    /// Counts one tuple and records it if `ok` is false and nothing failed yet.
    pub fn expect(&mut self, ok: bool, witness: impl FnOnce() -> Vec<usize>, note: impl FnOnce() -> String) -> bool {
        self.cost += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
            self.note = Some(note());
        }
        ok
    }

    pub fn fail(&mut self, witness: Vec<usize>, note: impl Into<String>) {
        if self.witness.is_none() {
            self.witness = Some(witness);
            self.note = Some(note.into());
        }
    }

    /// Marks the entry skipped unless it has already failed.
    pub fn skip(&mut self, reason: impl Into<String>) {
        if self.skipped.is_none() {
            self.skipped = Some(reason.into());
        }
    }

    /// Notes a part of the entry that was not checked, without skipping it.
    pub fn note(&mut self, coverage: impl Into<String>) {
        let coverage = coverage.into();
        if !self.coverage.contains(&coverage) {
            self.coverage.push(coverage);
        }
    }

    pub fn failed(&self) -> bool {
        self.witness.is_some()
    }

    pub fn into_entry(self, id: &str) -> AxiomEntry {
        let (status, note) = match (self.witness.is_some(), self.skipped) {
            (true, _) => (Status::Fail, self.note),
            (false, Some(reason)) => (Status::Skipped, Some(reason)),
            (false, None) if self.coverage.is_empty() => (Status::Pass, None),
            (false, None) => (Status::Pass, Some(self.coverage.join("; "))),
        };
        AxiomEntry {
            id: id.to_string(),
            status,
            witness: self.witness,
            cost: self.cost,
            note,
        }
    }
}
