//! Checkers for statements about real constituents of permutation
//! characters, each producing a [`Report`].

mod checks;
mod reproduce;
mod structure;
mod sweep;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use checks::{
    check_lemma_bob, check_odd_multiplicity_hypotheses, check_real_coverage, check_theorem_a, check_theorem_b,
    PairData,
};
pub use reproduce::{reproduce, KnownDecomposition, KNOWN_DECOMPOSITIONS};
pub use structure::{
    check_agl_multiplicity, check_burnside, check_d10_remark, check_indicator_oracle, check_normal_reality,
    check_odd_index_induction, check_odd_quotient_reality, check_theorem_d, check_unipotent_reality,
};
pub use sweep::{sample_subgroups, sweep, SweepConfig, SweepSummary};

/// Outcome of one check. `pass` records whether the checked implication
/// (or equivalence) held; `witnesses` carry the data it was decided on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub statement: String,
    pub group: String,
    pub subgroup: Option<String>,
    pub hypotheses: BTreeMap<String, bool>,
    pub conclusion: BTreeMap<String, bool>,
    pub witnesses: Vec<Value>,
    pub pass: bool,
}

impl Report {
    pub fn new(statement: &str, group: &str, subgroup: Option<&str>) -> Report {
        Report {
            statement: statement.to_string(),
            group: group.to_string(),
            subgroup: subgroup.map(str::to_string),
            hypotheses: BTreeMap::new(),
            conclusion: BTreeMap::new(),
            witnesses: Vec::new(),
            pass: false,
        }
    }

    pub fn hypothesis(&mut self, name: &str, value: bool) -> &mut Self {
        self.hypotheses.insert(name.to_string(), value);
        self
    }

    pub fn conclude(&mut self, name: &str, value: bool) -> &mut Self {
        self.conclusion.insert(name.to_string(), value);
        self
    }

    pub fn witness(&mut self, value: Value) -> &mut Self {
        self.witnesses.push(value);
        self
    }

    /// Passes when some hypothesis fails or every conclusion holds.
    pub fn by_implication(mut self) -> Report {
        self.pass = !self.hypotheses.values().all(|&h| h) || self.conclusion.values().all(|&c| c);
        self
    }

    pub fn with_pass(mut self, pass: bool) -> Report {
        self.pass = pass;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

fn flags(map: &BTreeMap<String, bool>) -> String {
    map.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} {}", self.statement, self.group)?;
        if let Some(s) = &self.subgroup {
            write!(f, " / {s}")?;
        }
        writeln!(f)?;
        if !self.hypotheses.is_empty() {
            writeln!(f, "  hypotheses: {}", flags(&self.hypotheses))?;
        }
        if !self.conclusion.is_empty() {
            writeln!(f, "  conclusion: {}", flags(&self.conclusion))?;
        }
        for w in &self.witnesses {
            writeln!(f, "  {w}")?;
        }
        Ok(())
    }
}
