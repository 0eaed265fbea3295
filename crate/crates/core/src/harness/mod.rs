//! Instance generators and verification suites.
//!
//! A suite evaluates theorem consequences on concrete instances. Passing is
//! an instance check, never a proof.

mod generate;
mod suites;

pub use generate::{
    characters, coset_actions, generate_instance, random_invertible, ActionRecipe, AlgebraRecipe,
    Instance, InstanceSpec,
};
pub use suites::{
    check_instance, suite_axioms, suite_example_2_10, suite_prop_2_4, suite_theorem_2_8,
    suite_theorem_3_7, suite_theorem_4_3, AxiomKind, ClaimOutcome, SuiteId,
};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{graded_action, ActionError};
use crate::algebra::AlgebraError;
use crate::hopf::{GroupDoc, GroupTable, HopfError};
use crate::io::{action_from_doc, action_to_doc, ActionDoc, IoError};
use crate::linalg::LinalgError;
use crate::products::ProductError;
use crate::radicals::RadicalError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("incompatible instance parameters: {0}")]
    Recipe(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Radical(#[from] RadicalError),
    #[error(transparent)]
    Io(#[from] IoError),
}

/// A self-contained instance, re-checkable without the generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceWitness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<InstanceSpec>,
    pub action: ActionDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<usize>>,
}

impl InstanceWitness {
    pub fn of(inst: &Instance) -> Self {
        InstanceWitness {
            spec: inst.spec.clone(),
            action: action_to_doc(&inst.action),
            group: inst
                .grading
                .as_ref()
                .map(|(g, _)| GroupDoc::from(g.clone())),
            grading: inst.grading.as_ref().map(|(_, d)| d.clone()),
        }
    }

    /// Rebuilds and re-validates the instance.
    pub fn load(&self) -> Result<Instance, HarnessError> {
        self.load_from(None)
    }

    /// As [`InstanceWitness::load`], resolving embedded paths against `base`.
    pub fn load_from(&self, base: Option<&std::path::Path>) -> Result<Instance, HarnessError> {
        let action = action_from_doc(&self.action, base)?;
        let grading = match (&self.group, &self.grading) {
            (Some(g), Some(d)) => {
                let g = GroupTable::try_from(g.clone())?;
                graded_action(&g, d, action.target_arc())?;
                Some((g, d.clone()))
            }
            (None, None) => None,
            _ => {
                return Err(HarnessError::Recipe(
                    "a grading needs both group and degrees".into(),
                ))
            }
        };
        Ok(Instance {
            spec: self.spec.clone(),
            action,
            grading,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: usize,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<InstanceWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub statement: String,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<Failure>,
}

impl ClaimResult {
    pub fn holds(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub instances: usize,
    pub claims: Vec<ClaimResult>,
    /// Counters describing the instance mix.
    pub stats: BTreeMap<String, usize>,
    /// Wall time; excluded from [`SuiteReport::canonical_json`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Failures kept per claim; the counts are always complete.
const MAX_RECORDED_FAILURES: usize = 5;

impl SuiteReport {
    pub(crate) fn new(suite: &str, seed: u64) -> Self {
        SuiteReport {
            suite: suite.into(),
            params: BTreeMap::new(),
            seed,
            instances: 0,
            claims: Vec::new(),
            stats: BTreeMap::new(),
            elapsed_ms: None,
        }
    }

    pub(crate) fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.into(), value.to_string());
    }

    pub(crate) fn count(&mut self, key: &str) {
        *self.stats.entry(key.into()).or_insert(0) += 1;
    }

    /// Records one evaluation of a claim.
    pub(crate) fn record(
        &mut self,
        id: &str,
        statement: &str,
        instance: usize,
        outcome: Result<(), String>,
        witness: impl FnOnce() -> Option<InstanceWitness>,
    ) {
        let pos = match self.claims.iter().position(|c| c.id == id) {
            Some(p) => p,
            None => {
                self.claims.push(ClaimResult {
                    id: id.into(),
                    statement: statement.into(),
                    passed: 0,
                    failed: 0,
                    failures: Vec::new(),
                });
                self.claims.len() - 1
            }
        };
        let claim = &mut self.claims[pos];
        match outcome {
            Ok(()) => claim.passed += 1,
            Err(detail) => {
                claim.failed += 1;
                if claim.failures.len() < MAX_RECORDED_FAILURES {
                    claim.failures.push(Failure {
                        instance,
                        detail,
                        witness: witness(),
                    });
                }
            }
        }
    }

    pub fn all_pass(&self) -> bool {
        !self.claims.is_empty() && self.claims.iter().all(ClaimResult::holds)
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        crate::io::WorkspaceFile::Suite(self.clone()).to_json()
    }

    /// JSON without the wall-time field; stable under re-runs with the same seed.
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.elapsed_ms = None;
        c.to_json()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {}  seed {}  instances {}",
            self.suite, self.seed, self.instances
        );
        for (k, v) in &self.params {
            let _ = writeln!(out, "  {k} = {v}");
        }
        let width = self
            .claims
            .iter()
            .map(|c| c.id.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let _ = writeln!(
            out,
            "{:<width$}  {:>6}  {:>6}  statement",
            "claim", "pass", "fail"
        );
        for c in &self.claims {
            let _ = writeln!(
                out,
                "{:<width$}  {:>6}  {:>6}  {}",
                c.id, c.passed, c.failed, c.statement
            );
            for f in &c.failures {
                let _ = writeln!(out, "{:<width$}  instance {}: {}", "", f.instance, f.detail);
            }
        }
        for (k, v) in &self.stats {
            let _ = writeln!(out, "  {k}: {v}");
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "wall time {ms} ms");
        }
        let verdict = if self.all_pass() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "result: {verdict} (instance checks, not proofs)");
        out
    }
}
