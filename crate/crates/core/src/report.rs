//! JSON run reports.
//!
//! Field order follows the struct declarations, rationals are `"p/q"`
//! strings and matrices use the row text format, so a report of a
//! deterministic command is byte-identical between runs. Wall time is
//! only recorded on request.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::certificate::Certificate;
use crate::dense::GreedyOutcome;
use crate::error::{Error, Result};
use crate::extremal::{CensusEntry, ExtremalResult};
use crate::lp::{format_rational, parse_rational, IlpSolution, LpWitness, MultiplicityVector};
use crate::matrix::{BinaryMatrix, ColumnSet};
use crate::solver::PeelResult;

/// Serializable form of [`LpWitness`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpRecord {
    pub n: usize,
    pub k: usize,
    pub value: String,
    pub primal: Vec<String>,
    pub dual: Vec<String>,
}

impl From<&LpWitness> for LpRecord {
    fn from(w: &LpWitness) -> Self {
        let fmt = |v: &MultiplicityVector<_>| v.entries().iter().map(format_rational).collect();
        Self {
            n: w.n,
            k: w.k,
            value: format_rational(&w.value),
            primal: fmt(&w.primal),
            dual: fmt(&w.dual),
        }
    }
}

impl LpRecord {
    pub fn to_witness(&self) -> Result<LpWitness> {
        let parse = |v: &[String]| -> Result<_> {
            let entries = v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
            MultiplicityVector::new(self.k, entries)
        };
        Ok(LpWitness {
            n: self.n,
            k: self.k,
            value: parse_rational(&self.value)?,
            primal: parse(&self.primal)?,
            dual: parse(&self.dual)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportItem {
    Certificate {
        matrix: BinaryMatrix,
        certificate: Certificate,
    },
    Peel {
        matrix: BinaryMatrix,
        erased: ColumnSet,
        result: PeelResult,
    },
    Matrix {
        label: String,
        matrix: BinaryMatrix,
    },
    Bound {
        name: String,
        args: Vec<usize>,
        value: usize,
    },
    Lp(LpRecord),
    Ilp {
        solution: IlpSolution,
        /// Bracket on the best standard-form stopping distance.
        lower: usize,
        upper: usize,
        realized: Option<BinaryMatrix>,
        realized_u: Option<usize>,
    },
    Greedy(GreedyOutcome),
    Extremal(ExtremalResult),
    Census {
        n: usize,
        entries: Vec<CensusEntry>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub suite: String,
    pub id: String,
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    /// SHA-256 of the input file, when the command read one.
    pub input_digest: Option<String>,
    pub results: Vec<ReportItem>,
    pub checks: Vec<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        Self {
            command,
            input_digest: None,
            results: Vec::new(),
            checks: Vec::new(),
            wall_time_ms: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report types serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }
}

pub fn emit_report(report: &RunReport) -> String {
    report.to_json()
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}
