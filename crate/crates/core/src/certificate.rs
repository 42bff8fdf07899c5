use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{BinaryMatrix, ColumnSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    /// Smallest nonempty 1-free column set.
    Stopping,
    /// Smallest nonempty even column set.
    Distance,
}

impl Statistic {
    pub fn holds(self, a: &BinaryMatrix, set: &ColumnSet) -> Result<bool> {
        match self {
            Statistic::Stopping => a.is_one_free(set),
            Statistic::Distance => a.is_even(set),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    /// Every set of size strictly below this was searched and rejected.
    pub exhausted_below: usize,
    pub bound_refs: Vec<String>,
}

/// A computed statistic with its witness and optimality evidence.
/// `value == None` means no nonempty set qualifies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub statistic: Statistic,
    pub value: Option<usize>,
    pub witness: Option<ColumnSet>,
    pub evidence: Evidence,
}

impl Certificate {
    /// Re-checks the certificate against `a`: the witness has the claimed
    /// size and property, and the exhaustion record covers the claim.
    pub fn verify(&self, a: &BinaryMatrix) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidArgument(format!("certificate: {msg}")));
        match (self.value, &self.witness) {
            (Some(v), Some(w)) => {
                if w.len() != v {
                    return bad("witness size differs from value");
                }
                if !self.statistic.holds(a, w)? {
                    return bad("witness fails the predicate");
                }
                if self.evidence.exhausted_below < v {
                    return bad("smaller sizes not exhausted");
                }
                Ok(())
            }
            (None, None) => {
                if self.evidence.exhausted_below <= a.cols() {
                    return bad("NONE without full exhaustion");
                }
                Ok(())
            }
            _ => bad("value and witness disagree"),
        }
    }
}
