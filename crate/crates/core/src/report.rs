//! Per-inequality verdict records shared by every checker.

use serde::{Deserialize, Serialize};

use crate::tolerances::Tolerances;

/// One checked index of an inequality family: the computed value, the bound
/// it must respect, and the signed margin (nonnegative means satisfied).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct IndexBound {
    pub n: usize,
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
}

impl IndexBound {
    /// Entry for a `value <= bound` check.
    pub fn upper(n: usize, value: f64, bound: f64) -> Self {
        Self {
            n,
            value,
            bound,
            margin: bound - value,
        }
    }

    /// Entry for a `value >= bound` check.
    pub fn lower(n: usize, value: f64, bound: f64) -> Self {
        Self {
            n,
            value,
            bound,
            margin: value - bound,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AggregateBound {
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
}

/// Verdict of one inequality check against one witness function.
///
/// `pass` holds iff every margin is at least `-tol.pass`; `attained` marks
/// equality within `tol.attain` at some index (and implies `pass`).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BoundReport {
    pub check_name: String,
    pub witness: String,
    pub lam: f64,
    pub per_index: Vec<IndexBound>,
    pub aggregate: AggregateBound,
    pub pass: bool,
    pub attained: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundReport {
    pub fn from_entries(
        check_name: impl Into<String>,
        witness: impl Into<String>,
        lam: f64,
        per_index: Vec<IndexBound>,
        tol: &Tolerances,
    ) -> Self {
        let worst = per_index
            .iter()
            .min_by(|a, b| a.margin.total_cmp(&b.margin))
            .cloned();
        let aggregate = match worst {
            Some(w) => AggregateBound {
                value: w.value,
                bound: w.bound,
                margin: w.margin,
            },
            None => AggregateBound {
                value: 0.0,
                bound: 0.0,
                margin: 0.0,
            },
        };
        let pass = per_index.iter().all(|e| e.margin >= -tol.pass);
        let attained = pass && per_index.iter().any(|e| e.margin.abs() <= tol.attain);
        Self {
            check_name: check_name.into(),
            witness: witness.into(),
            lam,
            per_index,
            aggregate,
            pass,
            attained,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Indices where the bound is met with equality (within `tol.attain`).
    pub fn attained_indices(&self, tol: &Tolerances) -> Vec<usize> {
        self.per_index
            .iter()
            .filter(|e| e.margin.abs() <= tol.attain)
            .map(|e| e.n)
            .collect()
    }
}
