//! Problem files: the JSON description of a diagonal tuple.
//!
//! A file names either model operators (full functionality) or raw
//! invariant triples (decision only — triples carry no basis information,
//! so nothing can be constructed or compressed from them).

use crate::decide::Target;
use crate::fredholm::FredholmData;
use crate::model::ModelOp;
use crate::scalar::CRat;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonals: Option<Vec<ModelOp>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triples: Option<Vec<FredholmData>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<CRat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Target>,
    /// Grid spec in `re0:re1:im0:im1:step` form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum ProblemError {
    #[error("cannot read problem file: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed problem file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid problem: {0}")]
    Shape(String),
}

impl ProblemFile {
    pub fn validate(&self) -> Result<(), ProblemError> {
        if self.n < 2 {
            return Err(ProblemError::Shape(format!(
                "need at least 2 diagonal blocks, got {}",
                self.n
            )));
        }
        match (&self.diagonals, &self.triples) {
            (Some(_), Some(_)) => Err(ProblemError::Shape(
                "give either diagonals or triples, not both".into(),
            )),
            (None, None) => Err(ProblemError::Shape(
                "give diagonals (model operators) or triples (raw invariants)".into(),
            )),
            (Some(d), None) if d.len() != self.n => Err(ProblemError::Shape(format!(
                "n = {} but {} diagonals given",
                self.n,
                d.len()
            ))),
            (None, Some(t)) if t.len() != self.n => Err(ProblemError::Shape(format!(
                "n = {} but {} triples given",
                self.n,
                t.len()
            ))),
            _ => Ok(()),
        }
    }

    pub fn load(path: &Path) -> Result<ProblemFile, ProblemError> {
        let text = std::fs::read_to_string(path)?;
        let p: ProblemFile = serde_json::from_str(&text)?;
        p.validate()?;
        Ok(p)
    }

    /// The point to work at: an explicit override, the file's `lambda`, or
    /// the origin.
    pub fn point(&self, flag: Option<CRat>) -> CRat {
        flag.or_else(|| self.lambda.clone()).unwrap_or_else(CRat::zero)
    }

    /// Invariant triples at `lambda`. Raw triples are taken as given (they
    /// describe one fixed point); model operators are evaluated.
    pub fn data_at(&self, lambda: &CRat) -> Vec<FredholmData> {
        match (&self.diagonals, &self.triples) {
            (Some(d), _) => d.iter().map(|op| op.point_data(lambda)).collect(),
            (_, Some(t)) => t.clone(),
            _ => unreachable!("validated"),
        }
    }

    /// Model operators, required by construct/verify/spectra.
    pub fn operators(&self) -> Result<&[ModelOp], ProblemError> {
        self.diagonals.as_deref().ok_or_else(|| {
            ProblemError::Shape(
                "this command needs model operators; the file gives raw triples".into(),
            )
        })
    }
}
