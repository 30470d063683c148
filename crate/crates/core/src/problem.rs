//! JSON problem files.
//!
//! ```json
//! {
//!   "mean": [0, 0],
//!   "cov": [[1, 0], [0, 1]],
//!   "constraints": [
//!     {"direction": [1, 0], "lower": -1, "upper": 1},
//!     {"direction": [0, 1], "lower": "-inf", "upper": 2}
//!   ],
//!   "alphas": [1, 1]
//! }
//! ```
//!
//! Bounds may be numbers, `"inf"`/`"-inf"`, or `null` (or absent) for an open
//! side; at least one side must be finite. `alphas` is optional.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{BoxConstraint, GaussianDist, PolyhedralRegion};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Bound {
    Value(f64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    pub direction: Vec<f64>,
    #[serde(default)]
    pub lower: Option<Bound>,
    #[serde(default)]
    pub upper: Option<Bound>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub mean: Vec<f64>,
    pub cov: Vec<Vec<f64>>,
    #[serde(default)]
    pub constraints: Vec<ConstraintSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<f64>>,
}

/// A validated problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub prior: GaussianDist,
    pub region: PolyhedralRegion,
    pub alphas: Option<Vec<f64>>,
}

fn bound_value(b: &Option<Bound>, open: f64, field: &str) -> Result<f64> {
    match b {
        None => Ok(open),
        Some(Bound::Value(v)) => Ok(*v),
        Some(Bound::Text(s)) => match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" => Ok(f64::INFINITY),
            "-inf" | "-infinity" => Ok(f64::NEG_INFINITY),
            _ => Err(Error::invalid(field, format!("expected a number, \"inf\", \"-inf\" or null, got \"{s}\""))),
        },
    }
}

/// Prefixes the field of a validation error, leaving other errors alone.
fn within(prefix: &str, e: Error) -> Error {
    match e {
        Error::Invalid { field, reason } => Error::Invalid {
            field: format!("{prefix}.{field}"),
            reason,
        },
        other => other,
    }
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid("problem", e.to_string()))
    }

    pub fn to_problem(&self) -> Result<Problem> {
        let n = self.mean.len();
        if n == 0 {
            return Err(Error::invalid("mean", "dimension must be at least 1"));
        }
        if self.cov.len() != n {
            return Err(Error::invalid("cov", format!("expected {n} rows, found {}", self.cov.len())));
        }
        if let Some(i) = self.cov.iter().position(|row| row.len() != n) {
            return Err(Error::invalid(format!("cov[{i}]"), format!("expected {n} entries, found {}", self.cov[i].len())));
        }
        let cov = DMatrix::from_fn(n, n, |i, j| self.cov[i][j]);
        let prior = GaussianDist::new(DVector::from_column_slice(&self.mean), cov).map_err(|e| match e {
            Error::NotPositiveDefinite { index, pivot } => Error::invalid(
                "cov",
                format!("not positive definite (pivot {pivot:e} at index {index})"),
            ),
            other => other,
        })?;

        let mut constraints = Vec::with_capacity(self.constraints.len());
        for (i, c) in self.constraints.iter().enumerate() {
            let at = format!("constraints[{i}]");
            if c.direction.len() != n {
                return Err(Error::invalid(
                    format!("{at}.direction"),
                    format!("expected length {n}, found {}", c.direction.len()),
                ));
            }
            let lower = bound_value(&c.lower, f64::NEG_INFINITY, &format!("{at}.lower"))?;
            let upper = bound_value(&c.upper, f64::INFINITY, &format!("{at}.upper"))?;
            let con = BoxConstraint::new(DVector::from_column_slice(&c.direction), lower, upper)
                .map_err(|e| within(&at, e))?;
            constraints.push(con);
        }
        let region = if constraints.is_empty() {
            PolyhedralRegion::whole_space(n)
        } else {
            PolyhedralRegion::new(constraints)?
        };

        if let Some(a) = &self.alphas {
            if a.len() != region.len() {
                return Err(Error::invalid(
                    "alphas",
                    format!("expected {} entries (one per constraint), found {}", region.len(), a.len()),
                ));
            }
            if let Some(i) = a.iter().position(|&x| !(x > 0.0 && x.is_finite())) {
                return Err(Error::invalid(format!("alphas[{i}]"), format!("must be positive, got {}", a[i])));
            }
        }
        Ok(Problem {
            prior,
            region,
            alphas: self.alphas.clone(),
        })
    }
}

impl Problem {
    pub fn from_json(text: &str) -> Result<Self> {
        ProblemSpec::from_json(text)?.to_problem()
    }
}
