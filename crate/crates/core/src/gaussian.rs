//! Validated Gaussian and region types, whitening, and geometric metrics of
//! the whitened region.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, CholeskyFactor};

/// Relative asymmetry tolerated (and removed) when a covariance is ingested.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// `N(mean, cov)` with a cached Cholesky factor of `cov`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianDist {
    mean: DVector<f64>,
    cov: DMatrix<f64>,
    chol: CholeskyFactor,
}

impl GaussianDist {
    pub fn new(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        let n = mean.len();
        if n == 0 {
            return Err(Error::invalid("mean", "dimension must be at least 1"));
        }
        if cov.nrows() != n || cov.ncols() != n {
            return Err(Error::invalid(
                "cov",
                format!("expected {n}x{n}, found {}x{}", cov.nrows(), cov.ncols()),
            ));
        }
        if mean.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("mean", "entries must be finite"));
        }
        if cov.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("cov", "entries must be finite"));
        }
        let scale = cov.amax();
        let mut cov = cov;
        for i in 0..n {
            for j in (i + 1)..n {
                if (cov[(i, j)] - cov[(j, i)]).abs() > SYMMETRY_TOL * scale {
                    return Err(Error::invalid(
                        "cov",
                        format!("not symmetric at ({i}, {j}): {} vs {}", cov[(i, j)], cov[(j, i)]),
                    ));
                }
            }
        }
        linalg::symmetrize(&mut cov);
        let chol = linalg::cholesky(&cov)?;
        Ok(GaussianDist { mean, cov, chol })
    }

    /// `N(0, I)` in `n` dimensions.
    pub fn standard(n: usize) -> Self {
        GaussianDist::new(DVector::zeros(n), DMatrix::identity(n, n))
            .expect("identity covariance is valid")
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    pub fn chol(&self) -> &CholeskyFactor {
        &self.chol
    }
}

/// A slab `{x : lower < directionᵀx < upper}` with a unit-norm direction.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxConstraint {
    direction: DVector<f64>,
    lower: f64,
    upper: f64,
}

impl BoxConstraint {
    /// Normalizes `direction` and rescales the bounds by the same factor, so
    /// the constraint set is unchanged.
    pub fn new(direction: DVector<f64>, lower: f64, upper: f64) -> Result<Self> {
        if direction.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("direction", "entries must be finite"));
        }
        let norm = direction.norm();
        if !(norm > 0.0) {
            return Err(Error::invalid("direction", "must be nonzero"));
        }
        if lower.is_nan() || upper.is_nan() {
            return Err(Error::invalid("bounds", "NaN bound"));
        }
        if lower == f64::INFINITY {
            return Err(Error::invalid("lower", "cannot be +inf"));
        }
        if upper == f64::NEG_INFINITY {
            return Err(Error::invalid("upper", "cannot be -inf"));
        }
        if !(lower < upper) {
            return Err(Error::invalid(
                "bounds",
                format!("lower ({lower}) must be below upper ({upper})"),
            ));
        }
        if lower.is_infinite() && upper.is_infinite() {
            return Err(Error::invalid("bounds", "at least one bound must be finite"));
        }
        Ok(BoxConstraint {
            direction: direction / norm,
            lower: lower / norm,
            upper: upper / norm,
        })
    }

    /// Axis-aligned constraint on coordinate `axis` of an `n`-vector.
    pub fn axis(n: usize, axis: usize, lower: f64, upper: f64) -> Result<Self> {
        if axis >= n {
            return Err(Error::invalid("direction", format!("axis {axis} out of range for n={n}")));
        }
        let mut d = DVector::zeros(n);
        d[axis] = 1.0;
        BoxConstraint::new(d, lower, upper)
    }

    pub fn direction(&self) -> &DVector<f64> {
        &self.direction
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn dim(&self) -> usize {
        self.direction.len()
    }

    pub fn contains(&self, x: &DVector<f64>) -> bool {
        let s = self.direction.dot(x);
        self.lower < s && s < self.upper
    }

    /// If the direction is `±e_k`, returns `(k, lower, upper)` for `x_k`.
    pub fn as_axis(&self) -> Option<(usize, f64, f64)> {
        let mut found = None;
        for (k, &v) in self.direction.iter().enumerate() {
            if v != 0.0 {
                if found.is_some() {
                    return None;
                }
                found = Some((k, v));
            }
        }
        let (k, v) = found?;
        if (v.abs() - 1.0).abs() > 1e-12 {
            return None;
        }
        if v > 0.0 {
            Some((k, self.lower, self.upper))
        } else {
            Some((k, -self.upper, -self.lower))
        }
    }
}

/// Intersection of box constraints in a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralRegion {
    dim: usize,
    constraints: Vec<BoxConstraint>,
}

impl PolyhedralRegion {
    pub fn new(constraints: Vec<BoxConstraint>) -> Result<Self> {
        let first = constraints
            .first()
            .ok_or_else(|| Error::invalid("constraints", "at least one constraint is required"))?;
        let dim = first.dim();
        for (i, c) in constraints.iter().enumerate() {
            if c.dim() != dim {
                return Err(Error::invalid(
                    format!("constraints[{i}].direction"),
                    format!("length {} differs from {dim}", c.dim()),
                ));
            }
        }
        Ok(PolyhedralRegion { dim, constraints })
    }

    /// The whole of `R^n` (no constraints, probability one).
    pub fn whole_space(dim: usize) -> Self {
        PolyhedralRegion {
            dim,
            constraints: Vec::new(),
        }
    }

    /// Axis-aligned box `lower < x < upper`.
    pub fn hyperrectangle(lower: &[f64], upper: &[f64]) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::invalid("bounds", "lower and upper lengths differ"));
        }
        let n = lower.len();
        let cs = (0..n)
            .map(|k| BoxConstraint::axis(n, k, lower[k], upper[k]))
            .collect::<Result<Vec<_>>>()?;
        PolyhedralRegion::new(cs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn constraints(&self) -> &[BoxConstraint] {
        &self.constraints
    }

    pub fn contains(&self, x: &DVector<f64>) -> bool {
        self.constraints.iter().all(|c| c.contains(x))
    }

    /// Every constraint is along a coordinate axis.
    pub fn is_axis_aligned(&self) -> bool {
        self.constraints.iter().all(|c| c.as_axis().is_some())
    }

    /// Region with every constraint repeated `copies` times, in blocks:
    /// `[c_1..c_m, c_1..c_m, ...]`.
    pub fn repeated(&self, copies: usize) -> Self {
        let mut cs = Vec::with_capacity(self.len() * copies);
        for _ in 0..copies {
            cs.extend(self.constraints.iter().cloned());
        }
        PolyhedralRegion {
            dim: self.dim,
            constraints: cs,
        }
    }

    /// Same constraints in a different order.
    pub fn permuted(&self, order: &[usize]) -> Self {
        PolyhedralRegion {
            dim: self.dim,
            constraints: order.iter().map(|&i| self.constraints[i].clone()).collect(),
        }
    }

    /// `n × m` matrix whose columns are the constraint directions.
    pub fn direction_matrix(&self) -> DMatrix<f64> {
        let mut c = DMatrix::zeros(self.dim, self.len());
        for (j, bc) in self.constraints.iter().enumerate() {
            c.set_column(j, bc.direction());
        }
        c
    }
}

fn check_dims(dist: &GaussianDist, region: &PolyhedralRegion) -> Result<()> {
    if dist.dim() != region.dim() {
        return Err(Error::DimensionMismatch {
            what: "region vs. Gaussian",
            expected: dist.dim(),
            found: region.dim(),
        });
    }
    Ok(())
}

/// Maps the problem through `y = L⁻¹(x − m)`: the Gaussian becomes
/// `N(0, I)` and each direction `c` becomes `Lᵀc` (renormalized, with the
/// bounds shifted by `cᵀm` and rescaled). The probability is unchanged.
pub fn whiten(dist: &GaussianDist, region: &PolyhedralRegion) -> Result<(GaussianDist, PolyhedralRegion)> {
    check_dims(dist, region)?;
    let l = dist.chol().lower();
    let n = dist.dim();
    if region.is_empty() {
        return Ok((GaussianDist::standard(n), PolyhedralRegion::whole_space(n)));
    }
    let constraints = region
        .constraints()
        .iter()
        .map(|c| {
            let shift = c.direction().dot(dist.mean());
            let d = l.transpose() * c.direction();
            BoxConstraint::new(d, c.lower() - shift, c.upper() - shift)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((GaussianDist::standard(n), PolyhedralRegion::new(constraints)?))
}

/// Geometric condition metrics of a problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionMetrics {
    /// `λ_max / λ_min` of the covariance.
    pub cond_k: f64,
    /// `σ_max / σ_min` of `C′ = [Lᵀc_1 … Lᵀc_m]`; infinite when rank deficient.
    pub cond_cprime: f64,
    /// Frobenius norm of `(1/n) C′ᵀC′`.
    pub gram_fro: f64,
    /// Induced 1-norm (max absolute column sum) of `(1/n) C′ᵀC′`.
    pub gram_l1: f64,
}

/// Singular values below this fraction of the largest mark `C′` rank deficient.
pub const RANK_TOL: f64 = 1e-12;

pub fn region_metrics(dist: &GaussianDist, region: &PolyhedralRegion) -> Result<RegionMetrics> {
    check_dims(dist, region)?;
    let ev = linalg::symmetric_eigenvalues(dist.cov());
    let cond_k = ev[ev.len() - 1] / ev[0];
    if region.is_empty() {
        return Ok(RegionMetrics {
            cond_k,
            cond_cprime: f64::NAN,
            gram_fro: 0.0,
            gram_l1: 0.0,
        });
    }
    let cprime = dist.chol().lower().transpose() * region.direction_matrix();
    let sv = linalg::singular_values(&cprime);
    let smax = sv[0];
    let smin = sv[sv.len() - 1];
    let cond_cprime = if smin <= RANK_TOL * smax {
        f64::INFINITY
    } else {
        smax / smin
    };
    let gram = cprime.transpose() * &cprime / dist.dim() as f64;
    let gram_fro = gram.norm();
    let gram_l1 = (0..gram.ncols())
        .map(|j| gram.column(j).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    Ok(RegionMetrics {
        cond_k,
        cond_cprime,
        gram_fro,
        gram_l1,
    })
}
