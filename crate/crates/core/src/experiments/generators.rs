//! Random Gaussians and regions for the accuracy studies.

use nalgebra::{DMatrix, DVector};

use crate::error::Result;
use crate::gaussian::{BoxConstraint, GaussianDist, PolyhedralRegion};
use crate::linalg::symmetrize;
use crate::rng::Stream;

/// Bumped whenever generated problems change for a fixed seed.
pub const GENERATOR_VERSION: &str = "gen-v1";

/// `N(0, V diag(λ) Vᵀ)` with `λ_i ~ Exp(1)` and Haar-distributed `V`.
pub fn gen_gaussian(n: usize, rng: &mut Stream) -> Result<GaussianDist> {
    let lambda: Vec<f64> = (0..n).map(|_| rng.exponential()).collect();
    let v = haar_orthogonal(n, rng);
    let mut k = &v * DMatrix::from_diagonal(&DVector::from_vec(lambda)) * v.transpose();
    symmetrize(&mut k);
    GaussianDist::new(DVector::zeros(n), k)
}

/// Orthogonal matrix from the QR decomposition of a standard normal matrix,
/// with column signs fixed so that `R` has a positive diagonal.
pub fn haar_orthogonal(n: usize, rng: &mut Stream) -> DMatrix<f64> {
    let mut g = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            g[(i, j)] = rng.normal();
        }
    }
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Uniformly distributed unit vector.
pub fn unit_vector(n: usize, rng: &mut Stream) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(n, |_, _| rng.normal());
        let norm = v.norm();
        if norm > 1e-12 {
            return v / norm;
        }
    }
}

/// Slabs around a prior draw `x₀`: along each direction `c`, the bounds are
/// `cᵀx₀ + s√n U₁` and `cᵀx₀ − s√n U₂` with independent uniforms.
fn slabs_around_draw(
    dist: &GaussianDist,
    directions: Vec<DVector<f64>>,
    scale: f64,
    rng: &mut Stream,
) -> Result<PolyhedralRegion> {
    let n = dist.dim();
    let z = DVector::from_fn(n, |_, _| rng.normal());
    let x0 = dist.mean() + dist.chol().lower() * z;
    let half = scale * (n as f64).sqrt();
    let constraints = directions
        .into_iter()
        .map(|c| {
            let centre = c.dot(&x0);
            let upper = centre + half * rng.uniform();
            let lower = centre - half * rng.uniform();
            BoxConstraint::new(c, lower, upper)
        })
        .collect::<Result<Vec<_>>>()?;
    PolyhedralRegion::new(constraints)
}

/// Axis-aligned box around a prior draw.
pub fn gen_rect_region(dist: &GaussianDist, scale: f64, rng: &mut Stream) -> Result<PolyhedralRegion> {
    let n = dist.dim();
    let dirs = (0..n).map(|k| DVector::from_fn(n, |i, _| f64::from(i == k))).collect();
    slabs_around_draw(dist, dirs, scale, rng)
}

/// Polyhedron of `m` slabs with uniformly random directions around a prior
/// draw. Directions are drawn before the anchor.
pub fn gen_poly_region(dist: &GaussianDist, m: usize, scale: f64, rng: &mut Stream) -> Result<PolyhedralRegion> {
    let dirs = (0..m).map(|_| unit_vector(dist.dim(), rng)).collect();
    slabs_around_draw(dist, dirs, scale, rng)
}

/// Rescales a covariance to unit diagonal.
pub fn to_correlation(cov: &DMatrix<f64>) -> DMatrix<f64> {
    let d: Vec<f64> = (0..cov.nrows()).map(|i| cov[(i, i)].sqrt()).collect();
    let mut c = DMatrix::from_fn(cov.nrows(), cov.ncols(), |i, j| cov[(i, j)] / (d[i] * d[j]));
    for i in 0..c.nrows() {
        c[(i, i)] = 1.0;
    }
    symmetrize(&mut c);
    c
}
