//! Reference values for Gaussian probabilities, independent of EP.

pub mod genz;
pub mod lattice;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{GaussianDist, PolyhedralRegion};
use crate::rng::{Purpose, Stream};
use crate::special::{erf, erfcx};

pub use genz::{integrate_rectangle, reduce, QmcConfig, Rectangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mc,
    Qmc,
    Orthant,
    Univariate,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Mc => "mc",
            Method::Qmc => "qmc",
            Method::Orthant => "orthant",
            Method::Univariate => "univariate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleEstimate {
    pub value: f64,
    pub stderr: f64,
    pub method: Method,
    pub samples: u64,
}

impl OracleEstimate {
    fn exact(value: f64, method: Method) -> Self {
        OracleEstimate {
            value,
            stderr: 0.0,
            method,
            samples: 0,
        }
    }
}

/// `P(l < X < u)` for `X ~ N(mu, sig2)`, and its logarithm.
///
/// Tails are evaluated as differences of scaled complementary error
/// functions, so no cancellation occurs when both ends are far out.
pub fn univariate_log_prob(mu: f64, sig2: f64, l: f64, u: f64) -> Result<f64> {
    if !(sig2 > 0.0) || !sig2.is_finite() {
        return Err(Error::invalid("sig2", format!("must be positive and finite, got {sig2}")));
    }
    if l.is_nan() || u.is_nan() || !(l < u) {
        return Err(Error::invalid("bounds", format!("need lower < upper, got ({l}, {u})")));
    }
    let sd = sig2.sqrt();
    let (mut a, mut b) = ((l - mu) / sd, (u - mu) / sd);
    if b <= 0.0 {
        (a, b) = (-b, -a);
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    if a <= 0.0 {
        return Ok((0.5 * (erf(b * r) - erf(a * r))).ln());
    }
    // Q(x) = ½ exp(−x²/2) erfcx(x/√2), and Q(a) − Q(b) = Q(a)(1 − ρ).
    let ea = erfcx(a * r);
    let rho = if b.is_infinite() {
        0.0
    } else {
        (-0.5 * (b - a) * (b + a)).exp() * erfcx(b * r) / ea
    };
    Ok(-0.5 * a * a + (0.5 * ea).ln() + (-rho).ln_1p())
}

pub fn univariate_exact(mu: f64, sig2: f64, l: f64, u: f64) -> Result<OracleEstimate> {
    Ok(OracleEstimate::exact(univariate_log_prob(mu, sig2, l, u)?.exp(), Method::Univariate))
}

/// Positive-orthant probability of a zero-mean Gaussian with correlation
/// matrix `corr`, for two or three dimensions.
pub fn orthant_analytic(corr: &DMatrix<f64>) -> Result<OracleEstimate> {
    let n = corr.nrows();
    if corr.ncols() != n {
        return Err(Error::DimensionMismatch {
            what: "correlation matrix",
            expected: n,
            found: corr.ncols(),
        });
    }
    for i in 0..n {
        if (corr[(i, i)] - 1.0).abs() > 1e-12 {
            return Err(Error::invalid("corr", format!("diagonal entry {i} is {}, expected 1", corr[(i, i)])));
        }
        for j in 0..i {
            if (corr[(i, j)] - corr[(j, i)]).abs() > 1e-12 {
                return Err(Error::invalid("corr", "matrix is not symmetric"));
            }
            if !(corr[(i, j)].abs() <= 1.0) {
                return Err(Error::invalid("corr", format!("entry ({i}, {j}) outside [-1, 1]")));
            }
        }
    }
    let tau = std::f64::consts::TAU;
    let value = match n {
        2 => 0.25 + corr[(0, 1)].asin() / tau,
        3 => 0.125 + (corr[(0, 1)].asin() + corr[(0, 2)].asin() + corr[(1, 2)].asin()) / (2.0 * tau),
        _ => return Err(Error::Unsupported(format!("orthant probability in {n} dimensions"))),
    };
    Ok(OracleEstimate::exact(value, Method::Orthant))
}

/// Rejection sampler with a running acceptance count, so a run can be
/// extended from where it stopped.
struct Rejection {
    offset: DVector<f64>,
    /// `CᵀL`, one row per constraint.
    b: DMatrix<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    rng: Stream,
    z: Vec<f64>,
    hits: u64,
    draws: u64,
}

impl Rejection {
    fn new(prior: &GaussianDist, region: &PolyhedralRegion, seed: u64, stream: u64) -> Result<Self> {
        if region.dim() != prior.dim() {
            return Err(Error::DimensionMismatch {
                what: "region",
                expected: prior.dim(),
                found: region.dim(),
            });
        }
        let ct = region.direction_matrix().transpose();
        Ok(Rejection {
            offset: &ct * prior.mean(),
            b: ct * prior.chol().lower(),
            lower: region.constraints().iter().map(|c| c.lower()).collect(),
            upper: region.constraints().iter().map(|c| c.upper()).collect(),
            rng: Stream::new(seed, Purpose::MonteCarlo, stream),
            z: vec![0.0; prior.dim()],
            hits: 0,
            draws: 0,
        })
    }

    fn draw(&mut self, count: u64) {
        let (m, n) = self.b.shape();
        for _ in 0..count {
            self.rng.fill_normal(&mut self.z);
            let inside = (0..m).all(|i| {
                let mut y = self.offset[i];
                for k in 0..n {
                    y += self.b[(i, k)] * self.z[k];
                }
                self.lower[i] < y && y < self.upper[i]
            });
            self.hits += u64::from(inside);
        }
        self.draws += count;
    }

    fn estimate(&self) -> OracleEstimate {
        let p = self.hits as f64 / self.draws as f64;
        OracleEstimate {
            value: p,
            stderr: (p * (1.0 - p) / self.draws as f64).sqrt(),
            method: Method::Mc,
            samples: self.draws,
        }
    }
}

/// Fraction of `samples` prior draws that satisfy every constraint.
pub fn mc_rejection(
    prior: &GaussianDist,
    region: &PolyhedralRegion,
    samples: u64,
    seed: u64,
    stream: u64,
) -> Result<OracleEstimate> {
    if samples == 0 {
        return Err(Error::invalid("samples", "must be at least 1"));
    }
    let mut r = Rejection::new(prior, region, seed, stream)?;
    r.draw(samples);
    Ok(r.estimate())
}

/// Rejection sampling that starts with `base` draws and extends the same
/// stream toward a relative standard error of `target_rel`, stopping at
/// `cap` draws.
pub fn mc_budgeted(
    prior: &GaussianDist,
    region: &PolyhedralRegion,
    budget: &McBudget,
    seed: u64,
    stream: u64,
) -> Result<OracleEstimate> {
    if budget.base == 0 {
        return Err(Error::invalid("samples", "must be at least 1"));
    }
    let mut r = Rejection::new(prior, region, seed, stream)?;
    r.draw(budget.base);
    let p = r.hits as f64 / r.draws as f64;
    let wanted = if p > 0.0 {
        ((1.0 - p) / (p * budget.target_rel * budget.target_rel)).ceil() as u64
    } else {
        u64::MAX
    };
    let total = wanted.clamp(budget.base, budget.cap.max(budget.base));
    r.draw(total - budget.base);
    Ok(r.estimate())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McBudget {
    pub base: u64,
    pub cap: u64,
    pub target_rel: f64,
}

impl Default for McBudget {
    fn default() -> Self {
        McBudget {
            base: 1_000_000,
            cap: 4_000_000,
            target_rel: 1e-4,
        }
    }
}

/// Genz integration of a problem that reduces to a rectangle.
pub fn genz_qmc(prior: &GaussianDist, region: &PolyhedralRegion, cfg: &QmcConfig) -> Result<OracleEstimate> {
    let rect = reduce(prior, region)?;
    let (value, stderr, samples) = integrate_rectangle(&rect, cfg)?;
    Ok(OracleEstimate {
        value,
        stderr,
        method: Method::Qmc,
        samples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OracleConfig {
    pub qmc: QmcConfig,
    pub mc: McBudget,
}

/// Best available reference: exact for a single constraint, Genz when the
/// problem reduces to a rectangle, budgeted rejection sampling otherwise.
pub fn reference(
    prior: &GaussianDist,
    region: &PolyhedralRegion,
    cfg: &OracleConfig,
    seed: u64,
    stream: u64,
) -> Result<OracleEstimate> {
    if region.is_empty() {
        return Ok(OracleEstimate::exact(1.0, Method::Univariate));
    }
    if region.len() == 1 {
        let con = &region.constraints()[0];
        let c = con.direction();
        let var = c.dot(&(prior.cov() * c));
        return univariate_exact(c.dot(prior.mean()), var, con.lower(), con.upper());
    }
    let qmc = QmcConfig {
        seed,
        stream,
        ..cfg.qmc
    };
    match genz_qmc(prior, region, &qmc) {
        Err(Error::NotReducible(_)) => mc_budgeted(prior, region, &cfg.mc, seed, stream),
        other => other,
    }
}

/// Closed-form probability where one exists: the whole space, a single
/// constraint, or a box on distinct axes of a Gaussian with diagonal
/// covariance.
pub fn exact(prior: &GaussianDist, region: &PolyhedralRegion) -> Result<OracleEstimate> {
    if region.dim() != prior.dim() {
        return Err(Error::DimensionMismatch {
            what: "region",
            expected: prior.dim(),
            found: region.dim(),
        });
    }
    if region.is_empty() {
        return Ok(OracleEstimate::exact(1.0, Method::Univariate));
    }
    if region.len() == 1 {
        let con = &region.constraints()[0];
        let c = con.direction();
        return univariate_exact(c.dot(prior.mean()), c.dot(&(prior.cov() * c)), con.lower(), con.upper());
    }
    let cov = prior.cov();
    let n = prior.dim();
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || cov[(i, j)] == 0.0));
    let mut seen = vec![false; n];
    let mut log_p = 0.0;
    for con in region.constraints() {
        let Some((k, l, u)) = con.as_axis().filter(|&(k, _, _)| diagonal && !seen[k]) else {
            return Err(Error::Unsupported(
                "no closed form: need one constraint, or a box on distinct axes with diagonal covariance".into(),
            ));
        };
        seen[k] = true;
        log_p += univariate_log_prob(prior.mean()[k], cov[(k, k)], l, u)?;
    }
    Ok(OracleEstimate::exact(log_p.exp(), Method::Univariate))
}

/// Orthant probability for a zero-mean prior and the region `x > 0`
/// (one axis constraint per coordinate).
pub fn orthant(prior: &GaussianDist, region: &PolyhedralRegion) -> Result<OracleEstimate> {
    if prior.mean().iter().any(|&v| v != 0.0) {
        return Err(Error::invalid("mean", "orthant probabilities need a zero mean"));
    }
    let n = prior.dim();
    let mut seen = vec![false; n];
    for con in region.constraints() {
        match con.as_axis() {
            Some((k, l, u)) if l == 0.0 && u == f64::INFINITY && !seen[k] => seen[k] = true,
            _ => {
                return Err(Error::invalid(
                    "constraints",
                    "orthant probabilities need exactly the constraints 0 < x_k < inf, one per axis",
                ))
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::invalid("constraints", "every axis needs a 0 < x_k constraint"));
    }
    let d: Vec<f64> = (0..n).map(|i| prior.cov()[(i, i)].sqrt()).collect();
    let corr = DMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { prior.cov()[(i, j)] / (d[i] * d[j]) });
    orthant_analytic(&corr)
}
