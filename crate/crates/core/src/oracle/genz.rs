//! Separation-of-variables integration of rectangle probabilities.
//!
//! The rectangle `a < y < b`, `y ~ N(0, Σ)`, is mapped to the unit cube by
//! sequential conditioning on a Cholesky factor of `Σ`; the resulting
//! integrand is averaged over randomly shifted rank-1 lattice points.

use nalgebra::{DMatrix, DVector};

use super::lattice::{generating_vector, next_prime, tent};
use crate::error::{Error, Result};
use crate::gaussian::{GaussianDist, PolyhedralRegion, RANK_TOL};
use crate::linalg::singular_values;
use crate::rng::{Purpose, Stream};
use crate::special::{normal_cdf, normal_quantile, normal_quantile_upper, normal_sf};

/// Probability of `lower < y < upper` for `y ~ N(mean, cov)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rectangle {
    pub mean: DVector<f64>,
    pub cov: DMatrix<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Rectangle {
    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    fn is_empty(&self) -> bool {
        self.lower.iter().zip(&self.upper).any(|(l, u)| l >= u)
    }
}

/// Rewrites a Gaussian probability over a region as a rectangle probability.
///
/// Axis-aligned regions intersect their per-axis bounds and keep only the
/// constrained coordinates. Otherwise `m ≤ n` full-rank constraint sets map
/// to `y = Cᵀx ~ N(Cᵀm, CᵀKC)`.
pub fn reduce(prior: &GaussianDist, region: &PolyhedralRegion) -> Result<Rectangle> {
    let n = prior.dim();
    if region.dim() != n {
        return Err(Error::DimensionMismatch {
            what: "region",
            expected: n,
            found: region.dim(),
        });
    }
    if region.is_axis_aligned() {
        let mut lower = vec![f64::NEG_INFINITY; n];
        let mut upper = vec![f64::INFINITY; n];
        let mut used = vec![false; n];
        for con in region.constraints() {
            let (k, l, u) = con.as_axis().expect("axis-aligned");
            lower[k] = lower[k].max(l);
            upper[k] = upper[k].min(u);
            used[k] = true;
        }
        let keep: Vec<usize> = (0..n).filter(|&k| used[k]).collect();
        let mean = DVector::from_iterator(keep.len(), keep.iter().map(|&k| prior.mean()[k]));
        let cov = DMatrix::from_fn(keep.len(), keep.len(), |i, j| prior.cov()[(keep[i], keep[j])]);
        return Ok(Rectangle {
            mean,
            cov,
            lower: keep.iter().map(|&k| lower[k]).collect(),
            upper: keep.iter().map(|&k| upper[k]).collect(),
        });
    }
    let m = region.len();
    if m > n {
        return Err(Error::NotReducible(format!("{m} constraints in {n} dimensions")));
    }
    let c = region.direction_matrix();
    let sv = singular_values(&c);
    if sv[m - 1] <= RANK_TOL * sv[0] {
        return Err(Error::NotReducible("constraint directions are rank deficient".into()));
    }
    let mut cov = c.transpose() * prior.cov() * &c;
    crate::linalg::symmetrize(&mut cov);
    Ok(Rectangle {
        mean: c.transpose() * prior.mean(),
        cov,
        lower: region.constraints().iter().map(|k| k.lower()).collect(),
        upper: region.constraints().iter().map(|k| k.upper()).collect(),
    })
}

/// Conditional interval for one coordinate in the transformed space.
#[derive(Debug, Clone, Copy)]
enum Interval {
    /// Both ends above zero: `Q(α) − Q(β)` with `Q` the upper tail.
    Upper { qa: f64, width: f64 },
    /// Otherwise: `Φ(β) − Φ(α)`.
    Lower { pa: f64, width: f64 },
}

impl Interval {
    #[inline]
    fn new(alpha: f64, beta: f64) -> Self {
        if alpha > 0.0 {
            let qa = normal_sf(alpha);
            Interval::Upper {
                qa,
                width: (qa - normal_sf(beta)).max(0.0),
            }
        } else {
            let pa = normal_cdf(alpha);
            Interval::Lower {
                pa,
                width: (normal_cdf(beta) - pa).max(0.0),
            }
        }
    }

    #[inline]
    fn width(self) -> f64 {
        match self {
            Interval::Upper { width, .. } | Interval::Lower { width, .. } => width,
        }
    }

    /// Conditional normal quantile at fraction `w` of the interval mass.
    #[inline]
    fn quantile(self, w: f64) -> f64 {
        match self {
            Interval::Upper { qa, width } => normal_quantile_upper(qa - w * width),
            Interval::Lower { pa, width } => normal_quantile(pa + w * width),
        }
    }
}

/// Cholesky factor of a rectangle problem after variable reordering, with
/// the bounds centred and permuted to match.
#[derive(Debug, Clone)]
pub struct Conditioned {
    pub chol: DMatrix<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    /// `order[i]` is the original index of transformed coordinate `i`.
    pub order: Vec<usize>,
}

/// Expected value of a standard normal restricted to `(a, b)`.
fn truncated_mean(a: f64, b: f64) -> f64 {
    let pdf = |x: f64| {
        if x.is_infinite() {
            0.0
        } else {
            crate::special::normal_pdf(x)
        }
    };
    let iv = Interval::new(a, b);
    let w = iv.width();
    if w > 1e-300 {
        (pdf(a) - pdf(b)) / w
    } else if a.is_finite() && b.is_finite() {
        0.5 * (a + b)
    } else if a.is_finite() {
        a
    } else {
        b
    }
}

/// Cholesky decomposition with Genz–Bretz prioritization: at each step the
/// remaining coordinate with the smallest conditional interval mass is
/// placed next, and later conditioning uses its truncated mean.
pub fn condition(rect: &Rectangle, reorder: bool) -> Result<Conditioned> {
    let m = rect.dim();
    let mut cov = rect.cov.clone();
    let mut lower: Vec<f64> = (0..m).map(|i| rect.lower[i] - rect.mean[i]).collect();
    let mut upper: Vec<f64> = (0..m).map(|i| rect.upper[i] - rect.mean[i]).collect();
    let mut order: Vec<usize> = (0..m).collect();
    let mut l = DMatrix::<f64>::zeros(m, m);
    let mut y = vec![0.0; m];
    let scale = (0..m).map(|i| cov[(i, i)].abs()).fold(0.0, f64::max);

    for i in 0..m {
        if reorder {
            let mut best = (i, f64::INFINITY);
            for j in i..m {
                let var = cov[(j, j)] - (0..i).map(|k| l[(j, k)] * l[(j, k)]).sum::<f64>();
                if var <= 0.0 {
                    continue;
                }
                let sd = var.sqrt();
                let s: f64 = (0..i).map(|k| l[(j, k)] * y[k]).sum();
                let mass = Interval::new((lower[j] - s) / sd, (upper[j] - s) / sd).width();
                if mass < best.1 {
                    best = (j, mass);
                }
            }
            let j = best.0;
            if j != i {
                cov.swap_rows(i, j);
                cov.swap_columns(i, j);
                l.swap_rows(i, j);
                lower.swap(i, j);
                upper.swap(i, j);
                order.swap(i, j);
            }
        }
        let var = cov[(i, i)] - (0..i).map(|k| l[(i, k)] * l[(i, k)]).sum::<f64>();
        if !(var > 1e-14 * scale) {
            return Err(Error::NotPositiveDefinite { index: i, pivot: var });
        }
        let d = var.sqrt();
        l[(i, i)] = d;
        for r in i + 1..m {
            let s: f64 = (0..i).map(|k| l[(r, k)] * l[(i, k)]).sum();
            l[(r, i)] = (cov[(r, i)] - s) / d;
        }
        let s: f64 = (0..i).map(|k| l[(i, k)] * y[k]).sum();
        y[i] = truncated_mean((lower[i] - s) / d, (upper[i] - s) / d);
    }
    Ok(Conditioned {
        chol: l,
        lower,
        upper,
        order,
    })
}

impl Conditioned {
    /// Integrand at a point `w` of the `(m−1)`-cube.
    pub fn integrand(&self, w: &[f64], y: &mut [f64]) -> f64 {
        Packed::new(self).integrand(w, y)
    }
}

/// Row-packed copy of a [`Conditioned`] problem with every row and bound
/// divided by its diagonal entry.
struct Packed {
    first: Interval,
    /// Start of row `i` in `coef`; row `i` holds `L[i, 0..i] / L[i, i]`.
    offsets: Vec<usize>,
    coef: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Packed {
    fn new(c: &Conditioned) -> Self {
        let m = c.lower.len();
        let mut offsets = Vec::with_capacity(m);
        let mut coef = Vec::with_capacity(m * (m + 1) / 2);
        let mut lower = Vec::with_capacity(m);
        let mut upper = Vec::with_capacity(m);
        for i in 0..m {
            let d = c.chol[(i, i)];
            offsets.push(coef.len());
            coef.extend((0..i).map(|k| c.chol[(i, k)] / d));
            lower.push(c.lower[i] / d);
            upper.push(c.upper[i] / d);
        }
        Packed {
            first: Interval::new(lower[0], upper[0]),
            offsets,
            coef,
            lower,
            upper,
        }
    }

    #[inline]
    fn integrand(&self, w: &[f64], y: &mut [f64]) -> f64 {
        let m = self.lower.len();
        let mut f = self.first.width();
        if m > 1 {
            y[0] = self.first.quantile(w[0]);
        }
        for i in 1..m {
            let row = &self.coef[self.offsets[i]..self.offsets[i] + i];
            let s: f64 = row.iter().zip(&y[..i]).map(|(a, b)| a * b).sum();
            let iv = Interval::new(self.lower[i] - s, self.upper[i] - s);
            f *= iv.width();
            if f == 0.0 {
                return 0.0;
            }
            if i + 1 < m {
                y[i] = iv.quantile(w[i]);
            }
        }
        f
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QmcConfig {
    /// Lattice size, rounded up to a prime.
    pub points: u64,
    pub shifts: u32,
    pub seed: u64,
    /// Stream index separating cases that share a seed.
    pub stream: u64,
    pub reorder: bool,
}

impl Default for QmcConfig {
    fn default() -> Self {
        QmcConfig {
            points: 500_000,
            shifts: 8,
            seed: 0,
            stream: 0,
            reorder: true,
        }
    }
}

/// `(value, stderr, points evaluated)` for a rectangle problem.
pub fn integrate_rectangle(rect: &Rectangle, cfg: &QmcConfig) -> Result<(f64, f64, u64)> {
    if rect.is_empty() {
        return Ok((0.0, 0.0, 0));
    }
    let m = rect.dim();
    if m == 0 {
        return Ok((1.0, 0.0, 0));
    }
    let cond = condition(rect, cfg.reorder)?;
    let packed = Packed::new(&cond);
    let mut y = vec![0.0; m];
    if m == 1 {
        return Ok((packed.integrand(&[], &mut y), 0.0, 1));
    }
    if cfg.shifts == 0 || cfg.points == 0 {
        return Err(Error::invalid("qmc", "points and shifts must be positive"));
    }
    let n = next_prime(cfg.points.max(3));
    let s = m - 1;
    let z: Vec<f64> = generating_vector(n, s).into_iter().map(|v| v as f64 / n as f64).collect();
    let mut estimates = Vec::with_capacity(cfg.shifts as usize);
    let mut w = vec![0.0; s];
    for q in 0..cfg.shifts {
        let mut rng = Stream::new(cfg.seed, Purpose::Shift(q), cfg.stream);
        let shift: Vec<f64> = (0..s).map(|_| rng.uniform()).collect();
        let mut sum = 0.0;
        let mut comp = 0.0;
        for k in 0..n {
            let kf = k as f64;
            for j in 0..s {
                w[j] = tent((kf * z[j] + shift[j]).fract());
            }
            let v = packed.integrand(&w, &mut y);
            let t = sum + v;
            comp += if sum.abs() >= v.abs() { (sum - t) + v } else { (v - t) + sum };
            sum = t;
        }
        estimates.push((sum + comp) / n as f64);
    }
    let r = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / r;
    let var = if estimates.len() > 1 {
        estimates.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / (r - 1.0)
    } else {
        0.0
    };
    Ok((mean, (var / r).sqrt(), n * cfg.shifts as u64))
}
