//! Zeroth, first and second moments of a univariate Gaussian restricted to an
//! interval.
//!
//! Work is done on the standardized interval `(a, b)`, mirrored so that
//! `b > 0`. Intervals that straddle the origin use `erf` directly. Intervals
//! in the upper tail (`a > 0`) express every ratio through `erfcx`, so the
//! shared `exp(-a²/2)` factor never has to be formed and `log Ẑ` stays finite
//! far beyond the range of `Ẑ` itself. Very narrow intervals integrate the
//! exponentially tilted density on the interval with Gauss–Legendre.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_2_PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::gl20;
use crate::special::{erf, erfcx, normal_pdf, LN_SQRT_2PI};

/// `Ẑ` below this is reported as [`Error::TailUnderflow`].
pub const MIN_ZHAT: f64 = 1e-300;

/// Standardized widths below this use the quadrature path.
const NARROW_WIDTH: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncatedMoments {
    pub zhat: f64,
    pub log_zhat: f64,
    pub muhat: f64,
    pub sighat2: f64,
}

/// Moments of the standard normal on `(a, b)`.
#[derive(Debug, Clone, Copy)]
struct StdMoments {
    log_z: f64,
    mean: f64,
    var: f64,
}

#[inline]
fn xphi(x: f64) -> f64 {
    if x.is_infinite() {
        0.0
    } else {
        x * normal_pdf(x)
    }
}

fn straddling(a: f64, b: f64) -> StdMoments {
    // a <= 0 < b: the two erf terms add.
    let z = 0.5 * (erf(b * FRAC_1_SQRT_2) + erf(-a * FRAC_1_SQRT_2));
    let mean = (normal_pdf(a) - normal_pdf(b)) / z;
    let second = 1.0 + (xphi(a) - xphi(b)) / z;
    StdMoments {
        log_z: z.ln(),
        mean,
        var: second - mean * mean,
    }
}

fn upper_tail(a: f64, b: f64) -> StdMoments {
    // 0 < a < b; Q(x) = ½ exp(-x²/2) erfcx(x/√2).
    let ea = erfcx(a * FRAC_1_SQRT_2);
    let lambda = FRAC_2_PI.sqrt() / ea; // φ(a)/Q(a)
    let (e, r) = if b.is_infinite() {
        (0.0, 0.0)
    } else {
        let e = (-0.5 * (b - a) * (b + a)).exp();
        (e, e * erfcx(b * FRAC_1_SQRT_2) / ea)
    };
    let log_z = -0.5 * a * a + (0.5 * ea).ln() + (-r).ln_1p();
    let mean = lambda * (1.0 - e) / (1.0 - r);
    let d = mean - a;
    let wb = if b.is_infinite() {
        0.0
    } else {
        (b - a) * lambda * e / (1.0 - r)
    };
    StdMoments {
        log_z,
        mean,
        var: 1.0 - (a + d) * d - wb,
    }
}

fn narrow(a: f64, b: f64) -> StdMoments {
    // Around the midpoint c the density is φ(c)·exp(-ct - t²/2), |t| <= h.
    // Nodes are summed in mirrored pairs so symmetric intervals give a
    // mean of exactly zero.
    let (nodes, weights) = gl20();
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let n = nodes.len();
    let mut pts = [(0.0f64, 0.0f64); 20];
    for (k, (x, w)) in nodes.iter().zip(weights).enumerate() {
        let t = h * x;
        pts[k] = (t, w * h * (-c * t - 0.5 * t * t).exp());
    }
    let mut i0 = 0.0;
    let mut i1 = 0.0;
    for k in 0..n / 2 {
        let (t0, f0) = pts[k];
        let (t1, f1) = pts[n - 1 - k];
        i0 += f0 + f1;
        i1 += f0 * t0 + f1 * t1;
    }
    let tbar = i1 / i0;
    let var = pts.iter().map(|(t, f)| f * (t - tbar) * (t - tbar)).sum::<f64>() / i0;
    StdMoments {
        log_z: -0.5 * c * c - LN_SQRT_2PI + i0.ln(),
        mean: c + tbar,
        var,
    }
}

fn standard_moments(a: f64, b: f64) -> StdMoments {
    if b - a < NARROW_WIDTH {
        narrow(a, b)
    } else if a > 0.0 {
        upper_tail(a, b)
    } else {
        straddling(a, b)
    }
}

/// Moments of `N(mu, sig2)` restricted to `(l, u)`: `Ẑ` (mass), `μ̂` (mean)
/// and `σ̂²` (variance) of the truncated density.
pub fn truncated_moments(mu: f64, sig2: f64, l: f64, u: f64) -> Result<TruncatedMoments> {
    if !mu.is_finite() {
        return Err(Error::invalid("mu_cav", format!("must be finite, got {mu}")));
    }
    if !(sig2 > 0.0) || !sig2.is_finite() {
        return Err(Error::invalid("sig2_cav", format!("must be positive and finite, got {sig2}")));
    }
    if l.is_nan() || u.is_nan() || !(l < u) || l == f64::INFINITY || u == f64::NEG_INFINITY {
        return Err(Error::invalid("bounds", format!("need l < u, got ({l}, {u})")));
    }
    let sd = sig2.sqrt();
    let a = (l - mu) / sd;
    let b = (u - mu) / sd;
    let mirrored = b <= 0.0;
    let m = if mirrored {
        standard_moments(-b, -a)
    } else {
        standard_moments(a, b)
    };
    if !(m.log_z >= MIN_ZHAT.ln()) {
        return Err(Error::TailUnderflow { log_z: m.log_z });
    }
    let mean = if mirrored { -m.mean } else { m.mean };
    Ok(TruncatedMoments {
        zhat: m.log_z.exp(),
        log_zhat: m.log_z,
        muhat: mu + sd * mean,
        sighat2: sig2 * m.var,
    })
}
