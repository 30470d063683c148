#![allow(dead_code)]
//! Adaptive Gauss–Kronrod (7/15) quadrature. Independent of the library's
//! erf-based formulas; used as an oracle for truncated moments.

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Integral of `f` over `[a, b]` to relative tolerance `rtol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rtol: f64) -> f64 {
    let mut stack = vec![(a, b, 0usize)];
    let (whole, _) = gk15(&f, a, b);
    let mut total = 0.0;
    let scale = whole.abs().max(f64::MIN_POSITIVE);
    while let Some((lo, hi, depth)) = stack.pop() {
        let (v, err) = gk15(&f, lo, hi);
        if err <= rtol * scale * (hi - lo) / (b - a) || err <= 1e-15 * v.abs() || depth > 40 {
            total += v;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    total
}

/// `(Z, mean, variance)` of `N(mu, sig2)` on `(l, u)` by quadrature in the
/// standardized variable, with the density scaled by its value at the
/// interval point nearest the mode.
pub fn truncated_moments_oracle(mu: f64, sig2: f64, l: f64, u: f64) -> (f64, f64, f64) {
    let sd = sig2.sqrt();
    let mut a = (l - mu) / sd;
    let mut b = (u - mu) / sd;
    let z0 = if a > 0.0 {
        a
    } else if b < 0.0 {
        b
    } else {
        0.0
    };
    if a.is_infinite() {
        a = z0.min(b) - 40.0;
    }
    if b.is_infinite() {
        b = z0.max(a) + 40.0;
    }
    let dens = |z: f64| (-0.5 * (z - z0) * (z + z0)).exp();
    let rtol = 1e-13;
    let i0 = integrate(dens, a, b, rtol);
    let m = integrate(|z| z * dens(z), a, b, rtol) / i0;
    let v = integrate(|z| (z - m) * (z - m) * dens(z), a, b, rtol) / i0;
    let phi0 = (-0.5 * z0 * z0).exp() / (2.0 * std::f64::consts::PI).sqrt();
    (phi0 * i0, mu + sd * m, sig2 * v)
}
