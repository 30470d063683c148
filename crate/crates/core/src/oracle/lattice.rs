//! Rank-1 lattice rules with generating vectors built by the fast
//! component-by-component construction of Nuyens and Cools.
//!
//! The construction minimizes the worst-case error in the weighted Korobov
//! space of smoothness 1 (the `P₂` criterion) with product weights
//! `γ_j = 1/j²`, for a prime number of points. Vectors are computed on first
//! use and cached; a vector for `s` dimensions is a prefix of the vector for
//! any larger `s`, so the cache only ever grows.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

/// Identifier written into output metadata.
pub const LATTICE_ID: &str = "rank-1 lattice, fast CBC (P2, gamma_j=1/j^2, prime N), random shift + tent transform";

/// `ω(x) = 2π²(x² − x + 1/6)`, the Bernoulli-polynomial kernel.
#[inline]
fn omega(x: f64) -> f64 {
    2.0 * PI * PI * (x * x - x + 1.0 / 6.0)
}

#[inline]
fn weight(dim: usize) -> f64 {
    1.0 / ((dim + 1) * (dim + 1)) as f64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `≥ n`.
pub fn next_prime(n: u64) -> u64 {
    let mut p = n.max(2);
    while !is_prime(p) {
        p += 1;
    }
    p
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root")
}

/// Incremental fast-CBC state for one prime `n`.
struct Cbc {
    n: u64,
    /// `g^i mod n` for `i = 0..n-1`.
    powers: Vec<u64>,
    /// FFT of `ω(g^i/n)`.
    omega_hat: Vec<Complex<f64>>,
    /// `Π_j (1 + γ_j ω(k z_j / n))` indexed by `i` with `k = g^i`.
    prod: Vec<f64>,
    z: Vec<u64>,
    planner: FftPlanner<f64>,
}

impl Cbc {
    fn new(n: u64) -> Self {
        assert!(is_prime(n) && n >= 3, "lattice size must be an odd prime");
        let m = (n - 1) as usize;
        let g = primitive_root(n);
        let mut powers = Vec::with_capacity(m);
        let mut x = 1u64;
        for _ in 0..m {
            powers.push(x);
            x = mul_mod(x, g, n);
        }
        let mut planner = FftPlanner::new();
        let mut omega_hat: Vec<Complex<f64>> = powers
            .iter()
            .map(|&k| Complex::new(omega(k as f64 / n as f64), 0.0))
            .collect();
        planner.plan_fft_forward(m).process(&mut omega_hat);
        Cbc {
            n,
            powers,
            omega_hat,
            prod: vec![1.0; m],
            z: Vec::new(),
            planner,
        }
    }

    fn extend_to(&mut self, dims: usize) {
        while self.z.len() < dims {
            self.push();
        }
    }

    fn push(&mut self) {
        let m = (self.n - 1) as usize;
        let gamma = weight(self.z.len());
        let zj = if self.z.is_empty() {
            1
        } else {
            // Circular cross-correlation: c[j] = Σ_i prod[i] ω(g^(i+j)/n).
            let mut buf: Vec<Complex<f64>> = self.prod.iter().map(|&p| Complex::new(p, 0.0)).collect();
            self.planner.plan_fft_forward(m).process(&mut buf);
            for (b, w) in buf.iter_mut().zip(&self.omega_hat) {
                *b = b.conj() * w;
            }
            self.planner.plan_fft_inverse(m).process(&mut buf);
            let best = buf
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.re.total_cmp(&b.1.re))
                .map(|(j, _)| j)
                .unwrap_or(0);
            self.powers[best]
        };
        let n = self.n as f64;
        for (p, &k) in self.prod.iter_mut().zip(&self.powers) {
            let x = mul_mod(k, zj, self.n) as f64 / n;
            *p *= 1.0 + gamma * omega(x);
        }
        self.z.push(zj);
    }
}

type Cache = Mutex<HashMap<u64, Arc<Mutex<Cbc>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Generating vector of length `dims` for the prime `n`.
pub fn generating_vector(n: u64, dims: usize) -> Vec<u64> {
    if dims == 0 {
        return Vec::new();
    }
    let entry = {
        let mut map = cache().lock().expect("lattice cache poisoned");
        map.entry(n).or_insert_with(|| Arc::new(Mutex::new(Cbc::new(n)))).clone()
    };
    let mut cbc = entry.lock().expect("lattice cache poisoned");
    cbc.extend_to(dims);
    cbc.z[..dims].to_vec()
}

/// Squared worst-case `P₂` error of the lattice `z` with `n` points.
pub fn p2_error(n: u64, z: &[u64]) -> f64 {
    let sum: f64 = (0..n)
        .map(|k| {
            z.iter()
                .enumerate()
                .map(|(j, &zj)| 1.0 + weight(j) * omega(mul_mod(k, zj, n) as f64 / n as f64))
                .product::<f64>()
        })
        .sum();
    sum / n as f64 - 1.0
}

/// Tent (baker's) transform, which makes the periodic lattice rule exact
/// for linear integrands.
#[inline]
pub fn tent(x: f64) -> f64 {
    1.0 - (2.0 * x - 1.0).abs()
}
