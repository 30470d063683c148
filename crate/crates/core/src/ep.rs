//! Expectation propagation over rank-one box factors, with per-factor powers.
//!
//! Each constraint `l_i < c_iᵀx < u_i` is approximated by an unnormalized
//! Gaussian site `exp(s_i + ν_i y − τ_i y²/2)` in `y = c_iᵀx`. Sites are held
//! in natural parameters; cavities remove `α_i` copies of the site from the
//! current marginal, and updates divide the moment-matching step by `α_i`.
//! With every `α_i = 1` this is plain EP.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{GaussianDist, PolyhedralRegion};
use crate::linalg::{self, CholeskyFactor};
use crate::moments::{truncated_moments, TruncatedMoments};
use crate::special::LN_SQRT_2PI;

/// Site precisions more negative than this are counted as clamped.
const CLAMP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct EpConfig {
    pub tol: f64,
    pub max_sweeps: usize,
    pub damping: f64,
    /// Per-factor powers; `None` means all ones.
    pub alphas: Option<Vec<f64>>,
    /// Refresh the posterior after every factor instead of once per sweep.
    pub sequential_refresh: bool,
    /// Sweeps without a new minimum of `max_delta` before oscillation is declared.
    pub oscillation_window: usize,
}

impl Default for EpConfig {
    fn default() -> Self {
        EpConfig {
            tol: 1e-10,
            max_sweeps: 200,
            damping: 1.0,
            alphas: None,
            sequential_refresh: false,
            oscillation_window: 50,
        }
    }
}

impl EpConfig {
    pub fn with_alphas(mut self, alphas: Vec<f64>) -> Self {
        self.alphas = Some(alphas);
        self
    }

    pub fn sequential(mut self) -> Self {
        self.sequential_refresh = true;
        self
    }

    pub fn validate(&self, factors: usize) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::invalid("tol", format!("must be positive, got {}", self.tol)));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::invalid("damping", format!("must lie in (0, 1], got {}", self.damping)));
        }
        if self.max_sweeps == 0 {
            return Err(Error::invalid("max_sweeps", "must be at least 1"));
        }
        if let Some(a) = &self.alphas {
            if a.len() != factors {
                return Err(Error::DimensionMismatch {
                    what: "alphas",
                    expected: factors,
                    found: a.len(),
                });
            }
            if let Some(i) = a.iter().position(|&x| !(x > 0.0 && x.is_finite())) {
                return Err(Error::invalid(format!("alphas[{i}]"), format!("must be positive, got {}", a[i])));
            }
        }
        Ok(())
    }

    fn alpha_vec(&self, m: usize) -> Vec<f64> {
        self.alphas.clone().unwrap_or_else(|| vec![1.0; m])
    }
}

/// Gaussian site approximating one box factor.
///
/// `log_z_tilde` is the log scale `Z̃` of the site written as
/// `Z̃ N(y; ν/τ, 1/τ)`; it is zero for an untouched site (`τ = ν = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SiteFactor {
    pub log_z_tilde: f64,
    pub nu: f64,
    pub tau: f64,
}

impl SiteFactor {
    pub const UNIT: SiteFactor = SiteFactor {
        log_z_tilde: 0.0,
        nu: 0.0,
        tau: 0.0,
    };

    /// Site mean `μ̃ = ν/τ`, undefined for an untouched site.
    pub fn mean(&self) -> f64 {
        self.nu / self.tau
    }

    pub fn variance(&self) -> f64 {
        1.0 / self.tau
    }
}

/// Univariate Gaussian log partition over natural parameters, without the
/// `½ log 2π` constant.
#[inline]
fn phi1(nu: f64, tau: f64) -> f64 {
    0.5 * nu * nu / tau - 0.5 * tau.ln()
}

/// Cavity distribution along one factor direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cavity {
    pub mean: f64,
    pub var: f64,
    pub nu: f64,
    pub tau: f64,
    /// `Φ(ν, τ) = ν²/(2τ) − ½ log τ + ½ log 2π`.
    pub log_partition: f64,
}

/// Removes `alpha` copies of `site` from the marginal `N(mean, var)`.
///
/// `factor` only labels the error.
pub fn cavity(mean: f64, var: f64, site: &SiteFactor, alpha: f64, factor: usize) -> Result<Cavity> {
    let tau = 1.0 / var - alpha * site.tau;
    let nu = mean / var - alpha * site.nu;
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::NegativeCavityVariance(factor));
    }
    Ok(Cavity {
        mean: nu / tau,
        var: 1.0 / tau,
        nu,
        tau,
        log_partition: phi1(nu, tau) + LN_SQRT_2PI,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteUpdate {
    pub site: SiteFactor,
    pub clamped: bool,
}

/// Moment-matched site for the tilted distribution `cavity × factor`.
///
/// The natural-parameter step is divided by `alpha` and blended with the old
/// site by `damping`. The site scale follows from matching `Ẑ` with the
/// damped parameters.
pub fn site_update(
    cav: &Cavity,
    moments: &TruncatedMoments,
    old: &SiteFactor,
    alpha: f64,
    damping: f64,
) -> SiteUpdate {
    let tau_hat = 1.0 / moments.sighat2;
    let nu_hat = moments.muhat / moments.sighat2;
    let mut tau_new = (tau_hat - cav.tau) / alpha;
    let nu_new = (nu_hat - cav.nu) / alpha;
    let mut clamped = false;
    if tau_new < 0.0 {
        clamped = tau_new < -CLAMP_TOL;
        tau_new = 0.0;
    }
    let tau = (1.0 - damping) * old.tau + damping * tau_new;
    let nu = if tau == 0.0 {
        0.0
    } else {
        (1.0 - damping) * old.nu + damping * nu_new
    };
    let site = SiteFactor {
        log_z_tilde: site_log_z_tilde(cav, moments.log_zhat, nu, tau, alpha),
        nu,
        tau,
    };
    SiteUpdate { site, clamped }
}

/// Per-factor contribution `(1/α)[log Ẑ + Φ(cav) − Φ(cav + α·site)]`.
fn site_energy(cav: &Cavity, log_zhat: f64, nu: f64, tau: f64, alpha: f64) -> f64 {
    let inc = phi1(cav.nu, cav.tau) - phi1(cav.nu + alpha * nu, cav.tau + alpha * tau);
    (log_zhat + inc) / alpha
}

fn site_log_z_tilde(cav: &Cavity, log_zhat: f64, nu: f64, tau: f64, alpha: f64) -> f64 {
    if tau == 0.0 {
        return 0.0;
    }
    site_energy(cav, log_zhat, nu, tau, alpha) + phi1(nu, tau) + LN_SQRT_2PI
}

/// Gaussian posterior `q(x) ∝ p₀(x) Π t̃_i(x)` with its precision factor.
#[derive(Debug, Clone)]
pub struct Posterior {
    pub mu: DVector<f64>,
    pub sigma: DMatrix<f64>,
    precision: CholeskyFactor,
}

impl Posterior {
    /// `log |Σ|`.
    pub fn log_det_sigma(&self) -> f64 {
        -self.precision.log_det()
    }

    fn marginal(&self, c: &DVector<f64>) -> (f64, f64, DVector<f64>) {
        let sc = &self.sigma * c;
        (c.dot(&self.mu), c.dot(&sc), sc)
    }
}

/// Prior quantities reused across sweeps.
struct PriorCache {
    k_inv: DMatrix<f64>,
    k_inv_m: DVector<f64>,
    log_norm: f64,
}

impl PriorCache {
    fn new(prior: &GaussianDist) -> Self {
        let chol = prior.chol();
        let k_inv_m = chol.solve(prior.mean());
        PriorCache {
            k_inv: chol.inverse(),
            log_norm: -0.5 * (prior.mean().dot(&k_inv_m) + chol.log_det()),
            k_inv_m,
        }
    }
}

fn check_dims(prior: &GaussianDist, region: &PolyhedralRegion, sites: &[SiteFactor]) -> Result<()> {
    if region.dim() != prior.dim() {
        return Err(Error::DimensionMismatch {
            what: "region",
            expected: prior.dim(),
            found: region.dim(),
        });
    }
    if sites.len() != region.len() {
        return Err(Error::DimensionMismatch {
            what: "sites",
            expected: region.len(),
            found: sites.len(),
        });
    }
    Ok(())
}

/// Dense posterior refresh: factorizes `K⁻¹ + Σ τ_i c_i c_iᵀ` and solves for
/// the mean.
pub fn update_posterior(prior: &GaussianDist, region: &PolyhedralRegion, sites: &[SiteFactor]) -> Result<Posterior> {
    check_dims(prior, region, sites)?;
    posterior_from(&PriorCache::new(prior), region, sites)
}

fn posterior_from(cache: &PriorCache, region: &PolyhedralRegion, sites: &[SiteFactor]) -> Result<Posterior> {
    let mut prec = cache.k_inv.clone();
    let mut h = cache.k_inv_m.clone();
    for (con, site) in region.constraints().iter().zip(sites) {
        if site.tau < 0.0 {
            return Err(Error::invalid("sites", "negative site precision"));
        }
        let c = con.direction();
        if site.tau != 0.0 {
            prec.ger(site.tau, c, c, 1.0);
        }
        h.axpy(site.nu, c, 1.0);
    }
    linalg::symmetrize(&mut prec);
    let precision = linalg::cholesky(&prec)?;
    let mu = precision.solve(&h);
    let mut sigma = precision.inverse();
    linalg::symmetrize(&mut sigma);
    Ok(Posterior { mu, sigma, precision })
}

/// Cavities and tilted normalizers of every factor at a posterior.
fn tilted_terms(
    region: &PolyhedralRegion,
    sites: &[SiteFactor],
    post: &Posterior,
    alphas: &[f64],
) -> Result<Vec<(Cavity, TruncatedMoments)>> {
    region
        .constraints()
        .iter()
        .zip(sites)
        .enumerate()
        .map(|(i, (con, site))| {
            let (mean, var, _) = post.marginal(con.direction());
            let cav = cavity(mean, var, site, alphas[i], i)?;
            let mom = truncated_moments(cav.mean, cav.var, con.lower(), con.upper())?;
            Ok((cav, mom))
        })
        .collect()
}

/// `log Z` of the EP approximation with the given sites and posterior.
///
/// With all powers one this is
/// `−½(mᵀK⁻¹m + log|K|) + Σ s_i + ½(μᵀΣ⁻¹μ + log|Σ|)`, `s_i` the log scale of
/// site `i` in natural form. For other powers each `s_i` is replaced by the
/// Power-EP term `(1/α_i)[log Ẑ_i + Φ(cav_i) − Φ(cav_i + α_i site_i)]`.
pub fn log_partition(
    prior: &GaussianDist,
    region: &PolyhedralRegion,
    sites: &[SiteFactor],
    post: &Posterior,
    alphas: Option<&[f64]>,
) -> Result<f64> {
    check_dims(prior, region, sites)?;
    let ones;
    let alphas = match alphas {
        Some(a) => a,
        None => {
            ones = vec![1.0; sites.len()];
            &ones
        }
    };
    let cache = PriorCache::new(prior);
    let terms = tilted_terms(region, sites, post, alphas)?;
    assemble_log_z(&cache, region, sites, post, alphas, &terms)
}

fn assemble_log_z(
    cache: &PriorCache,
    region: &PolyhedralRegion,
    sites: &[SiteFactor],
    post: &Posterior,
    alphas: &[f64],
    terms: &[(Cavity, TruncatedMoments)],
) -> Result<f64> {
    let mut h = cache.k_inv_m.clone();
    for (con, site) in region.constraints().iter().zip(sites) {
        h.axpy(site.nu, con.direction(), 1.0);
    }
    let post_term = 0.5 * (post.mu.dot(&h) + post.log_det_sigma());
    let mut site_sum = 0.0;
    for ((cav, mom), (site, &a)) in terms.iter().zip(sites.iter().zip(alphas)) {
        site_sum += site_energy(cav, mom.log_zhat, site.nu, site.tau, a);
    }
    if !cache.log_norm.is_finite() {
        return Err(Error::NonFinite("prior term"));
    }
    if !post_term.is_finite() {
        return Err(Error::NonFinite("posterior term"));
    }
    if !site_sum.is_finite() {
        return Err(Error::NonFinite("site terms"));
    }
    Ok(cache.log_norm + site_sum + post_term)
}

#[derive(Debug, Clone, Serialize)]
pub struct EpState {
    #[serde(skip)]
    pub mu: DVector<f64>,
    #[serde(skip)]
    pub sigma: DMatrix<f64>,
    pub sites: Vec<SiteFactor>,
    pub log_z: f64,
    pub sweeps: usize,
    pub converged: bool,
    /// Largest scaled site change in the last sweep.
    pub max_delta: f64,
    /// Factor updates skipped because the cavity was not a proper Gaussian.
    pub skipped: usize,
    /// Site updates whose precision came out negative and was set to zero.
    pub clamped: usize,
    pub oscillation: bool,
}

impl EpState {
    pub fn z(&self) -> f64 {
        self.log_z.exp()
    }
}

/// Plain EP: every factor at power one.
pub fn run_epmgp(prior: &GaussianDist, region: &PolyhedralRegion, config: &EpConfig) -> Result<EpState> {
    let cfg = EpConfig {
        alphas: None,
        ..config.clone()
    };
    run_power_ep(prior, region, &cfg)
}

/// Power EP with the per-factor powers in `config.alphas`.
///
/// Sweeps visit factors in order. The posterior is refreshed once per sweep,
/// or after every factor when `sequential_refresh` is set. Iteration stops
/// when both the scaled site change and the change in `log Z` fall below
/// `tol`, after `max_sweeps`, or when `max_delta` has not reached a new
/// minimum for `oscillation_window` sweeps.
pub fn run_power_ep(prior: &GaussianDist, region: &PolyhedralRegion, config: &EpConfig) -> Result<EpState> {
    let m = region.len();
    config.validate(m)?;
    let mut sites = vec![SiteFactor::UNIT; m];
    check_dims(prior, region, &sites)?;
    let alphas = config.alpha_vec(m);
    let cache = PriorCache::new(prior);
    let mut post = posterior_from(&cache, region, &sites)?;

    if m == 0 {
        return Ok(EpState {
            mu: post.mu,
            sigma: post.sigma,
            sites,
            log_z: 0.0,
            sweeps: 0,
            converged: true,
            max_delta: 0.0,
            skipped: 0,
            clamped: 0,
            oscillation: false,
        });
    }

    let mut log_z = f64::NAN;
    let mut skipped = 0;
    let mut clamped = 0;
    let mut converged = false;
    let mut oscillation = false;
    let mut max_delta = f64::INFINITY;
    let mut best_delta = f64::INFINITY;
    let mut since_best = 0;
    let mut sweeps = 0;

    while sweeps < config.max_sweeps {
        sweeps += 1;
        max_delta = 0.0;
        for (i, con) in region.constraints().iter().enumerate() {
            let c = con.direction();
            let (mean, var, sc) = post.marginal(c);
            let old = sites[i];
            let cav = match cavity(mean, var, &old, alphas[i], i) {
                Ok(cav) => cav,
                Err(Error::NegativeCavityVariance(_)) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let mom = truncated_moments(cav.mean, cav.var, con.lower(), con.upper())?;
            let up = site_update(&cav, &mom, &old, alphas[i], config.damping);
            clamped += usize::from(up.clamped);
            let new = up.site;
            let d_tau = (new.tau - old.tau).abs() / new.tau.abs().max(1.0);
            let d_nu = (new.nu - old.nu).abs() / new.nu.abs().max(1.0);
            max_delta = max_delta.max(d_tau).max(d_nu);
            sites[i] = new;
            if config.sequential_refresh {
                rank_one_refresh(&mut post, c, &sc, new.tau - old.tau, new.nu - old.nu);
            }
        }
        post = posterior_from(&cache, region, &sites)?;

        let new_log_z = match tilted_terms(region, &sites, &post, &alphas)
            .and_then(|t| assemble_log_z(&cache, region, &sites, &post, &alphas, &t))
        {
            Ok(v) => v,
            Err(Error::NegativeCavityVariance(_)) | Err(Error::NonFinite(_)) => f64::NAN,
            Err(e) => return Err(e),
        };
        let d_log_z = (new_log_z - log_z).abs();
        log_z = new_log_z;
        if max_delta < config.tol && d_log_z < config.tol {
            converged = true;
            break;
        }
        if max_delta < best_delta {
            best_delta = max_delta;
            since_best = 0;
        } else {
            since_best += 1;
            if since_best >= config.oscillation_window {
                oscillation = true;
                break;
            }
        }
    }

    Ok(EpState {
        mu: post.mu,
        sigma: post.sigma,
        sites,
        log_z,
        sweeps,
        converged,
        max_delta,
        skipped,
        clamped,
        oscillation,
    })
}

/// Adds `d_tau·c cᵀ` to the precision and `d_nu·c` to the shift, in place.
///
/// `sc = Σc` for the current `Σ`. The precision factor is left stale; callers
/// refresh densely before using it.
fn rank_one_refresh(post: &mut Posterior, c: &DVector<f64>, sc: &DVector<f64>, d_tau: f64, d_nu: f64) {
    let s = c.dot(sc);
    let denom = 1.0 + d_tau * s;
    let shift = (d_nu - d_tau * c.dot(&post.mu)) / denom;
    post.mu.axpy(shift, sc, 1.0);
    post.sigma.ger(-d_tau / denom, sc, sc, 1.0);
}
