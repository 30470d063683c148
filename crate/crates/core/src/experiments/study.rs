//! Accuracy studies: EP against an oracle on random problems.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::csv::{quantile, Field, Table};
use super::generators::{gen_gaussian, gen_poly_region, gen_rect_region, to_correlation, GENERATOR_VERSION};
use crate::ep::{run_epmgp, EpConfig};
use crate::error::{Error, Result};
use crate::gaussian::{region_metrics, GaussianDist, PolyhedralRegion};
use crate::oracle::lattice::LATTICE_ID;
use crate::oracle::{orthant_analytic, reference, OracleConfig};
use crate::rng::{Purpose, Stream, PRNG_ID};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum StudyKind {
    Rect,
    Poly,
    PolyM,
    Orthant,
}

impl StudyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StudyKind::Rect => "rect",
            StudyKind::Poly => "poly",
            StudyKind::PolyM => "polyM",
            StudyKind::Orthant => "orthant",
        }
    }
}

impl std::str::FromStr for StudyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rect" => Ok(StudyKind::Rect),
            "poly" => Ok(StudyKind::Poly),
            "polyM" | "polym" | "poly-m" => Ok(StudyKind::PolyM),
            "orthant" => Ok(StudyKind::Orthant),
            other => Err(Error::invalid("kind", format!("unknown study kind '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub kind: StudyKind,
    pub dims: Vec<usize>,
    /// Constraint counts for `PolyM`; ignored otherwise.
    pub m_list: Vec<usize>,
    pub cases: usize,
    pub seed: u64,
    pub ep: EpConfig,
    pub oracle: OracleConfig,
    /// Multiplier on the `√n` half-widths of generated regions.
    pub scale: f64,
}

impl StudyConfig {
    pub fn new(kind: StudyKind, dims: Vec<usize>, cases: usize, seed: u64) -> Self {
        StudyConfig {
            kind,
            dims,
            m_list: Vec::new(),
            cases,
            seed,
            ep: EpConfig::default(),
            oracle: OracleConfig::default(),
            scale: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.cases == 0 {
            return Err(Error::invalid("cases", "must be at least 1"));
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::invalid("dims", "need at least one positive dimension"));
        }
        if self.kind == StudyKind::PolyM && (self.m_list.is_empty() || self.m_list.contains(&0)) {
            return Err(Error::invalid("m_list", "need at least one positive constraint count"));
        }
        if self.kind == StudyKind::Orthant && self.dims.iter().any(|&n| !(2..=3).contains(&n)) {
            return Err(Error::invalid("dims", "orthant studies support n = 2 and 3"));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::invalid("scale", "must be positive"));
        }
        self.ep.validate(0).map(|_| ())
    }

    /// `(n, m)` for every cell, in output order.
    fn cells(&self) -> Vec<(usize, usize)> {
        match self.kind {
            StudyKind::PolyM => self
                .dims
                .iter()
                .flat_map(|&n| self.m_list.iter().map(move |&m| (n, m)))
                .collect(),
            _ => self.dims.iter().map(|&n| (n, n)).collect(),
        }
    }
}

/// One evaluated problem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseResult {
    pub case_id: usize,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub log_z_ep: f64,
    pub log_z_oracle: f64,
    pub rel_error: f64,
    pub cond_k: f64,
    pub cond_cprime: f64,
    pub gram_fro: f64,
    pub gram_l1: f64,
    pub sweeps: usize,
    pub converged: bool,
    pub oracle_method: String,
    pub oracle_stderr: f64,
}

/// Summary of the cases in one cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub n: usize,
    pub m: usize,
    pub cases: usize,
    pub median: f64,
    pub q25: f64,
    pub q75: f64,
    /// Median of oracle stderr relative to the oracle value.
    pub oracle_rel_stderr: f64,
    pub not_converged: usize,
    /// Cases where the oracle estimate was zero, excluded from the quantiles.
    pub oracle_unresolved: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyOutput {
    pub cases: Vec<CaseResult>,
    pub cells: Vec<CellSummary>,
    pub table: Table,
}

/// `|Z_ep − Z_oracle| / Z_oracle` from the two logarithms.
pub fn relative_error(log_z_ep: f64, log_z_oracle: f64) -> f64 {
    (log_z_ep - log_z_oracle).exp_m1().abs()
}

/// `(Z_ep − Z_true) / Z_true` from the two logarithms.
pub fn signed_relative_error(log_z_ep: f64, log_z_true: f64) -> f64 {
    (log_z_ep - log_z_true).exp_m1()
}

pub(crate) fn gaussian_stream(n: usize, j: usize) -> u64 {
    ((n as u64) << 40) | j as u64
}

pub(crate) fn case_stream(n: usize, m: usize, j: usize) -> u64 {
    ((n as u64) << 40) | ((m as u64) << 20) | j as u64
}

fn evaluate(
    case_id: usize,
    prior: &GaussianDist,
    region: &PolyhedralRegion,
    cfg: &StudyConfig,
    oracle: impl FnOnce() -> Result<crate::oracle::OracleEstimate>,
) -> Result<CaseResult> {
    let metrics = region_metrics(prior, region)?;
    let (log_z_ep, sweeps, converged) = match run_epmgp(prior, region, &cfg.ep) {
        Ok(s) => (s.log_z, s.sweeps, s.converged && s.log_z.is_finite()),
        Err(Error::TailUnderflow { .. }) | Err(Error::NotPositiveDefinite { .. }) => (f64::NAN, 0, false),
        Err(e) => return Err(e),
    };
    let est = oracle()?;
    let log_z_oracle = est.value.ln();
    Ok(CaseResult {
        case_id,
        n: prior.dim(),
        m: region.len(),
        seed: cfg.seed,
        log_z_ep,
        log_z_oracle,
        rel_error: relative_error(log_z_ep, log_z_oracle),
        cond_k: metrics.cond_k,
        cond_cprime: metrics.cond_cprime,
        gram_fro: metrics.gram_fro,
        gram_l1: metrics.gram_l1,
        sweeps,
        converged,
        oracle_method: est.method.as_str().to_string(),
        oracle_stderr: est.stderr,
    })
}

/// Problem for case `j` of cell `(n, m)`. Gaussians depend only on `(n, j)`,
/// so studies of different kinds share them.
pub fn study_problem(cfg: &StudyConfig, n: usize, m: usize, j: usize) -> Result<(GaussianDist, PolyhedralRegion)> {
    let mut g_rng = Stream::new(cfg.seed, Purpose::Gaussian, gaussian_stream(n, j));
    let gauss = gen_gaussian(n, &mut g_rng)?;
    let mut r_rng = Stream::new(cfg.seed, Purpose::Region, case_stream(n, m, j));
    match cfg.kind {
        StudyKind::Rect => {
            let region = gen_rect_region(&gauss, cfg.scale, &mut r_rng)?;
            Ok((gauss, region))
        }
        StudyKind::Poly | StudyKind::PolyM => {
            let region = gen_poly_region(&gauss, m, cfg.scale, &mut r_rng)?;
            Ok((gauss, region))
        }
        StudyKind::Orthant => {
            let corr = to_correlation(gauss.cov());
            let prior = GaussianDist::new(DVector::zeros(n), corr)?;
            Ok((prior, positive_orthant(n)))
        }
    }
}

pub fn positive_orthant(n: usize) -> PolyhedralRegion {
    PolyhedralRegion::hyperrectangle(&vec![0.0; n], &vec![f64::INFINITY; n]).expect("valid orthant")
}

/// Runs every case of the study in a fixed order.
pub fn run_study(cfg: &StudyConfig) -> Result<StudyOutput> {
    cfg.validate()?;
    let mut cases = Vec::new();
    let mut cells = Vec::new();
    for (n, m) in cfg.cells() {
        let start = cases.len();
        for j in 0..cfg.cases {
            let (prior, region) = study_problem(cfg, n, m, j)?;
            let stream = case_stream(n, m, j);
            let id = cases.len();
            let row = if cfg.kind == StudyKind::Orthant {
                evaluate(id, &prior, &region, cfg, || orthant_analytic(prior.cov()))?
            } else {
                evaluate(id, &prior, &region, cfg, || {
                    reference(&prior, &region, &cfg.oracle, cfg.seed, stream)
                })?
            };
            cases.push(row);
        }
        cells.push(summarize(n, m, &cases[start..]));
    }
    let mut table = study_table(cfg);
    for c in &cases {
        table.push(case_row(c, Field::Empty));
    }
    if cfg.kind == StudyKind::Orthant {
        for &n in &cfg.dims {
            for p in orthant_grid(n, &cfg.ep)? {
                table.push(grid_row(n, cfg.seed, &p));
            }
        }
    }
    for s in &cells {
        table.push(summary_row(s));
    }
    Ok(StudyOutput { cases, cells, table })
}

fn summarize(n: usize, m: usize, cases: &[CaseResult]) -> CellSummary {
    // Cases whose oracle saw no mass say nothing about EP and are left out;
    // NaN (failed EP) sorts last, counting as worst.
    let resolved: Vec<&CaseResult> = cases.iter().filter(|c| c.log_z_oracle.is_finite()).collect();
    let mut errs: Vec<f64> = resolved.iter().map(|c| c.rel_error).collect();
    errs.sort_by(|a, b| a.total_cmp(b));
    let mut rel_se: Vec<f64> = resolved
        .iter()
        .map(|c| c.oracle_stderr / c.log_z_oracle.exp())
        .collect();
    rel_se.sort_by(|a, b| a.total_cmp(b));
    CellSummary {
        n,
        m,
        cases: cases.len(),
        median: quantile(&errs, 0.5),
        q25: quantile(&errs, 0.25),
        q75: quantile(&errs, 0.75),
        oracle_rel_stderr: quantile(&rel_se, 0.5),
        not_converged: cases.iter().filter(|c| !c.converged).count(),
        oracle_unresolved: cases.len() - resolved.len(),
    }
}

pub const STUDY_HEADER: [&str; 22] = [
    "row",
    "case_id",
    "n",
    "m",
    "param",
    "seed",
    "log_z_ep",
    "log_z_oracle",
    "rel_error",
    "cond_k",
    "cond_cprime",
    "gram_fro",
    "gram_l1",
    "sweeps",
    "converged",
    "oracle_method",
    "oracle_stderr",
    "rel_q25",
    "rel_q75",
    "oracle_rel_stderr_median",
    "cases",
    "oracle_unresolved",
];

fn study_table(cfg: &StudyConfig) -> Table {
    let mut t = Table::new(STUDY_HEADER.to_vec());
    t.meta("kind", cfg.kind.as_str());
    t.meta("seed", cfg.seed.to_string());
    t.meta("prng", PRNG_ID);
    t.meta("generator", GENERATOR_VERSION);
    t.meta(
        "generator_notes",
        format!(
            "K = V diag(Exp(1)) V^T with Haar V, mean 0; regions: anchor x0 ~ N(0,K), bounds c^T x0 +/- {}*sqrt(n)*U(0,1)",
            cfg.scale
        ),
    );
    t.meta("ep", ep_meta(&cfg.ep));
    if cfg.kind == StudyKind::Orthant {
        t.meta("oracle", "closed-form orthant probability");
        t.meta("grid", "n=2: rho=(j-20)*0.0475; n=3: equicorrelation rho=(j-18)*0.025; j=0..40");
    } else {
        t.meta(
            "oracle",
            format!(
                "univariate exact for m=1; Genz QMC ({} points, {} shifts, reorder={}) when reducible; else rejection MC ({}..{} samples, target rel stderr {:e})",
                cfg.oracle.qmc.points,
                cfg.oracle.qmc.shifts,
                cfg.oracle.qmc.reorder,
                cfg.oracle.mc.base,
                cfg.oracle.mc.cap,
                cfg.oracle.mc.target_rel
            ),
        );
        t.meta("lattice", LATTICE_ID);
    }
    t
}

pub(crate) fn ep_meta(ep: &EpConfig) -> String {
    format!(
        "tol={:e} max_sweeps={} damping={} sequential_refresh={} oscillation_window={}",
        ep.tol, ep.max_sweeps, ep.damping, ep.sequential_refresh, ep.oscillation_window
    )
}

fn case_row(c: &CaseResult, param: Field) -> Vec<Field> {
    vec![
        "case".into(),
        c.case_id.into(),
        c.n.into(),
        c.m.into(),
        param,
        c.seed.into(),
        c.log_z_ep.into(),
        c.log_z_oracle.into(),
        c.rel_error.into(),
        c.cond_k.into(),
        c.cond_cprime.into(),
        c.gram_fro.into(),
        c.gram_l1.into(),
        c.sweeps.into(),
        c.converged.into(),
        c.oracle_method.as_str().into(),
        c.oracle_stderr.into(),
        Field::Empty,
        Field::Empty,
        Field::Empty,
        Field::Empty,
        Field::Empty,
    ]
}

fn summary_row(s: &CellSummary) -> Vec<Field> {
    let mut row = vec![Field::Empty; STUDY_HEADER.len()];
    row[0] = "median".into();
    row[2] = s.n.into();
    row[3] = s.m.into();
    row[8] = s.median.into();
    row[14] = (s.not_converged == 0).into();
    row[17] = s.q25.into();
    row[18] = s.q75.into();
    row[19] = s.oracle_rel_stderr.into();
    row[20] = s.cases.into();
    row[21] = s.oracle_unresolved.into();
    row
}

fn grid_row(n: usize, seed: u64, p: &GridPoint) -> Vec<Field> {
    let mut row = vec![Field::Empty; STUDY_HEADER.len()];
    row[0] = "grid".into();
    row[1] = p.index.into();
    row[2] = n.into();
    row[3] = n.into();
    row[4] = p.rho.into();
    row[5] = seed.into();
    row[6] = p.log_z_ep.into();
    row[7] = p.log_z_true.into();
    row[8] = p.rel_error.into();
    row[13] = p.sweeps.into();
    row[14] = p.converged.into();
    row[15] = "orthant".into();
    row[16] = 0.0.into();
    row
}

/// One point of the deterministic orthant correlation grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridPoint {
    pub index: usize,
    pub rho: f64,
    pub log_z_ep: f64,
    pub log_z_true: f64,
    pub rel_error: f64,
    /// `orthant(ρ) + orthant(−ρ)`.
    pub reflection: f64,
    pub sweeps: usize,
    pub converged: bool,
}

/// Grid correlation for point `j` of 41.
pub fn grid_rho(n: usize, j: usize) -> f64 {
    match n {
        2 => (j as f64 - 20.0) * 0.0475,
        _ => (j as f64 - 18.0) * 0.025,
    }
}

fn grid_corr(n: usize, rho: f64) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { rho })
}

/// EP against the closed form over 41 correlations: a bivariate `ρ` for
/// `n = 2`, an equicorrelation matrix for `n = 3`.
pub fn orthant_grid(n: usize, ep: &EpConfig) -> Result<Vec<GridPoint>> {
    if !(2..=3).contains(&n) {
        return Err(Error::Unsupported(format!("orthant grid in {n} dimensions")));
    }
    let region = positive_orthant(n);
    (0..41)
        .map(|j| {
            let rho = grid_rho(n, j);
            let corr = grid_corr(n, rho);
            let truth = orthant_analytic(&corr)?.value;
            // Sums to 1/2 for n = 2 and to 1/4 for n = 3.
            let reflection = truth + orthant_analytic(&grid_corr(n, -rho))?.value;
            let prior = GaussianDist::new(DVector::zeros(n), corr)?;
            let s = run_epmgp(&prior, &region, ep)?;
            Ok(GridPoint {
                index: j,
                rho,
                log_z_ep: s.log_z,
                log_z_true: truth.ln(),
                rel_error: relative_error(s.log_z, truth.ln()),
                reflection,
                sweeps: s.sweeps,
                converged: s.converged,
            })
        })
        .collect()
}
