//! Constructed failure cases on the `N(0, I)` mass of the square `[−1, 1]²`.
//!
//! Every construction describes the same square, so the true probability is
//! `erf(1/√2)²` throughout and any change in the EP answer is EP's doing.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::csv::{Field, Table};
use super::study::{ep_meta, signed_relative_error};
use crate::ep::{run_power_ep, EpConfig, EpState};
use crate::error::{Error, Result};
use crate::gaussian::{BoxConstraint, GaussianDist, PolyhedralRegion};
use crate::rng::PRNG_ID;

/// `erf(1/√2)`, the mass of `N(0, 1)` on `[−1, 1]`.
pub const UNIT_INTERVAL_MASS: f64 = 0.682_689_492_137_085_9;

/// `log` of the square's probability under `N(0, I₂)`.
pub fn true_log_z() -> f64 {
    2.0 * UNIT_INTERVAL_MASS.ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PathologyKind {
    Redundancy,
    Extramass,
    Rotated,
}

impl PathologyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PathologyKind::Redundancy => "redundancy",
            PathologyKind::Extramass => "extramass",
            PathologyKind::Rotated => "rotated",
        }
    }

    /// Default sweep values.
    pub fn default_sweep(self) -> Vec<f64> {
        match self {
            PathologyKind::Redundancy => vec![1.0, 2.0, 5.0, 10.0, 100.0, 1000.0],
            PathologyKind::Extramass => vec![1.0, 1.5, 2.0, 3.0, 5.0],
            PathologyKind::Rotated => vec![2.0, 4.0, 8.0],
        }
    }

    fn construction(self) -> &'static str {
        match self {
            PathologyKind::Redundancy => {
                "k copies of the axis box [-1,1]^2, constraints in blocks (x1, x2, x1, x2, ...)"
            }
            PathologyKind::Extramass => {
                "boxes [-1,2w-1]^2 and [1-2w,1]^2 whose intersection is [-1,1]^2; constraint order box1 x1, box1 x2, box2 x1, box2 x2"
            }
            PathologyKind::Rotated => {
                "r boxes at angles j*pi/(2r), j=0..r-1, directions (cos t, sin t) and (-sin t, cos t), bounds +/-(|cos t|+|sin t|); box 0 is the square itself and every other face touches a corner"
            }
        }
    }

    /// Region for one sweep value.
    pub fn region(self, value: f64) -> Result<PolyhedralRegion> {
        match self {
            PathologyKind::Redundancy => redundant(whole_count(value, "sweep")?),
            PathologyKind::Extramass => extra_mass(value),
            PathologyKind::Rotated => rotated(whole_count(value, "sweep")?),
        }
    }

    /// Number of boxes the region is built from.
    fn box_count(self, value: f64) -> f64 {
        match self {
            PathologyKind::Extramass => 2.0,
            _ => value,
        }
    }

    fn validate_sweep(self, sweep: &[f64]) -> Result<()> {
        if sweep.is_empty() {
            return Err(Error::invalid("sweep", "need at least one value"));
        }
        for (i, &v) in sweep.iter().enumerate() {
            let ok = match self {
                PathologyKind::Redundancy => v >= 1.0 && v.fract() == 0.0,
                PathologyKind::Extramass => v >= 1.0 && v.is_finite(),
                PathologyKind::Rotated => v >= 2.0 && v.fract() == 0.0 && v.is_finite(),
            };
            if !ok {
                let need = match self {
                    PathologyKind::Redundancy => "an integer k >= 1",
                    PathologyKind::Extramass => "a half-width w >= 1",
                    PathologyKind::Rotated => "an integer r >= 2",
                };
                return Err(Error::invalid(format!("sweep[{i}]"), format!("must be {need}, got {v}")));
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for PathologyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "redundancy" => Ok(PathologyKind::Redundancy),
            "extramass" | "extra-mass" => Ok(PathologyKind::Extramass),
            "rotated" => Ok(PathologyKind::Rotated),
            other => Err(Error::invalid("kind", format!("unknown pathology kind '{other}'"))),
        }
    }
}

fn whole_count(v: f64, field: &str) -> Result<usize> {
    if v >= 1.0 && v.fract() == 0.0 && v.is_finite() {
        Ok(v as usize)
    } else {
        Err(Error::invalid(field, format!("expected a positive integer, got {v}")))
    }
}

pub fn prior() -> GaussianDist {
    GaussianDist::standard(2)
}

pub fn unit_box() -> PolyhedralRegion {
    PolyhedralRegion::hyperrectangle(&[-1.0, -1.0], &[1.0, 1.0]).expect("valid box")
}

pub fn redundant(k: usize) -> Result<PolyhedralRegion> {
    if k == 0 {
        return Err(Error::invalid("sweep", "need at least one copy"));
    }
    Ok(unit_box().repeated(k))
}

/// Two squares of half-width `w`, shifted so they overlap exactly on
/// `[−1, 1]²`. At `w = 1` both are the unit square.
pub fn extra_mass(w: f64) -> Result<PolyhedralRegion> {
    if !(w >= 1.0 && w.is_finite()) {
        return Err(Error::invalid("sweep", format!("half-width must be at least 1, got {w}")));
    }
    let hi = 2.0 * w - 1.0;
    let cs = vec![
        BoxConstraint::axis(2, 0, -1.0, hi)?,
        BoxConstraint::axis(2, 1, -1.0, hi)?,
        BoxConstraint::axis(2, 0, -hi, 1.0)?,
        BoxConstraint::axis(2, 1, -hi, 1.0)?,
    ];
    PolyhedralRegion::new(cs)
}

/// `r` squares rotated by multiples of `π/(2r)`, each circumscribing the
/// unit square.
pub fn rotated(r: usize) -> Result<PolyhedralRegion> {
    if r == 0 {
        return Err(Error::invalid("sweep", "need at least one box"));
    }
    let mut cs = Vec::with_capacity(2 * r);
    for j in 0..r {
        let t = j as f64 * std::f64::consts::FRAC_PI_2 / r as f64;
        let (s, c) = t.sin_cos();
        let h = c.abs() + s.abs();
        cs.push(BoxConstraint::new(DVector::from_vec(vec![c, s]), -h, h)?);
        cs.push(BoxConstraint::new(DVector::from_vec(vec![-s, c]), -h, h)?);
    }
    PolyhedralRegion::new(cs)
}

/// Default settings for the constructions: the posterior is refreshed after
/// every factor, which keeps heavily redundant problems stable.
pub fn default_config() -> EpConfig {
    EpConfig::default().sequential()
}

/// Result of one EP run on a construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub log_z: f64,
    pub signed_error: f64,
    pub sweeps: usize,
    pub converged: bool,
    pub oscillation: bool,
}

impl Outcome {
    fn from_state(s: &EpState) -> Self {
        let ok = s.converged && s.log_z.is_finite();
        Outcome {
            log_z: s.log_z,
            signed_error: signed_relative_error(s.log_z, true_log_z()),
            sweeps: s.sweeps,
            converged: ok,
            oscillation: s.oscillation,
        }
    }

    fn failed() -> Self {
        Outcome {
            log_z: f64::NAN,
            signed_error: f64::NAN,
            sweeps: 0,
            converged: false,
            oscillation: false,
        }
    }
}

/// Runs Power EP on `region` with every power equal to `alpha`. Numerical
/// breakdowns become a failed outcome so sweeps keep going.
pub fn solve_uniform(region: &PolyhedralRegion, alpha: f64, ep: &EpConfig) -> Result<Outcome> {
    let cfg = if alpha == 1.0 {
        EpConfig { alphas: None, ..ep.clone() }
    } else {
        ep.clone().with_alphas(vec![alpha; region.len()])
    };
    match run_power_ep(&prior(), region, &cfg) {
        Ok(s) => Ok(Outcome::from_state(&s)),
        Err(Error::Invalid { field, reason }) => Err(Error::Invalid { field, reason }),
        Err(_) => Ok(Outcome::failed()),
    }
}

/// Plain EP on the square alone with every power at `1/k`. Damping equal to
/// the power keeps the fractional updates stable.
pub fn power_equivalent(k: usize) -> Result<Outcome> {
    let alpha = 1.0 / k as f64;
    let cfg = EpConfig {
        tol: 1e-13,
        max_sweeps: 100_000,
        damping: alpha,
        ..default_config()
    };
    solve_uniform(&unit_box(), alpha, &cfg)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathologyRow {
    pub value: f64,
    pub outcome: Outcome,
    /// Redundancy only: the square alone under powers `1/k`.
    pub power: Option<Outcome>,
    /// Redundancy only: the duplicated problem with every power at `k`.
    pub corrected: Option<Outcome>,
}

pub const PATHOLOGY_HEADER: [&str; 14] = [
    "kind",
    "sweep_value",
    "log_z_ep",
    "log_z_true",
    "signed_rel_error",
    "sweeps",
    "converged",
    "oscillation",
    "log_z_power",
    "power_minus_ep",
    "power_converged",
    "log_z_corrected",
    "corrected_signed_rel_error",
    "corrected_converged",
];

#[derive(Debug, Clone, PartialEq)]
pub struct PathologyOutput {
    pub rows: Vec<PathologyRow>,
    pub table: Table,
}

pub fn run_pathology(kind: PathologyKind, sweep: &[f64], ep: &EpConfig) -> Result<PathologyOutput> {
    kind.validate_sweep(sweep)?;
    let mut rows = Vec::with_capacity(sweep.len());
    for &v in sweep {
        let region = kind.region(v)?;
        let outcome = solve_uniform(&region, 1.0, ep)?;
        let (power, corrected) = if kind == PathologyKind::Redundancy {
            let k = v as usize;
            (Some(power_equivalent(k)?), Some(solve_uniform(&region, v, ep)?))
        } else {
            (None, None)
        };
        rows.push(PathologyRow {
            value: v,
            outcome,
            power,
            corrected,
        });
    }
    let mut table = Table::new(PATHOLOGY_HEADER.to_vec());
    common_meta(&mut table, kind.as_str(), kind.construction(), ep);
    if kind == PathologyKind::Redundancy {
        table.meta(
            "power_column",
            "unit square alone, every power 1/k, damping 1/k, tol 1e-13, max_sweeps 100000",
        );
        table.meta("corrected_column", "duplicated problem with every power k");
    }
    for r in &rows {
        let mut row = vec![
            kind.as_str().into(),
            r.value.into(),
            r.outcome.log_z.into(),
            true_log_z().into(),
            r.outcome.signed_error.into(),
            r.outcome.sweeps.into(),
            r.outcome.converged.into(),
            r.outcome.oscillation.into(),
        ];
        match (&r.power, &r.corrected) {
            (Some(p), Some(c)) => row.extend([
                p.log_z.into(),
                (p.log_z - r.outcome.log_z).into(),
                p.converged.into(),
                c.log_z.into(),
                c.signed_error.into(),
                c.converged.into(),
            ]),
            _ => row.extend(std::iter::repeat_n(Field::Empty, 6)),
        }
        table.push(row);
    }
    Ok(PathologyOutput { rows, table })
}

fn common_meta(t: &mut Table, kind: &str, construction: &str, ep: &EpConfig) {
    t.meta("kind", kind);
    t.meta("prng", PRNG_ID);
    t.meta("prior", "N(0, I_2)");
    t.meta("target", "[-1,1]^2, log Z = 2 ln erf(1/sqrt 2)");
    t.meta("construction", construction);
    t.meta("ep", ep_meta(ep));
}

/// Golden-section iterations stop once the bracket is this narrow.
const GOLDEN_TOL: f64 = 1e-10;
const GOLDEN_MAX_ITER: usize = 200;

/// Minimizes `f` on `[a, b]` by golden-section search, treating NaN as `+∞`.
/// Returns the best point seen and its value.
pub fn golden_section(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut eval = |x: f64| {
        let y = f(x);
        if y.is_nan() {
            f64::INFINITY
        } else {
            y
        }
    };
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = eval(c);
    let mut fd = eval(d);
    let mut best = if fc <= fd { (c, fc) } else { (d, fd) };
    for _ in 0..GOLDEN_MAX_ITER {
        if (b - a) <= GOLDEN_TOL * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c);
            if fc < best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d);
            if fd < best.1 {
                best = (d, fd);
            }
        }
    }
    best
}

/// Search interval for the optimal uniform power. Overcounting constructions
/// need powers above one; extra mass needs them below one.
pub fn alpha_bracket(kind: PathologyKind, value: f64) -> (f64, f64) {
    let k = kind.box_count(value);
    match kind {
        PathologyKind::Extramass => (1.0 / (2.0 * k), 2.0 * k),
        _ => (1.0, 2.0 * k),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaPoint {
    pub value: f64,
    pub alpha: f64,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaSweepOutput {
    pub grid: Vec<AlphaPoint>,
    /// One optimum per sweep value.
    pub optima: Vec<AlphaPoint>,
    pub table: Table,
}

pub const ALPHA_HEADER: [&str; 10] = [
    "row",
    "kind",
    "sweep_value",
    "alpha",
    "log_z_ep",
    "log_z_true",
    "signed_rel_error",
    "sweeps",
    "converged",
    "oscillation",
];

pub fn run_alpha_sweep(kind: PathologyKind, sweep: &[f64], grid: &[f64], ep: &EpConfig) -> Result<AlphaSweepOutput> {
    kind.validate_sweep(sweep)?;
    if let Some(i) = grid.iter().position(|&a| !(a > 0.0 && a.is_finite())) {
        return Err(Error::invalid(format!("grid[{i}]"), format!("powers must be positive, got {}", grid[i])));
    }
    let mut points = Vec::new();
    let mut optima = Vec::new();
    for &v in sweep {
        let region = kind.region(v)?;
        for &alpha in grid {
            points.push(AlphaPoint {
                value: v,
                alpha,
                outcome: solve_uniform(&region, alpha, ep)?,
            });
        }
        let (lo, hi) = alpha_bracket(kind, v);
        let mut failure = None;
        let (alpha, _) = golden_section(
            |a| match solve_uniform(&region, a, ep) {
                Ok(o) if o.converged => o.signed_error.abs(),
                Ok(_) => f64::INFINITY,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::INFINITY
                }
            },
            lo,
            hi,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        optima.push(AlphaPoint {
            value: v,
            alpha,
            outcome: solve_uniform(&region, alpha, ep)?,
        });
    }
    let mut table = Table::new(ALPHA_HEADER.to_vec());
    common_meta(&mut table, kind.as_str(), kind.construction(), ep);
    table.meta(
        "search",
        match kind {
            PathologyKind::Extramass => "golden section on |signed_rel_error| over alpha in [1/(2k), 2k], k = box count",
            _ => "golden section on |signed_rel_error| over alpha in [1, 2k], k = box count",
        },
    );
    for (label, list) in [("grid", &points), ("optimum", &optima)] {
        for p in list.iter() {
            table.push(vec![
                label.into(),
                kind.as_str().into(),
                p.value.into(),
                p.alpha.into(),
                p.outcome.log_z.into(),
                true_log_z().into(),
                p.outcome.signed_error.into(),
                p.outcome.sweeps.into(),
                p.outcome.converged.into(),
                p.outcome.oscillation.into(),
            ]);
        }
    }
    Ok(AlphaSweepOutput {
        grid: points,
        optima,
        table,
    })
}
