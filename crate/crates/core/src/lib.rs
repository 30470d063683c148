//! Probability mass of a multivariate Gaussian over hyperrectangles and
//! general polyhedra, approximated by expectation propagation with rank-one
//! box factors, with a Power-EP variant, independent oracles, and the
//! experiment runners used to study where the approximation breaks down.

pub mod ep;
pub mod error;
pub mod experiments;
pub mod gaussian;
pub mod linalg;
pub mod moments;
pub mod oracle;
pub mod problem;
pub mod quadrature;
pub mod rng;
pub mod special;

pub use ep::{run_epmgp, run_power_ep, EpConfig, EpState, SiteFactor};
pub use error::{Error, Result};
pub use gaussian::{region_metrics, whiten, BoxConstraint, GaussianDist, PolyhedralRegion, RegionMetrics};
pub use moments::{truncated_moments, TruncatedMoments};
pub use problem::{Problem, ProblemSpec};
