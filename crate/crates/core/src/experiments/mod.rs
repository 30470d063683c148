//! Problem generators, study runners and the pathology constructions.

pub mod csv;
pub mod generators;
pub mod pathology;
pub mod study;

pub use pathology::{run_alpha_sweep, run_pathology, PathologyKind};
pub use study::{run_study, CaseResult, CellSummary, StudyConfig, StudyKind, StudyOutput};
