//! Cusps, the classification of the action, isometry types, limit-set
//! samples, the truncated space and Cannon–Thurston checks.

pub mod classify;
pub mod ct;
pub mod cusps;
pub mod isometry;
pub mod sample;
pub mod truncated;

pub use classify::{classify_action, ActionCase, ClassificationResult};
pub use ct::{ct_verify, CtOptions, CtReport};
pub use cusps::{compute_cusps, CuspPoint};
pub use isometry::{isometry_type, IsometryKind, IsometryType};
pub use sample::{limit_set_sample, read_csv, write_csv, LimitSample, SampleMode, SampleOptions};
pub use truncated::{
    quasi_isometry_report, truncated_distance, QuasiIsometryReport, TruncatedSpace,
};
