//! The (m,p)-isometry calculus: probe sequences, finite differences,
//! verdicts, Newton growth certificates, induced norms, spherical
//! isometries, and the structure of mixed (m,p)/(mu,inf) tuples.

pub mod difference;
pub mod intersection;
pub mod kronecker;
pub mod newton;
pub mod qtable;
pub mod seminorm;
pub mod spherical;
pub mod verify;

pub use difference::{difference, difference_at};
pub use intersection::{
    intersection_diagnostics, IntersectionReport, OperatorEvidence, PairwiseNilpotency,
    SquaredTupleBranch, UniqueIsometryBranch,
};
pub use kronecker::kronecker_identity_check;
pub use newton::{falling_factorial, newton_coefficients};
pub use qtable::{p_value, q_value, QTable};
pub use seminorm::{
    infty_norm_constant, leading_seminorm, seminorm_upper_constant, sup_norm_depth,
    sup_norm_infty,
};
pub use spherical::{isometric_direction, spherical_isometry_residual};
pub use verify::{
    gram_check, is_minfty_isometry, is_mp_isometry, minimal_m, GramCheck, IsometryReport,
    MinimalOrder, Verdict, VerifyOptions, Witness, DEFAULT_M_MAX, DEFAULT_SAMPLES, DEFAULT_TOL,
};
