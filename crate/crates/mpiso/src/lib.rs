//! Numerical (m,p)-isometry toolkit for commuting tuples of matrices.
//!
//! A commuting tuple T = (T_1,...,T_d) on C^n is an (m,p)-isometry when the
//! alternating binomial sum over the weighted power means
//! Q^k(x) = sum_{|alpha|=k} (k!/alpha!) ||T^alpha x||^p vanishes at order m
//! for every x. This crate classifies tuples against that definition,
//! explores the discrete calculus behind it (difference operators, Newton
//! expansions, the induced semi-norm and equivalent norm), builds the
//! standard example families, and estimates joint spectral data.
//!
//! The heavy kernels run data-parallel through [`exec::map_collect`] when
//! the `parallel` feature is on (the default) and sequentially otherwise;
//! results are bit-identical either way because every reduction collects
//! in index order. All randomness is seeded explicitly.

pub mod calculus;
pub mod error;
pub mod exec;
pub mod gallery;
pub mod linalg;
pub mod sampling;
pub mod spectral;
pub mod suites;

pub use calculus::{
    intersection_diagnostics, is_minfty_isometry, is_mp_isometry, leading_seminorm,
    minimal_m, newton_coefficients, spherical_isometry_residual, IntersectionReport,
    IsometryReport, MinimalOrder, Verdict, VerifyOptions, DEFAULT_M_MAX, DEFAULT_SAMPLES,
    DEFAULT_TOL,
};
pub use error::{Error, Result};
pub use gallery::{gallery_names, load_example, ExampleSpec};
pub use linalg::matrix::{Matrix, C64};
pub use linalg::norms::{Exponent, NormContext};
pub use linalg::tuple::OperatorTuple;
pub use sampling::DEFAULT_SEED;
pub use spectral::{
    extrapolate_radius, joint_eigenvalues, lp_radius_sequence, unit_sphere_check,
    Extrapolation, JointSpectrum, RadiusMode, RadiusSequence,
};
pub use suites::{all_suites, run_suite, suite_names, SuiteOutcome};
