//! Joint spectra of commuting tuples and the l_p-spectral radius limit
//! formulas, with extrapolation for the slowly converging sequences.

pub mod extrapolate;
pub mod joint;
pub mod radius;

pub use extrapolate::{extrapolate_radius, Extrapolation};
pub use joint::{joint_eigenvalues, unit_sphere_check, JointSpectrum, JOINT_TRI_TOL};
pub use radius::{lp_radius_sequence, RadiusMode, RadiusSequence};
