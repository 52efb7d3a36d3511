//! Dense complex linear algebra, multi-index combinatorics and commuting
//! operator tuples: the substrate everything else builds on.

pub mod eigen;
pub mod matrix;
pub mod multiindex;
pub mod norms;
pub mod orbit;
pub mod tuple;

pub use eigen::{eigenvalues, hermitian_eigen, operator_norm_2, schur, spectral_radius, Schur};
pub use matrix::{basis_vector, dot, vec_add, vec_scale, vec_sub, Matrix, C64};
pub use multiindex::{
    binomial, binomial_big, enumerate_multi_indices, level_count, MultiIndex, LEVEL_CAP,
};
pub use norms::{lp_norm, operator_norm_bound, Exponent, NormContext};
pub use orbit::{MatrixOrbit, VectorOrbit};
pub use tuple::{commutator_residual, OperatorTuple, COMMUTATIVITY_TOL};
