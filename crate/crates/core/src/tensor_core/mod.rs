//! Dense complex linear algebra over layout-tagged operators.

mod layout;
mod linalg;
mod operator;

pub use layout::{Factor, FactorAddress, FactorKind, HilbertLayout, ModeCutoff};
pub use linalg::{expm, expm_capped, expm_i, spectral_norm, spectral_norm_with, HermitianEigen};
pub use operator::{
    anticommutator, basis_state, commutator, inner, is_hermitian, is_unitary, kron, norm_sqr, Operator,
    StateVector,
};
