//! Gate synthesis and exact dense simulation for hybrid qubit-oscillator
//! devices.
//!
//! Target unitaries such as powers of ladder operators, nonlinear
//! Hamiltonians, state-preparation gates and conditional beam splitters are
//! compiled from primitive exponentials with recursive commutator (BCH) and
//! Trotter-Suzuki product formulas. Every compiled formula can be evaluated
//! exactly, applied to a state, counted, and compared against a
//! matrix-exponential oracle.

pub mod applications;
pub mod block_encodings;
pub mod error;
pub mod fock_ops;
pub mod product_formulas;
pub mod tensor_core;
pub mod tolerances;

pub use error::{Result, SynthError};
pub use tolerances::Tolerances;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
