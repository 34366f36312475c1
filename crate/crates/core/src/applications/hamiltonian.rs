use std::sync::Arc;

use super::gate::{combine, Combine, ExactTarget, SynthesizedGate};
use crate::block_encodings::{conjugate, mult_with, power, s1, BlockEncoding};
use crate::error::{Result, SynthError};
use crate::fock_ops::QubitGate;
use crate::product_formulas::{
    timeslice, Scaled, TimesliceRequest, Timesliced, Unitary,
};
use crate::tensor_core::{spectral_norm, ModeCutoff, Operator};

/// Parameters of `H = ωa†a + (κ/2)(a†)²a²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearParams {
    pub omega: f64,
    pub kappa: f64,
    /// Commutator-formula order of the two products.
    pub q: u32,
}

/// `MULT(B_a, S₁)`: upper-left `a†a`.
pub fn number_encoding(q: u32, cutoff: ModeCutoff) -> Result<BlockEncoding> {
    let s1 = s1(cutoff)?;
    let annihilation = conjugate(&s1, &[QubitGate::X])?;
    mult_with(&annihilation, &s1, q, Some(q as f64 + 0.5))
}

/// `MULT(B_{a²}, POWER(2))`: upper-left `(a†)²a²`, with the square encoded
/// at order `2q` so that its error stays below that of the product.
pub fn kerr_encoding(q: u32, cutoff: ModeCutoff) -> Result<BlockEncoding> {
    let square = power(2, 2 * q, cutoff)?;
    let square_adj = conjugate(&square, &[QubitGate::X])?;
    mult_with(&square_adj, &square, q, Some(q as f64 + 0.5))
}

/// Upper-left block encoding of `exp(iHt)` for the Kerr-type Hamiltonian.
///
/// The two products are combined by a second-order formula; their
/// generators are diagonal and commute, so only the commutator formulas
/// contribute error. The qubit must start in `|0⟩`.
pub fn nonlinear_hamiltonian(params: &NonlinearParams, cutoff: ModeCutoff) -> Result<SynthesizedGate> {
    let NonlinearParams { omega, kappa, q } = *params;
    if !(omega >= 0.0 && kappa >= 0.0) || !omega.is_finite() || !kappa.is_finite() {
        return Err(SynthError::invalid("ω and κ must be finite and non-negative"));
    }
    if q < 1 {
        return Err(SynthError::invalid("q must be at least 1"));
    }
    let mut terms: Vec<Unitary> = Vec::new();
    let mut generators: Vec<Operator> = Vec::new();
    if omega > 0.0 || kappa == 0.0 {
        let n = number_encoding(q, cutoff)?;
        terms.push(Scaled::new(Arc::clone(n.unitary()), omega));
        generators.push(n.generator().scale_re(omega));
    }
    if kappa > 0.0 {
        let k = kerr_encoding(q, cutoff)?;
        terms.push(Scaled::new(Arc::clone(k.unitary()), kappa / 2.0));
        generators.push(k.generator().scale_re(kappa / 2.0));
    }
    let generator = generators.iter().skip(1).fold(generators[0].clone(), |acc, g| &acc + g);
    let unitary = if terms.len() == 1 {
        Arc::clone(&terms[0])
    } else {
        combine(Combine::Trotter { order: 2 }, 1, "nonlinear", &terms)?
    };
    SynthesizedGate::new("nonlinear-hamiltonian", unitary, ExactTarget::generator(generator)?, 0, q as f64 + 0.5)
}

/// Smallest slice count reaching `epsilon` at time `t`.
pub fn nonlinear_timeslice(gate: &SynthesizedGate, t: f64, epsilon: f64, slice_cap: u64) -> Result<Timesliced> {
    let target = gate.exact(t)?;
    let scale = gate.target().factors().iter().map(spectral_norm).sum::<f64>();
    let req = TimesliceRequest { t, epsilon, order: gate.predicted_exponent(), scale, slice_cap };
    timeslice(gate.unitary(), &target, &req)
}

