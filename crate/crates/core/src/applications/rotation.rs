use std::sync::Arc;

use super::gate::{commutator_exponential, local_primitive, ExactTarget, Recipe, SynthesizedGate};
use crate::block_encodings::{conjugate, mult_with, s1};
use crate::error::Result;
use crate::fock_ops::{embed_all, momentum, number, pauli, position, PauliAxis, QubitGate};
use crate::product_formulas::{Primitive, PrimitiveGate, Product, Unitary};
use crate::tensor_core::{FactorAddress, HilbertLayout, ModeCutoff, Operator};

const QUBIT: FactorAddress = FactorAddress(0);
const MODE: FactorAddress = FactorAddress(1);

/// `n̂σᵏ` on qubit ⊗ mode.
pub fn conditional_rotation_generator(axis: PauliAxis, cutoff: ModeCutoff) -> Result<Operator> {
    let layout = HilbertLayout::qubit_mode(cutoff);
    embed_all(&layout, &[(QUBIT, &pauli(axis)), (MODE, &number(cutoff))])
}

/// `exp(itn̂σᵏ)` from phase-space primitives.
///
/// `n̂ = x̂² + p̂² − ½`, and each quadratic term is the commutator
/// `[(1/√2)qσⁱ, (1/√2)qσʲ] = iq²σᵏ` for a cyclic `(i, j, k)`. The three
/// exponentials are combined by `recipe`. Comparison is on photon numbers
/// below the cutoff, where `x̂² + p̂² − ½ = n̂` holds.
pub fn conditional_rotation_phase_space(axis: PauliAxis, recipe: &Recipe, cutoff: ModeCutoff) -> Result<SynthesizedGate> {
    let layout = HilbertLayout::qubit_mode(cutoff);
    let (i, j) = axis.cyclic_partners();
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let mut terms = Vec::new();
    for (quad, label) in [(position(cutoff), "cond_position_shift"), (momentum(cutoff), "cond_momentum_boost")] {
        let scaled = quad.scale_re(half);
        let a = local_primitive(label, &layout, &[(QUBIT, &pauli(i)), (MODE, &scaled)])?;
        let b = local_primitive(label, &layout, &[(QUBIT, &pauli(j)), (MODE, &scaled)])?;
        let square = &quad * &quad;
        let target = embed_all(&layout, &[(QUBIT, &pauli(axis)), (MODE, &square)])?;
        terms.push(commutator_exponential(&a, &b, &target, recipe.commutator)?);
    }
    let phase = local_primitive("qubit_rotation", &layout, &[(QUBIT, &pauli(axis))])?;
    terms.push(PrimitiveGate::scaled(phase, -0.5));
    let unitary = recipe.combine("cond_rotation", &terms)?;
    let target = ExactTarget::generator(conditional_rotation_generator(axis, cutoff)?)?;
    SynthesizedGate::new("conditional-rotation", unitary, target, 1, recipe.error_exponent())
}

/// `exp(itn̂σᶻ)` from `MULT(B_a, S₁)` and a qubit phase.
///
/// The product encoding carries `n̂` on `|0⟩` and `−aa† = −(n̂ + 1)` on `|1⟩`
/// below the cutoff; `exp(it|1⟩⟨1|)` restores `−n̂` there.
pub fn conditional_rotation_fock(bch_order: u32, cutoff: ModeCutoff) -> Result<SynthesizedGate> {
    let layout = HilbertLayout::qubit_mode(cutoff);
    let s1 = s1(cutoff)?;
    let annihilation = conjugate(&s1, &[QubitGate::X])?;
    let product = mult_with(&annihilation, &s1, bch_order, Some(bch_order as f64 + 0.5))?;
    let excited = Operator::basis_outer(HilbertLayout::qubit(), 1, 1);
    let correction = Primitive::new("qubit_phase", embed_all(&layout, &[(QUBIT, &excited)])?, vec![QUBIT])?;
    let correction: Unitary = PrimitiveGate::unit(correction);
    let unitary = Product::new("cond_rotation_fock", vec![(correction, 1.0), (Arc::clone(product.unitary()), 1.0)])?;
    let target = ExactTarget::generator(conditional_rotation_generator(PauliAxis::Z, cutoff)?)?;
    SynthesizedGate::new("conditional-rotation-fock", unitary, target, 1, bch_order as f64 + 0.5)
}

/// Initial state `|g⟩ ⊗ |n⟩`.
pub fn ground_fock_state(cutoff: ModeCutoff, n: usize) -> Result<crate::tensor_core::StateVector> {
    crate::tensor_core::basis_state(&HilbertLayout::qubit_mode(cutoff), &[0, n])
}

/// `Re⟨g,n|exp(itn̂σᶻ)|g,n⟩ = cos(nt)`.
pub fn rotation_autocorrelation(n: usize, t: f64) -> f64 {
    (n as f64 * t).cos()
}
