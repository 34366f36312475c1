use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use ndarray::Array2;

use super::beam_splitter::{beam_splitter_terms, conditional_beam_splitter_generator, hopping, MODE_1, MODE_2, QUBIT};
use super::gate::{
    commutator_exponential, local_primitive, nested_commutator_exponential, ExactTarget, Operand, Recipe,
    SynthesizedGate,
};
use crate::error::Result;
use crate::fock_ops::{embed_all, fock_projector, momentum, number, pauli, position, PauliAxis};
use crate::product_formulas::{PrimitiveGate, Product, Scaled};
use crate::tensor_core::{anticommutator, expm_i, HilbertLayout, ModeCutoff, Operator};
use crate::C64;

/// Indices of `|g, n₁, n₂⟩` for `(n₁, n₂)` in the order `00, 01, 10, 11`.
pub fn span_indices(cutoff: ModeCutoff) -> Result<[usize; 4]> {
    let layout = HilbertLayout::qubit_two_modes(cutoff, cutoff);
    Ok([
        layout.index_of(&[0, 0, 0])?,
        layout.index_of(&[0, 0, 1])?,
        layout.index_of(&[0, 1, 0])?,
        layout.index_of(&[0, 1, 1])?,
    ])
}

/// The three two-cavity gates restricted to `span{|0⟩, |1⟩}⊗²` with the
/// qubit in `|g⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct FermiHubbardGates {
    pub same: Array2<C64>,
    pub hop: Array2<C64>,
    pub fswap: Array2<C64>,
}

/// `n̂₁n̂₂σᶻ`.
pub fn cross_kerr_generator(cutoff: ModeCutoff) -> Result<Operator> {
    let layout = HilbertLayout::qubit_two_modes(cutoff, cutoff);
    let n = number(cutoff);
    embed_all(&layout, &[(QUBIT, &pauli(PauliAxis::Z)), (MODE_1, &n), (MODE_2, &n)])
}

/// `(a₁†a₂ + a₁a₂†)σᶻ` projected onto at most one photon per mode.
pub fn span_hopping_generator(cutoff: ModeCutoff) -> Result<Operator> {
    let layout = HilbertLayout::qubit_two_modes(cutoff, cutoff);
    let low = &fock_projector(cutoff, 0)? + &fock_projector(cutoff, 1)?;
    let proj = embed_all(&layout, &[(MODE_1, &low), (MODE_2, &low)])?;
    let z = embed_all(&layout, &[(QUBIT, &pauli(PauliAxis::Z))])?;
    Ok(&(&(&proj * &hopping(cutoff)?) * &proj) * &z)
}

/// Generators whose written-order product at `t = 1` is FSWAP on the span:
/// `πn̂₁n̂₂σᶻ`, `−(π/2)(a₁†a₂ + a₁a₂†)σᶻ`, `(π/2)(n̂₁ + n̂₂)σᶻ`.
pub fn fswap_factors(cutoff: ModeCutoff) -> Result<Vec<Operator>> {
    let layout = HilbertLayout::qubit_two_modes(cutoff, cutoff);
    let z = pauli(PauliAxis::Z);
    let n = number(cutoff);
    let occupation = &embed_all(&layout, &[(QUBIT, &z), (MODE_1, &n)])? + &embed_all(&layout, &[(QUBIT, &z), (MODE_2, &n)])?;
    Ok(vec![
        cross_kerr_generator(cutoff)?.scale_re(PI),
        conditional_beam_splitter_generator(cutoff)?.scale_re(FRAC_PI_2),
        occupation.scale_re(FRAC_PI_2),
    ])
}

/// `U_same = exp(−iUτ n̂₁n̂₂)`, `U_hop = exp(iJτ(a₁†a₂ + a₁a₂†))` and FSWAP,
/// each restricted to the span.
pub fn fermi_hubbard_gates(u: f64, j: f64, tau: f64, cutoff: ModeCutoff) -> Result<FermiHubbardGates> {
    let idx = span_indices(cutoff)?;
    let same = expm_i(&cross_kerr_generator(cutoff)?, -u * tau)?;
    let hop = expm_i(&span_hopping_generator(cutoff)?, j * tau)?;
    let fswap = ExactTarget::product(fswap_factors(cutoff)?)?.eval(1.0)?;
    Ok(FermiHubbardGates { same: same.submatrix(&idx), hop: hop.submatrix(&idx), fswap: fswap.submatrix(&idx) })
}

/// `exp(iλ²n̂₁n̂₂σᶻ)` from `[(1/√2)n̂₁σˣ, (1/√2)n̂₂σʸ] = in̂₁n̂₂σᶻ`.
pub fn cross_kerr(recipe: &Recipe, cutoff: ModeCutoff) -> Result<SynthesizedGate> {
    let layout = HilbertLayout::qubit_two_modes(cutoff, cutoff);
    let n = number(cutoff).scale_re(FRAC_1_SQRT_2);
    let a = local_primitive("cond_rotation_x", &layout, &[(QUBIT, &pauli(PauliAxis::X)), (MODE_1, &n)])?;
    let b = local_primitive("cond_rotation_y", &layout, &[(QUBIT, &pauli(PauliAxis::Y)), (MODE_2, &n)])?;
    let generator = cross_kerr_generator(cutoff)?;
    let unitary = commutator_exponential(&a, &b, &generator, recipe.commutator)?;
    SynthesizedGate::new("cross-kerr", unitary, ExactTarget::generator(generator)?, 0, recipe.commutator.error_exponent())
}

/// FSWAP family `t ↦ exp(itπn̂₁n̂₂σᶻ)·exp(−it(π/2)(a₁†a₂ + a₁a₂†)σᶻ)·exp(it(π/2)(n̂₁ + n̂₂)σᶻ)`,
/// equal to FSWAP on the span at `t = 1` with the qubit in `|g⟩`.
pub fn fswap(recipe: &Recipe, cutoff: ModeCutoff) -> Result<SynthesizedGate> {
    let layout = HilbertLayout::qubit_two_modes(cutoff, cutoff);
    let z = pauli(PauliAxis::Z);
    let n = number(cutoff);
    let kerr = cross_kerr(recipe, cutoff)?;
    let splitter = recipe.combine("cond_beam_splitter", &beam_splitter_terms(recipe, cutoff)?)?;
    let rot_1 = local_primitive("cond_rotation_z", &layout, &[(QUBIT, &z), (MODE_1, &n)])?;
    let rot_2 = local_primitive("cond_rotation_z", &layout, &[(QUBIT, &z), (MODE_2, &n)])?;
    let unitary = Product::new(
        "fswap",
        vec![
            (Scaled::new(kerr.unitary().clone(), PI), 1.0),
            (Scaled::new(splitter, FRAC_PI_2), 1.0),
            (PrimitiveGate::scaled(rot_1, FRAC_PI_2), 1.0),
            (PrimitiveGate::scaled(rot_2, FRAC_PI_2), 1.0),
        ],
    )?;
    let exact = ExactTarget::product(fswap_factors(cutoff)?)?;
    SynthesizedGate::new("fswap", unitary, exact, 0, recipe.error_exponent())
}

/// `½{q, n̂}` on one mode.
fn symmetric_product(q: &Operator, cutoff: ModeCutoff) -> Result<Operator> {
    Ok(anticommutator(q, &number(cutoff))?.scale_re(0.5))
}

/// `−(a₁†a₂ + a₁a₂†)σᶻ + 2(X̂₁X̂₂ + P̂₁P̂₂)σᶻ` with `X̂ = ½{x̂, n̂}`,
/// `P̂ = ½{p̂, n̂}`: the beam splitter corrected by the Hermitian parts of
/// `x̂ₘn̂ₘ` and `p̂ₘn̂ₘ` in `2(x̂₁x̂₂ + p̂₁p̂₂)n̂₁n̂₂`.
pub fn span_conditional_beam_splitter_generator(cutoff: ModeCutoff) -> Result<Operator> {
    let layout = HilbertLayout::qubit_two_modes(cutoff, cutoff);
    let z = pauli(PauliAxis::Z);
    let mut g = conditional_beam_splitter_generator(cutoff)?;
    for quad in [position(cutoff), momentum(cutoff)] {
        let s = symmetric_product(&quad, cutoff)?;
        g = &g + &embed_all(&layout, &[(QUBIT, &z), (MODE_1, &s), (MODE_2, &s)])?.scale_re(2.0);
    }
    Ok(g)
}

/// Beam splitter with the number-weighted correction, all terms compiled
/// from quadrature shifts and conditional rotations.
///
/// The correction `2Q̂₁Q̂₂σᶻ` is the commutator of `Q̂₁σˣ` and `Q̂₂σʸ`, each
/// itself compiled as a commutator: `[iq̂₁σʸ, in̂₁σᶻ] = −2iQ̂₁σˣ` and
/// `[iq̂₂σᶻ, in̂₂σˣ] = −2iQ̂₂σʸ`.
pub fn span_conditional_beam_splitter(recipe: &Recipe, cutoff: ModeCutoff) -> Result<SynthesizedGate> {
    let layout = HilbertLayout::qubit_two_modes(cutoff, cutoff);
    let (x, y, z) = (pauli(PauliAxis::X), pauli(PauliAxis::Y), pauli(PauliAxis::Z));
    let n = number(cutoff);
    let mut terms = beam_splitter_terms(recipe, cutoff)?;
    for (quad, label) in [(position(cutoff), "cond_position_shift"), (momentum(cutoff), "cond_momentum_boost")] {
        let s = symmetric_product(&quad, cutoff)?;
        let inner_1 = embed_all(&layout, &[(QUBIT, &x), (MODE_1, &s)])?;
        let q1 = local_primitive(label, &layout, &[(QUBIT, &y), (MODE_1, &quad)])?;
        let n1 = local_primitive("cond_rotation_z", &layout, &[(QUBIT, &z), (MODE_1, &n)])?;
        let left = Operand { node: commutator_exponential(&q1, &n1, &inner_1, recipe.commutator)?, generator: inner_1 };
        let inner_2 = embed_all(&layout, &[(QUBIT, &y), (MODE_2, &s)])?;
        let q2 = local_primitive(label, &layout, &[(QUBIT, &z), (MODE_2, &quad)])?;
        let n2 = local_primitive("cond_rotation_x", &layout, &[(QUBIT, &x), (MODE_2, &n)])?;
        let right = Operand { node: commutator_exponential(&q2, &n2, &inner_2, recipe.commutator)?, generator: inner_2 };
        let target = embed_all(&layout, &[(QUBIT, &z), (MODE_1, &s), (MODE_2, &s)])?.scale_re(2.0);
        terms.push(nested_commutator_exponential(&left, &right, &target, recipe.commutator)?);
    }
    let unitary = recipe.combine("span_cond_beam_splitter", &terms)?;
    let exact = ExactTarget::generator(span_conditional_beam_splitter_generator(cutoff)?)?;
    SynthesizedGate::new("span-conditional-beam-splitter", unitary, exact, 0, 1.0)
}
