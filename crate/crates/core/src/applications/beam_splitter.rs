use super::dynamics::{evolve_with, DynamicsTrace, Observables};
use super::gate::{commutator_exponential, local_primitive, ExactTarget, Recipe, SynthesizedGate};
use crate::error::Result;
use crate::fock_ops::{annihilation, creation, embed_all, momentum, pauli, position, PauliAxis};
use crate::product_formulas::{Unitary};
use crate::tensor_core::{basis_state, FactorAddress, HilbertLayout, ModeCutoff, Operator, StateVector};

pub(crate) const QUBIT: FactorAddress = FactorAddress(0);
pub(crate) const MODE_1: FactorAddress = FactorAddress(1);
pub(crate) const MODE_2: FactorAddress = FactorAddress(2);

/// `a₁†a₂ + a₁a₂†` on qubit ⊗ mode ⊗ mode.
pub fn hopping(cutoff: ModeCutoff) -> Result<Operator> {
    let layout = HilbertLayout::qubit_two_modes(cutoff, cutoff);
    let forward = embed_all(&layout, &[(MODE_1, &creation(cutoff)), (MODE_2, &annihilation(cutoff))])?;
    let backward = embed_all(&layout, &[(MODE_1, &annihilation(cutoff)), (MODE_2, &creation(cutoff))])?;
    Ok(&forward + &backward)
}

/// `−(a₁†a₂ + a₁a₂†)σᶻ`, so that the gate is `exp(−it(a₁†a₂ + a₁a₂†)σᶻ)`.
pub fn conditional_beam_splitter_generator(cutoff: ModeCutoff) -> Result<Operator> {
    let layout = HilbertLayout::qubit_two_modes(cutoff, cutoff);
    let z = embed_all(&layout, &[(QUBIT, &pauli(PauliAxis::Z))])?;
    Ok((&hopping(cutoff)? * &z).scale_re(-1.0))
}

/// Conditional beam splitter from conditional quadrature shifts.
///
/// `a₁†a₂ + a₁a₂† = 2(x̂₁x̂₂ + p̂₁p̂₂)` and `[iq₁σˣ, iq₂σʸ] = −2iq₁q₂σᶻ`
/// for `q ∈ {x̂, p̂}`, so each half is one commutator exponential.
pub fn conditional_beam_splitter(recipe: &Recipe, cutoff: ModeCutoff) -> Result<SynthesizedGate> {
    let terms = beam_splitter_terms(recipe, cutoff)?;
    let unitary = recipe.combine("cond_beam_splitter", &terms)?;
    let target = ExactTarget::generator(conditional_beam_splitter_generator(cutoff)?)?;
    SynthesizedGate::new("hom-beam-splitter", unitary, target, 0, recipe.error_exponent())
}

/// The `x̂₁x̂₂` and `p̂₁p̂₂` commutator exponentials.
pub(crate) fn beam_splitter_terms(recipe: &Recipe, cutoff: ModeCutoff) -> Result<Vec<Unitary>> {
    let layout = HilbertLayout::qubit_two_modes(cutoff, cutoff);
    let x = pauli(PauliAxis::X);
    let y = pauli(PauliAxis::Y);
    let z = pauli(PauliAxis::Z);
    let mut terms = Vec::new();
    for (quad, label) in [(position(cutoff), "cond_position_shift"), (momentum(cutoff), "cond_momentum_boost")] {
        let a = local_primitive(label, &layout, &[(QUBIT, &x), (MODE_1, &quad)])?;
        let b = local_primitive(label, &layout, &[(QUBIT, &y), (MODE_2, &quad)])?;
        let target = embed_all(&layout, &[(QUBIT, &z), (MODE_1, &quad), (MODE_2, &quad)])?.scale_re(-2.0);
        terms.push(commutator_exponential(&a, &b, &target, recipe.commutator)?);
    }
    Ok(terms)
}

/// `|g⟩ ⊗ |1⟩ ⊗ |1⟩`.
pub fn hom_initial_state(cutoff: ModeCutoff) -> Result<StateVector> {
    basis_state(&HilbertLayout::qubit_two_modes(cutoff, cutoff), &[0, 1, 1])
}

/// Populations of cavity 1 up to `|2⟩`; leakage counts any mode above `|2⟩`.
pub fn hom_observables() -> Observables {
    Observables { mode: MODE_1, levels: 3, physical_max: 2 }
}

/// `steps` equal steps of the exact gate up to `t_final`.
pub fn hom_exact_dynamics(gate: &SynthesizedGate, t_final: f64, steps: usize) -> Result<DynamicsTrace> {
    let dt = t_final / steps as f64;
    let cutoff = gate.layout().factors()[1].cutoff().expect("mode factor");
    evolve_with(&gate.exact(dt)?, &hom_initial_state(cutoff)?, dt, steps, &hom_observables())
}

/// `steps` equal steps of the synthesized gate.
pub fn hom_synthesized_dynamics(gate: &SynthesizedGate, t_final: f64, steps: usize) -> Result<DynamicsTrace> {
    let dt = t_final / steps as f64;
    let cutoff = gate.layout().factors()[1].cutoff().expect("mode factor");
    evolve_with(&gate.eval(dt), &hom_initial_state(cutoff)?, dt, steps, &hom_observables())
}

/// Probability of `|g,1,1⟩` after the exact gate at time `t`.
pub fn coincidence_probability(cutoff: ModeCutoff, t: f64) -> Result<f64> {
    let psi = hom_initial_state(cutoff)?;
    let u = crate::tensor_core::expm_i(&conditional_beam_splitter_generator(cutoff)?, t)?;
    Ok(crate::tensor_core::inner(&psi, &u.apply(&psi)).norm_sqr())
}
