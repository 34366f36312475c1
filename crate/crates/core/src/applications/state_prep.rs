use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::gate::{combine, Combine};
use crate::block_encodings::{
    add_with, arb_power, arb_power_cost_bound, off_diagonal_generator, s1, AddPlan, BlockEncoding, BlockKind,
};
use crate::error::{Result, SynthError};
use crate::fock_ops::{creation, embed, vacuum_projector_flip};
use crate::product_formulas::{conjugate_by, FixedGate, ParamUnitaryExt, Scaled, TimesliceRequest, Unitary};
use crate::tensor_core::{basis_state, inner, FactorAddress, HilbertLayout, ModeCutoff, Operator, StateVector};

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

fn check_k(k: u32, cutoff: ModeCutoff) -> Result<()> {
    if k == 0 || k > cutoff.get() {
        return Err(SynthError::invalid(format!("need 1 ≤ k ≤ Λ, got k = {k} with Λ = {cutoff}")));
    }
    Ok(())
}

/// `(2n + 1)π/(2√k!)`, or `(2n + 1)π/(4√k!)` for the protected gate, whose
/// generator carries a factor two.
pub fn state_prep_exact_time(k: u32, n: u32, cutoff: ModeCutoff, protected: bool) -> Result<f64> {
    check_k(k, cutoff)?;
    let denom = if protected { 4.0 } else { 2.0 };
    Ok((2 * n + 1) as f64 * PI / (denom * factorial(k).sqrt()))
}

/// `T_k` synthesized with the balanced binary-digit construction.
pub fn state_prep_t(k: u32, p: u32, cutoff: ModeCutoff) -> Result<BlockEncoding> {
    check_k(k, cutoff)?;
    arb_power(k as u64, p, cutoff)
}

/// `T₂ = ADD(S₁, S₁)` with explicit formula choices.
pub fn state_prep_t2(plan: &AddPlan, cutoff: ModeCutoff) -> Result<BlockEncoding> {
    check_k(2, cutoff)?;
    let b = s1(cutoff)?;
    add_with(&b, &b, plan, Some(plan.bch_order as f64 / 2.0))
}

/// Benchmark formula for `T₂`: symmetrized second-order commutators
/// under a merged second-order formula with two slices, 480 exponentials.
pub fn benchmark_t2_plan() -> AddPlan {
    AddPlan { bch_order: 2, symmetrized: true, trotter_order: 2, slices: 2, merged: true }
}

/// `G − RGR = [[0, 2(a†)^k|0⟩⟨0|], [2|0⟩⟨0|a^k, 0]]` with `G` the
/// generator of `T_k` and `R = I ⊗ (I − 2|0⟩⟨0|)`.
pub fn protected_generator(k: u32, cutoff: ModeCutoff) -> Operator {
    let vac = Operator::basis_outer(HilbertLayout::mode(cutoff), 0, 0);
    off_diagonal_generator(&(&creation(cutoff).powi(k as u64) * &vac).scale_re(2.0))
}

/// Outer formula of the protected gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtectedPlan {
    pub combine: Combine,
    pub slices: u64,
}

impl ProtectedPlan {
    /// Two `T̃` calls, 960 exponentials with the benchmark `T₂`.
    pub fn product() -> Self {
        ProtectedPlan { combine: Combine::Product, slices: 1 }
    }
}

/// `P_k(t) = exp(it(G − RGR)) ≈ T̃_k(t)·R·T̃_k(−t)·R` with
/// `R = I ⊗ (I − 2|0⟩⟨0|)`.
///
/// `RGR` flips the sign of the vacuum column of the generator, so only
/// `|1, 0⟩` and `|0, k⟩` are coupled.
pub fn state_prep_protected(t_gate: &BlockEncoding, k: u32, plan: &ProtectedPlan) -> Result<BlockEncoding> {
    let layout = t_gate.layout().clone();
    let cutoff = layout.factors()[1]
        .cutoff()
        .ok_or_else(|| SynthError::invalid("state preparation acts on qubit ⊗ mode"))?;
    check_k(k, cutoff)?;
    let flip = FixedGate::new("RZ0", embed(&vacuum_projector_flip(cutoff), &layout, FactorAddress(1))?);
    let forward = Arc::clone(t_gate.unitary());
    let backward = conjugate_by(&Scaled::new(Arc::clone(t_gate.unitary()), -1.0), flip)?;
    let unitary = combine(plan.combine, plan.slices, "protected", &[forward, backward])?;
    let order = match plan.combine {
        Combine::Product => 2.0,
        _ => 3.0,
    };
    Ok(BlockEncoding::new(unitary, protected_generator(k, cutoff), BlockKind::OffDiagonal, Some(order))?
        .with_warnings(t_gate.warnings().to_vec()))
}

/// `|1⟩ ⊗ |b⟩`.
pub fn excited_fock_state(cutoff: ModeCutoff, b: usize) -> Result<StateVector> {
    basis_state(&HilbertLayout::qubit_mode(cutoff), &[1, b])
}

/// `|⟨j, m|U|1, b⟩|` for a dense gate.
pub fn transition_modulus(u: &Operator, from: (usize, usize), to: (usize, usize)) -> Result<f64> {
    let layout = u.layout();
    let i = layout.index_of(&[to.0, to.1])?;
    let j = layout.index_of(&[from.0, from.1])?;
    Ok(u.get(i, j).norm())
}

/// Entrywise moduli, row-major.
pub fn heatmap(u: &Operator) -> Vec<Vec<f64>> {
    u.data().rows().into_iter().map(|r| r.iter().map(|z| z.norm()).collect()).collect()
}

/// Whether every entry with exact modulus above `support` is reproduced
/// within `tolerance` in modulus.
pub fn heatmap_matches(exact: &Operator, synthesized: &Operator, support: f64, tolerance: f64) -> bool {
    exact
        .data()
        .iter()
        .zip(synthesized.data().iter())
        .filter(|(e, _)| e.norm() > support)
        .all(|(e, s)| (e.norm() - s.norm()).abs() <= tolerance)
}

/// Slice count and resources for preparing `|0⟩ ⊗ |k⟩` with probability
/// at least `1 − δ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuccessReport {
    pub delta: f64,
    /// Operator-norm target `δ/2`.
    pub epsilon: f64,
    pub slices: u64,
    pub theoretical_slices: f64,
    pub error: f64,
    /// `|⟨0,k|P̃|1,0⟩|²`.
    pub success_probability: f64,
    pub s1_count: u64,
    /// `r·2·5^{p/2}·n^{1.6}·30^{np}·420^{n²p/2}·6^{log₂n+1}` with `n` the bit length of `k`.
    pub cost_bound: f64,
}

/// Slices the protected gate until `‖P̃ − P‖ ≤ δ/2`.
pub fn success_probability_bound(
    delta: f64,
    k: u32,
    p: u32,
    cutoff: ModeCutoff,
    t: f64,
    slice_cap: u64,
) -> Result<SuccessReport> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(SynthError::invalid(format!("δ must lie in (0, 1], got {delta}")));
    }
    let t_gate = state_prep_t(k, p, cutoff)?;
    let step = state_prep_protected(&t_gate, k, &ProtectedPlan::product())?;
    let exact = step.exact(t)?;
    let epsilon = delta / 2.0;
    let (slices, theoretical, unitary): (u64, f64, Unitary) = if delta >= 1.0 {
        (1, 1.0, Arc::clone(step.unitary()))
    } else {
        let req = TimesliceRequest {
            t,
            epsilon,
            order: step.order().unwrap_or(2.0),
            scale: crate::tensor_core::spectral_norm(step.generator()),
            slice_cap,
        };
        let sliced = crate::product_formulas::timeslice(step.unitary(), &exact, &req)?;
        (sliced.slices, sliced.theoretical_slices, sliced.unitary)
    };
    let approx = unitary.eval(t);
    let error = crate::tensor_core::spectral_norm(&(&approx - &exact));
    let from = excited_fock_state(cutoff, 0)?;
    let to = basis_state(&HilbertLayout::qubit_mode(cutoff), &[0, k as usize])?;
    let success_probability = inner(&to, &approx.apply(&from)).norm_sqr();
    let bits = 64 - (k as u64).leading_zeros();
    let cost_bound = slices as f64 * 2.0 * 5f64.powf(p as f64 / 2.0) * arb_power_cost_bound(bits, p);
    Ok(SuccessReport {
        delta,
        epsilon,
        slices,
        theoretical_slices: theoretical,
        error,
        success_probability,
        s1_count: unitary.cost(),
        cost_bound,
    })
}
