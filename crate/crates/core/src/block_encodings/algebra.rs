use std::sync::Arc;

use log::warn;
use serde::{Deserialize, Serialize};

use super::encoding::{
    block_diagonal_generator, conjugate, identity_encoding, interior_commutator_norm, off_diagonal_generator, s1,
    BlockEncoding, BlockKind,
};
use crate::error::{Result, SynthError};
use crate::fock_ops::{creation, QubitGate};
use crate::product_formulas::{
    bch, conjugate_by, symmetrize, trotter, CommutatorTime, FixedGate, MergedStrang, Unitary,
};
use crate::tensor_core::{is_hermitian, spectral_norm, FactorAddress, ModeCutoff, Operator};

/// Commutator and Trotter orders derived from the operand orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthesisBudget {
    pub p_l: u32,
    pub p_r: u32,
    pub q: u32,
    pub s: u32,
}

impl SynthesisBudget {
    pub fn new(p_l: u32, p_r: u32) -> Result<Self> {
        if p_l < 1 || p_r < 1 {
            return Err(SynthError::invalid(format!("operand orders must be at least 1, got {p_l} and {p_r}")));
        }
        let m = p_l.min(p_r);
        let q = m.saturating_sub(1).div_ceil(2).max(1);
        Ok(SynthesisBudget { p_l, p_r, q, s: q })
    }

    /// Error order `min(p_l, p_r)/2` of the combined encoding.
    pub fn order(&self) -> f64 {
        self.p_l.min(self.p_r) as f64 / 2.0
    }
}

/// Formula choices for one addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AddPlan {
    pub bch_order: u32,
    pub symmetrized: bool,
    /// Even Trotter order `2s`.
    pub trotter_order: u32,
    pub slices: u64,
    /// Merge adjacent half-steps of a second-order formula.
    pub merged: bool,
}

impl From<SynthesisBudget> for AddPlan {
    fn from(b: SynthesisBudget) -> Self {
        AddPlan { bch_order: b.q, symmetrized: false, trotter_order: 2 * b.s, slices: 1, merged: false }
    }
}

/// `1.07·30^q`.
pub fn add_cost_bound(q: u32) -> f64 {
    1.07 * 30f64.powi(q as i32)
}

/// `8·6^{q−1}`.
pub fn mult_cost_bound(q: u32) -> f64 {
    8.0 * 6f64.powi(q as i32 - 1)
}

/// `6^{log₂k}·420^{kp/2}`.
pub fn power_cost_bound(k: u64, p: u32) -> f64 {
    6f64.powf((k as f64).log2()) * 420f64.powf(k as f64 * p as f64 / 2.0)
}

/// `n^{1.6}·30^{np}·420^{n²p/2}·6^{log₂n+1}` for an `n`-bit exponent.
pub fn arb_power_cost_bound(bits: u32, p: u32) -> f64 {
    let n = bits as f64;
    let p = p as f64;
    n.powf(1.6) * 30f64.powf(n * p) * 420f64.powf(n * n * p / 2.0) * 6f64.powf(n.log2() + 1.0)
}

const COMMUTATION_REL: f64 = 1e-8;

fn commutation_warning(a: &Operator, b: &Operator, what: &str) -> Result<Vec<String>> {
    let measured = interior_commutator_norm(a, b, 2)?;
    let scale = spectral_norm(a) * spectral_norm(b);
    if measured > COMMUTATION_REL * scale.max(1.0) {
        let msg = format!("{what}: operands do not commute on the interior span (‖[A,B]‖ = {measured:.3e})");
        warn!("{msg}");
        Ok(vec![msg])
    } else {
        Ok(Vec::new())
    }
}

fn commutator_term(left: &Unitary, right: &Unitary, plan: &AddPlan) -> Result<Unitary> {
    let mut node = bch(plan.bch_order, 1, left, right)?;
    if plan.symmetrized {
        node = symmetrize(&node);
    }
    CommutatorTime::new(node, 2.0)
}

fn frame(b: &BlockEncoding, gates: &[QubitGate]) -> Result<Unitary> {
    Ok(Arc::clone(conjugate(b, gates)?.unitary()))
}

fn apply_frame(node: Unitary, gates: &[QubitGate]) -> Result<Unitary> {
    let f = FixedGate::qubit_frame(node.layout(), FactorAddress(0), gates)?;
    conjugate_by(&node, f)
}

/// Encoding of the product `AB` of two commuting off-diagonal encodings.
pub fn add(a: &BlockEncoding, b: &BlockEncoding, p_l: u32, p_r: u32) -> Result<BlockEncoding> {
    let budget = SynthesisBudget::new(p_l, p_r)?;
    add_with(a, b, &AddPlan::from(budget), Some(budget.order()))
}

/// [`add`] with explicit formula choices.
pub fn add_with(a: &BlockEncoding, b: &BlockEncoding, plan: &AddPlan, order: Option<f64>) -> Result<BlockEncoding> {
    for (e, name) in [(a, "left"), (b, "right")] {
        if e.kind() != BlockKind::OffDiagonal {
            return Err(SynthError::invalid(format!("{name} operand of an addition must be off-diagonal")));
        }
    }
    if a.layout() != b.layout() {
        return Err(SynthError::LayoutMismatch { left: a.layout().to_string(), right: b.layout().to_string() });
    }
    let ta = a.block_target();
    let tb = b.block_target();
    let mut warnings = commutation_warning(&ta, &tb, "addition")?;
    warnings.extend(a.warnings().iter().cloned());
    warnings.extend(b.warnings().iter().cloned());

    let xbx = frame(b, &[QubitGate::X])?;
    let sas = frame(a, &[QubitGate::S])?;
    let left = commutator_term(&xbx, a.unitary(), plan)?;
    let right = commutator_term(&sas, &xbx, plan)?;
    let left = apply_frame(left, &[QubitGate::S, QubitGate::H])?;
    let right = apply_frame(right, &[QubitGate::H])?;
    let terms = [left, right];
    let combined = if plan.merged {
        if plan.trotter_order != 2 {
            return Err(SynthError::invalid("merged half-steps need a second-order Trotter formula"));
        }
        MergedStrang::new(&terms, plan.slices)?
    } else {
        trotter(plan.trotter_order, &terms, plan.slices)?
    };
    let unitary = apply_frame(combined, &[QubitGate::X])?;
    let generator = off_diagonal_generator(&(&ta * &tb));
    Ok(BlockEncoding::new(unitary, generator, BlockKind::OffDiagonal, order)?.with_warnings(warnings))
}

/// Upper-left encoding from two off-diagonal encodings of `A` and `B`.
///
/// The result approximates `exp(it[[½(BA + (BA)†), 0], [0, −½(AB + (AB)†)]])`,
/// which acts as `exp(itBA)` on the qubit state `|0⟩` when `BA` is Hermitian.
pub fn mult(a: &BlockEncoding, b: &BlockEncoding, p_l: u32, p_r: u32) -> Result<BlockEncoding> {
    let budget = SynthesisBudget::new(p_l, p_r)?;
    mult_with(a, b, budget.q, Some(budget.order()))
}

/// [`mult`] with an explicit commutator-formula order.
pub fn mult_with(a: &BlockEncoding, b: &BlockEncoding, bch_order: u32, order: Option<f64>) -> Result<BlockEncoding> {
    if a.layout() != b.layout() {
        return Err(SynthError::LayoutMismatch { left: a.layout().to_string(), right: b.layout().to_string() });
    }
    let ta = a.block_target();
    let tb = b.block_target();
    let ba = &tb * &ta;
    let ab = &ta * &tb;
    let mut warnings = Vec::new();
    if !is_hermitian(&ba, 1e-10 * ba.max_abs().max(1.0)) {
        let msg = "multiplication: encoded product is not Hermitian".to_string();
        warn!("{msg}");
        warnings.push(msg);
    }
    warnings.extend(a.warnings().iter().cloned());
    warnings.extend(b.warnings().iter().cloned());
    let sbs = frame(b, &[QubitGate::S])?;
    let xax = frame(a, &[QubitGate::X])?;
    let plan = AddPlan { bch_order, symmetrized: false, trotter_order: 2, slices: 1, merged: false };
    let unitary = commutator_term(&sbs, &xax, &plan)?;
    let upper = (&ba + &ba.adjoint()).scale_re(0.5);
    let lower = (&ab + &ab.adjoint()).scale_re(-0.5);
    let generator = block_diagonal_generator(&upper, &lower);
    Ok(BlockEncoding::new(unitary, generator, BlockKind::UpperLeft, order)?.with_warnings(warnings))
}

fn is_power_of_two(k: u64) -> bool {
    k != 0 && k & (k - 1) == 0
}

/// Encoding of `(a†)^k` for `k = 2^ℓ` by recursive halving.
pub fn power(k: u64, p: u32, cutoff: ModeCutoff) -> Result<BlockEncoding> {
    if !is_power_of_two(k) {
        return Err(SynthError::invalid(format!("power needs k to be a power of two, got {k}")));
    }
    if p < 1 {
        return Err(SynthError::invalid("order must be at least 1"));
    }
    let base = s1(cutoff)?;
    power_from(k, p, &base)
}

fn power_from(k: u64, p: u32, base: &BlockEncoding) -> Result<BlockEncoding> {
    if k == 1 {
        return Ok(base.clone());
    }
    let half = power_from(k / 2, 2 * p, base)?;
    let mut enc = add(&half, &half, 2 * p, 2 * p)?;
    enc.set_order(Some(p as f64));
    Ok(enc)
}

/// Encoding of `(a†)^k` for any `k ≥ 1` from a balanced tree over the
/// binary digits of `k`.
pub fn arb_power(k: u64, p: u32, cutoff: ModeCutoff) -> Result<BlockEncoding> {
    if k == 0 {
        return Err(SynthError::invalid("exponent must be positive"));
    }
    if p < 1 {
        return Err(SynthError::invalid("order must be at least 1"));
    }
    let bits = 64 - k.leading_zeros();
    let base = s1(cutoff)?;
    let mut enc = arb_node(k, 0, bits - 1, p, &base)?;
    enc.set_order(Some(p as f64));
    Ok(enc)
}

fn arb_node(k: u64, lo: u32, hi: u32, rho: u32, base: &BlockEncoding) -> Result<BlockEncoding> {
    if lo == hi {
        return if (k >> lo) & 1 == 1 {
            power_from(1u64 << lo, rho, base)
        } else {
            identity_encoding(&base.layout().tail().expect("mode factor"))
        };
    }
    let mid = lo + (hi - lo) / 2;
    let left = arb_node(k, lo, mid, 2 * rho, base)?;
    let right = arb_node(k, mid + 1, hi, 2 * rho, base)?;
    add(&left, &right, 2 * rho, 2 * rho)
}

/// Exact generator `[[0, (a†)^k], [a^k, 0]]`.
pub fn power_generator(k: u32, cutoff: ModeCutoff) -> Operator {
    off_diagonal_generator(&creation(cutoff).powi(k as u64))
}
