use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::block_encodings::interior_projector_on;
use crate::error::{Result, SynthError};
use crate::fock_ops::embed_all;
use crate::product_formulas::{
    bch, group_commutator, symmetrize, trotter, CommutatorTime, GateCount, GateSequence, MergedStrang,
    ParamUnitaryExt, Primitive, PrimitiveGate, Product, Repeat, Unitary, trotter_invocations,
};
use crate::tensor_core::{
    commutator, expm_i, inner, is_hermitian, spectral_norm, FactorAddress, HilbertLayout, Operator, StateVector,
};
use crate::C64;

/// How an exponential of a commutator is compiled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CommutatorFormula {
    /// Four-exponential group commutator.
    Group,
    /// Recursive commutator formula of the given order, optionally symmetrized.
    Bch { order: u32, symmetrized: bool },
}

impl CommutatorFormula {
    /// Single-step error exponent in the linear gate time.
    pub fn error_exponent(&self) -> f64 {
        match *self {
            CommutatorFormula::Group => 1.5,
            CommutatorFormula::Bch { order, symmetrized: false } => order as f64 + 0.5,
            CommutatorFormula::Bch { order, symmetrized: true } => order as f64 + 1.0,
        }
    }

    /// Short name such as `2` or `2′`.
    pub fn tag(&self) -> String {
        match *self {
            CommutatorFormula::Group => "G".into(),
            CommutatorFormula::Bch { order, symmetrized } => format!("{order}{}", if symmetrized { "′" } else { "" }),
        }
    }

    /// Primitive exponentials per invocation: 4, or `8·6^{p−1}` doubled
    /// when symmetrized.
    pub fn cost(&self) -> u64 {
        match *self {
            CommutatorFormula::Group => 4,
            CommutatorFormula::Bch { order, symmetrized } => {
                8 * 6u64.pow(order.saturating_sub(1)) * if symmetrized { 2 } else { 1 }
            }
        }
    }
}

/// How the terms of a sum are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Combine {
    /// Plain product of the term exponentials.
    Product,
    /// Trotter-Suzuki formula of the given even order.
    Trotter { order: u32 },
    /// Second-order formula with adjacent half-steps merged.
    MergedStrang,
}

impl Combine {
    pub fn error_exponent(&self) -> f64 {
        match *self {
            Combine::Product => 2.0,
            Combine::Trotter { order } => order as f64 + 1.0,
            Combine::MergedStrang => 3.0,
        }
    }

    /// Upper bound on term invocations for `terms` terms over `slices` steps.
    pub fn invocations(&self, terms: usize, slices: u64) -> u64 {
        let m = terms as u64;
        match *self {
            Combine::Product => m * slices,
            Combine::Trotter { order } => trotter_invocations(order, terms, slices),
            Combine::MergedStrang => 2 * slices * m.saturating_sub(1) + 1,
        }
    }
}

/// Formula choices for one synthesized gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recipe {
    pub commutator: CommutatorFormula,
    pub combine: Combine,
    pub slices: u64,
}

impl Recipe {
    /// Group commutators combined by a plain product: the shallowest circuit.
    pub fn minimal() -> Self {
        Recipe { commutator: CommutatorFormula::Group, combine: Combine::Product, slices: 1 }
    }

    /// Order-`p` commutator formulas under the lowest even Trotter order
    /// whose error exponent `2k + 1` is at least `p + ½`.
    pub fn order(p: u32) -> Result<Self> {
        if p < 1 {
            return Err(SynthError::invalid("formula order must be at least 1"));
        }
        let k = (2 * p - 1).div_ceil(4).max(1);
        Ok(Recipe {
            commutator: CommutatorFormula::Bch { order: p, symmetrized: false },
            combine: Combine::Trotter { order: 2 * k },
            slices: 1,
        })
    }

    /// Predicted single-step error exponent when the terms do not commute.
    pub fn error_exponent(&self) -> f64 {
        self.commutator.error_exponent().min(self.combine.error_exponent())
    }

    /// Primitive-exponential bound for `commutators` commutator terms and
    /// `primitives` single-exponential terms.
    pub fn cost_bound(&self, commutators: usize, primitives: usize) -> u64 {
        let per_term = if commutators > 0 { self.commutator.cost() } else { 1 };
        self.combine.invocations(commutators + primitives, self.slices) * per_term
    }

    /// Combines time-odd terms into one node.
    pub fn combine(&self, label: &str, terms: &[Unitary]) -> Result<Unitary> {
        combine(self.combine, self.slices, label, terms)
    }
}

/// `terms` combined by `kind` over `slices` repetitions.
pub fn combine(kind: Combine, slices: u64, label: &str, terms: &[Unitary]) -> Result<Unitary> {
    if slices == 0 {
        return Err(SynthError::invalid("slice count must be positive"));
    }
    match kind {
        Combine::Product => {
            let factors = terms.iter().map(|u| (Arc::clone(u), 1.0)).collect();
            Repeat::new(Product::new(label, factors)?, slices)
        }
        Combine::Trotter { order } => trotter(order, terms, slices),
        Combine::MergedStrang => MergedStrang::new(terms, slices),
    }
}

/// Primitive exponential of a product of local operators.
pub fn local_primitive(label: &str, layout: &HilbertLayout, locals: &[(FactorAddress, &Operator)]) -> Result<Arc<Primitive>> {
    let generator = embed_all(layout, locals)?;
    let targets = locals.iter().map(|(a, _)| *a).collect();
    Ok(Arc::new(Primitive::new(label, generator, targets)?))
}

/// Real `c` with `C = c·X`, or an error when `C` is not a multiple of `X`.
fn proportionality(c: &Operator, x: &Operator) -> Result<f64> {
    let num: C64 = x.data().iter().zip(c.data().iter()).map(|(a, b)| a.conj() * b).sum();
    let den: f64 = x.data().iter().map(|a| a.norm_sqr()).sum();
    if den == 0.0 {
        return Err(SynthError::invalid("target generator vanishes"));
    }
    let coef = num.re / den;
    let residual = (c - &x.scale_re(coef)).max_abs();
    if residual > 1e-9 * c.max_abs().max(1.0) {
        return Err(SynthError::invalid(format!(
            "commutator of the operands is not a real multiple of the target (residual {residual:.3e})"
        )));
    }
    Ok(coef)
}

/// Node `T ↦ ≈exp(iTH)` compiled from the primitives `exp(isGₐ)`,
/// `exp(isG_b)` through their commutator `[iGₐ, iG_b] = c·iH`.
///
/// The operands are swapped when `c < 0`.
pub fn commutator_exponential(
    a: &Arc<Primitive>,
    b: &Arc<Primitive>,
    target: &Operator,
    formula: CommutatorFormula,
) -> Result<Unitary> {
    let left = Operand { node: PrimitiveGate::scaled(Arc::clone(a), 1.0), generator: a.generator().clone() };
    let right = Operand { node: PrimitiveGate::scaled(Arc::clone(b), 1.0), generator: b.generator().clone() };
    nested_commutator_exponential(&left, &right, target, formula)
}

/// A time-odd node `s ↦ ≈exp(isG)` together with its generator `G`.
#[derive(Debug, Clone)]
pub struct Operand {
    pub node: Unitary,
    pub generator: Operator,
}

/// [`commutator_exponential`] over operands that may themselves be
/// compiled formulas.
pub fn nested_commutator_exponential(
    a: &Operand,
    b: &Operand,
    target: &Operator,
    formula: CommutatorFormula,
) -> Result<Unitary> {
    let c = commutator(&a.generator, &b.generator)?.scale_re(-1.0);
    let coef = proportionality(&c, &target.scale(C64::new(0.0, 1.0)))?;
    let (left, right) = if coef > 0.0 { (&a.node, &b.node) } else { (&b.node, &a.node) };
    let node = match formula {
        CommutatorFormula::Group => group_commutator(left, right)?,
        CommutatorFormula::Bch { order, symmetrized } => {
            let node = bch(order, 1, left, right)?;
            if symmetrized {
                symmetrize(&node)
            } else {
                node
            }
        }
    };
    CommutatorTime::new(node, coef.abs())
}

/// The exact gate `exp(itH₁)·exp(itH₂)⋯` in written order.
#[derive(Debug, Clone)]
pub struct ExactTarget {
    factors: Vec<Operator>,
}

impl ExactTarget {
    pub fn generator(h: Operator) -> Result<Self> {
        Self::product(vec![h])
    }

    pub fn product(factors: Vec<Operator>) -> Result<Self> {
        let first = factors.first().ok_or_else(|| SynthError::invalid("exact target needs a generator"))?;
        for h in &factors {
            first.ensure_same_layout(h)?;
            if !is_hermitian(h, 1e-12 * h.max_abs().max(1.0)) {
                return Err(SynthError::invalid("exact generators must be Hermitian"));
            }
        }
        Ok(ExactTarget { factors })
    }

    pub fn factors(&self) -> &[Operator] {
        &self.factors
    }

    pub fn layout(&self) -> &HilbertLayout {
        self.factors[0].layout()
    }

    pub fn eval(&self, t: f64) -> Result<Operator> {
        let mut acc: Option<Operator> = None;
        for h in &self.factors {
            let u = expm_i(h, t)?;
            acc = Some(match acc {
                None => u,
                Some(a) => &a * &u,
            });
        }
        Ok(acc.expect("at least one factor"))
    }
}

/// A compiled gate family `t ↦ Ũ(t)` with its exact target `U(t)`.
#[derive(Debug, Clone)]
pub struct SynthesizedGate {
    name: String,
    unitary: Unitary,
    target: ExactTarget,
    interior_margin: u32,
    predicted_exponent: f64,
}

impl SynthesizedGate {
    /// `interior_margin > 0` compares only on photon numbers `≤ Λ − margin`,
    /// where identities used by the compilation are unaffected by the cutoff.
    pub fn new(
        name: impl Into<String>,
        unitary: Unitary,
        target: ExactTarget,
        interior_margin: u32,
        predicted_exponent: f64,
    ) -> Result<Self> {
        if unitary.layout() != target.layout() {
            return Err(SynthError::LayoutMismatch {
                left: unitary.layout().to_string(),
                right: target.layout().to_string(),
            });
        }
        Ok(SynthesizedGate { name: name.into(), unitary, target, interior_margin, predicted_exponent })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn unitary(&self) -> &Unitary {
        &self.unitary
    }

    pub fn target(&self) -> &ExactTarget {
        &self.target
    }

    pub fn layout(&self) -> &HilbertLayout {
        self.target.layout()
    }

    pub fn interior_margin(&self) -> u32 {
        self.interior_margin
    }

    /// Single-step error exponent promised by the formulas used.
    pub fn predicted_exponent(&self) -> f64 {
        self.predicted_exponent
    }

    pub fn eval(&self, t: f64) -> Operator {
        self.unitary.eval(t)
    }

    pub fn exact(&self, t: f64) -> Result<Operator> {
        self.target.eval(t)
    }

    /// `‖P(Ũ(t) − U(t))P‖` with `P` the interior projector, or the full
    /// operator norm when the margin is zero.
    pub fn error(&self, t: f64) -> Result<f64> {
        let diff = &self.eval(t) - &self.exact(t)?;
        if self.interior_margin == 0 {
            return Ok(spectral_norm(&diff));
        }
        let p = interior_projector_on(self.layout(), self.interior_margin)?;
        Ok(spectral_norm(&(&(&p * &diff) * &p)))
    }

    /// `|Re⟨ψ|Ũ(t)|ψ⟩ − Re⟨ψ|U(t)|ψ⟩|`.
    pub fn autocorrelation_error(&self, t: f64, psi: &StateVector) -> Result<f64> {
        let synth = inner(psi, &self.unitary.apply(t, psi, false)).re;
        let exact = inner(psi, &self.exact(t)?.apply(psi)).re;
        Ok((synth - exact).abs())
    }

    pub fn emit(&self, t: f64) -> GateSequence {
        self.unitary.emit(t)
    }

    pub fn gate_count(&self) -> GateCount {
        self.unitary.gate_count()
    }

    pub fn cost(&self) -> u64 {
        self.unitary.cost()
    }
}
