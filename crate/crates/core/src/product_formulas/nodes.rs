use std::sync::Arc;

use super::primitive::FixedNode;
use super::unitary::{Call, Expansion, ParamUnitary, Unitary};
use crate::error::{Result, SynthError};
use crate::tensor_core::HilbertLayout;

pub(crate) fn check_layouts(nodes: &[&Unitary]) -> Result<HilbertLayout> {
    let first = nodes.first().ok_or_else(|| SynthError::invalid("no operands"))?;
    for other in &nodes[1..] {
        if other.layout() != first.layout() {
            return Err(SynthError::LayoutMismatch {
                left: first.layout().to_string(),
                right: other.layout().to_string(),
            });
        }
    }
    Ok(first.layout().clone())
}

/// `t ↦ F·U(t)·F†` for a fixed frame `F`.
#[derive(Debug)]
pub struct Conjugated {
    inner: Unitary,
    frame: Unitary,
}

impl Conjugated {
    pub fn new(inner: Unitary, frame: Unitary) -> Result<Unitary> {
        check_layouts(&[&inner, &frame])?;
        Ok(Arc::new(Conjugated { inner, frame }))
    }

    pub fn inner(&self) -> &Unitary {
        &self.inner
    }
}

impl ParamUnitary for Conjugated {
    fn layout(&self) -> &HilbertLayout {
        self.inner.layout()
    }

    fn label(&self) -> String {
        format!("{}·{}·{}†", self.frame.label(), self.inner.label(), self.frame.label())
    }

    fn expand(&self, t: f64) -> Expansion {
        Expansion::Product(vec![Call::at(&self.frame, 0.0), Call::at(&self.inner, t), Call::adjoint_at(&self.frame, 0.0)])
    }

    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn is_time_odd(&self) -> bool {
        self.inner.is_time_odd()
    }
}

/// Conjugates `inner` by a fixed gate given as an operator.
pub fn conjugate_by(inner: &Unitary, frame: crate::product_formulas::FixedGate) -> Result<Unitary> {
    Conjugated::new(Arc::clone(inner), FixedNode::new(frame))
}

/// Written-order product `∏ⱼ Uⱼ(cⱼ·t)`.
#[derive(Debug)]
pub struct Product {
    label: String,
    layout: HilbertLayout,
    factors: Vec<(Unitary, f64)>,
    time_odd: bool,
}

impl Product {
    pub fn new(label: impl Into<String>, factors: Vec<(Unitary, f64)>) -> Result<Unitary> {
        let refs: Vec<&Unitary> = factors.iter().map(|(u, _)| u).collect();
        let layout = check_layouts(&refs)?;
        Ok(Arc::new(Product { label: label.into(), layout, factors, time_odd: false }))
    }

    /// A product known to satisfy `U(−t) = U(t)†`, such as a palindrome of
    /// time-odd factors.
    pub fn palindromic(label: impl Into<String>, factors: Vec<(Unitary, f64)>) -> Result<Unitary> {
        let n = factors.len();
        let symmetric = (0..n).all(|i| {
            let (a, ca) = &factors[i];
            let (b, cb) = &factors[n - 1 - i];
            Arc::ptr_eq(a, b) && ca == cb && a.is_time_odd()
        });
        if !symmetric {
            return Err(SynthError::invalid("factors do not form a palindrome of time-odd nodes"));
        }
        let refs: Vec<&Unitary> = factors.iter().map(|(u, _)| u).collect();
        let layout = check_layouts(&refs)?;
        Ok(Arc::new(Product { label: label.into(), layout, factors, time_odd: true }))
    }
}

impl ParamUnitary for Product {
    fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn expand(&self, t: f64) -> Expansion {
        Expansion::Product(self.factors.iter().map(|(u, c)| Call::at(u, c * t)).collect())
    }

    fn is_time_odd(&self) -> bool {
        self.time_odd
    }
}

/// `t ↦ U(factor·t)`.
#[derive(Debug)]
pub struct Scaled {
    inner: Unitary,
    factor: f64,
}

impl Scaled {
    pub fn new(inner: Unitary, factor: f64) -> Unitary {
        Arc::new(Scaled { inner, factor })
    }
}

impl ParamUnitary for Scaled {
    fn layout(&self) -> &HilbertLayout {
        self.inner.layout()
    }

    fn label(&self) -> String {
        format!("{}[{}t]", self.inner.label(), self.factor)
    }

    fn expand(&self, t: f64) -> Expansion {
        Expansion::Product(vec![Call::at(&self.inner, self.factor * t)])
    }

    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn is_time_odd(&self) -> bool {
        self.inner.is_time_odd()
    }
}

/// `t ↦ U(t/r)^r`.
#[derive(Debug)]
pub struct Repeat {
    inner: Unitary,
    slices: u64,
}

impl Repeat {
    pub fn new(inner: Unitary, slices: u64) -> Result<Unitary> {
        if slices == 0 {
            return Err(SynthError::invalid("slice count must be positive"));
        }
        if slices == 1 {
            return Ok(inner);
        }
        Ok(Arc::new(Repeat { inner, slices }))
    }
}

impl ParamUnitary for Repeat {
    fn layout(&self) -> &HilbertLayout {
        self.inner.layout()
    }

    fn label(&self) -> String {
        format!("({})^{}", self.inner.label(), self.slices)
    }

    fn expand(&self, t: f64) -> Expansion {
        Expansion::Power { call: Call::at(&self.inner, t / self.slices as f64), count: self.slices }
    }

    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn is_time_odd(&self) -> bool {
        self.inner.is_time_odd()
    }
}

/// Two-sided composition cancelling the leading even-order error term of a
/// formula whose target exponent scales as `t^h`.
///
/// For odd `h` this is `U(s)·U(−s)†`, for even `h` it is `U(s)·U(−s)`, with
/// `s = t/2^{1/h}` so that the target is unchanged. For a degree-one time-odd
/// formula it reduces to `U(t/2)` followed by its reversed sequence.
#[derive(Debug)]
pub struct Symmetrized {
    inner: Unitary,
    shrink: f64,
}

pub fn symmetrize(inner: &Unitary) -> Unitary {
    let h = inner.degree() as f64;
    Arc::new(Symmetrized { inner: Arc::clone(inner), shrink: 2f64.powf(-1.0 / h) })
}

impl ParamUnitary for Symmetrized {
    fn layout(&self) -> &HilbertLayout {
        self.inner.layout()
    }

    fn label(&self) -> String {
        format!("{}′", self.inner.label())
    }

    fn expand(&self, t: f64) -> Expansion {
        let s = self.shrink * t;
        let second = if self.inner.degree() % 2 == 1 {
            Call::adjoint_at(&self.inner, -s)
        } else {
            Call::at(&self.inner, -s)
        };
        Expansion::Product(vec![Call::at(&self.inner, s), second])
    }

    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn is_time_odd(&self) -> bool {
        self.inner.degree() % 2 == 1
    }
}

/// Reparameterizes a degree-`h` commutator formula so that its target is
/// `exp(T·C/coef)` linear in the new time `T`: the inner formula runs at
/// `(|T|/coef)^{1/h}`, adjointed for negative `T`.
#[derive(Debug)]
pub struct CommutatorTime {
    inner: Unitary,
    coef: f64,
}

impl CommutatorTime {
    pub fn new(inner: Unitary, coef: f64) -> Result<Unitary> {
        if !(coef > 0.0 && coef.is_finite()) {
            return Err(SynthError::invalid(format!("time coefficient must be positive, got {coef}")));
        }
        Ok(Arc::new(CommutatorTime { inner, coef }))
    }

    fn inner_time(&self, t: f64) -> f64 {
        (t.abs() / self.coef).powf(1.0 / self.inner.degree() as f64)
    }
}

impl ParamUnitary for CommutatorTime {
    fn layout(&self) -> &HilbertLayout {
        self.inner.layout()
    }

    fn label(&self) -> String {
        self.inner.label()
    }

    fn expand(&self, t: f64) -> Expansion {
        let s = self.inner_time(t);
        let call = if t < 0.0 { Call::adjoint_at(&self.inner, s) } else { Call::at(&self.inner, s) };
        Expansion::Product(vec![call])
    }

    fn is_time_odd(&self) -> bool {
        true
    }
}
