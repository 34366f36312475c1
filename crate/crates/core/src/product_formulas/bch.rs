use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::nodes::check_layouts;
use super::unitary::{Call, Expansion, ParamUnitary, Unitary};
use crate::error::{Result, SynthError};
use crate::tensor_core::HilbertLayout;

/// Recursion constants of one level of the commutator formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BchOrderParams {
    pub p: u32,
    pub k: u32,
    pub r: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl BchOrderParams {
    pub fn new(p: u32, k: u32) -> Result<Self> {
        validate(p, k)?;
        let kp1 = (k + 1) as f64;
        let two_pow = 2f64.powf(kp1 / (2 * p + k + 1) as f64);
        let r = two_pow / (4.0 * (2.0 - two_pow));
        Ok(BchOrderParams { p, k, r, beta: (2.0 * r).powf(1.0 / kp1), gamma: (0.25 + r).powf(1.0 / kp1) })
    }
}

fn validate(p: u32, k: u32) -> Result<()> {
    if p < 1 {
        return Err(SynthError::invalid("commutator formula order must be at least 1"));
    }
    if k % 2 == 0 {
        return Err(SynthError::invalid(format!("commutator weight must be odd, got {k}")));
    }
    Ok(())
}

/// Closed-form number of calls to the two operands.
pub fn bch_invocations(p: u32, k: u32) -> u64 {
    let base = if k == 1 { 8 } else { 4 };
    base * 6u64.saturating_pow(p.saturating_sub(1))
}

/// Base commutator formula.
///
/// For `k > 1`: `A(t)·B(t^k)·A(−t)·B(−t^k)`. For `k = 1` the group
/// commutator `G(s) = A(s)B(s)A(−s)B(−s)` is applied twice at
/// `s = t/√2`, which keeps the target `exp(t²[A,B])`.
#[derive(Debug)]
pub struct BchBase {
    a: Unitary,
    b: Unitary,
    k: u32,
    doubled: bool,
}

impl BchBase {
    fn b_time(&self, t: f64) -> f64 {
        t.powi(self.k as i32)
    }

    fn group_commutator(&self, s: f64) -> [Call; 4] {
        let bs = self.b_time(s);
        [Call::at(&self.a, s), Call::at(&self.b, bs), Call::at(&self.a, -s), Call::at(&self.b, -bs)]
    }
}

impl ParamUnitary for BchBase {
    fn layout(&self) -> &HilbertLayout {
        self.a.layout()
    }

    fn label(&self) -> String {
        if self.doubled || self.k > 1 {
            format!("BCH1({}, {})", self.a.label(), self.b.label())
        } else {
            format!("[{}, {}]", self.a.label(), self.b.label())
        }
    }

    fn expand(&self, t: f64) -> Expansion {
        if self.doubled {
            let s = t * std::f64::consts::FRAC_1_SQRT_2;
            let g = self.group_commutator(s);
            Expansion::Product(g.iter().chain(g.iter()).cloned().collect())
        } else {
            Expansion::Product(self.group_commutator(t).to_vec())
        }
    }

    fn degree(&self) -> u32 {
        self.k + 1
    }
}

/// Recursion level `p ≥ 2`, built from level `p − 1` with its constants.
#[derive(Debug)]
pub struct BchLevel {
    inner: Unitary,
    params: BchOrderParams,
    label: String,
}

impl ParamUnitary for BchLevel {
    fn layout(&self) -> &HilbertLayout {
        self.inner.layout()
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn expand(&self, t: f64) -> Expansion {
        let g = self.params.gamma * t;
        let b = self.params.beta * t;
        let inner = &self.inner;
        Expansion::Product(vec![
            Call::at(inner, g),
            Call::at(inner, -g),
            Call::adjoint_at(inner, b),
            Call::adjoint_at(inner, -b),
            Call::at(inner, g),
            Call::at(inner, -g),
        ])
    }

    fn degree(&self) -> u32 {
        self.params.k + 1
    }
}

/// Order-`p` commutator formula approximating `exp(t^{k+1}[A,B])` where
/// `a(t) = exp(tA)` and `b(t) = exp(tB)`.
pub fn bch(p: u32, k: u32, a: &Unitary, b: &Unitary) -> Result<Unitary> {
    validate(p, k)?;
    check_layouts(&[a, b])?;
    let label = |level: u32| format!("BCH{}({}, {})", level, a.label(), b.label());
    let mut node: Unitary = Arc::new(BchBase { a: Arc::clone(a), b: Arc::clone(b), k, doubled: k == 1 });
    for level in 2..=p {
        let params = BchOrderParams::new(level - 1, k)?;
        node = Arc::new(BchLevel { inner: node, params, label: label(level) });
    }
    Ok(node)
}

/// Plain four-exponential group commutator `A(t)B(t)A(−t)B(−t)`, the
/// shallowest circuit with target `exp(t²[A,B])`.
pub fn group_commutator(a: &Unitary, b: &Unitary) -> Result<Unitary> {
    check_layouts(&[a, b])?;
    Ok(Arc::new(BchBase { a: Arc::clone(a), b: Arc::clone(b), k: 1, doubled: false }))
}
