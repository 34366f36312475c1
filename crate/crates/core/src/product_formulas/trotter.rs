use std::sync::Arc;

use log::warn;
use serde::{Deserialize, Serialize};

use super::nodes::{check_layouts, Repeat};
use super::unitary::{Call, Expansion, ParamUnitary, Unitary};
use crate::error::{Result, SynthError};
use crate::tensor_core::HilbertLayout;

/// Suzuki coefficient `p_k = 1/(4 − 4^{1/(2k−1)})`.
pub fn suzuki_coefficient(k: u32) -> f64 {
    1.0 / (4.0 - 4f64.powf(1.0 / (2 * k - 1) as f64))
}

/// One step of the order-`2k` Trotter-Suzuki formula over `terms`.
#[derive(Debug)]
pub struct TrotterStep {
    layout: HilbertLayout,
    k: u32,
    terms: Vec<Unitary>,
    lower: Option<Unitary>,
}

impl TrotterStep {
    fn build(k: u32, terms: &[Unitary], layout: &HilbertLayout) -> Unitary {
        let lower = (k > 1).then(|| Self::build(k - 1, terms, layout));
        Arc::new(TrotterStep { layout: layout.clone(), k, terms: terms.to_vec(), lower })
    }
}

impl ParamUnitary for TrotterStep {
    fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    fn label(&self) -> String {
        let names: Vec<String> = self.terms.iter().map(|t| t.label()).collect();
        format!("Trotter{}({})", 2 * self.k, names.join(", "))
    }

    fn expand(&self, t: f64) -> Expansion {
        match &self.lower {
            None => {
                let half = t / 2.0;
                let forward = self.terms.iter().map(|u| Call::at(u, half));
                let backward = self.terms.iter().rev().map(|u| Call::at(u, half));
                Expansion::Product(forward.chain(backward).collect())
            }
            Some(lower) => {
                let p = suzuki_coefficient(self.k);
                let outer = p * t;
                let middle = (1.0 - 4.0 * p) * t;
                Expansion::Product(vec![
                    Call::at(lower, outer),
                    Call::at(lower, outer),
                    Call::at(lower, middle),
                    Call::at(lower, outer),
                    Call::at(lower, outer),
                ])
            }
        }
    }

    fn is_time_odd(&self) -> bool {
        self.terms.iter().all(|u| u.is_time_odd())
    }
}

fn validate(order: u32, terms: &[Unitary]) -> Result<HilbertLayout> {
    if order == 0 || order % 2 == 1 {
        return Err(SynthError::invalid(format!("Trotter order must be even and positive, got {order}")));
    }
    let refs: Vec<&Unitary> = terms.iter().collect();
    check_layouts(&refs).map_err(|e| match e {
        SynthError::InvalidArgument(_) => SynthError::invalid("Trotter formula needs at least one term"),
        other => other,
    })
}

/// Order-`order` Trotter-Suzuki formula with `slices` repetitions of step `t/slices`.
pub fn trotter(order: u32, terms: &[Unitary], slices: u64) -> Result<Unitary> {
    let layout = validate(order, terms)?;
    Repeat::new(TrotterStep::build(order / 2, terms, &layout), slices)
}

/// Upper bound `2m·5^{k−1}·r` on term invocations.
pub fn trotter_invocations(order: u32, terms: usize, slices: u64) -> u64 {
    let k = order / 2;
    (2 * terms as u64).saturating_mul(5u64.saturating_pow(k.saturating_sub(1))).saturating_mul(slices)
}

/// Second-order formula over `slices` steps with adjacent half-steps of the
/// same term merged: `2r(m − 1) + 1` term invocations.
#[derive(Debug)]
pub struct MergedStrang {
    layout: HilbertLayout,
    terms: Vec<Unitary>,
    pattern: Vec<(usize, f64)>,
}

impl MergedStrang {
    pub fn new(terms: &[Unitary], slices: u64) -> Result<Unitary> {
        let layout = validate(2, terms)?;
        if slices == 0 {
            return Err(SynthError::invalid("slice count must be positive"));
        }
        let m = terms.len();
        let weight = 1.0 / (2.0 * slices as f64);
        let mut pattern: Vec<(usize, f64)> = Vec::new();
        for _ in 0..slices {
            for j in (0..m).chain((0..m).rev()) {
                match pattern.last_mut() {
                    Some((last, w)) if *last == j => *w += weight,
                    _ => pattern.push((j, weight)),
                }
            }
        }
        Ok(Arc::new(MergedStrang { layout, terms: terms.to_vec(), pattern }))
    }
}

impl ParamUnitary for MergedStrang {
    fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    fn label(&self) -> String {
        let names: Vec<String> = self.terms.iter().map(|t| t.label()).collect();
        format!("Strang({})", names.join(", "))
    }

    fn expand(&self, t: f64) -> Expansion {
        Expansion::Product(self.pattern.iter().map(|&(j, w)| Call::at(&self.terms[j], w * t)).collect())
    }

    fn is_time_odd(&self) -> bool {
        self.terms.iter().all(|u| u.is_time_odd())
    }
}

/// Step-size conditions under which the standard Trotter error bound holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrotterConditions {
    pub step_condition: f64,
    pub error_condition: f64,
}

impl TrotterConditions {
    /// `τ = ‖H‖·t` for `m` terms, order `2k`, `r` slices.
    pub fn evaluate(order: u32, terms: usize, tau: f64, slices: u64) -> Self {
        let k = (order / 2).max(1);
        let m = terms as f64;
        let r = slices as f64;
        let five = 5f64.powi(k as i32 - 1);
        TrotterConditions {
            step_condition: 4.0 * m * five * tau / r,
            error_condition: (16.0 / 3.0) * (2.0 * five * m * tau).powi(2 * k as i32 + 1) / r.powi(2 * k as i32),
        }
    }

    pub fn satisfied(&self) -> bool {
        self.step_condition <= 1.0 && self.error_condition <= 1.0
    }

    /// Logs a warning when a condition is violated; never fails.
    pub fn warn_if_violated(&self, context: &str) -> bool {
        let ok = self.satisfied();
        if !ok {
            warn!(
                "{context}: Trotter step conditions violated (step {:.3e}, error {:.3e}); the standard bound may not apply",
                self.step_condition, self.error_condition
            );
        }
        ok
    }
}

/// Standard single-formula error bound `5(2·5^{k−1}mτ)^{2k+1}/r^{2k}`.
pub fn trotter_error_bound(order: u32, terms: usize, tau: f64, slices: u64) -> f64 {
    let k = (order / 2).max(1) as i32;
    let five = 5f64.powi(k - 1);
    5.0 * (2.0 * five * terms as f64 * tau).powi(2 * k + 1) / (slices as f64).powi(2 * k)
}
