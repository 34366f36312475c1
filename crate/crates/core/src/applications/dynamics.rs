use serde::{Deserialize, Serialize};

use crate::error::{Result, SynthError};
use crate::tensor_core::{inner, norm_sqr, FactorAddress, FactorKind, HilbertLayout, Operator, StateVector};

/// What to record along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observables {
    /// Mode whose Fock populations are recorded.
    pub mode: FactorAddress,
    /// Number of recorded levels `0..levels`.
    pub levels: usize,
    /// Highest physical photon number; anything above counts as leakage.
    pub physical_max: usize,
}

/// Observable series of a stepped evolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DynamicsTrace {
    pub times: Vec<f64>,
    /// `Re⟨ψ₀|ψ(t)⟩`.
    pub autocorrelation: Vec<f64>,
    /// Fock populations of the observed mode, one row per time.
    pub populations: Vec<Vec<f64>>,
    /// Probability of any mode holding more than `physical_max` photons.
    pub leakage: Vec<f64>,
    pub total_probability: Vec<f64>,
}

impl DynamicsTrace {
    /// Largest deviation of the total probability from one.
    pub fn max_norm_drift(&self) -> f64 {
        self.total_probability.iter().map(|p| (p - 1.0).abs()).fold(0.0, f64::max)
    }

    pub fn max_leakage(&self) -> f64 {
        self.leakage.iter().copied().fold(0.0, f64::max)
    }
}

fn record(layout: &HilbertLayout, psi0: &StateVector, psi: &StateVector, obs: &Observables, trace: &mut DynamicsTrace) {
    let mut pops = vec![0.0; obs.levels];
    let mut leak = 0.0;
    for (index, amp) in psi.iter().enumerate() {
        let p = amp.norm_sqr();
        let levels = layout.levels_of(index);
        if let Some(slot) = pops.get_mut(levels[obs.mode.0]) {
            *slot += p;
        }
        let outside = layout
            .factors()
            .iter()
            .zip(&levels)
            .any(|(f, &n)| f.kind == FactorKind::Mode && n > obs.physical_max);
        if outside {
            leak += p;
        }
    }
    trace.autocorrelation.push(inner(psi0, psi).re);
    trace.populations.push(pops);
    trace.leakage.push(leak);
    trace.total_probability.push(norm_sqr(psi));
}

/// Applies `step` repeatedly from `psi0`, recording the state at
/// `t = 0, dt, …, steps·dt`.
pub fn evolve(
    layout: &HilbertLayout,
    psi0: &StateVector,
    dt: f64,
    steps: usize,
    obs: &Observables,
    mut step: impl FnMut(&StateVector) -> StateVector,
) -> Result<DynamicsTrace> {
    let mode = layout.factor(obs.mode)?;
    if mode.kind != FactorKind::Mode {
        return Err(SynthError::invalid("observed factor must be a mode"));
    }
    if psi0.len() != layout.dim() {
        return Err(SynthError::invalid(format!("state has length {}, layout needs {}", psi0.len(), layout.dim())));
    }
    let mut trace = DynamicsTrace {
        times: Vec::with_capacity(steps + 1),
        autocorrelation: Vec::new(),
        populations: Vec::new(),
        leakage: Vec::new(),
        total_probability: Vec::new(),
    };
    let mut psi = psi0.clone();
    trace.times.push(0.0);
    record(layout, psi0, &psi, obs, &mut trace);
    for n in 1..=steps {
        psi = step(&psi);
        trace.times.push(n as f64 * dt);
        record(layout, psi0, &psi, obs, &mut trace);
    }
    Ok(trace)
}

/// [`evolve`] under a fixed one-step propagator.
pub fn evolve_with(
    propagator: &Operator,
    psi0: &StateVector,
    dt: f64,
    steps: usize,
    obs: &Observables,
) -> Result<DynamicsTrace> {
    evolve(propagator.layout(), psi0, dt, steps, obs, |psi| propagator.apply(psi))
}
