use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::primitive::{FixedGate, Primitive};
use crate::tensor_core::{FactorAddress, HilbertLayout, Operator, StateVector};

/// Primitive invocation counts keyed by primitive label.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCount {
    by_kind: BTreeMap<String, u64>,
}

impl GateCount {
    pub fn single(kind: &str) -> Self {
        let mut by_kind = BTreeMap::new();
        by_kind.insert(kind.to_string(), 1);
        GateCount { by_kind }
    }

    pub fn add(&mut self, other: &GateCount) {
        for (kind, n) in &other.by_kind {
            let slot = self.by_kind.entry(kind.clone()).or_insert(0);
            *slot = slot.saturating_add(*n);
        }
    }

    pub fn times(&self, factor: u64) -> GateCount {
        GateCount { by_kind: self.by_kind.iter().map(|(k, n)| (k.clone(), n.saturating_mul(factor))).collect() }
    }

    pub fn total(&self) -> u64 {
        self.by_kind.values().fold(0u64, |acc, n| acc.saturating_add(*n))
    }

    pub fn get(&self, kind: &str) -> u64 {
        self.by_kind.get(kind).copied().unwrap_or(0)
    }

    pub fn by_kind(&self) -> &BTreeMap<String, u64> {
        &self.by_kind
    }
}

/// One entry of a compiled gate list.
#[derive(Debug, Clone)]
pub enum GateInstance {
    Exp { primitive: Arc<Primitive>, theta: f64 },
    Fixed { gate: Arc<FixedGate>, adjoint: bool },
}

impl GateInstance {
    pub fn exp(primitive: Arc<Primitive>, theta: f64) -> Self {
        GateInstance::Exp { primitive, theta }
    }

    pub fn fixed(gate: Arc<FixedGate>, adjoint: bool) -> Self {
        GateInstance::Fixed { gate, adjoint }
    }

    pub fn label(&self) -> String {
        match self {
            GateInstance::Exp { primitive, .. } => primitive.label().to_string(),
            GateInstance::Fixed { gate, adjoint } => {
                format!("{}{}", gate.label(), if *adjoint { "†" } else { "" })
            }
        }
    }

    /// Rotation angle of an exponential, `None` for fixed gates.
    pub fn parameter(&self) -> Option<f64> {
        match self {
            GateInstance::Exp { theta, .. } => Some(*theta),
            GateInstance::Fixed { .. } => None,
        }
    }

    /// Factors the gate acts on; fixed gates report none.
    pub fn targets(&self) -> &[FactorAddress] {
        match self {
            GateInstance::Exp { primitive, .. } => primitive.targets(),
            GateInstance::Fixed { .. } => &[],
        }
    }

    pub fn is_primitive(&self) -> bool {
        matches!(self, GateInstance::Exp { .. })
    }

    pub fn inverse(&self) -> GateInstance {
        match self {
            GateInstance::Exp { primitive, theta } => GateInstance::exp(Arc::clone(primitive), -theta),
            GateInstance::Fixed { gate, adjoint } => GateInstance::fixed(Arc::clone(gate), !adjoint),
        }
    }

    pub fn matrix(&self) -> Operator {
        match self {
            GateInstance::Exp { primitive, theta } => primitive.exp_i(*theta),
            GateInstance::Fixed { gate, adjoint } => {
                if *adjoint {
                    gate.adjoint_matrix().clone()
                } else {
                    gate.matrix().clone()
                }
            }
        }
    }

    pub fn apply(&self, state: &StateVector) -> StateVector {
        match self {
            GateInstance::Exp { primitive, theta } => primitive.apply_exp_i(*theta, state),
            GateInstance::Fixed { gate, adjoint } => gate.apply(state, *adjoint),
        }
    }
}

/// Gates in application order: the first entry acts first.
#[derive(Debug, Clone)]
pub struct GateSequence {
    layout: HilbertLayout,
    gates: Vec<GateInstance>,
}

impl GateSequence {
    pub fn new(layout: HilbertLayout) -> Self {
        GateSequence { layout, gates: Vec::new() }
    }

    pub fn push(&mut self, gate: GateInstance) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, other: &GateSequence) {
        self.gates.extend(other.gates.iter().cloned());
    }

    pub fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    pub fn gates(&self) -> &[GateInstance] {
        &self.gates
    }

    /// Number of primitive exponentials, one depth unit each.
    pub fn total_cost(&self) -> u64 {
        self.gates.iter().filter(|g| g.is_primitive()).count() as u64
    }

    /// Counted depth: one unit per primitive exponential.
    pub fn depth(&self) -> usize {
        self.total_cost() as usize
    }

    pub fn count_by_kind(&self) -> GateCount {
        let mut count = GateCount::default();
        for g in self.gates.iter().filter(|g| g.is_primitive()) {
            count.add(&GateCount::single(&g.label()));
        }
        count
    }

    /// The adjoint sequence: reversed order, inverted gates.
    pub fn inverse(&self) -> GateSequence {
        GateSequence { layout: self.layout.clone(), gates: self.gates.iter().rev().map(GateInstance::inverse).collect() }
    }

    /// Product of all gates, last-applied leftmost.
    pub fn evaluate(&self) -> Operator {
        self.gates
            .iter()
            .fold(Operator::identity(self.layout.clone()), |acc, g| &g.matrix() * &acc)
    }

    pub fn apply(&self, state: &StateVector) -> StateVector {
        self.gates.iter().fold(state.clone(), |s, g| g.apply(&s))
    }
}
