use std::fmt;
use std::sync::Arc;

use super::unitary::{Expansion, ParamUnitary, Unitary};
use crate::error::Result;
use crate::fock_ops::{embed, QubitGate};
use crate::tensor_core::{FactorAddress, HermitianEigen, HilbertLayout, Operator, StateVector};
use crate::Tolerances;

/// A directly implementable exponential `exp(iθG)` with Hermitian `G`.
pub struct Primitive {
    label: String,
    generator: Operator,
    targets: Vec<FactorAddress>,
    eigen: HermitianEigen,
}

impl Primitive {
    pub fn new(label: impl Into<String>, generator: Operator, targets: Vec<FactorAddress>) -> Result<Self> {
        let eigen = HermitianEigen::new(&generator, Tolerances::DEFAULT.hermitian.max(1e-10))?;
        Ok(Primitive { label: label.into(), generator, targets, eigen })
    }

    /// Primitive acting on every factor of the generator's layout.
    pub fn global(label: impl Into<String>, generator: Operator) -> Result<Self> {
        let targets = (0..generator.layout().len()).map(FactorAddress).collect();
        Self::new(label, generator, targets)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generator(&self) -> &Operator {
        &self.generator
    }

    pub fn layout(&self) -> &HilbertLayout {
        self.generator.layout()
    }

    pub fn targets(&self) -> &[FactorAddress] {
        &self.targets
    }

    /// Spectral norm of the generator.
    pub fn norm(&self) -> f64 {
        self.eigen.norm()
    }

    pub fn exp_i(&self, theta: f64) -> Operator {
        self.eigen.exp_i(theta)
    }

    pub fn apply_exp_i(&self, theta: f64, state: &StateVector) -> StateVector {
        self.eigen.apply_exp_i(theta, state)
    }
}

impl fmt::Debug for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Primitive").field("label", &self.label).field("layout", self.layout()).finish()
    }
}

/// A fixed unitary that costs no primitive invocations, such as a qubit
/// frame change.
pub struct FixedGate {
    label: String,
    matrix: Operator,
    adjoint: Operator,
}

impl FixedGate {
    pub fn new(label: impl Into<String>, matrix: Operator) -> Self {
        let adjoint = matrix.adjoint();
        FixedGate { label: label.into(), matrix, adjoint }
    }

    /// Single-qubit gate sequence (written order) on the qubit at `at`.
    pub fn qubit_frame(layout: &HilbertLayout, at: FactorAddress, gates: &[QubitGate]) -> Result<Self> {
        let local = crate::fock_ops::qubit_gate_product(gates);
        let label = gates.iter().map(QubitGate::label).collect::<Vec<_>>().join("·");
        Ok(FixedGate::new(label, embed(&local, layout, at)?))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self) -> &Operator {
        &self.matrix
    }

    pub fn adjoint_matrix(&self) -> &Operator {
        &self.adjoint
    }

    pub fn apply(&self, state: &StateVector, adjoint: bool) -> StateVector {
        if adjoint {
            self.adjoint.apply(state)
        } else {
            self.matrix.apply(state)
        }
    }
}

impl fmt::Debug for FixedGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FixedGate").field("label", &self.label).finish()
    }
}

/// `t ↦ exp(i(scale·t + offset)G)`.
#[derive(Debug)]
pub struct PrimitiveGate {
    primitive: Arc<Primitive>,
    scale: f64,
    offset: f64,
}

impl PrimitiveGate {
    pub fn new(primitive: Arc<Primitive>, scale: f64, offset: f64) -> Self {
        PrimitiveGate { primitive, scale, offset }
    }

    /// `t ↦ exp(itG)` as a shareable node.
    pub fn unit(primitive: Primitive) -> Unitary {
        Arc::new(PrimitiveGate::new(Arc::new(primitive), 1.0, 0.0))
    }

    /// `t ↦ exp(i·scale·t·G)` as a shareable node.
    pub fn scaled(primitive: Arc<Primitive>, scale: f64) -> Unitary {
        Arc::new(PrimitiveGate::new(primitive, scale, 0.0))
    }

    pub fn primitive(&self) -> &Arc<Primitive> {
        &self.primitive
    }
}

impl ParamUnitary for PrimitiveGate {
    fn layout(&self) -> &HilbertLayout {
        self.primitive.layout()
    }

    fn label(&self) -> String {
        self.primitive.label().to_string()
    }

    fn expand(&self, t: f64) -> Expansion {
        Expansion::Exp { primitive: Arc::clone(&self.primitive), theta: self.scale * t + self.offset }
    }

    fn is_time_odd(&self) -> bool {
        self.offset == 0.0
    }
}

/// Time-independent node wrapping a [`FixedGate`].
#[derive(Debug)]
pub struct FixedNode {
    gate: Arc<FixedGate>,
}

impl FixedNode {
    pub fn new(gate: FixedGate) -> Unitary {
        Arc::new(FixedNode { gate: Arc::new(gate) })
    }
}

impl ParamUnitary for FixedNode {
    fn layout(&self) -> &HilbertLayout {
        self.gate.matrix().layout()
    }

    fn label(&self) -> String {
        self.gate.label().to_string()
    }

    fn expand(&self, _t: f64) -> Expansion {
        Expansion::Fixed(Arc::clone(&self.gate))
    }
}
