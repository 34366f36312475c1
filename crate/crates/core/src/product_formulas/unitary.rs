use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::primitive::{FixedGate, Primitive};
use super::sequence::{GateCount, GateInstance, GateSequence};
use crate::tensor_core::{HilbertLayout, Operator, StateVector};

/// Shared handle to a parameterized unitary.
pub type Unitary = Arc<dyn ParamUnitary>;

/// One factor of a composite: `node(time)`, or its adjoint.
#[derive(Clone)]
pub struct Call {
    pub node: Unitary,
    pub time: f64,
    pub adjoint: bool,
}

impl Call {
    pub fn at(node: &Unitary, time: f64) -> Self {
        Call { node: Arc::clone(node), time, adjoint: false }
    }

    pub fn adjoint_at(node: &Unitary, time: f64) -> Self {
        Call { node: Arc::clone(node), time, adjoint: true }
    }
}

impl fmt::Debug for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}){}", self.node.label(), self.time, if self.adjoint { "†" } else { "" })
    }
}

/// How a node realizes its unitary at a given time.
#[derive(Debug, Clone)]
pub enum Expansion {
    /// `exp(iθG)` of a primitive generator.
    Exp { primitive: Arc<Primitive>, theta: f64 },
    /// A fixed, cost-free gate such as a qubit frame change.
    Fixed(Arc<FixedGate>),
    /// Product of calls in written (matrix) order: `[A, B]` means `A·B`.
    Product(Vec<Call>),
    /// `call^count`.
    Power { call: Call, count: u64 },
}

/// A map `t ↦ U(t)` realized as a tree of primitive exponentials.
///
/// Nodes only describe their one-level expansion; evaluation, state
/// application, gate emission and counting are generic over the tree.
pub trait ParamUnitary: Send + Sync + fmt::Debug {
    fn layout(&self) -> &HilbertLayout;

    fn label(&self) -> String;

    fn expand(&self, t: f64) -> Expansion;

    /// Power of `t` in the exponent of the approximated target: 1 for
    /// `exp(tH)`, `k + 1` for a commutator formula targeting `exp(t^{k+1}[A,B])`.
    fn degree(&self) -> u32 {
        1
    }

    /// Whether `U(−t) = U(t)†` holds exactly by construction.
    fn is_time_odd(&self) -> bool {
        false
    }
}

/// Memo of node evaluations, keyed by node identity and time, valid for a
/// single top-level evaluation.
#[derive(Default)]
pub struct EvalCache {
    memo: HashMap<(usize, u64), Operator>,
}

fn node_key(node: &dyn ParamUnitary) -> usize {
    node as *const dyn ParamUnitary as *const () as usize
}

impl EvalCache {
    pub fn eval(&mut self, node: &dyn ParamUnitary, t: f64) -> Operator {
        if node.is_time_odd() && t < 0.0 {
            return self.eval(node, -t).adjoint();
        }
        let key = (node_key(node), t.to_bits());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let value = match node.expand(t) {
            Expansion::Exp { primitive, theta } => primitive.exp_i(theta),
            Expansion::Fixed(gate) => gate.matrix().clone(),
            Expansion::Product(calls) => {
                let mut acc: Option<Operator> = None;
                for call in &calls {
                    let m = self.eval_call(call);
                    acc = Some(match acc {
                        None => m,
                        Some(a) => &a * &m,
                    });
                }
                acc.unwrap_or_else(|| Operator::identity(node.layout().clone()))
            }
            Expansion::Power { call, count } => self.eval_call(&call).powi(count),
        };
        self.memo.insert(key, value.clone());
        value
    }

    fn eval_call(&mut self, call: &Call) -> Operator {
        let m = self.eval(call.node.as_ref(), call.time);
        if call.adjoint {
            m.adjoint()
        } else {
            m
        }
    }
}

/// Operations available on every [`ParamUnitary`].
pub trait ParamUnitaryExt: ParamUnitary {
    /// Dense unitary at time `t`.
    fn eval(&self, t: f64) -> Operator {
        EvalCache::default().eval(self.as_dyn(), t)
    }

    /// `U(t)·ψ`, or `U(t)†·ψ` when `adjoint`, gate by gate.
    fn apply(&self, t: f64, state: &StateVector, adjoint: bool) -> StateVector {
        apply_node(self.as_dyn(), t, state.clone(), adjoint)
    }

    /// Flattened gate list in application (time) order.
    fn emit(&self, t: f64) -> GateSequence {
        let mut out = GateSequence::new(self.layout().clone());
        emit_node(self.as_dyn(), t, false, &mut out);
        out
    }

    /// Primitive invocations by kind.
    fn gate_count(&self) -> GateCount {
        let mut memo = HashMap::new();
        count_node(self.as_dyn(), &mut memo)
    }

    /// Total primitive invocations.
    fn cost(&self) -> u64 {
        self.gate_count().total()
    }

    fn as_dyn(&self) -> &dyn ParamUnitary;
}

impl<T: ParamUnitary> ParamUnitaryExt for T {
    fn as_dyn(&self) -> &dyn ParamUnitary {
        self
    }
}

impl ParamUnitaryExt for dyn ParamUnitary {
    fn as_dyn(&self) -> &dyn ParamUnitary {
        self
    }
}

fn apply_node(node: &dyn ParamUnitary, t: f64, state: StateVector, adjoint: bool) -> StateVector {
    match node.expand(t) {
        Expansion::Exp { primitive, theta } => {
            primitive.apply_exp_i(if adjoint { -theta } else { theta }, &state)
        }
        Expansion::Fixed(gate) => gate.apply(&state, adjoint),
        Expansion::Product(calls) => {
            // (C₁⋯Cₙ)ψ applies Cₙ first; (C₁⋯Cₙ)†ψ applies C₁† first.
            if adjoint {
                calls.iter().fold(state, |s, c| apply_node(c.node.as_ref(), c.time, s, !c.adjoint))
            } else {
                calls.iter().rev().fold(state, |s, c| apply_node(c.node.as_ref(), c.time, s, c.adjoint))
            }
        }
        Expansion::Power { call, count } => {
            let flip = adjoint != call.adjoint;
            (0..count).fold(state, |s, _| apply_node(call.node.as_ref(), call.time, s, flip))
        }
    }
}

fn emit_node(node: &dyn ParamUnitary, t: f64, adjoint: bool, out: &mut GateSequence) {
    match node.expand(t) {
        Expansion::Exp { primitive, theta } => {
            out.push(GateInstance::exp(primitive, if adjoint { -theta } else { theta }));
        }
        Expansion::Fixed(gate) => out.push(GateInstance::fixed(gate, adjoint)),
        Expansion::Product(calls) => {
            if adjoint {
                for c in &calls {
                    emit_node(c.node.as_ref(), c.time, !c.adjoint, out);
                }
            } else {
                for c in calls.iter().rev() {
                    emit_node(c.node.as_ref(), c.time, c.adjoint, out);
                }
            }
        }
        Expansion::Power { call, count } => {
            let flip = adjoint != call.adjoint;
            for _ in 0..count {
                emit_node(call.node.as_ref(), call.time, flip, out);
            }
        }
    }
}

/// Gate counts do not depend on time, so a fixed probe time is expanded and
/// results are memoized per node.
const COUNT_PROBE: f64 = 0.5;

fn count_node(node: &dyn ParamUnitary, memo: &mut HashMap<usize, GateCount>) -> GateCount {
    let key = node_key(node);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let count = match node.expand(COUNT_PROBE) {
        Expansion::Exp { primitive, .. } => GateCount::single(primitive.label()),
        Expansion::Fixed(_) => GateCount::default(),
        Expansion::Product(calls) => {
            let mut total = GateCount::default();
            for c in &calls {
                total.add(&count_node(c.node.as_ref(), memo));
            }
            total
        }
        Expansion::Power { call, count } => count_node(call.node.as_ref(), memo).times(count),
    };
    memo.insert(key, count.clone());
    count
}
