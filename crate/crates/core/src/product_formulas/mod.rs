//! Commutator (BCH) and Trotter-Suzuki product formulas over parameterized
//! unitaries, with exact gate accounting, time slicing and power-law fits.
//!
//! A formula is a tree of [`ParamUnitary`] nodes whose leaves are primitive
//! exponentials `exp(iθG)`. Inverses are realized by reversing the gate
//! order and negating angles.

mod bch;
mod fit;
mod nodes;
mod primitive;
mod sequence;
mod timeslice;
mod trotter;
mod unitary;

use std::sync::Arc;

pub use bch::{bch, bch_invocations, group_commutator, BchBase, BchLevel, BchOrderParams};
pub use fit::{fit_above_floor, fit_power_law, linear_grid, log_grid, sweep_and_fit, PowerLawFit};
pub use nodes::{conjugate_by, symmetrize, CommutatorTime, Conjugated, Product, Repeat, Scaled, Symmetrized};
pub use primitive::{FixedGate, FixedNode, Primitive, PrimitiveGate};
pub use sequence::{GateCount, GateInstance, GateSequence};
pub use timeslice::{sliced_error, theoretical_slices, timeslice, TimesliceRequest, Timesliced};
pub use trotter::{
    suzuki_coefficient, trotter, trotter_error_bound, trotter_invocations, MergedStrang, TrotterConditions,
    TrotterStep,
};
pub use unitary::{Call, EvalCache, Expansion, ParamUnitary, ParamUnitaryExt, Unitary};

use crate::error::Result;
use crate::tensor_core::Operator;

/// `t ↦ exp(itG)` for a Hermitian generator acting on its whole layout.
pub fn exp_node(label: impl Into<String>, generator: Operator) -> Result<Unitary> {
    Ok(PrimitiveGate::unit(Primitive::global(label, generator)?))
}

/// `t ↦ exp(i·scale·t·G)` sharing an existing primitive.
pub fn exp_node_scaled(primitive: &Arc<Primitive>, scale: f64) -> Unitary {
    PrimitiveGate::scaled(Arc::clone(primitive), scale)
}
