//! Truncated bosonic and single-qubit operators, and embedding of local
//! operators into multi-factor layouts.
//!
//! Ladder operators carry the implicit projector onto `|0⟩..|Λ⟩`, so
//! canonical relations hold everywhere except on the top Fock state:
//! `[a, a†] = diag(1, …, 1, −Λ)` and `[x̂, p̂] = (i/2)·diag(1, …, 1, −Λ)`.
//! Quadratures follow `x̂ = (a + a†)/2`, `p̂ = −(i/2)(a − a†)`.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SynthError};
use crate::tensor_core::{kron, FactorKind, HilbertLayout, Operator};
use crate::C64;

pub use crate::tensor_core::{FactorAddress, ModeCutoff};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// `a` with superdiagonal `√1, …, √Λ`.
pub fn annihilation(cutoff: ModeCutoff) -> Operator {
    Operator::from_fn(HilbertLayout::mode(cutoff), |i, j| {
        if j == i + 1 {
            C64::new((j as f64).sqrt(), 0.0)
        } else {
            ZERO
        }
    })
}

/// `a†`, the adjoint of [`annihilation`].
pub fn creation(cutoff: ModeCutoff) -> Operator {
    annihilation(cutoff).adjoint()
}

/// `n̂ = diag(0, …, Λ)`.
pub fn number(cutoff: ModeCutoff) -> Operator {
    Operator::from_fn(HilbertLayout::mode(cutoff), |i, j| if i == j { C64::new(i as f64, 0.0) } else { ZERO })
}

/// `x̂ = (a + a†)/2`.
pub fn position(cutoff: ModeCutoff) -> Operator {
    let a = annihilation(cutoff);
    (&a + &a.adjoint()).scale_re(0.5)
}

/// `p̂ = −(i/2)(a − a†)`.
pub fn momentum(cutoff: ModeCutoff) -> Operator {
    let a = annihilation(cutoff);
    (&a - &a.adjoint()).scale(C64::new(0.0, -0.5))
}

/// `|n⟩⟨n|` on a single mode.
pub fn fock_projector(cutoff: ModeCutoff, n: usize) -> Result<Operator> {
    if n >= cutoff.dim() {
        return Err(SynthError::invalid(format!("Fock level {n} exceeds cutoff {cutoff}")));
    }
    Ok(Operator::basis_outer(HilbertLayout::mode(cutoff), n, n))
}

/// Projector onto photon numbers `≤ Λ − k`, where identities involving `k`
/// ladder steps are unaffected by the cutoff.
pub fn interior_projector(cutoff: ModeCutoff, k: u32) -> Operator {
    let top = cutoff.get().saturating_sub(k) as usize;
    Operator::from_fn(HilbertLayout::mode(cutoff), |i, j| if i == j && i <= top { ONE } else { ZERO })
}

/// `R_Z0 = I − 2|0⟩⟨0|`, flipping the sign of the vacuum only.
pub fn vacuum_projector_flip(cutoff: ModeCutoff) -> Operator {
    Operator::from_fn(HilbertLayout::mode(cutoff), |i, j| match (i, j) {
        (0, 0) => -ONE,
        (i, j) if i == j => ONE,
        _ => ZERO,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    /// The axes `(j, k)` completing `self` to a cyclic triple.
    pub fn cyclic_partners(self) -> (PauliAxis, PauliAxis) {
        match self {
            PauliAxis::X => (PauliAxis::Y, PauliAxis::Z),
            PauliAxis::Y => (PauliAxis::Z, PauliAxis::X),
            PauliAxis::Z => (PauliAxis::X, PauliAxis::Y),
        }
    }
}

pub fn pauli(axis: PauliAxis) -> Operator {
    let m = match axis {
        PauliAxis::X => [[ZERO, ONE], [ONE, ZERO]],
        PauliAxis::Y => [[ZERO, -I], [I, ZERO]],
        PauliAxis::Z => [[ONE, ZERO], [ZERO, -ONE]],
    };
    Operator::from_fn(HilbertLayout::qubit(), |i, j| m[i][j])
}

/// Single-qubit gates. Rotations follow `R_a(θ) = exp(−iθσᵃ/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum QubitGate {
    X,
    S,
    Sdg,
    H,
    Rz(f64),
    Rx(f64),
}

impl QubitGate {
    pub fn label(&self) -> String {
        match self {
            QubitGate::X => "X".into(),
            QubitGate::S => "S".into(),
            QubitGate::Sdg => "Sdg".into(),
            QubitGate::H => "H".into(),
            QubitGate::Rz(t) => format!("RZ({t})"),
            QubitGate::Rx(t) => format!("RX({t})"),
        }
    }

    pub fn matrix(&self) -> Operator {
        let h = FRAC_1_SQRT_2;
        let m = match *self {
            QubitGate::X => [[ZERO, ONE], [ONE, ZERO]],
            QubitGate::S => [[ONE, ZERO], [ZERO, I]],
            QubitGate::Sdg => [[ONE, ZERO], [ZERO, -I]],
            QubitGate::H => [[C64::new(h, 0.0), C64::new(h, 0.0)], [C64::new(h, 0.0), C64::new(-h, 0.0)]],
            QubitGate::Rz(t) => [[C64::from_polar(1.0, -t / 2.0), ZERO], [ZERO, C64::from_polar(1.0, t / 2.0)]],
            QubitGate::Rx(t) => {
                let (c, s) = ((t / 2.0).cos(), (t / 2.0).sin());
                [[C64::new(c, 0.0), C64::new(0.0, -s)], [C64::new(0.0, -s), C64::new(c, 0.0)]]
            }
        };
        Operator::from_fn(HilbertLayout::qubit(), |i, j| m[i][j])
    }
}

/// Product of gates in written (matrix) order: `[g₁, g₂]` gives `g₁·g₂`.
pub fn qubit_gate_product(gates: &[QubitGate]) -> Operator {
    gates
        .iter()
        .fold(Operator::identity(HilbertLayout::qubit()), |acc, g| &acc * &g.matrix())
}

pub fn qubit_gate(gate: QubitGate) -> Operator {
    gate.matrix()
}

/// Places a local operator on one factor with identities elsewhere.
pub fn embed(op: &Operator, layout: &HilbertLayout, at: FactorAddress) -> Result<Operator> {
    embed_all(layout, &[(at, op)])
}

/// Tensor product of local operators on distinct factors, identity on the rest.
pub fn embed_all(layout: &HilbertLayout, locals: &[(FactorAddress, &Operator)]) -> Result<Operator> {
    let mut slots: Vec<Option<&Operator>> = vec![None; layout.len()];
    for (at, op) in locals {
        let factor = layout.factor(*at)?;
        let local = op.layout().factors();
        if local.len() != 1 {
            return Err(SynthError::FactorAddress {
                index: at.0,
                reason: format!("operator spans {} factors, expected one", local.len()),
            });
        }
        if local[0].kind != factor.kind || local[0].dim != factor.dim {
            return Err(SynthError::FactorAddress {
                index: at.0,
                reason: format!(
                    "operator acts on {:?} of dimension {}, factor is {:?} of dimension {}",
                    local[0].kind, local[0].dim, factor.kind, factor.dim
                ),
            });
        }
        if slots[at.0].replace(*op).is_some() {
            return Err(SynthError::FactorAddress { index: at.0, reason: "addressed twice".into() });
        }
    }
    let mut result: Option<Operator> = None;
    for (slot, factor) in slots.into_iter().zip(layout.factors()) {
        let local = match slot {
            Some(op) => op.clone(),
            None => Operator::identity(HilbertLayout::new(vec![*factor])?),
        };
        result = Some(match result {
            None => local,
            Some(acc) => kron(&acc, &local),
        });
    }
    Ok(result.expect("layout has at least one factor"))
}

/// Address of the first factor of the given kind.
pub fn first_of_kind(layout: &HilbertLayout, kind: FactorKind) -> Option<FactorAddress> {
    layout.factors().iter().position(|f| f.kind == kind).map(FactorAddress)
}

/// Cutoff of the mode at `at`.
pub fn cutoff_at(layout: &HilbertLayout, at: FactorAddress) -> Result<ModeCutoff> {
    layout.factor(at)?.cutoff().ok_or_else(|| SynthError::FactorAddress {
        index: at.0,
        reason: "factor is a qubit, expected a mode".into(),
    })
}
