use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use super::gate::{commutator_exponential, local_primitive, ExactTarget, Recipe, SynthesizedGate};
use crate::error::Result;
use crate::fock_ops::{annihilation, creation, embed_all, momentum, number, pauli, position, PauliAxis};
use crate::product_formulas::{PrimitiveGate, Unitary};
use crate::tensor_core::{anticommutator, commutator, FactorAddress, HilbertLayout, ModeCutoff, Operator};
use crate::C64;

const QUBIT: FactorAddress = FactorAddress(0);
const MODE: FactorAddress = FactorAddress(1);

/// Axis of an effective Pauli operator on `span{|0⟩, |1⟩}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EffectiveAxis {
    X,
    Y,
    Z,
}

/// Effective Pauli operator from the truncated-ladder projector forms:
/// `a†(I − n̂) + (I − n̂)a`, `i(a†(I − n̂) − (I − n̂)a)`, `I − 2a†(I − n̂)a`.
pub fn effective_pauli(axis: EffectiveAxis, cutoff: ModeCutoff) -> Operator {
    let a = annihilation(cutoff);
    let ad = creation(cutoff);
    let id = Operator::identity(HilbertLayout::mode(cutoff));
    let p0 = &id - &number(cutoff);
    match axis {
        EffectiveAxis::X => &(&ad * &p0) + &(&p0 * &a),
        EffectiveAxis::Y => (&(&ad * &p0) - &(&p0 * &a)).scale(C64::new(0.0, 1.0)),
        EffectiveAxis::Z => &id - &(&(&ad * &p0) * &a).scale_re(2.0),
    }
}

fn times_z(layout: &HilbertLayout, mode_op: &Operator) -> Result<Operator> {
    embed_all(layout, &[(QUBIT, &pauli(PauliAxis::Z)), (MODE, mode_op)])
}

/// Mode operators `(A, B, target)` of the two commutator terms and the
/// linear quadrature term `L` with `σ_eff = target₁ + target₂ + L`.
fn pauli_terms(axis: EffectiveAxis, cutoff: ModeCutoff) -> [(Operator, Operator, Operator); 2] {
    let x = position(cutoff);
    let p = momentum(cutoff);
    let n = number(cutoff);
    let i = C64::new(0.0, 1.0);
    let anti = |q: &Operator| anticommutator(q, &n).expect("same layout");
    let comm = |a: &Operator, b: &Operator| commutator(a, b).expect("same layout");
    match axis {
        EffectiveAxis::X => [
            (x.clone(), n.clone(), anti(&x).scale_re(-1.0)),
            (p.clone(), n.clone(), comm(&p, &n).scale(i)),
        ],
        EffectiveAxis::Y => [
            (n.clone(), x.clone(), comm(&n, &x).scale(i)),
            (p.clone(), n.clone(), anti(&p).scale_re(-1.0)),
        ],
        EffectiveAxis::Z => unreachable!("the Z gate needs no commutators"),
    }
}

/// `exp(iλ²σ_eff σᶻ)` parameterized by `λ²`.
///
/// X and Y: `σ_eff^x = 2x̂ − {x̂, n̂} + i[p̂, n̂]` and
/// `σ_eff^y = 2p̂ + i[n̂, x̂] − {p̂, n̂}`, with the anticommutator terms from
/// `[iqσˣ, in̂σʸ] = −i{q, n̂}σᶻ` and the commutator terms from an
/// unconditional shift against `n̂σᶻ`. Z: `I − 4n̂ + 2n̂²` reduces to
/// `I − 2n̂` on the span, a product of two exact exponentials compared there.
pub fn effective_pauli_span01(axis: EffectiveAxis, recipe: &Recipe, cutoff: ModeCutoff) -> Result<SynthesizedGate> {
    let layout = HilbertLayout::qubit_mode(cutoff);
    let exact = ExactTarget::generator(times_z(&layout, &effective_pauli(axis, cutoff))?)?;
    let name = format!("effective-pauli-{}", format!("{axis:?}").to_lowercase());
    let z = pauli(PauliAxis::Z);
    let n = number(cutoff);
    if axis == EffectiveAxis::Z {
        let phase = local_primitive("qubit_rotation", &layout, &[(QUBIT, &z)])?;
        let rotation = local_primitive("cond_rotation_z", &layout, &[(QUBIT, &z), (MODE, &n)])?;
        let terms: Vec<Unitary> = vec![PrimitiveGate::scaled(phase, 1.0), PrimitiveGate::scaled(rotation, -2.0)];
        let unitary = recipe.combine(&name, &terms)?;
        return SynthesizedGate::new(name, unitary, exact, cutoff.get() - 1, f64::INFINITY);
    }
    let (cond_a, cond_b, linear, linear_label) = match axis {
        EffectiveAxis::X => (PauliAxis::X, PauliAxis::Y, position(cutoff), "cond_position_shift"),
        _ => (PauliAxis::Z, PauliAxis::X, momentum(cutoff), "cond_momentum_boost"),
    };
    let [(a1, b1, t1), (a2, b2, t2)] = pauli_terms(axis, cutoff);
    let mut terms = Vec::new();
    let (first_a, first_b) = match axis {
        EffectiveAxis::X => (
            local_primitive("cond_position_shift", &layout, &[(QUBIT, &pauli(cond_a)), (MODE, &a1)])?,
            local_primitive("cond_rotation_y", &layout, &[(QUBIT, &pauli(cond_b)), (MODE, &b1)])?,
        ),
        _ => (
            local_primitive("cond_rotation_z", &layout, &[(QUBIT, &pauli(cond_a)), (MODE, &a1)])?,
            local_primitive("position_shift", &layout, &[(MODE, &b1)])?,
        ),
    };
    terms.push(commutator_exponential(&first_a, &first_b, &times_z(&layout, &t1)?, recipe.commutator)?);
    let (second_a, second_b) = match axis {
        EffectiveAxis::X => (
            local_primitive("momentum_boost", &layout, &[(MODE, &a2)])?,
            local_primitive("cond_rotation_z", &layout, &[(QUBIT, &z), (MODE, &b2)])?,
        ),
        _ => (
            local_primitive("cond_momentum_boost", &layout, &[(QUBIT, &pauli(PauliAxis::X)), (MODE, &a2)])?,
            local_primitive("cond_rotation_y", &layout, &[(QUBIT, &pauli(PauliAxis::Y)), (MODE, &b2)])?,
        ),
    };
    terms.push(commutator_exponential(&second_a, &second_b, &times_z(&layout, &t2)?, recipe.commutator)?);
    let shift = local_primitive(linear_label, &layout, &[(QUBIT, &z), (MODE, &linear)])?;
    terms.push(PrimitiveGate::scaled(shift, 2.0));
    let unitary = recipe.combine(&name, &terms)?;
    SynthesizedGate::new(name, unitary, exact, 0, recipe.error_exponent())
}

/// The decomposition `σ_eff = target₁ + target₂ + 2q` used by the X and Y
/// syntheses, as mode operators.
pub fn effective_pauli_decomposition(axis: EffectiveAxis, cutoff: ModeCutoff) -> Option<Operator> {
    if axis == EffectiveAxis::Z {
        return None;
    }
    let [(_, _, t1), (_, _, t2)] = pauli_terms(axis, cutoff);
    let linear = match axis {
        EffectiveAxis::X => position(cutoff),
        _ => momentum(cutoff),
    };
    Some(&(&t1 + &t2) + &linear.scale_re(2.0))
}

/// `n̂(n̂ − 1)σᶻ`.
pub fn anharmonicity_generator(cutoff: ModeCutoff) -> Result<Operator> {
    let n = number(cutoff);
    let id = Operator::identity(HilbertLayout::mode(cutoff));
    times_z(&HilbertLayout::qubit_mode(cutoff), &(&n * &(&n - &id)))
}

/// `exp(iλ²n̂(n̂ − 1)σᶻ)` from `[(1/√2)n̂σˣ, (1/√2)n̂σʸ] = in̂²σᶻ` and the
/// conditional rotation `exp(−iλ²n̂σᶻ)`.
pub fn anharmonicity_gate(recipe: &Recipe, cutoff: ModeCutoff) -> Result<SynthesizedGate> {
    let layout = HilbertLayout::qubit_mode(cutoff);
    let n = number(cutoff);
    let scaled = n.scale_re(FRAC_1_SQRT_2);
    let a = local_primitive("cond_rotation_x", &layout, &[(QUBIT, &pauli(PauliAxis::X)), (MODE, &scaled)])?;
    let b = local_primitive("cond_rotation_y", &layout, &[(QUBIT, &pauli(PauliAxis::Y)), (MODE, &scaled)])?;
    let square = times_z(&layout, &(&n * &n))?;
    let rotation = local_primitive("cond_rotation_z", &layout, &[(QUBIT, &pauli(PauliAxis::Z)), (MODE, &n)])?;
    let terms = vec![
        commutator_exponential(&a, &b, &square, recipe.commutator)?,
        PrimitiveGate::scaled(rotation, -1.0),
    ];
    let unitary = recipe.combine("anharmonicity", &terms)?;
    let exact = ExactTarget::generator(anharmonicity_generator(cutoff)?)?;
    SynthesizedGate::new("anharmonicity", unitary, exact, 0, recipe.error_exponent())
}
