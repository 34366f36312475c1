use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use ndarray::s;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SynthError};
use crate::fock_ops::{annihilation, creation, embed_all, number, pauli, PauliAxis, QubitGate};
use crate::product_formulas::{
    conjugate_by, FixedGate, ParamUnitaryExt, Primitive, PrimitiveGate, Product, Unitary,
};
use crate::tensor_core::{
    expm_i, kron, spectral_norm, FactorAddress, FactorKind, HilbertLayout, ModeCutoff, Operator,
};

/// Which block of the generator carries the encoded operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockKind {
    /// Generator `[[0, A], [A†, 0]]`.
    OffDiagonal,
    /// Generator `[[A, 0], [0, D]]` with Hermitian `A`.
    UpperLeft,
    /// Any other qubit-frame image of an encoding.
    General,
}

/// A synthesized unitary paired with the Hermitian generator `G` of the
/// exact gate `exp(itG)` it approximates.
#[derive(Debug, Clone)]
pub struct BlockEncoding {
    unitary: Unitary,
    generator: Operator,
    kind: BlockKind,
    order: Option<f64>,
    warnings: Vec<String>,
}

impl BlockEncoding {
    pub fn new(unitary: Unitary, generator: Operator, kind: BlockKind, order: Option<f64>) -> Result<Self> {
        if unitary.layout() != generator.layout() {
            return Err(SynthError::LayoutMismatch {
                left: unitary.layout().to_string(),
                right: generator.layout().to_string(),
            });
        }
        if generator.layout().factors().first().map(|f| f.kind) != Some(FactorKind::Qubit) {
            return Err(SynthError::InvalidLayout("block encodings need a leading qubit factor".into()));
        }
        Ok(BlockEncoding { unitary, generator, kind, order, warnings: Vec::new() })
    }

    pub(crate) fn set_order(&mut self, order: Option<f64>) {
        self.order = order;
    }

    pub(crate) fn with_warnings(mut self, warnings: Vec<String>) -> Self {
        self.warnings.extend(warnings);
        self
    }

    pub fn unitary(&self) -> &Unitary {
        &self.unitary
    }

    pub fn generator(&self) -> &Operator {
        &self.generator
    }

    pub fn layout(&self) -> &HilbertLayout {
        self.generator.layout()
    }

    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    /// Claimed error order in `t`; `None` for exact primitives.
    pub fn order(&self) -> Option<f64> {
        self.order
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn label(&self) -> String {
        self.unitary.label()
    }

    /// The encoded operator: upper-right block for off-diagonal encodings,
    /// upper-left block otherwise.
    pub fn block_target(&self) -> Operator {
        match self.kind {
            BlockKind::OffDiagonal => upper_right_block(&self.generator),
            BlockKind::UpperLeft | BlockKind::General => upper_left_block(&self.generator),
        }
    }

    /// `exp(itG)`.
    pub fn exact(&self, t: f64) -> Result<Operator> {
        expm_i(&self.generator, t)
    }

    pub fn eval(&self, t: f64) -> Operator {
        self.unitary.eval(t)
    }

    /// `‖U(t) − exp(itG)‖`.
    pub fn error(&self, t: f64) -> Result<f64> {
        Ok(spectral_norm(&(&self.eval(t) - &self.exact(t)?)))
    }

    /// Total primitive invocations.
    pub fn cost(&self) -> u64 {
        self.unitary.cost()
    }
}

fn mode_layout(layout: &HilbertLayout) -> HilbertLayout {
    layout.tail().expect("block encoding layouts have a mode factor")
}

fn block(g: &Operator, row: usize, col: usize) -> Operator {
    let half = g.dim() / 2;
    let data = g.data().slice(s![row * half..(row + 1) * half, col * half..(col + 1) * half]).to_owned();
    Operator::new(mode_layout(g.layout()), data).expect("block of a finite operator")
}

/// `⟨0|G|1⟩` on the qubit factor.
pub fn upper_right_block(g: &Operator) -> Operator {
    block(g, 0, 1)
}

/// `⟨0|G|0⟩` on the qubit factor.
pub fn upper_left_block(g: &Operator) -> Operator {
    block(g, 0, 0)
}

/// `⟨1|G|1⟩` on the qubit factor.
pub fn lower_right_block(g: &Operator) -> Operator {
    block(g, 1, 1)
}

fn qubit_outer(row: usize, col: usize) -> Operator {
    Operator::basis_outer(HilbertLayout::qubit(), row, col)
}

/// `[[0, A], [A†, 0]]` on `qubit ⊗ layout(A)`.
pub fn off_diagonal_generator(a: &Operator) -> Operator {
    &kron(&qubit_outer(0, 1), a) + &kron(&qubit_outer(1, 0), &a.adjoint())
}

/// `[[upper, 0], [0, lower]]` on `qubit ⊗ layout`.
pub fn block_diagonal_generator(upper: &Operator, lower: &Operator) -> Operator {
    &kron(&qubit_outer(0, 0), upper) + &kron(&qubit_outer(1, 1), lower)
}

fn classify(g: &Operator) -> BlockKind {
    let tol = 1e-12 * g.max_abs().max(1.0);
    let diag_zero = upper_left_block(g).max_abs() <= tol && lower_right_block(g).max_abs() <= tol;
    let off_zero = upper_right_block(g).max_abs() <= tol;
    if diag_zero {
        BlockKind::OffDiagonal
    } else if off_zero {
        BlockKind::UpperLeft
    } else {
        BlockKind::General
    }
}

/// The primitive `S₁(t) = exp(it[[0, a†], [a, 0]])`.
pub fn s1(cutoff: ModeCutoff) -> Result<BlockEncoding> {
    let generator = off_diagonal_generator(&creation(cutoff));
    let primitive = Primitive::global("S1", generator.clone())?;
    BlockEncoding::new(PrimitiveGate::unit(primitive), generator, BlockKind::OffDiagonal, None)
}

/// Block encoding of the identity, `exp(itσˣ ⊗ I)`.
pub fn identity_encoding(mode_layout: &HilbertLayout) -> Result<BlockEncoding> {
    let generator = off_diagonal_generator(&Operator::identity(mode_layout.clone()));
    let primitive = Primitive::global("RX", generator.clone())?;
    BlockEncoding::new(PrimitiveGate::unit(primitive), generator, BlockKind::OffDiagonal, None)
}

/// `(g ⊗ I)·B(t)·(g ⊗ I)†` for a written-order qubit gate sequence `g`.
pub fn conjugate(b: &BlockEncoding, gates: &[QubitGate]) -> Result<BlockEncoding> {
    let frame = FixedGate::qubit_frame(b.layout(), FactorAddress(0), gates)?;
    let m = frame.matrix().clone();
    let generator = &(&m * b.generator()) * &m.adjoint();
    let unitary = conjugate_by(b.unitary(), frame)?;
    let kind = classify(&generator);
    Ok(BlockEncoding::new(unitary, generator, kind, b.order())?.with_warnings(b.warnings().to_vec()))
}

/// Product of four implementable gates reproducing `S₁(2α)` to `O(α²)`:
/// `e^{i(π/2)n̂}·e^{iα(a+a†)σʸ}·e^{−i(π/2)n̂}·e^{iα(a+a†)σˣ}` in written order.
///
/// The photon-number rotation turns `a + a†` into `2p̂`, so to first order
/// the product is `exp(2iα(x̂σˣ + p̂σʸ)) = S₁(2α)`. The returned node is
/// parameterized by `α`.
pub fn s1_from_conditional_displacements(cutoff: ModeCutoff) -> Result<Unitary> {
    let layout = HilbertLayout::qubit_mode(cutoff);
    let a = annihilation(cutoff);
    let quad = &a + &a.adjoint();
    let disp = |axis: PauliAxis| embed_all(&layout, &[(FactorAddress(0), &pauli(axis)), (FactorAddress(1), &quad)]);
    let targets = vec![FactorAddress(0), FactorAddress(1)];
    let disp_y = Arc::new(Primitive::new("cond_displacement", disp(PauliAxis::Y)?, targets.clone())?);
    let disp_x = Arc::new(Primitive::new("cond_displacement", disp(PauliAxis::X)?, targets)?);
    let n = embed_all(&layout, &[(FactorAddress(1), &number(cutoff))])?;
    let delay = Arc::new(Primitive::new("phase_delay", n, vec![FactorAddress(1)])?);
    let rotate: Unitary = Arc::new(PrimitiveGate::new(Arc::clone(&delay), 0.0, FRAC_PI_2));
    let unrotate: Unitary = Arc::new(PrimitiveGate::new(delay, 0.0, -FRAC_PI_2));
    Product::new(
        "S1~",
        vec![
            (rotate, 1.0),
            (PrimitiveGate::scaled(disp_y, 1.0), 1.0),
            (unrotate, 1.0),
            (PrimitiveGate::scaled(disp_x, 1.0), 1.0),
        ],
    )
}

/// Effective `S₁` time of [`s1_from_conditional_displacements`] at `α`.
pub fn conditional_displacement_s1_time(alpha: f64) -> f64 {
    2.0 * alpha
}

/// `‖[A, B]‖` restricted to photon numbers `≤ Λ − margin` on every mode.
pub fn interior_commutator_norm(a: &Operator, b: &Operator, margin: u32) -> Result<f64> {
    let p = interior_projector_on(a.layout(), margin)?;
    let c = crate::tensor_core::commutator(a, b)?;
    Ok(spectral_norm(&(&(&p * &c) * &p)))
}

/// Projector onto photon numbers `≤ Λ − margin` on every mode of `layout`.
pub fn interior_projector_on(layout: &HilbertLayout, margin: u32) -> Result<Operator> {
    let locals: Vec<(FactorAddress, Operator)> = layout
        .factors()
        .iter()
        .enumerate()
        .filter_map(|(i, f)| f.cutoff().map(|c| (FactorAddress(i), crate::fock_ops::interior_projector(c, margin))))
        .collect();
    let refs: Vec<(FactorAddress, &Operator)> = locals.iter().map(|(a, o)| (*a, o)).collect();
    embed_all(layout, &refs)
}
