use std::ops::{Add, Mul, Neg, Sub};

use ndarray::{Array1, Array2, ArrayView2};

use super::layout::HilbertLayout;
use crate::error::{Result, SynthError};
use crate::C64;

/// Complex state vector in the flattened basis of some layout.
pub type StateVector = Array1<C64>;

/// Dense square complex matrix tagged with the layout that fixes its basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    layout: HilbertLayout,
    data: Array2<C64>,
}

impl Operator {
    pub fn new(layout: HilbertLayout, data: Array2<C64>) -> Result<Self> {
        let d = layout.dim();
        if data.nrows() != d || data.ncols() != d {
            return Err(SynthError::Shape {
                rows: data.nrows(),
                cols: data.ncols(),
                expected: d,
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(SynthError::NonFinite);
        }
        Ok(Operator { layout, data })
    }

    /// Builds an operator from a matrix already known to be well formed.
    pub(crate) fn from_parts(layout: HilbertLayout, data: Array2<C64>) -> Self {
        debug_assert_eq!(data.nrows(), layout.dim());
        debug_assert_eq!(data.ncols(), layout.dim());
        Operator { layout, data }
    }

    pub fn from_fn(layout: HilbertLayout, f: impl Fn(usize, usize) -> C64) -> Self {
        let d = layout.dim();
        Operator { layout, data: Array2::from_shape_fn((d, d), |(i, j)| f(i, j)) }
    }

    pub fn zeros(layout: HilbertLayout) -> Self {
        let d = layout.dim();
        Operator { layout, data: Array2::zeros((d, d)) }
    }

    pub fn identity(layout: HilbertLayout) -> Self {
        let d = layout.dim();
        Operator { layout, data: Array2::eye(d) }
    }

    pub fn diagonal(layout: HilbertLayout, diag: &[C64]) -> Result<Self> {
        let d = layout.dim();
        if diag.len() != d {
            return Err(SynthError::Shape { rows: diag.len(), cols: diag.len(), expected: d });
        }
        let mut data = Array2::zeros((d, d));
        for (i, z) in diag.iter().enumerate() {
            data[[i, i]] = *z;
        }
        Operator::new(layout, data)
    }

    /// `|ket⟩⟨bra|` for two basis indices.
    pub fn basis_outer(layout: HilbertLayout, ket: usize, bra: usize) -> Self {
        let mut op = Operator::zeros(layout);
        op.data[[ket, bra]] = C64::new(1.0, 0.0);
        op
    }

    pub fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn data(&self) -> &Array2<C64> {
        &self.data
    }

    pub fn view(&self) -> ArrayView2<'_, C64> {
        self.data.view()
    }

    pub fn into_data(self) -> Array2<C64> {
        self.data
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[[row, col]]
    }

    pub fn adjoint(&self) -> Operator {
        let data = self.data.t().mapv(|z| z.conj());
        Operator { layout: self.layout.clone(), data }
    }

    pub fn scale(&self, c: C64) -> Operator {
        Operator { layout: self.layout.clone(), data: &self.data * c }
    }

    pub fn scale_re(&self, c: f64) -> Operator {
        self.scale(C64::new(c, 0.0))
    }

    pub fn trace(&self) -> C64 {
        self.data.diag().sum()
    }

    /// Largest entry modulus; cheap proxy used for relative tolerances.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn apply(&self, state: &StateVector) -> StateVector {
        self.data.dot(state)
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, mut exponent: u64) -> Operator {
        let mut result = Operator::identity(self.layout.clone());
        let mut base = self.clone();
        while exponent > 0 {
            if exponent & 1 == 1 {
                result = &result * &base;
            }
            exponent >>= 1;
            if exponent > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn ensure_same_layout(&self, other: &Operator) -> Result<()> {
        if self.layout != other.layout {
            return Err(SynthError::LayoutMismatch {
                left: self.layout.to_string(),
                right: other.layout.to_string(),
            });
        }
        Ok(())
    }

    /// Same matrix under a different but equally sized layout.
    pub fn relabel(self, layout: HilbertLayout) -> Result<Operator> {
        Operator::new(layout, self.data)
    }

    /// Restriction to the given basis indices, in the given order.
    pub fn submatrix(&self, indices: &[usize]) -> Array2<C64> {
        Array2::from_shape_fn((indices.len(), indices.len()), |(i, j)| {
            self.data[[indices[i], indices[j]]]
        })
    }
}

fn assert_layouts(a: &Operator, b: &Operator) {
    assert_eq!(a.layout, b.layout, "operator layouts differ: {} vs {}", a.layout, b.layout);
}

impl Mul for &Operator {
    type Output = Operator;

    /// Matrix product. Panics when the layouts differ.
    fn mul(self, rhs: &Operator) -> Operator {
        assert_layouts(self, rhs);
        Operator { layout: self.layout.clone(), data: self.data.dot(&rhs.data) }
    }
}

impl Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        assert_layouts(self, rhs);
        Operator { layout: self.layout.clone(), data: &self.data + &rhs.data }
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        assert_layouts(self, rhs);
        Operator { layout: self.layout.clone(), data: &self.data - &rhs.data }
    }
}

impl Neg for &Operator {
    type Output = Operator;

    fn neg(self) -> Operator {
        Operator { layout: self.layout.clone(), data: self.data.mapv(|z| -z) }
    }
}

/// Kronecker product; the result layout is `a.layout` followed by `b.layout`.
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    let (da, db) = (a.dim(), b.dim());
    let mut data = Array2::zeros((da * db, da * db));
    for i in 0..da {
        for j in 0..da {
            let aij = a.data[[i, j]];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            let mut block = data.slice_mut(ndarray::s![i * db..(i + 1) * db, j * db..(j + 1) * db]);
            block.zip_mut_with(&b.data, |dst, src| *dst = aij * src);
        }
    }
    Operator { layout: a.layout.concat(&b.layout), data }
}

/// `AB − BA`.
pub fn commutator(a: &Operator, b: &Operator) -> Result<Operator> {
    a.ensure_same_layout(b)?;
    Ok(&(a * b) - &(b * a))
}

/// `AB + BA`.
pub fn anticommutator(a: &Operator, b: &Operator) -> Result<Operator> {
    a.ensure_same_layout(b)?;
    Ok(&(a * b) + &(b * a))
}

pub fn is_unitary(a: &Operator, tol: f64) -> bool {
    let gram = &a.adjoint() * a;
    super::spectral_norm(&(&gram - &Operator::identity(a.layout.clone()))) <= tol
}

pub fn is_hermitian(a: &Operator, tol: f64) -> bool {
    super::spectral_norm(&(a - &a.adjoint())) <= tol
}

/// Normalized product basis state.
pub fn basis_state(layout: &HilbertLayout, levels: &[usize]) -> Result<StateVector> {
    let index = layout.index_of(levels)?;
    let mut v = Array1::zeros(layout.dim());
    v[index] = C64::new(1.0, 0.0);
    Ok(v)
}

/// `⟨a|b⟩`.
pub fn inner(a: &StateVector, b: &StateVector) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sqr(v: &StateVector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}
