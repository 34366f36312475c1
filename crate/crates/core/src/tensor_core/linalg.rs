//! Matrix exponential, spectral norm and Hermitian eigendecomposition.
//!
//! `expm` uses scaling and squaring with diagonal Padé approximants of
//! degree 3, 5, 7, 9 or 13 picked from the 1-norm (Higham 2005). Linear
//! solves, SVDs and eigendecompositions are delegated to nalgebra.

use nalgebra::{DMatrix, SymmetricEigen};
use ndarray::{Array1, Array2};

use super::layout::HilbertLayout;
use super::operator::{Operator, StateVector};
use crate::error::{Result, SynthError};
use crate::tolerances::Tolerances;
use crate::C64;

const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.539398330063230e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068e0;
const THETA_13: f64 = 5.371920351148152e0;

const PADE_3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE_5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE_7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE_9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Matrix exponential with the default dimension cap.
pub fn expm(a: &Operator) -> Result<Operator> {
    expm_capped(a, Tolerances::DEFAULT.dim_cap)
}

/// Matrix exponential rejecting dimensions above `dim_cap`.
pub fn expm_capped(a: &Operator, dim_cap: usize) -> Result<Operator> {
    if a.dim() > dim_cap {
        return Err(SynthError::DimensionCap { dim: a.dim(), cap: dim_cap });
    }
    let data = expm_dense(a.data());
    Operator::new(a.layout().clone(), data)
}

/// `exp(i·t·G)` for a Hermitian or general generator `G`.
pub fn expm_i(generator: &Operator, t: f64) -> Result<Operator> {
    expm(&generator.scale(C64::new(0.0, t)))
}

fn one_norm(a: &Array2<C64>) -> f64 {
    a.columns().into_iter().map(|c| c.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

fn add_scaled(acc: &mut Array2<C64>, m: &Array2<C64>, c: f64) {
    acc.zip_mut_with(m, |x, y| *x += y * c);
}

fn expm_dense(a: &Array2<C64>) -> Array2<C64> {
    let n = a.nrows();
    let ident: Array2<C64> = Array2::eye(n);
    let norm = one_norm(a);
    if norm == 0.0 {
        return ident;
    }
    let low: [(&[f64], f64); 4] = [(&PADE_3, THETA_3), (&PADE_5, THETA_5), (&PADE_7, THETA_7), (&PADE_9, THETA_9)];
    for (coeffs, theta) in low {
        if norm <= theta {
            let (u, v) = pade_low(a, &ident, coeffs);
            return solve_pade(&u, &v);
        }
    }
    let squarings = (norm / THETA_13).log2().ceil().max(0.0) as i32;
    let scaled = a.mapv(|z| z / 2f64.powi(squarings));
    let (u, v) = pade_13(&scaled, &ident);
    let mut result = solve_pade(&u, &v);
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}

fn pade_low(a: &Array2<C64>, ident: &Array2<C64>, b: &[f64]) -> (Array2<C64>, Array2<C64>) {
    let a2 = a.dot(a);
    let mut even = ident.mapv(|z| z * b[0]);
    let mut odd = ident.mapv(|z| z * b[1]);
    let mut power = ident.clone();
    let mut j = 2;
    while j < b.len() {
        power = power.dot(&a2);
        add_scaled(&mut even, &power, b[j]);
        add_scaled(&mut odd, &power, b[j + 1]);
        j += 2;
    }
    (a.dot(&odd), even)
}

fn pade_13(a: &Array2<C64>, ident: &Array2<C64>) -> (Array2<C64>, Array2<C64>) {
    let b = &PADE_13;
    let a2 = a.dot(a);
    let a4 = a2.dot(&a2);
    let a6 = a4.dot(&a2);
    let mut inner_u = a6.mapv(|z| z * b[13]);
    add_scaled(&mut inner_u, &a4, b[11]);
    add_scaled(&mut inner_u, &a2, b[9]);
    let mut u = a6.dot(&inner_u);
    add_scaled(&mut u, &a6, b[7]);
    add_scaled(&mut u, &a4, b[5]);
    add_scaled(&mut u, &a2, b[3]);
    add_scaled(&mut u, ident, b[1]);
    let u = a.dot(&u);
    let mut inner_v = a6.mapv(|z| z * b[12]);
    add_scaled(&mut inner_v, &a4, b[10]);
    add_scaled(&mut inner_v, &a2, b[8]);
    let mut v = a6.dot(&inner_v);
    add_scaled(&mut v, &a6, b[6]);
    add_scaled(&mut v, &a4, b[4]);
    add_scaled(&mut v, &a2, b[2]);
    add_scaled(&mut v, ident, b[0]);
    (u, v)
}

/// Solves `(V − U) X = V + U`.
fn solve_pade(u: &Array2<C64>, v: &Array2<C64>) -> Array2<C64> {
    let lhs = to_nalgebra(&(v - u));
    let rhs = to_nalgebra(&(v + u));
    let solved = lhs
        .lu()
        .solve(&rhs)
        .expect("Padé denominator is nonsingular for norms within the scaling threshold");
    from_nalgebra(&solved)
}

pub(crate) fn to_nalgebra(a: &Array2<C64>) -> DMatrix<C64> {
    DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[[i, j]])
}

pub(crate) fn from_nalgebra(m: &DMatrix<C64>) -> Array2<C64> {
    Array2::from_shape_fn((m.nrows(), m.ncols()), |(i, j)| m[(i, j)])
}

/// Largest singular value with the default tolerances.
pub fn spectral_norm(a: &Operator) -> f64 {
    spectral_norm_with(a, &Tolerances::DEFAULT)
}

/// Largest singular value: full SVD up to `svd_max_dim`, power iteration on
/// `A†A` above it.
pub fn spectral_norm_with(a: &Operator, tol: &Tolerances) -> f64 {
    if a.dim() <= tol.svd_max_dim {
        to_nalgebra(a.data()).singular_values().iter().copied().fold(0.0, f64::max)
    } else {
        power_iteration_norm(a.data(), tol.power_iteration_rel)
    }
}

fn power_iteration_norm(a: &Array2<C64>, rel: f64) -> f64 {
    let n = a.nrows();
    let adj = a.t().mapv(|z| z.conj());
    // Deterministic start with no special alignment to basis vectors.
    let mut v: Array1<C64> =
        Array1::from_shape_fn(n, |i| C64::new(1.0 + (i as f64 * 0.618).fract(), (i as f64 * 0.414).fract()));
    let mut estimate = 0.0;
    for _ in 0..20_000 {
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            return 0.0;
        }
        v.mapv_inplace(|z| z / vnorm);
        let w = adj.dot(&a.dot(&v));
        let next = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (next - estimate).abs() <= rel * next {
            return next.sqrt();
        }
        estimate = next;
        v = w;
    }
    estimate.sqrt()
}

/// Residual accepted at once, relative to the largest entry.
const EIGEN_RESIDUAL_TIGHT: f64 = 1e-13;
/// Residual accepted when no threshold meets the tight bound.
const EIGEN_RESIDUAL: f64 = 1e-10;

/// Convergence thresholds of the symmetric QR iteration, tried in order.
/// Machine epsilon can deflate wrongly on highly degenerate spectra.
const EIGEN_EPS: [f64; 4] = [f64::EPSILON, 1e-14, 1e-13, 1e-12];

fn not_converged() -> SynthError {
    SynthError::invalid("symmetric eigensolver did not converge")
}

/// Eigenvalues and orthonormal eigenvectors (as columns) of a Hermitian
/// matrix, through real symmetric solvers.
///
/// A complex `H = A + iB` is diagonalized through `[[A, −B], [B, A]]`, whose
/// spectrum is that of `H` doubled; each eigenspace of `H` is recovered by
/// orthonormalizing `u + iv` over the eigenvectors `(u, v)` of its cluster.
fn hermitian_eigh(h: &Array2<C64>, eps: f64) -> Result<(Vec<f64>, Array2<C64>)> {
    let n = h.nrows();
    let scale = h.iter().fold(0.0f64, |m, z| m.max(z.norm())).max(1.0);
    let sym = |i: usize, j: usize| 0.5 * (h[[i, j]] + h[[j, i]].conj());
    if h.iter().all(|z| z.im.abs() <= 1e-15 * scale) {
        let real = DMatrix::<f64>::from_fn(n, n, |i, j| sym(i, j).re);
        let eig = SymmetricEigen::try_new(real, eps, 0).ok_or_else(not_converged)?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = Array2::from_shape_fn((n, n), |(i, k)| C64::new(eig.eigenvectors[(i, order[k])], 0.0));
        return Ok((values, vectors));
    }
    let real = DMatrix::<f64>::from_fn(2 * n, 2 * n, |i, j| {
        let z = sym(i % n, j % n);
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let eig = SymmetricEigen::try_new(real, eps, 0).ok_or_else(not_converged)?;
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let cluster_tol = 1e-9 * scale;
    let mut values = Vec::with_capacity(n);
    let mut basis: Vec<Array1<C64>> = Vec::with_capacity(n);
    let mut start = 0;
    while start < 2 * n {
        let mut end = start + 1;
        while end < 2 * n && eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]] <= cluster_tol {
            end += 1;
        }
        if (end - start) % 2 != 0 {
            return Err(SynthError::invalid("Hermitian eigenspaces could not be separated"));
        }
        let mut pool: Vec<Array1<C64>> = order[start..end]
            .iter()
            .map(|&k| {
                let col = eig.eigenvectors.column(k);
                Array1::from_shape_fn(n, |i| C64::new(col[i], col[n + i]))
            })
            .collect();
        let cluster_value = order[start..end].iter().map(|&k| eig.eigenvalues[k]).sum::<f64>() / (end - start) as f64;
        let rank = (end - start) / 2;
        // The largest remainder after k picks is at least √(2(m−k)/(2m−k)).
        let floor = 0.5 * (2.0 / (rank as f64 + 1.0)).sqrt();
        for _ in 0..rank {
            let norms: Vec<f64> = pool.iter().map(|w| w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
            let (best, &norm) = norms.iter().enumerate().max_by(|x, y| x.1.total_cmp(y.1)).expect("non-empty cluster");
            if norm < floor {
                return Err(SynthError::invalid("Hermitian eigenspaces could not be separated"));
            }
            let picked = pool.swap_remove(best).mapv(|z| z / norm);
            for w in &mut pool {
                let overlap: C64 = picked.iter().zip(w.iter()).map(|(x, y)| x.conj() * y).sum();
                w.zip_mut_with(&picked, |y, x| *y -= overlap * x);
            }
            basis.push(picked);
            values.push(cluster_value);
        }
        start = end;
    }
    let vectors = Array2::from_shape_fn((n, n), |(i, k)| basis[k][i]);
    Ok((values, vectors))
}

/// Eigendecomposition of a Hermitian operator, reused to evaluate
/// `exp(iθG)` for many angles.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    layout: HilbertLayout,
    values: Vec<f64>,
    vectors: Array2<C64>,
    vectors_adj: Array2<C64>,
}

impl HermitianEigen {
    pub fn new(generator: &Operator, tol: f64) -> Result<Self> {
        let asym = spectral_norm(&(generator - &generator.adjoint()));
        if asym > tol * generator.max_abs().max(1.0) {
            return Err(SynthError::invalid(format!("generator is not Hermitian (‖G − G†‖ = {asym:e})")));
        }
        let scale = generator.max_abs().max(1.0);
        let mut best: Option<(f64, HermitianEigen)> = None;
        for eps in EIGEN_EPS {
            let Ok((values, vectors)) = hermitian_eigh(generator.data(), eps) else {
                continue;
            };
            let vectors_adj = vectors.t().mapv(|z| z.conj());
            let mut scaled = vectors.clone();
            for (mut col, &v) in scaled.columns_mut().into_iter().zip(&values) {
                col.mapv_inplace(|z| z * v);
            }
            let residual = spectral_norm(&Operator::from_parts(
                generator.layout().clone(),
                &scaled.dot(&vectors_adj) - generator.data(),
            ));
            let found = HermitianEigen { layout: generator.layout().clone(), values, vectors, vectors_adj };
            if residual <= EIGEN_RESIDUAL_TIGHT * scale {
                return Ok(found);
            }
            if best.as_ref().is_none_or(|(r, _)| residual < *r) {
                best = Some((residual, found));
            }
        }
        match best {
            Some((residual, found)) if residual <= EIGEN_RESIDUAL * scale => Ok(found),
            Some((residual, _)) => Err(SynthError::invalid(format!("eigendecomposition residual {residual:e} too large"))),
            None => Err(not_converged()),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest eigenvalue modulus, i.e. the spectral norm of the generator.
    pub fn norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `e^{iθλ} − 1` per eigenvalue, accurate for small angles.
    fn phase_offsets(&self, theta: f64) -> Vec<C64> {
        self.values
            .iter()
            .map(|&v| {
                let half = 0.5 * theta * v;
                C64::new(0.0, 2.0 * half.sin()) * C64::from_polar(1.0, half)
            })
            .collect()
    }

    /// `exp(iθG)`, formed as `I + V·diag(e^{iθλ} − 1)·V†` so that rounding
    /// error scales with the angle.
    pub fn exp_i(&self, theta: f64) -> Operator {
        let offsets = self.phase_offsets(theta);
        let mut scaled = self.vectors.clone();
        for (mut col, d) in scaled.columns_mut().into_iter().zip(&offsets) {
            col.mapv_inplace(|z| z * d);
        }
        let mut out = scaled.dot(&self.vectors_adj);
        for i in 0..out.nrows() {
            out[[i, i]] += C64::new(1.0, 0.0);
        }
        Operator::from_parts(self.layout.clone(), out)
    }

    /// `exp(iθG)·ψ` without forming the matrix.
    pub fn apply_exp_i(&self, theta: f64, state: &StateVector) -> StateVector {
        let mut coeffs = self.vectors_adj.dot(state);
        for (c, d) in coeffs.iter_mut().zip(self.phase_offsets(theta)) {
            *c *= d;
        }
        state + &self.vectors.dot(&coeffs)
    }
}
