use std::f64::consts::FRAC_PI_2;

use bosonic_synth::fock_ops::{annihilation, creation, embed_all, momentum, pauli, position, PauliAxis};
use bosonic_synth::tensor_core::{
    anticommutator, commutator, expm, expm_capped, expm_i, is_hermitian, is_unitary, kron, spectral_norm,
    spectral_norm_with, FactorAddress, HermitianEigen, HilbertLayout, ModeCutoff, Operator,
};
use bosonic_synth::{SynthError, Tolerances, C64};
use proptest::prelude::*;

fn cutoff(n: u32) -> ModeCutoff {
    ModeCutoff::new(n).unwrap()
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn dist(a: &Operator, b: &Operator) -> f64 {
    spectral_norm(&(a - b))
}

/// Deterministic pseudo-random matrix from a seed.
fn seeded(layout: HilbertLayout, seed: u64) -> Operator {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    };
    let d = layout.dim();
    let entries: Vec<C64> = (0..d * d).map(|_| c(next(), next())).collect();
    Operator::from_fn(layout, |i, j| entries[i * d + j])
}

fn anti_hermitian(layout: HilbertLayout, seed: u64) -> Operator {
    let m = seeded(layout, seed);
    (&m - &m.adjoint()).scale_re(0.5)
}

#[test]
fn kron_of_identities_is_identity() {
    let q = Operator::identity(HilbertLayout::qubit());
    let k = kron(&q, &q);
    assert_eq!(k.layout().len(), 2);
    assert_eq!(k, Operator::identity(k.layout().clone()));
}

#[test]
fn kron_follows_mixed_radix_order() {
    let c1 = cutoff(1);
    let vac = Operator::basis_outer(HilbertLayout::mode(c1), 0, 0);
    let k = kron(&pauli(PauliAxis::Z), &vac);
    let diag: Vec<f64> = (0..4).map(|i| k.get(i, i).re).collect();
    assert_eq!(diag, vec![1.0, 0.0, -1.0, 0.0]);
    let xa = kron(&pauli(PauliAxis::X), &annihilation(c1));
    assert_eq!(xa.get(0, 3), c(1.0, 0.0));
    assert_eq!(xa.get(2, 1), c(1.0, 0.0));
    let nonzero = xa.data().iter().filter(|z| z.norm() > 0.0).count();
    assert_eq!(nonzero, 2);
}

#[test]
fn expm_examples() {
    let q = HilbertLayout::qubit();
    assert_eq!(expm(&Operator::zeros(q.clone())).unwrap(), Operator::identity(q.clone()));
    let x = pauli(PauliAxis::X);
    let u = expm_i(&x, FRAC_PI_2).unwrap();
    assert!(dist(&u, &x.scale(c(0.0, 1.0))) < 1e-14);
    let c3 = cutoff(3);
    let layout = HilbertLayout::qubit_mode(c3);
    let upper = Operator::basis_outer(HilbertLayout::qubit(), 0, 1);
    let g = &kron(&upper, &creation(c3)) + &kron(&upper.adjoint(), &annihilation(c3));
    let t = 0.7;
    let psi = bosonic_synth::tensor_core::basis_state(&layout, &[1, 0]).unwrap();
    let out = expm_i(&g, t).unwrap().apply(&psi);
    let i10 = layout.index_of(&[1, 0]).unwrap();
    let i01 = layout.index_of(&[0, 1]).unwrap();
    assert!((out[i10] - c(t.cos(), 0.0)).norm() < 1e-14);
    assert!((out[i01] - c(0.0, t.sin())).norm() < 1e-14);
}

#[test]
fn expm_rejects_oversized_dimensions() {
    let layout = HilbertLayout::qubit_mode(cutoff(7));
    let err = expm_capped(&Operator::zeros(layout), 8).unwrap_err();
    assert!(matches!(err, SynthError::DimensionCap { dim: 16, cap: 8 }));
    assert!(err.is_resource());
}

#[test]
fn spectral_norm_examples() {
    let layout = HilbertLayout::qubit_mode(cutoff(4));
    assert!((spectral_norm(&Operator::identity(layout)) - 1.0).abs() < 1e-14);
    assert!((spectral_norm(&annihilation(cutoff(3))) - 3f64.sqrt()).abs() < 1e-14);
    let d = Operator::diagonal(HilbertLayout::qubit(), &[c(1.0, 0.0), c(-2.0, 0.0)]).unwrap();
    assert!((spectral_norm(&d) - 2.0).abs() < 1e-14);
}

#[test]
fn svd_and_power_iteration_agree() {
    let layout = HilbertLayout::qubit_two_modes(cutoff(4), cutoff(4));
    let m = seeded(layout, 7);
    let power = Tolerances { svd_max_dim: 0, ..Tolerances::DEFAULT };
    let (a, b) = (spectral_norm(&m), spectral_norm_with(&m, &power));
    assert!((a - b).abs() <= 1e-10 * a, "{a} vs {b}");
}

#[test]
fn predicates() {
    let q = HilbertLayout::qubit();
    assert!(is_unitary(&Operator::identity(q.clone()), 1e-12));
    assert!(!is_unitary(&Operator::identity(q.clone()).scale_re(2.0), 1e-12));
    let iy = pauli(PauliAxis::Y).scale(c(0.0, 1.0));
    assert!(is_hermitian(&(&iy * &pauli(PauliAxis::X)), 1e-14));
    assert!(!is_hermitian(&iy, 1e-12));
}

#[test]
fn commutator_examples() {
    let (x, y, z) = (pauli(PauliAxis::X), pauli(PauliAxis::Y), pauli(PauliAxis::Z));
    assert!(dist(&commutator(&x, &y).unwrap(), &z.scale(c(0.0, 2.0))) < 1e-15);
    assert_eq!(commutator(&x, &x).unwrap(), Operator::zeros(x.layout().clone()));
    assert!(dist(&anticommutator(&x, &y).unwrap(), &Operator::zeros(x.layout().clone())) < 1e-15);
    let c3 = cutoff(3);
    let xp = commutator(&position(c3), &momentum(c3)).unwrap();
    let expected = Operator::diagonal(
        HilbertLayout::mode(c3),
        &[c(0.0, 0.5), c(0.0, 0.5), c(0.0, 0.5), c(0.0, -1.5)],
    )
    .unwrap();
    assert!(dist(&xp, &expected) < 1e-14);
    assert!(commutator(&x, &position(c3)).is_err());
}

#[test]
fn hermitian_eigen_survives_degenerate_spectra() {
    for lam in [9u32, 10, 11, 14] {
        let c = cutoff(lam);
        let layout = HilbertLayout::qubit_two_modes(c, c);
        for axis in [PauliAxis::X, PauliAxis::Y] {
            let g = embed_all(&layout, &[(FactorAddress(0), &pauli(axis)), (FactorAddress(1), &position(c))]).unwrap();
            let eigen = HermitianEigen::new(&g, 1e-10).unwrap();
            for t in [1e-6, 1e-3, 0.4] {
                let gap = dist(&eigen.exp_i(t), &expm_i(&g, t).unwrap());
                assert!(gap < 1e-10, "Λ = {lam}, {axis:?}, t = {t}: {gap:e}");
            }
        }
    }
}

#[test]
fn hermitian_eigen_rejects_non_hermitian() {
    let m = Operator::basis_outer(HilbertLayout::qubit(), 0, 1);
    assert!(HermitianEigen::new(&m, 1e-10).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn expm_of_anti_hermitian_is_unitary(seed in any::<u64>(), lam in 1u32..6) {
        let a = anti_hermitian(HilbertLayout::qubit_mode(cutoff(lam)), seed);
        prop_assert!(is_unitary(&expm(&a).unwrap(), 1e-10));
    }

    #[test]
    fn expm_inverse(seed in any::<u64>(), scale in 0.1f64..3.0) {
        let m = seeded(HilbertLayout::qubit_mode(cutoff(3)), seed);
        let m = m.scale_re(scale / spectral_norm(&m).max(1e-12));
        let prod = &expm(&m).unwrap() * &expm(&m.scale_re(-1.0)).unwrap();
        prop_assert!(dist(&prod, &Operator::identity(m.layout().clone())) < 1e-10);
    }

    #[test]
    fn hermitian_eigen_matches_pade(seed in any::<u64>(), t in -2.0f64..2.0) {
        let h = anti_hermitian(HilbertLayout::qubit_mode(cutoff(4)), seed).scale(c(0.0, 1.0));
        let eigen = HermitianEigen::new(&h, 1e-10).unwrap();
        let gap = dist(&eigen.exp_i(t), &expm_i(&h, t).unwrap());
        prop_assert!(gap < 1e-11, "gap {gap:e}");
    }

    #[test]
    fn kron_mixed_product(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>(), s4 in any::<u64>()) {
        let q = HilbertLayout::qubit();
        let m = HilbertLayout::mode(cutoff(2));
        let (a, b, cc, d) = (seeded(q.clone(), s1), seeded(m.clone(), s2), seeded(q, s3), seeded(m, s4));
        let left = &kron(&a, &b) * &kron(&cc, &d);
        let right = kron(&(&a * &cc), &(&b * &d));
        prop_assert!(dist(&left, &right) < 1e-12);
    }

    #[test]
    fn kron_is_associative(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (a, b, cc) = (
            seeded(HilbertLayout::qubit(), s1),
            seeded(HilbertLayout::mode(cutoff(1)), s2),
            seeded(HilbertLayout::mode(cutoff(2)), s3),
        );
        let left = kron(&kron(&a, &b), &cc);
        let right = kron(&a, &kron(&b, &cc));
        prop_assert_eq!(left.layout(), right.layout());
        prop_assert!(dist(&left, &right) < 1e-14);
    }

    #[test]
    fn spectral_norm_is_submultiplicative(s1 in any::<u64>(), s2 in any::<u64>()) {
        let layout = HilbertLayout::qubit_mode(cutoff(3));
        let (a, b) = (seeded(layout.clone(), s1), seeded(layout, s2));
        prop_assert!(spectral_norm(&(&a * &b)) <= spectral_norm(&a) * spectral_norm(&b) + 1e-10);
    }
}
