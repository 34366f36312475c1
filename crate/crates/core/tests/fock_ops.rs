use bosonic_synth::fock_ops::{
    annihilation, creation, embed, embed_all, interior_projector, momentum, number, pauli, position, qubit_gate,
    qubit_gate_product, vacuum_projector_flip, PauliAxis, QubitGate,
};
use bosonic_synth::tensor_core::{
    basis_state, commutator, is_hermitian, kron, spectral_norm, FactorAddress, HilbertLayout, ModeCutoff, Operator,
};
use bosonic_synth::C64;
use proptest::prelude::*;

fn cutoff(n: u32) -> ModeCutoff {
    ModeCutoff::new(n).unwrap()
}

fn dist(a: &Operator, b: &Operator) -> f64 {
    spectral_norm(&(a - b))
}

#[test]
fn ladder_matrices_at_cutoff_three() {
    let c3 = cutoff(3);
    let (a, ad) = (annihilation(c3), creation(c3));
    let s = [1.0, 2f64.sqrt(), 3f64.sqrt()];
    for i in 0..4 {
        for j in 0..4 {
            let above = if j == i + 1 { s[i] } else { 0.0 };
            let below = if i == j + 1 { s[j] } else { 0.0 };
            assert!((a.get(i, j) - C64::new(above, 0.0)).norm() <= 1e-15);
            assert!((ad.get(i, j) - C64::new(below, 0.0)).norm() <= 1e-15);
        }
    }
    let vacuum = basis_state(&HilbertLayout::mode(c3), &[0]).unwrap();
    assert!(a.apply(&vacuum).iter().all(|z| z.norm() == 0.0));
    assert!(ModeCutoff::new(0).is_err());
}

#[test]
fn quadratures_and_number() {
    let c3 = cutoff(3);
    let diag: Vec<f64> = (0..4).map(|i| number(c3).get(i, i).re).collect();
    assert_eq!(diag, vec![0.0, 1.0, 2.0, 3.0]);
    for lam in [3u32, 6] {
        let c = cutoff(lam);
        let (x, p) = (position(c), momentum(c));
        assert!(is_hermitian(&x, 1e-14) && is_hermitian(&p, 1e-14));
        let id = Operator::identity(HilbertLayout::mode(c));
        let lhs = &(&(&x * &x) + &(&p * &p)) - &id.scale_re(0.5);
        let proj = interior_projector(c, 1);
        assert!(dist(&(&(&proj * &lhs) * &proj), &(&(&proj * &number(c)) * &proj)) < 1e-14);
        let top = lam as usize;
        assert!((lhs.get(top, top) - number(c).get(top, top)).norm() > 0.1);
    }
}

#[test]
fn ladder_commutator_is_canonical_below_the_cutoff() {
    for lam in [2u32, 5, 9] {
        let c = cutoff(lam);
        let comm = commutator(&annihilation(c), &creation(c)).unwrap();
        for n in 0..=lam as usize {
            let expected = if n == lam as usize { -(lam as f64) } else { 1.0 };
            assert!((comm.get(n, n) - C64::new(expected, 0.0)).norm() < 1e-14);
        }
    }
}

#[test]
fn conjugation_identities() {
    let h = qubit_gate(QubitGate::H);
    let z = pauli(PauliAxis::Z);
    assert!(dist(&(&(&h * &z) * &h), &pauli(PauliAxis::X)) < 1e-15);
    let y = qubit_gate_product(&[QubitGate::S, QubitGate::H]);
    let conj = &(&y * &z) * &qubit_gate_product(&[QubitGate::H, QubitGate::Sdg]);
    assert!(dist(&conj, &pauli(PauliAxis::Y)) < 1e-15);
    let ss = qubit_gate_product(&[QubitGate::S, QubitGate::Sdg]);
    assert!(dist(&ss, &Operator::identity(HilbertLayout::qubit())) < 1e-15);
}

#[test]
fn embedding() {
    let q = HilbertLayout::qubit();
    assert_eq!(embed(&pauli(PauliAxis::X), &q, FactorAddress(0)).unwrap(), pauli(PauliAxis::X));
    let c1 = cutoff(1);
    let layout = HilbertLayout::qubit_mode(c1);
    let a = embed(&annihilation(c1), &layout, FactorAddress(1)).unwrap();
    assert_eq!(a, kron(&Operator::identity(q), &annihilation(c1)));
    let c3 = cutoff(3);
    let layout = HilbertLayout::qubit_mode(c3);
    let n = embed(&number(c3), &layout, FactorAddress(1)).unwrap();
    assert!((n.get(4 + 2, 4 + 2) - C64::new(2.0, 0.0)).norm() == 0.0);
    assert!(embed(&number(c3), &layout, FactorAddress(0)).is_err());
    assert!(embed(&number(c3), &layout, FactorAddress(2)).is_err());
    assert!(embed(&number(cutoff(2)), &layout, FactorAddress(1)).is_err());
    assert!(embed_all(&layout, &[(FactorAddress(0), &pauli(PauliAxis::Z)), (FactorAddress(0), &pauli(PauliAxis::Z))]).is_err());
}

#[test]
fn vacuum_flip() {
    let c4 = cutoff(4);
    let r = vacuum_projector_flip(c4);
    let layout = HilbertLayout::mode(c4);
    let vac = basis_state(&layout, &[0]).unwrap();
    let one = basis_state(&layout, &[1]).unwrap();
    assert_eq!(r.apply(&vac), vac.mapv(|z| -z));
    assert_eq!(r.apply(&one), one);
    assert_eq!(&r * &r, Operator::identity(layout));
}

proptest! {
    #[test]
    fn ladder_power_norms(lam in 1u32..20, k in 1u32..20) {
        prop_assume!(k <= lam);
        let a = annihilation(cutoff(lam));
        let norm = spectral_norm(&a.powi(k as u64));
        let exact = ((lam - k + 1)..=lam).map(f64::from).product::<f64>().sqrt();
        prop_assert!((norm - exact).abs() <= 1e-9 * exact);
        prop_assert!(norm <= (lam as f64).powf(k as f64 / 2.0) * (1.0 + 1e-12));
        prop_assert_eq!(creation(cutoff(lam)), a.adjoint());
    }
}
