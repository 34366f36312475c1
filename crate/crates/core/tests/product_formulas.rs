use std::sync::Arc;

use bosonic_synth::fock_ops::{embed_all, momentum, pauli, position, PauliAxis};
use bosonic_synth::product_formulas::{
    bch, bch_invocations, exp_node, fit_power_law, group_commutator, log_grid, sweep_and_fit, symmetrize,
    timeslice, trotter, trotter_invocations, BchOrderParams, CommutatorTime, MergedStrang, ParamUnitaryExt,
    TimesliceRequest, TrotterConditions, Unitary,
};
use bosonic_synth::tensor_core::{expm_i, is_unitary, spectral_norm, FactorAddress, HilbertLayout, ModeCutoff, Operator};
use bosonic_synth::C64;
use proptest::prelude::*;

const FLOOR: f64 = 1e-12;

fn qm(cutoff: u32) -> (HilbertLayout, ModeCutoff) {
    let c = ModeCutoff::new(cutoff).unwrap();
    (HilbertLayout::qubit_mode(c), c)
}

fn local(layout: &HilbertLayout, qubit: &Operator, mode: &Operator) -> Operator {
    embed_all(layout, &[(FactorAddress(0), qubit), (FactorAddress(1), mode)]).unwrap()
}

/// `x̂σˣ`, `x̂σʸ` and the commutator target generator `−2x̂²σᶻ`.
fn xsx_xsy(cutoff: u32) -> (Unitary, Unitary, Operator) {
    let (layout, c) = qm(cutoff);
    let x = position(c);
    let ga = local(&layout, &pauli(PauliAxis::X), &x);
    let gb = local(&layout, &pauli(PauliAxis::Y), &x);
    let target = local(&layout, &pauli(PauliAxis::Z), &(&x * &x)).scale_re(-2.0);
    (exp_node("xσx", ga).unwrap(), exp_node("xσy", gb).unwrap(), target)
}

fn commutator_error(u: &Unitary, target: &Operator, t: f64) -> f64 {
    let exact = expm_i(target, t * t).unwrap();
    spectral_norm(&(&u.eval(t) - &exact))
}

#[test]
fn bch_constants_match_closed_form() {
    let c = BchOrderParams::new(1, 1).unwrap();
    let two = 2f64.powf(2.0 / 4.0);
    let r = two / (4.0 * (2.0 - two));
    assert!((c.r - r).abs() < 1e-15);
    assert!((c.beta - (2.0 * r).sqrt()).abs() < 1e-15);
    assert!((c.gamma - (0.25 + r).sqrt()).abs() < 1e-15);
    assert!(BchOrderParams::new(1, 2).is_err());
    assert!(BchOrderParams::new(0, 1).is_err());
}

#[test]
fn bch_of_commuting_generators_is_identity() {
    let (layout, c) = qm(3);
    let g = local(&layout, &pauli(PauliAxis::X), &position(c));
    let a = exp_node("a", g).unwrap();
    let u = bch(1, 1, &a, &a).unwrap();
    let id = Operator::identity(layout);
    assert!(spectral_norm(&(&u.eval(0.7) - &id)) < 1e-12);
}

#[test]
fn bch_gate_counts_follow_closed_form() {
    let (a, b, _) = xsx_xsy(2);
    for p in 1..=3 {
        let u = bch(p, 1, &a, &b).unwrap();
        assert_eq!(u.cost(), 8 * 6u64.pow(p - 1));
        assert_eq!(u.cost(), bch_invocations(p, 1));
        assert_eq!(u.emit(0.1).total_cost(), u.cost());
    }
    for p in 1..=2 {
        let u = bch(p, 3, &a, &b).unwrap();
        assert_eq!(u.cost(), 4 * 6u64.pow(p - 1));
    }
    assert_eq!(group_commutator(&a, &b).unwrap().cost(), 4);
}

#[test]
fn bch_error_exponents_on_phase_space_testbed() {
    let (a, b, target) = xsx_xsy(15);
    let ts = log_grid(1e-3, 1e-1, 12).unwrap();
    for p in 1..=2u32 {
        let u = bch(p, 1, &a, &b).unwrap();
        let (_, fit) = sweep_and_fit(&ts, FLOOR, |t| commutator_error(&u, &target, t)).unwrap();
        let want = 2.0 * p as f64 + 1.0;
        assert!((fit.exponent - want).abs() <= 0.3, "p={p}: exponent {} vs {want}", fit.exponent);
    }
}

#[test]
fn bch_with_higher_weight_reaches_target() {
    let (a, b, _) = xsx_xsy(6);
    let (layout, c) = qm(6);
    let x = position(c);
    let target = local(&layout, &pauli(PauliAxis::Z), &(&x * &x)).scale_re(-2.0);
    let u = bch(2, 3, &a, &b).unwrap();
    let t: f64 = 0.05;
    let err = spectral_norm(&(&u.eval(t) - &expm_i(&target, t.powi(4)).unwrap()));
    assert!(err < 1e-6, "{err}");
}

#[test]
fn symmetrized_bch_gains_an_order() {
    let (a, b, target) = xsx_xsy(15);
    let ts = log_grid(1e-3, 1e-1, 12).unwrap();
    let plain = bch(1, 1, &a, &b).unwrap();
    let sym = symmetrize(&plain);
    assert_eq!(sym.cost(), 2 * plain.cost());
    let (_, f1) = sweep_and_fit(&ts, FLOOR, |t| commutator_error(&plain, &target, t)).unwrap();
    let (_, f2) = sweep_and_fit(&ts, FLOOR, |t| commutator_error(&sym, &target, t)).unwrap();
    assert!(f2.exponent >= f1.exponent + 1.0, "{} vs {}", f2.exponent, f1.exponent);
}

#[test]
fn symmetrize_of_single_exponential_is_exact() {
    let (layout, c) = qm(3);
    let g = local(&layout, &pauli(PauliAxis::Z), &position(c));
    let u = exp_node("g", g.clone()).unwrap();
    let s = symmetrize(&u);
    assert!(spectral_norm(&(&s.eval(0.9) - &expm_i(&g, 0.9).unwrap())) < 1e-12);
}

#[test]
fn emitted_sequence_matches_evaluation_and_inverse_is_adjoint() {
    let (a, b, _) = xsx_xsy(4);
    let u = bch(2, 1, &a, &b).unwrap();
    let seq = u.emit(0.3);
    let m = u.eval(0.3);
    assert!(spectral_norm(&(&seq.evaluate() - &m)) < 1e-10);
    assert!(spectral_norm(&(&seq.inverse().evaluate() - &m.adjoint())) < 1e-10);
    let psi = bosonic_synth::tensor_core::basis_state(u.layout(), &[1, 2]).unwrap();
    let via_apply = u.apply(0.3, &psi, false);
    let via_matrix = m.apply(&psi);
    let diff: f64 = via_apply.iter().zip(via_matrix.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    assert!(diff < 1e-10);
    let back = u.apply(0.3, &via_apply, true);
    let diff: f64 = back.iter().zip(psi.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    assert!(diff < 1e-10);
}

#[test]
fn commutator_time_is_time_odd() {
    let (a, b, target) = xsx_xsy(6);
    let u = CommutatorTime::new(bch(2, 1, &a, &b).unwrap(), 1.0).unwrap();
    let t = 1e-4;
    assert!(spectral_norm(&(&u.eval(-t) - &u.eval(t).adjoint())) < 1e-12);
    let err = spectral_norm(&(&u.eval(t) - &expm_i(&target, t).unwrap()));
    assert!(err < 1e-7, "{err}");
}

fn two_term(first: &Operator, second: &Operator) -> (Vec<Unitary>, Operator) {
    let terms = vec![exp_node("h1", first.clone()).unwrap(), exp_node("h2", second.clone()).unwrap()];
    (terms, first + second)
}

fn trotter_exponent(terms: &[Unitary], sum: &Operator, order: u32) -> f64 {
    let u = trotter(order, terms, 1).unwrap();
    let ts = log_grid(1e-3, 1e-1, 12).unwrap();
    let (_, fit) = sweep_and_fit(&ts, FLOOR, |t| spectral_norm(&(&u.eval(t) - &expm_i(sum, t).unwrap()))).unwrap();
    fit.exponent
}

#[test]
fn trotter_orders_on_pauli_testbed() {
    let (terms, sum) = two_term(&pauli(PauliAxis::X), &pauli(PauliAxis::Z));
    for k in 1..=2u32 {
        let e = trotter_exponent(&terms, &sum, 2 * k);
        assert!((e - (2 * k + 1) as f64).abs() <= 0.3, "k={k}: {e}");
    }
}

#[test]
fn trotter_orders_on_quadrature_testbed() {
    let (layout, c) = qm(8);
    let x = position(c);
    let p = momentum(c);
    let sx = pauli(PauliAxis::X);
    let (terms, sum) = two_term(&local(&layout, &sx, &(&x * &x)), &local(&layout, &sx, &(&p * &p)));
    for k in 1..=2u32 {
        let e = trotter_exponent(&terms, &sum, 2 * k);
        assert!((e - (2 * k + 1) as f64).abs() <= 0.3, "k={k}: {e}");
    }
}

#[test]
fn trotter_counts_and_trivial_cases() {
    let (terms, _) = two_term(&pauli(PauliAxis::X), &pauli(PauliAxis::Z));
    assert_eq!(trotter(4, &terms, 1).unwrap().cost(), 20);
    assert_eq!(trotter(4, &terms, 1).unwrap().cost(), trotter_invocations(4, 2, 1));
    assert_eq!(trotter(2, &terms, 3).unwrap().cost(), 12);
    assert_eq!(MergedStrang::new(&terms, 2).unwrap().cost(), 5);
    assert!(trotter(3, &terms, 1).is_err());
    assert!(trotter(2, &[], 1).is_err());

    let single = vec![exp_node("x", pauli(PauliAxis::X)).unwrap()];
    let u = trotter(2, &single, 1).unwrap();
    assert!(spectral_norm(&(&u.eval(0.8) - &expm_i(&pauli(PauliAxis::X), 0.8).unwrap())) < 1e-10);
}

#[test]
fn merged_strang_equals_unmerged() {
    let (terms, _) = two_term(&pauli(PauliAxis::X), &pauli(PauliAxis::Z));
    let merged = MergedStrang::new(&terms, 3).unwrap();
    let plain = trotter(2, &terms, 3).unwrap();
    assert!(spectral_norm(&(&merged.eval(0.4) - &plain.eval(0.4))) < 1e-12);
}

#[test]
fn commuting_trotter_is_exact() {
    let (layout, c) = qm(4);
    let x = position(c);
    let sz = pauli(PauliAxis::Z);
    let (terms, sum) = two_term(&local(&layout, &sz, &x), &local(&layout, &sz, &(&x * &x)));
    for order in [2, 4] {
        let u = trotter(order, &terms, 1).unwrap();
        assert!(spectral_norm(&(&u.eval(1.3) - &expm_i(&sum, 1.3).unwrap())) < 1e-10);
    }
}

#[test]
fn trotter_conditions_flag_large_steps() {
    assert!(TrotterConditions::evaluate(2, 2, 0.01, 1).satisfied());
    assert!(!TrotterConditions::evaluate(2, 2, 10.0, 1).satisfied());
}

#[test]
fn power_law_fit_recovers_synthetic_data() {
    let ts = log_grid(1e-3, 1e-1, 12).unwrap();
    let cubic: Vec<f64> = ts.iter().map(|t| t.powi(3)).collect();
    let f = fit_power_law(&ts, &cubic).unwrap();
    assert!((f.exponent - 3.0).abs() < 1e-9);
    let quad: Vec<f64> = ts.iter().map(|t| 5.0 * t * t).collect();
    let f = fit_power_law(&ts, &quad).unwrap();
    assert!((f.exponent - 2.0).abs() < 1e-9 && (f.prefactor - 5.0).abs() < 1e-9);
    assert!(fit_power_law(&ts[..3], &quad[..3]).is_err());
    assert!(fit_power_law(&[1.0, 2.0, 3.0, 4.0], &[1.0, 0.0, 1.0, 1.0]).is_err());
}

fn slicing_testbed() -> (Unitary, Operator) {
    let (terms, sum) = two_term(&pauli(PauliAxis::X), &pauli(PauliAxis::Z));
    (trotter(2, &terms, 1).unwrap(), expm_i(&sum, 1.0).unwrap())
}

#[test]
fn timeslice_finds_minimal_slices() {
    let (step, target) = slicing_testbed();
    let req = TimesliceRequest { t: 1.0, epsilon: 10.0, order: 3.0, scale: 2.0, slice_cap: 1 << 16 };
    assert_eq!(timeslice(&step, &target, &req).unwrap().slices, 1);

    let mut req = TimesliceRequest { epsilon: 1e-3, ..req };
    let first = timeslice(&step, &target, &req).unwrap();
    assert!(first.error <= 1e-3);
    assert!(bosonic_synth::product_formulas::sliced_error(&step, &target, 1.0, first.slices - 1) > 1e-3);
    req.epsilon /= 2.0;
    let second = timeslice(&step, &target, &req).unwrap();
    assert!(second.slices as f64 / first.slices as f64 <= 2.0 * 1.5);

    let capped = TimesliceRequest { epsilon: 1e-12, slice_cap: 4, ..req };
    assert!(timeslice(&step, &target, &capped).unwrap_err().is_resource());
}

#[test]
fn sliced_error_decreases_with_slices() {
    let (step, target) = slicing_testbed();
    let errs: Vec<f64> =
        (1..=6).map(|r| bosonic_synth::product_formulas::sliced_error(&step, &target, 1.0, r)).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn formulas_stay_unitary(t in -2.0f64..2.0, p in 1u32..=2, order in 1u32..=2) {
        let (a, b, _) = xsx_xsy(3);
        let u = bch(p, 1, &a, &b).unwrap();
        prop_assert!(is_unitary(&u.eval(t), 1e-9));
        prop_assert!(is_unitary(&symmetrize(&u).eval(t), 1e-9));
        let tr = trotter(2 * order, &[a, b], 2).unwrap();
        prop_assert!(is_unitary(&tr.eval(t), 1e-9));
    }

    #[test]
    fn eval_at_zero_is_identity(p in 1u32..=3) {
        let (a, b, _) = xsx_xsy(3);
        let u = bch(p, 1, &a, &b).unwrap();
        let id = Operator::identity(u.layout().clone());
        prop_assert!(spectral_norm(&(&u.eval(0.0) - &id)) < 1e-10);
    }

    #[test]
    fn inverse_sequence_is_adjoint(t in -1.0f64..1.0, p in 1u32..=2) {
        let (a, b, _) = xsx_xsy(3);
        let u = bch(p, 1, &a, &b).unwrap();
        let seq = u.emit(t);
        prop_assert!(spectral_norm(&(&seq.inverse().evaluate() - &u.eval(t).adjoint())) < 1e-9);
    }

    #[test]
    fn time_scaled_nodes_are_time_odd(t in 0.0f64..1.0, order in 1u32..=2) {
        let (a, b, _) = xsx_xsy(3);
        let tr = trotter(2 * order, &[Arc::clone(&a), Arc::clone(&b)], 1).unwrap();
        let seq_neg = tr.emit(-t).evaluate();
        prop_assert!(spectral_norm(&(&seq_neg - &tr.eval(t).adjoint())) < 1e-9);
        let c = CommutatorTime::new(bch(1, 1, &a, &b).unwrap(), 2.0).unwrap();
        let neg = c.emit(-t).evaluate();
        prop_assert!(spectral_norm(&(&neg - &c.eval(t).adjoint())) < 1e-9);
    }

    #[test]
    fn phase_scaled_primitive_matches_expm(theta in -3.0f64..3.0) {
        let g = pauli(PauliAxis::Y);
        let u = exp_node("y", g.clone()).unwrap();
        let want = expm_i(&g, theta).unwrap();
        prop_assert!(spectral_norm(&(&u.eval(theta) - &want)) < 1e-12);
        prop_assert!((want.trace() - C64::new(2.0 * theta.cos(), 0.0)).norm() < 1e-12);
    }
}
