//! Acceptance suite: one verdict line per criterion, non-zero exit on any failure.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use bosonic_bench::{run, write_experiment, ExperimentConfig, RunOptions};
use bosonic_synth::applications::*;
use bosonic_synth::block_encodings::{
    add, add_cost_bound, conjugate, mult, mult_cost_bound, power, power_cost_bound, power_generator, s1,
    s1_from_conditional_displacements, AddPlan, SynthesisBudget,
};
use bosonic_synth::fock_ops::{annihilation, creation, embed_all, momentum, pauli, position, PauliAxis, QubitGate};
use bosonic_synth::product_formulas::{
    bch, bch_invocations, exp_node, fit_above_floor, fit_power_law, log_grid, trotter, ParamUnitaryExt, Unitary,
};
use bosonic_synth::tensor_core::{expm_i, spectral_norm, FactorAddress, HilbertLayout, ModeCutoff, Operator};
use bosonic_synth::C64;

const LADDER_TOL: f64 = 1e-15;
const NORM_TOL: f64 = 1e-9;
const EXPONENT_TOL: f64 = 0.3;
const EXACT_TOL: f64 = 1e-10;
const SUPPORT: f64 = 0.1;
const SUPPORT_TOL: f64 = 0.15;
const HOM_LEAKAGE: f64 = 1e-4;
const FIT_RESIDUAL: f64 = 0.1;
const HUBBARD_TOL: f64 = 1e-12;
const SLICE_SLACK: f64 = 1.5;
const FLOOR: f64 = 1e-13;

type Verdict = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Verdict);

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn cutoff(n: u32) -> ModeCutoff {
    ModeCutoff::new(n).unwrap()
}

fn dist(a: &Operator, b: &Operator) -> f64 {
    spectral_norm(&(a - b))
}

fn local(layout: &HilbertLayout, qubit: &Operator, mode: &Operator) -> Operator {
    embed_all(layout, &[(FactorAddress(0), qubit), (FactorAddress(1), mode)]).unwrap()
}

fn exponent(ts: &[f64], errs: &[f64]) -> f64 {
    fit_above_floor(ts, errs, FLOOR).unwrap().exponent
}

fn ladder_matrices() -> Verdict {
    let c = cutoff(3);
    let (a, ad) = (annihilation(c), creation(c));
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let up = if j == i + 1 { (j as f64).sqrt() } else { 0.0 };
            let down = if i == j + 1 { (i as f64).sqrt() } else { 0.0 };
            worst = worst.max((a.get(i, j) - C64::new(up, 0.0)).norm());
            worst = worst.max((ad.get(i, j) - C64::new(down, 0.0)).norm());
        }
    }
    check(worst <= LADDER_TOL, format!("max entry deviation {worst:e}"))
}

fn norm_bound() -> Verdict {
    let mut worst = 0.0f64;
    let mut within = true;
    for lam in [4u32, 8, 16] {
        for k in 1..=3u32 {
            let norm = spectral_norm(&power_generator(k, cutoff(lam)));
            let falling: f64 = ((lam - k + 1)..=lam).map(f64::from).product();
            worst = worst.max((norm - falling.sqrt()).abs());
            within &= norm <= f64::from(lam).powf(f64::from(k) / 2.0) + NORM_TOL;
        }
    }
    check(worst <= NORM_TOL && within, format!("max deviation from falling factorial root {worst:e}"))
}

fn bch_order() -> Verdict {
    let c = cutoff(15);
    let layout = HilbertLayout::qubit_mode(c);
    let x = position(c);
    let a = exp_node("xσx", local(&layout, &pauli(PauliAxis::X), &x)).unwrap();
    let b = exp_node("xσy", local(&layout, &pauli(PauliAxis::Y), &x)).unwrap();
    let target = local(&layout, &pauli(PauliAxis::Z), &(&x * &x)).scale_re(-2.0);
    let ts = log_grid(1e-3, 1e-1, 12).unwrap();
    let mut fits = Vec::new();
    for p in 1..=2u32 {
        let u = bch(p, 1, &a, &b).unwrap();
        let errs: Vec<f64> = ts.iter().map(|&t| dist(&u.eval(t), &expm_i(&target, t * t).unwrap())).collect();
        fits.push((p, exponent(&ts, &errs)));
    }
    let ok = fits.iter().all(|&(p, e)| (e - (2 * p + 1) as f64).abs() <= EXPONENT_TOL);
    check(ok, format!("exponents {fits:.3?}"))
}

fn trotter_fit(first: Operator, second: Operator, order: u32) -> f64 {
    let sum = &first + &second;
    let terms: Vec<Unitary> = vec![exp_node("h1", first).unwrap(), exp_node("h2", second).unwrap()];
    let u = trotter(order, &terms, 1).unwrap();
    let ts = log_grid(1e-3, 1e-1, 12).unwrap();
    let errs: Vec<f64> = ts.iter().map(|&t| dist(&u.eval(t), &expm_i(&sum, t).unwrap())).collect();
    exponent(&ts, &errs)
}

fn trotter_order() -> Verdict {
    let c = cutoff(8);
    let layout = HilbertLayout::qubit_mode(c);
    let (x, p, sx) = (position(c), momentum(c), pauli(PauliAxis::X));
    let xx = local(&layout, &sx, &(&x * &x));
    let pp = local(&layout, &sx, &(&p * &p));
    let mut fits = Vec::new();
    for k in 1..=2u32 {
        fits.push(("pauli", k, trotter_fit(pauli(PauliAxis::X), pauli(PauliAxis::Z), 2 * k)));
        fits.push(("quadrature", k, trotter_fit(xx.clone(), pp.clone(), 2 * k)));
    }
    let ok = fits.iter().all(|&(_, k, e)| (e - (2 * k + 1) as f64).abs() <= EXPONENT_TOL);
    check(ok, format!("exponents {fits:.3?}"))
}

fn gate_counts() -> Verdict {
    let c = cutoff(2);
    let layout = HilbertLayout::qubit_mode(c);
    let gx = exp_node("a", local(&layout, &pauli(PauliAxis::X), &position(c))).unwrap();
    let gy = exp_node("b", local(&layout, &pauli(PauliAxis::Y), &position(c))).unwrap();
    let mut lines = Vec::new();
    let mut ok = true;
    for p in 1..=3u32 {
        let n = bch(p, 1, &gx, &gy).unwrap().cost();
        ok &= n == 8 * 6u64.pow(p - 1) && n == bch_invocations(p, 1);
        lines.push(format!("bch{p}={n}"));
    }
    let base = s1(c).unwrap();
    let lowered = conjugate(&base, &[QubitGate::X]).unwrap();
    for p in [2u32, 4] {
        let q = SynthesisBudget::new(p, p).unwrap().q;
        let sum = add(&base, &base, p, p).unwrap().cost();
        let prod = mult(&lowered, &base, p, p).unwrap().cost();
        ok &= sum as f64 <= add_cost_bound(q) && prod as f64 <= mult_cost_bound(q);
        lines.push(format!("add(q={q})={sum}, mult(q={q})={prod}"));
    }
    for k in [2u64, 4] {
        let n = power(k, 2, c).unwrap().cost();
        ok &= n as f64 <= power_cost_bound(k, 2);
        lines.push(format!("power{k}={n}"));
    }
    check(ok, lines.join(", "))
}

fn exact_state_prep() -> Verdict {
    let c = cutoff(8);
    let mut worst = 0.0f64;
    for k in 1..=3u32 {
        let t = state_prep_exact_time(k, 0, c, false).unwrap();
        let u = state_prep_t(k, 1, c).unwrap().exact(t).unwrap();
        worst = worst.max((transition_modulus(&u, (1, 0), (0, k as usize)).unwrap() - 1.0).abs());
        let tp = state_prep_exact_time(k, 0, c, true).unwrap();
        let pk = expm_i(&protected_generator(k, c), tp).unwrap();
        worst = worst.max((transition_modulus(&pk, (1, 0), (0, k as usize)).unwrap() - 1.0).abs());
        for b in 1..=4usize {
            worst = worst.max((transition_modulus(&pk, (1, b), (1, b)).unwrap() - 1.0).abs());
        }
    }
    check(worst <= EXACT_TOL, format!("max modulus deviation {worst:e}"))
}

fn synthesized_t2() -> Verdict {
    let c = cutoff(3);
    let t = state_prep_exact_time(2, 0, c, false).unwrap();
    let benchmark = benchmark_t2_plan();
    let mut errors = Vec::new();
    for (label, bch_order, symmetrized) in [("1", 1, false), ("1'", 1, true), ("2", 2, false), ("2'", 2, true)] {
        let plan = AddPlan { bch_order, symmetrized, ..benchmark };
        let gate = state_prep_t2(&plan, c).unwrap();
        errors.push((label, dist(&gate.eval(t), &gate.exact(t).unwrap())));
    }
    let monotone = errors.windows(2).all(|w| w[1].1 < w[0].1);
    let gate = state_prep_t2(&benchmark, c).unwrap();
    let count = gate.cost();
    let heat = heatmap_matches(&gate.exact(t).unwrap(), &gate.eval(t), SUPPORT, SUPPORT_TOL);
    let summary: Vec<String> = errors.iter().map(|(l, e)| format!("{l}:{e:.3e}")).collect();
    check(
        monotone && heat && count == 480,
        format!(
            "errors {}; strictly decreasing {monotone}; heatmap matches {heat}; exponentials {count}",
            summary.join(" ")
        ),
    )
}

fn hong_ou_mandel() -> Verdict {
    let c14 = cutoff(14);
    let dip = coincidence_probability(c14, FRAC_PI_4).unwrap();
    let gate = conditional_beam_splitter(&Recipe::order(2).unwrap(), c14).unwrap();
    let leakage = hom_synthesized_dynamics(&gate, FRAC_PI_2, 200).unwrap().max_leakage();
    let ts = log_grid(1e-5, 1e-3, 8).unwrap();
    let errs: Vec<f64> = ts.iter().map(|&t| gate.error(t).unwrap()).collect();
    let fit = fit_power_law(&ts, &errs).unwrap();
    check(
        dip < EXACT_TOL && leakage < HOM_LEAKAGE && fit.residual < FIT_RESIDUAL,
        format!(
            "coincidence {dip:e}; leakage {leakage:e}; single-step exponent {:.3} residual {:.3e}",
            fit.exponent, fit.residual
        ),
    )
}

fn conditional_rotation() -> Verdict {
    let c15 = cutoff(15);
    let exact = conditional_rotation_phase_space(PauliAxis::Z, &Recipe::minimal(), c15).unwrap();
    let psi = ground_fock_state(c15, 2).unwrap();
    let dt = 20.0 / 2000.0;
    let obs = Observables { mode: FactorAddress(1), levels: 4, physical_max: 15 };
    let trace = evolve_with(&exact.exact(dt).unwrap(), &psi, dt, 2000, &obs).unwrap();
    let worst = trace
        .times
        .iter()
        .zip(&trace.autocorrelation)
        .map(|(&t, &a)| (a - (2.0 * t).cos()).abs())
        .fold(0.0, f64::max);
    let ts = log_grid(1e-4, 1e-2, 8).unwrap();
    let mut fits = Vec::new();
    for p in [1u32, 2] {
        let gate = conditional_rotation_phase_space(PauliAxis::Z, &Recipe::order(p).unwrap(), c15).unwrap();
        let errs: Vec<f64> = ts.iter().map(|&t| gate.error(t).unwrap()).collect();
        fits.push((p, exponent(&ts, &errs)));
    }
    let slopes = fits.iter().all(|&(p, e)| (e - (p as f64 + 0.5)).abs() <= EXPONENT_TOL);
    check(worst < EXACT_TOL && slopes, format!("cos 2t deviation {worst:e}; exponents {fits:.3?}"))
}

fn fermi_hubbard() -> Verdict {
    let (u, j, tau) = (1.3, 0.7, 0.9);
    let gates = fermi_hubbard_gates(u, j, tau, cutoff(3)).unwrap();
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let (cs, sn) = ((j * tau).cos(), (j * tau).sin());
    let same = [[one, zero, zero, zero], [zero, one, zero, zero], [zero, zero, one, zero], [
        zero,
        zero,
        zero,
        C64::from_polar(1.0, -u * tau),
    ]];
    let hop = [
        [one, zero, zero, zero],
        [zero, C64::new(cs, 0.0), C64::new(0.0, sn), zero],
        [zero, C64::new(0.0, sn), C64::new(cs, 0.0), zero],
        [zero, zero, zero, one],
    ];
    let fswap = [[one, zero, zero, zero], [zero, zero, one, zero], [zero, one, zero, zero], [zero, zero, zero, -one]];
    let mut worst = 0.0f64;
    for (got, want) in [(&gates.same, &same), (&gates.hop, &hop), (&gates.fswap, &fswap)] {
        for i in 0..4 {
            for k in 0..4 {
                worst = worst.max((got[[i, k]] - want[i][k]).norm());
            }
        }
    }
    check(worst <= HUBBARD_TOL, format!("max entry deviation {worst:e}"))
}

fn conditional_displacements() -> Verdict {
    let c = cutoff(15);
    let u = s1_from_conditional_displacements(c).unwrap();
    let target = s1(c).unwrap();
    let alphas = log_grid(1e-3, 1e-1, 12).unwrap();
    let errs: Vec<f64> = alphas.iter().map(|&a| dist(&u.eval(a), &target.eval(2.0 * a))).collect();
    let e = exponent(&alphas, &errs);
    let leading = (errs[1] / errs[0]).ln() / (alphas[1] / alphas[0]).ln();
    check(e >= 2.0, format!("fitted slope {e:.4}; local slope at the small-α end {leading:.4}"))
}

fn timeslicing() -> Verdict {
    let gate = nonlinear_hamiltonian(&NonlinearParams { omega: 1.0, kappa: 1.0, q: 1 }, cutoff(8)).unwrap();
    let eps = 0.1;
    let coarse = nonlinear_timeslice(&gate, 0.5, eps, 100_000).unwrap();
    let fine = nonlinear_timeslice(&gate, 0.5, eps / 2.0, 100_000).unwrap();
    let p = gate.predicted_exponent();
    let ratio = fine.slices as f64 / coarse.slices as f64;
    let bound = 2f64.powf(1.0 / (p - 1.0)) * SLICE_SLACK;
    check(ratio <= bound, format!("r(ε)={}, r(ε/2)={}, ratio {ratio:.3} ≤ {bound:.3}", coarse.slices, fine.slices))
}

fn csv_artifacts(config: &ExperimentConfig, dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let experiment = run(config, &RunOptions::default()).unwrap();
    let mut files: Vec<(PathBuf, Vec<u8>)> = write_experiment(&experiment, dir)
        .unwrap()
        .into_iter()
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .map(|p| {
            let bytes = std::fs::read(&p).unwrap();
            (PathBuf::from(p.file_name().unwrap()), bytes)
        })
        .collect();
    files.sort();
    files
}

fn determinism() -> Verdict {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut lines = Vec::new();
    let mut ok = true;
    for name in ["fig1", "fig2-3", "fig4", "fig5"] {
        let config = ExperimentConfig::load(&configs.join(format!("{name}.toml"))).unwrap();
        let (first, second) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let a = csv_artifacts(&config, first.path());
        let b = csv_artifacts(&config, second.path());
        let same = !a.is_empty() && a == b;
        ok &= same;
        lines.push(format!("{name}: {} csv identical {same}", a.len()));
    }
    check(ok, lines.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        (1, "ladder matrices", ladder_matrices),
        (2, "ladder power norms", norm_bound),
        (3, "commutator formula order", bch_order),
        (4, "product formula order", trotter_order),
        (5, "gate-count closed forms", gate_counts),
        (6, "exact state preparation", exact_state_prep),
        (7, "synthesized T2 ordering and heatmap", synthesized_t2),
        (8, "Hong-Ou-Mandel", hong_ou_mandel),
        (9, "conditional rotation", conditional_rotation),
        (10, "Fermi-Hubbard gates", fermi_hubbard),
        (11, "S1 from conditional displacements", conditional_displacements),
        (12, "time slicing", timeslicing),
        (13, "determinism of shipped configs", determinism),
    ];
    let mut failed = 0;
    for (n, title, body) in criteria {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {n}: PASS {title} ({detail}) [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL {title} ({detail}) [{secs:.1}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 13 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
