//! Acceptance gate. Each test is one criterion of the project contract,
//! printed as a single pass/fail line (run with `--nocapture` to see the
//! PASS lines; a failure panics with the matching FAIL line). Tolerances
//! are pinned here and nowhere looser.

use std::collections::BTreeMap;
use std::time::Instant;

use mpiso::calculus::intersection_diagnostics;
use mpiso::sampling::DEFAULT_SEED;
use mpiso::spectral::{extrapolate_radius, lp_radius_sequence, RadiusMode};
use mpiso::{
    is_minfty_isometry, is_mp_isometry, load_example, minimal_m, run_suite, Exponent,
    NormContext, OperatorTuple, VerifyOptions,
};

const GRAM_TOL: f64 = 1e-12;
const SAMPLED_TOL: f64 = 1e-10;
const WITNESS_TOL: f64 = 1e-12;
const DIAG_TOL: f64 = 1e-12;
const NILPOTENT_TOL: f64 = 1e-10;
const RICHTER_PROBES: usize = 1000;
const RICHTER_BUDGET_SECS: f64 = 1.0;
const SPECTRAL_BUDGET_SECS: f64 = 5.0;
const RAW_TERM_TOL: f64 = 1e-10;
const RADIUS_LO: f64 = 0.99;
const RADIUS_HI: f64 = 1.01;

fn fixture(name: &str) -> OperatorTuple {
    load_example(name, &BTreeMap::new()).expect("gallery fixture").0
}

fn check(criterion: u32, ok: bool, detail: &str) {
    assert!(ok, "criterion {criterion}: FAIL - {detail}");
    println!("criterion {criterion}: PASS - {detail}");
}

fn suite_passes(criterion: u32, name: &str) {
    let row = run_suite(name, DEFAULT_SEED).expect("suite runs");
    check(criterion, row.passed, &format!("suite {name}: {}", row.detail));
}

#[test]
fn criterion_1_richter_classification() {
    let t = fixture("richter_22");
    let ctx = NormContext::euclidean();
    let opts = VerifyOptions { samples: RICHTER_PROBES, ..VerifyOptions::default() };
    let start = Instant::now();
    let report = is_mp_isometry(&t, &ctx, 2, &opts).unwrap();
    let order = minimal_m(&t, &ctx, 6, &opts).unwrap();
    let elapsed = start.elapsed().as_secs_f64();

    let gram = report.gram_residual.expect("Hilbert fast path engaged");
    check(
        1,
        report.accepted() && gram <= GRAM_TOL,
        &format!("order-2 verdict accepted, Gram residual {gram:.3e} <= {GRAM_TOL:.0e}"),
    );
    check(
        1,
        report.max_relative_residual <= SAMPLED_TOL,
        &format!(
            "sampled residual {:.3e} <= {SAMPLED_TOL:.0e} over {RICHTER_PROBES} probes",
            report.max_relative_residual
        ),
    );
    check(1, order.minimal == Some(2), &format!("minimal order {:?} = Some(2)", order.minimal));

    let m1 = &order.reports[0];
    assert_eq!(m1.m, 1);
    let witness = m1.witness.as_ref().expect("rejection carries a witness");
    let on_e2 = witness.probe[1].norm() > 0.999
        && witness
            .probe
            .iter()
            .enumerate()
            .all(|(i, c)| i == 1 || c.norm() < 1e-9);
    check(
        1,
        !m1.accepted() && on_e2 && (witness.defect - 2.0).abs() <= WITNESS_TOL,
        &format!(
            "order-1 rejected at probe e_2 with defect {:.12} = 2 +- {WITNESS_TOL:.0e}",
            witness.defect
        ),
    );
    check(1, elapsed < RICHTER_BUDGET_SECS, &format!("runtime {elapsed:.3}s < {RICHTER_BUDGET_SECS}s"));
}

#[test]
fn criterion_2_diagonal_classification() {
    let t = fixture("diag_13");
    let three = Exponent::Finite(3.0);
    let report = is_mp_isometry(
        &t,
        &NormContext::new(three, three),
        1,
        &VerifyOptions::default(),
    )
    .unwrap();
    check(
        2,
        report.accepted() && report.max_relative_residual <= DIAG_TOL,
        &format!(
            "(1,3) verdict on the 3-norm accepted with residual {:.3e} <= {DIAG_TOL:.0e}",
            report.max_relative_residual
        ),
    );
    let sphere = mpiso::unit_sphere_check(&t, three).unwrap();
    check(2, sphere <= DIAG_TOL, &format!("unit sphere residual {sphere:.3e} <= {DIAG_TOL:.0e}"));
}

#[test]
fn criterion_3_isometry_nilpotent() {
    let t = fixture("isometry_nilpotent");
    let opts = VerifyOptions::default();
    let qs = [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinity];
    let mut worst = 0.0f64;
    for q in qs {
        for p in [0.5, 1.0, 2.0, 3.0] {
            let report =
                is_mp_isometry(&t, &NormContext::new(q, Exponent::Finite(p)), 2, &opts).unwrap();
            assert!(
                report.accepted(),
                "criterion 3: FAIL - (2,{p}) rejected on the {q}-norm"
            );
            worst = worst.max(report.max_relative_residual);
        }
    }
    check(
        3,
        worst <= NILPOTENT_TOL,
        &format!("(2,p) accepted for p in {{1/2,1,2,3}} on q in {{1,2,inf}}, worst residual {worst:.3e}"),
    );

    let mut worst_inf = 0.0f64;
    let mut worst_witness = f64::INFINITY;
    for q in qs {
        let at2 = is_minfty_isometry(&t, q, 2, &opts).unwrap();
        assert!(at2.accepted(), "criterion 3: FAIL - (2,inf) rejected on the {q}-norm");
        worst_inf = worst_inf.max(at2.max_relative_residual);
        let at1 = is_minfty_isometry(&t, q, 1, &opts).unwrap();
        assert!(!at1.accepted(), "criterion 3: FAIL - (1,inf) accepted on the {q}-norm");
        worst_witness =
            worst_witness.min(at1.witness.as_ref().expect("witness").residual);
    }
    check(
        3,
        worst_inf <= NILPOTENT_TOL && worst_witness >= 0.5,
        &format!(
            "(2,inf) accepted (worst residual {worst_inf:.3e}), (1,inf) rejected with witness \
             residual {worst_witness:.3} >= 0.5"
        ),
    );

    let diag = intersection_diagnostics(&t, &NormContext::euclidean(), 2, 2, &opts).unwrap();
    let square = diag.operators[1].square_frobenius;
    let iso = diag.operators[0].isometry_residual;
    check(
        3,
        square == 0.0 && iso <= 1e-12,
        &format!("T_2 squares to zero exactly (mass {square:e}) and T_1 is an isometry (residual {iso:.3e})"),
    );
}

#[test]
fn criterion_4_newton_reconstruction() {
    suite_passes(4, "newton-reconstruction");
}

#[test]
fn criterion_5_calculus_identities() {
    for name in ["q-recursion", "p-recursion", "d-telescoping", "shifted-difference", "kronecker"]
    {
        suite_passes(5, name);
    }
}

#[test]
fn criterion_6_upward_closure() {
    suite_passes(6, "upward-closure");
}

#[test]
fn criterion_7_spectral() {
    let t = fixture("richter_22");
    let two = Exponent::Finite(2.0);

    let start = Instant::now();
    let seq = lp_radius_sequence(&t, two, 40, RadiusMode::EuclideanNorm).unwrap();
    let ex = extrapolate_radius(&seq.terms).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    check(
        7,
        (RADIUS_LO..=RADIUS_HI).contains(&ex.value) && elapsed < SPECTRAL_BUDGET_SECS,
        &format!(
            "extrapolated r_2 = {:.6} in [{RADIUS_LO}, {RADIUS_HI}] from k_max = 40 in {elapsed:.3}s",
            ex.value
        ),
    );

    let eig = lp_radius_sequence(&t, two, 40, RadiusMode::Eigenvalue).unwrap();
    let worst_term = eig
        .terms
        .iter()
        .map(|s| (s - 1.0).abs())
        .fold(0.0, f64::max);
    check(
        7,
        worst_term <= RAW_TERM_TOL,
        &format!("eigenvalue-mode raw terms equal 1 within {worst_term:.3e} for all k <= 40"),
    );

    suite_passes(7, "unit-sphere");
    suite_passes(7, "mode-agreement");
}

#[test]
fn criterion_8_equivalent_norm() {
    suite_passes(8, "equivalent-norm");
}
