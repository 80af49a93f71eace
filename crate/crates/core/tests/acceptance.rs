//! Acceptance suite: every release criterion with its tolerance pinned in
//! code. Run with `cargo test -p mdi-core --test acceptance -- --nocapture`
//! to see one line per criterion.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use mdi_core::dynamics::{
    analytic_depolarized, analytic_rho3, evolve_pure_numeric,
};
use mdi_core::linalg::{hermitian_eig, ComplexMatrix, PureState};
use mdi_core::measures::{concurrence_fg, concurrence_mixed, concurrence_pure, max_concurrence_over_time};
use mdi_core::model::{build_hamiltonian, total_excitation_operator, DipoleAxis};
use mdi_core::states::{bell_state, BellKind};
use mdi_core::verify;
use mdi_core::Complex64;

const SEED: u64 = verify::DEFAULT_SEED;

fn criterion(id: u32, name: &str, measured: f64, tolerance: f64) {
    let ok = measured < tolerance;
    println!(
        "criterion {id:02} {}: {name} (measured {measured:.3e}, tolerance {tolerance:.1e})",
        if ok { "PASS" } else { "FAIL" },
    );
    assert!(
        ok,
        "criterion {id:02} {name}: measured {measured:.3e} >= tolerance {tolerance:.1e}"
    );
}

#[test]
fn criterion_01_spectral_ground_truth() {
    let h = build_hamiltonian(&DipoleAxis::z(1.0).unwrap());
    let pairs = [
        (BellKind::PsiPlus, 2.0),
        (BellKind::PsiMinus, 0.0),
        (BellKind::PhiPlus, -1.0),
        (BellKind::PhiMinus, -1.0),
    ];
    let mut worst = 0.0f64;
    for (kind, lam) in pairs {
        let psi = bell_state(kind);
        let hv = h.mul_vec(psi.amplitudes()).unwrap();
        let residual: f64 = hv
            .iter()
            .zip(psi.amplitudes())
            .map(|(a, b)| (a - b * lam).norm())
            .fold(0.0, f64::max);
        worst = worst.max(residual);
    }
    let eig = hermitian_eig(&h).unwrap();
    for (lam, want) in eig.eigenvalues.iter().zip([-1.0, -1.0, 0.0, 2.0]) {
        worst = worst.max((lam - want).abs());
    }
    criterion(1, "Bell-state spectrum {-1,-1,0,2}", worst, 1e-10);
}

#[test]
fn criterion_02_oracle_equivalence() {
    let checks = verify::oracle_suite(1000, SEED).unwrap();
    let worst = checks
        .iter()
        .map(|c| c.max_deviation)
        .fold(0.0f64, f64::max);
    for check in &checks {
        assert!(
            check.max_deviation < 1e-10,
            "{}: {:.3e}",
            check.name,
            check.max_deviation
        );
    }
    criterion(
        2,
        "closed forms vs numeric oracles, 1000 draws per family",
        worst,
        1e-10,
    );
}

#[test]
fn criterion_03_maximum_entanglement_state_set() {
    // the six products that reach full entanglement, as (theta_a, theta_b)
    let three_half_pi = 3.0 * FRAC_PI_2;
    let maximal = [
        (0.0, PI),                      // |01>
        (PI, 0.0),                      // |10>
        (FRAC_PI_2, FRAC_PI_2),         // |++>
        (FRAC_PI_2, three_half_pi),     // |+->
        (three_half_pi, FRAC_PI_2),     // |-+>
        (three_half_pi, three_half_pi), // |-->
    ];
    let mut worst_gap = 0.0f64;
    for (ta, tb) in maximal {
        let (_, sup) = max_concurrence_over_time(ta, tb, PI, 10_000);
        worst_gap = worst_gap.max((sup - 1.0).abs());
    }

    // |00> and |11> stay exactly separable on the whole grid
    let mut worst_floor = 0.0f64;
    for (ta, tb) in [(0.0, 0.0), (PI, PI)] {
        for k in 0..10_000 {
            let t = k as f64 * PI / 9999.0;
            worst_floor = worst_floor.max(concurrence_fg(ta, tb, t));
        }
    }
    assert!(worst_floor < 1e-12, "confined states gained {worst_floor:e}");
    criterion(
        3,
        "six maximal initial products reach sup E = 1 (and |00>,|11> stay at 0)",
        worst_gap,
        1e-6,
    );
}

#[test]
fn criterion_04_period_pi() {
    let mut worst = 0.0f64;
    for i in 0..101 {
        let ta = i as f64 * 2.0 * PI / 100.0;
        for j in 0..101 {
            let tb = j as f64 * 2.0 * PI / 100.0;
            for k in 0..50 {
                let t = k as f64 * PI / 49.0;
                let diff = (concurrence_fg(ta, tb, t) - concurrence_fg(ta, tb, t + PI)).abs();
                worst = worst.max(diff);
            }
        }
    }
    criterion(4, "concurrence has period pi in t", worst, 1e-8);
}

#[test]
fn criterion_05_rho3_maxima_and_identity_floor() {
    let mut worst = 0.0f64;
    for n in 0..3 {
        let t = (2.0 * n as f64 + 1.0) * FRAC_PI_4;
        let rho = analytic_rho3(1.0, -1.0, t).unwrap().dense();
        let e = concurrence_mixed(&rho).unwrap();
        worst = worst.max((e - 1.0).abs());
    }
    for k in 0..50 {
        let t = k as f64 * PI / 49.0;
        let rho = analytic_rho3(0.0, 0.0, t).unwrap().dense();
        let e = concurrence_mixed(&rho).unwrap();
        assert!(e < 1e-12, "maximally mixed input entangled at t = {t}: {e:e}");
    }
    criterion(
        5,
        "opposite-pole z-mixed states are Bell-grade at odd quarter-pi times",
        worst,
        1e-9,
    );
}

#[test]
fn criterion_06_entangled_family_maxima() {
    let mut worst = 0.0f64;
    for &w in &[0.0, 0.1, 0.25, 0.5, 0.9, 1.0] {
        for &t in &[FRAC_PI_4, 3.0 * FRAC_PI_4] {
            let res = mdi_core::dynamics::analytic_entangled(w, t).unwrap();
            let e = concurrence_pure(res.pure().unwrap()).unwrap();
            worst = worst.max((e - 1.0).abs());
        }
    }
    criterion(
        6,
        "partially entangled family reaches E = 1 at odd quarter-pi times for all w",
        worst,
        1e-10,
    );
}

#[test]
fn criterion_07_depolarization_threshold() {
    let w = 0.5;
    let t = FRAC_PI_4;
    let mut previous = -1.0f64;
    let mut worst_monotonicity = 0.0f64;
    let mut worst_floor = 0.0f64;
    let mut at_one = 0.0f64;
    for k in 0..=100 {
        let p = k as f64 / 100.0;
        let rho = analytic_depolarized(w, p, t).unwrap().dense();
        let e = concurrence_mixed(&rho).unwrap();
        worst_monotonicity = worst_monotonicity.max(previous - e);
        previous = e;
        if p <= 1.0 / 3.0 + 1e-9 {
            worst_floor = worst_floor.max(e);
        }
        if k == 100 {
            at_one = (e - 1.0).abs();
        }
    }
    assert!(
        worst_monotonicity < 1e-12,
        "concurrence decreased by {worst_monotonicity:e} somewhere on the p grid"
    );
    assert!(
        worst_floor < 1e-12,
        "entanglement below the p = 1/3 threshold: {worst_floor:e}"
    );
    criterion(
        7,
        "depolarized family: monotone in p, zero through p = 1/3, unity at p = 1",
        at_one,
        1e-9,
    );
}

#[test]
fn criterion_08_thermal_invariance() {
    let checks = verify::thermal_suite(20, SEED).unwrap();
    let worst = checks
        .iter()
        .map(|c| c.max_deviation)
        .fold(0.0f64, f64::max);
    criterion(
        8,
        "Gibbs concurrence agrees across 20 random axes at beta in {0.1, 1, 10}",
        worst,
        1e-10,
    );
}

#[test]
fn criterion_09_symmetry_suite() {
    let checks = verify::symmetry_suite(SEED).unwrap();
    let worst = checks
        .iter()
        .map(|c| c.max_deviation)
        .fold(0.0f64, f64::max);
    for check in &checks {
        assert!(
            check.max_deviation < 1e-8,
            "{}: {:.3e}",
            check.name,
            check.max_deviation
        );
    }
    criterion(
        9,
        "theta reflection, quarter turn, rho1 reflection, and Rz covariance",
        worst,
        1e-8,
    );
}

#[test]
fn criterion_10_excitation_conservation() {
    let h = build_hamiltonian(&DipoleAxis::z(1.0).unwrap());
    let n_op = total_excitation_operator();
    let commutator = h
        .matmul(&n_op)
        .unwrap()
        .sub(&n_op.matmul(&h).unwrap())
        .unwrap()
        .frobenius_norm();
    assert!(commutator < 1e-12, "commutator norm {commutator:e}");

    let mut rng = StdRng::seed_from_u64(SEED);
    let mut worst_drift = 0.0f64;
    for _ in 0..100 {
        let mut amp: Vec<Complex64> = (0..4)
            .map(|_| Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
            .collect();
        let norm: f64 = amp.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-3 {
            continue;
        }
        for a in &mut amp {
            *a /= norm;
        }
        let psi0 = PureState::new(amp).unwrap();
        let initial = n_op.expectation(&psi0).unwrap().re;
        for &t in &[0.37, 1.1, 2.9, 5.6] {
            let res = evolve_pure_numeric(&psi0, &h, t).unwrap();
            let value = n_op.expectation(res.pure().unwrap()).unwrap().re;
            worst_drift = worst_drift.max((value - initial).abs());
        }
    }
    criterion(
        10,
        "total excitation conserved along 100 random trajectories",
        worst_drift,
        1e-10,
    );
}

// Criterion 11 (byte-identical preset output across runs) exercises the CLI
// binary and lives in the command-line crate's acceptance suite.

#[test]
fn acceptance_runtime_sanity() {
    // the identity/4 fixed point doubles as a cheap end-to-end smoke check
    let rho = ComplexMatrix::identity(4).scale_re(0.25);
    assert!(concurrence_mixed(&rho).unwrap() < 1e-12);
}
