//! Self-verification suites: closed forms against numeric oracles over
//! random draws, swept-surface symmetries, and thermal-state rotation
//! invariance. The CLI `verify` command runs these; the acceptance tests
//! pin their thresholds.
//!
//! All randomness is seeded, so a suite prints the same report every run.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::dynamics::{
    analytic_entangled, analytic_pure, analytic_rho1, analytic_rho3, evolve_density_numeric,
    evolve_pure_numeric, phase_distance, propagator,
};
use crate::error::Result;
use crate::linalg::{kron, partial_trace, Subsystem};
use crate::measures::{
    concurrence_entangled_analytic, concurrence_mixed, concurrence_pure,
    reduced_coherence_analytic,
};
use crate::model::{build_hamiltonian, gibbs_state, rotation_z, DipoleAxis};
use crate::states::{BlochAxis, StateSpec};
use crate::sweep::{verify_symmetry, Family, GridAxis, Quantity, SweepConfig, Symmetry};
use crate::tol;

pub const DEFAULT_SEED: u64 = 0x6d6469; // "mdi"

/// Outcome of one verification check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_deviation < self.tolerance
    }
}

fn angle(rng: &mut StdRng) -> f64 {
    rng.random_range(0.0..=2.0 * std::f64::consts::PI)
}

fn time(rng: &mut StdRng) -> f64 {
    rng.random_range(-std::f64::consts::PI..=2.0 * std::f64::consts::PI)
}

fn bloch(rng: &mut StdRng) -> f64 {
    rng.random_range(-1.0..=1.0)
}

fn unit_fraction(rng: &mut StdRng) -> f64 {
    rng.random_range(0.0..=1.0)
}

pub fn random_axis(rng: &mut StdRng, coupling_d: f64) -> DipoleAxis {
    loop {
        let v: [f64; 3] = [
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
        ];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm > 0.1 {
            return DipoleAxis::from_unnormalized(v, coupling_d).expect("nonzero vector");
        }
    }
}

/// Closed forms vs the numeric propagator over random draws, one check per
/// evolved family plus the two closed-form measures.
pub fn oracle_suite(draws: usize, seed: u64) -> Result<Vec<Check>> {
    let h = build_hamiltonian(&DipoleAxis::z(1.0)?);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let mut worst = 0.0f64;
    for _ in 0..draws {
        let (ta, tb, t) = (angle(&mut rng), angle(&mut rng), time(&mut rng));
        let analytic = analytic_pure(ta, tb, t)?;
        let psi0 = StateSpec::PureProduct {
            theta_a: ta,
            theta_b: tb,
        }
        .initial_state()?;
        let psi0 = match psi0 {
            crate::states::InitialState::Pure(psi) => psi,
            crate::states::InitialState::Density(_) => unreachable!("pure family"),
        };
        let numeric = evolve_pure_numeric(&psi0, &h, t)?;
        worst = worst.max(phase_distance(
            analytic.pure().expect("pure path"),
            numeric.pure().expect("pure path"),
        )?);
    }
    checks.push(Check {
        name: "pure product closed form vs numeric propagator".into(),
        max_deviation: worst,
        tolerance: tol::SPECTRAL,
    });

    let mut worst = 0.0f64;
    for _ in 0..draws {
        let (ra, rb, t) = (bloch(&mut rng), bloch(&mut rng), time(&mut rng));
        let analytic = analytic_rho3(ra, rb, t)?;
        let rho0 = StateSpec::BlochMixed {
            axis: BlochAxis::Z,
            ra,
            rb,
        }
        .initial_density()?;
        let numeric = evolve_density_numeric(&rho0, &h, t)?;
        worst = worst.max(
            analytic
                .density()
                .expect("density path")
                .frobenius_distance(numeric.density().expect("density path"))?,
        );
    }
    checks.push(Check {
        name: "z-axis mixed closed form vs numeric propagator".into(),
        max_deviation: worst,
        tolerance: tol::SPECTRAL,
    });

    let mut worst = 0.0f64;
    for _ in 0..draws {
        let (ra, rb, t) = (bloch(&mut rng), bloch(&mut rng), time(&mut rng));
        let analytic = analytic_rho1(ra, rb, t)?;
        let rho0 = StateSpec::BlochMixed {
            axis: BlochAxis::X,
            ra,
            rb,
        }
        .initial_density()?;
        let numeric = evolve_density_numeric(&rho0, &h, t)?;
        worst = worst.max(
            analytic
                .density()
                .expect("density path")
                .frobenius_distance(numeric.density().expect("density path"))?,
        );
    }
    checks.push(Check {
        name: "x-axis mixed closed form vs numeric propagator".into(),
        max_deviation: worst,
        tolerance: tol::SPECTRAL,
    });

    let mut worst = 0.0f64;
    for _ in 0..draws {
        let (w, t) = (unit_fraction(&mut rng), time(&mut rng));
        let analytic = analytic_entangled(w, t)?;
        let psi0 = crate::states::partial_entangled(w)?;
        let numeric = evolve_pure_numeric(&psi0, &h, t)?;
        worst = worst.max(phase_distance(
            analytic.pure().expect("pure path"),
            numeric.pure().expect("pure path"),
        )?);
    }
    checks.push(Check {
        name: "partially entangled closed form vs numeric propagator".into(),
        max_deviation: worst,
        tolerance: tol::SPECTRAL,
    });

    let mut worst = 0.0f64;
    for _ in 0..draws {
        let (w, t) = (unit_fraction(&mut rng), time(&mut rng));
        let closed = concurrence_entangled_analytic(w, t);
        let via_state = concurrence_pure(analytic_entangled(w, t)?.pure().expect("pure path"))?;
        worst = worst.max((closed - via_state).abs());
    }
    checks.push(Check {
        name: "entangled concurrence closed form vs state route".into(),
        max_deviation: worst,
        tolerance: tol::SPECTRAL,
    });

    let mut worst = 0.0f64;
    for _ in 0..draws {
        let (ta, tb, t) = (angle(&mut rng), angle(&mut rng), time(&mut rng));
        let closed = reduced_coherence_analytic(ta, tb, t);
        let rho = analytic_pure(ta, tb, t)?.dense();
        let direct = crate::measures::l1_coherence(&partial_trace(&rho, Subsystem::First)?);
        worst = worst.max((closed - direct).abs());
    }
    checks.push(Check {
        name: "reduced coherence closed form vs partial trace".into(),
        max_deviation: worst,
        tolerance: tol::SPECTRAL,
    });

    let mut worst = 0.0f64;
    for _ in 0..draws {
        let (ta, tb, t) = (angle(&mut rng), angle(&mut rng), time(&mut rng));
        let closed = crate::measures::concurrence_fg(ta, tb, t);
        let via_state = concurrence_pure(analytic_pure(ta, tb, t)?.pure().expect("pure path"))?;
        worst = worst.max((closed - via_state).abs());
    }
    checks.push(Check {
        name: "pure concurrence f,g form vs state route".into(),
        max_deviation: worst,
        tolerance: tol::SPECTRAL,
    });

    Ok(checks)
}

fn symmetry_check(cfg: &SweepConfig, symmetry: Symmetry) -> Result<Check> {
    let report = verify_symmetry(cfg, symmetry)?;
    Ok(Check {
        name: format!("{symmetry} surface symmetry"),
        max_deviation: report.max_mismatch,
        tolerance: report.tolerance,
    })
}

/// Concurrence is unchanged when both qubits are turned by the same angle
/// about z before evolving.
pub fn rz_covariance_check(draws: usize, seed: u64) -> Result<Check> {
    let h = build_hamiltonian(&DipoleAxis::z(1.0)?);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..draws {
        let (ta, tb, t) = (angle(&mut rng), angle(&mut rng), time(&mut rng));
        let delta = angle(&mut rng);
        let psi0 = crate::states::product_state(
            &crate::states::pure_qubit(ta)?,
            &crate::states::pure_qubit(tb)?,
        )?;
        let base = concurrence_pure(evolve_pure_numeric(&psi0, &h, t)?.pure().expect("pure"))?;
        let rz = rotation_z(delta);
        let rotated = kron(&rz, &rz)?.apply(&psi0)?;
        let turned =
            concurrence_pure(evolve_pure_numeric(&rotated, &h, t)?.pure().expect("pure"))?;
        worst = worst.max((base - turned).abs());
    }
    Ok(Check {
        name: "collective z-rotation covariance".into(),
        max_deviation: worst,
        tolerance: tol::SYMMETRY,
    })
}

/// The captioned surface symmetries plus rotation covariance.
pub fn symmetry_suite(seed: u64) -> Result<Vec<Check>> {
    let z = DipoleAxis::z(1.0)?;
    let pi = std::f64::consts::PI;
    let mut checks = Vec::new();

    let period_cfg = SweepConfig {
        family: Family::Pure,
        fixed: vec![("theta_b".into(), pi / 2.0)],
        axes: vec![
            GridAxis::new("theta_a", 0.0, 2.0 * pi, 101),
            GridAxis::new("t", 0.0, pi, 101),
        ],
        hamiltonian_axis: z,
        quantities: vec![Quantity::Concurrence],
    };
    checks.push(symmetry_check(&period_cfg, Symmetry::PeriodPi)?);

    let angles_cfg = SweepConfig {
        family: Family::Pure,
        fixed: vec![("t".into(), 0.63)],
        axes: vec![
            GridAxis::new("theta_a", 0.0, 2.0 * pi, 101),
            GridAxis::new("theta_b", 0.0, 2.0 * pi, 101),
        ],
        hamiltonian_axis: z,
        quantities: vec![Quantity::Concurrence],
    };
    checks.push(symmetry_check(&angles_cfg, Symmetry::ThetaReflection)?);

    let quarter_cfg = SweepConfig {
        fixed: vec![("t".into(), pi / 8.0)],
        ..angles_cfg.clone()
    };
    checks.push(symmetry_check(&quarter_cfg, Symmetry::QuarterTurn)?);

    let rho1_cfg = SweepConfig {
        family: Family::Mixed(BlochAxis::X),
        fixed: vec![("t".into(), 0.9)],
        axes: vec![
            GridAxis::new("ra", -1.0, 1.0, 101),
            GridAxis::new("rb", -1.0, 1.0, 101),
        ],
        hamiltonian_axis: z,
        quantities: vec![Quantity::Concurrence],
    };
    checks.push(symmetry_check(&rho1_cfg, Symmetry::Rho1Reflection)?);

    checks.push(rz_covariance_check(200, seed)?);
    Ok(checks)
}

/// Gibbs-state concurrence must not depend on the dipole axis. One check
/// per temperature; the deviation is the spread across random axes.
pub fn thermal_suite(n_axes: usize, seed: u64) -> Result<Vec<Check>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for beta in [0.1, 1.0, 10.0] {
        let reference = concurrence_mixed(&gibbs_state(
            &build_hamiltonian(&DipoleAxis::z(1.0)?),
            beta,
        )?)?;
        let mut lo = reference;
        let mut hi = reference;
        for _ in 0..n_axes {
            let axis = random_axis(&mut rng, 1.0);
            let value = concurrence_mixed(&gibbs_state(&build_hamiltonian(&axis), beta)?)?;
            lo = lo.min(value);
            hi = hi.max(value);
        }
        checks.push(Check {
            name: format!("thermal concurrence axis invariance at beta = {beta}"),
            max_deviation: hi - lo,
            tolerance: tol::SPECTRAL,
        });
    }
    Ok(checks)
}

/// The propagator and its conjugated form agree along arbitrary axes:
/// U under H(O z) equals (V x V) U (V x V)^dagger up to spectral tolerance.
pub fn axis_equivalence_check(draws: usize, seed: u64) -> Result<Check> {
    let mut rng = StdRng::seed_from_u64(seed);
    let hz = build_hamiltonian(&DipoleAxis::z(1.0)?);
    let mut worst = 0.0f64;
    for _ in 0..draws {
        let rot = crate::model::LocalRotation::new(
            random_axis(&mut rng, 1.0).n_hat(),
            angle(&mut rng),
        )?;
        let t = time(&mut rng);
        let n_prime = crate::model::rotate_axis(&rot, [0.0, 0.0, 1.0]);
        let direct = propagator(
            &build_hamiltonian(&DipoleAxis::from_unnormalized(n_prime, 1.0)?),
            t,
        )?;
        let v = crate::model::su2_matrix(&rot);
        let vv = kron(&v, &v)?;
        let conjugated = vv.matmul(&propagator(&hz, t)?)?.matmul(&vv.adjoint())?;
        worst = worst.max(direct.frobenius_distance(&conjugated)?);
    }
    Ok(Check {
        name: "axis change equals conjugated propagator".into(),
        max_deviation: worst,
        tolerance: tol::SPECTRAL,
    })
}
