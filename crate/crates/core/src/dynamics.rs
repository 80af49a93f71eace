//! Time evolution under the MDI, kept as two independent code paths: the
//! generic numeric propagator (spectral decomposition of the Hamiltonian)
//! and the closed-form evolved states for each initial family. The two are
//! cross-validated against each other; neither is derived from the other.
//!
//! Closed forms are written down exactly as printed, with no simplification,
//! so a transcription slip would surface as an oracle mismatch instead of
//! being silently absorbed. Pure-state comparisons are made modulo a global
//! phase throughout.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{expm_i, ComplexMatrix, PureState};
use crate::model::{build_hamiltonian, DipoleAxis};
use crate::states::{BellKind, InitialState, StateSpec};

/// Which code path produced an evolved state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvolutionPath {
    Analytic,
    Numeric,
}

#[derive(Clone, Debug)]
pub enum EvolvedState {
    Pure(PureState),
    Density(ComplexMatrix),
}

/// An evolved state at a given time (units of D/hbar), tagged with the
/// path that produced it.
#[derive(Clone, Debug)]
pub struct EvolvedResult {
    time: f64,
    path: EvolutionPath,
    state: EvolvedState,
}

impl EvolvedResult {
    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn path(&self) -> EvolutionPath {
        self.path
    }

    pub fn state(&self) -> &EvolvedState {
        &self.state
    }

    pub fn pure(&self) -> Option<&PureState> {
        match &self.state {
            EvolvedState::Pure(psi) => Some(psi),
            EvolvedState::Density(_) => None,
        }
    }

    pub fn density(&self) -> Option<&ComplexMatrix> {
        match &self.state {
            EvolvedState::Pure(_) => None,
            EvolvedState::Density(rho) => Some(rho),
        }
    }

    /// The state as a density matrix regardless of representation.
    pub fn dense(&self) -> ComplexMatrix {
        match &self.state {
            EvolvedState::Pure(psi) => psi.density(),
            EvolvedState::Density(rho) => rho.clone(),
        }
    }
}

/// U_t = exp(-i h t); unitary for Hermitian h.
pub fn propagator(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    expm_i(h, t)
}

/// U_t |psi0> through the numeric propagator.
pub fn evolve_pure_numeric(psi0: &PureState, h: &ComplexMatrix, t: f64) -> Result<EvolvedResult> {
    let evolved = propagator(h, t)?.apply(psi0)?;
    Ok(EvolvedResult {
        time: t,
        path: EvolutionPath::Numeric,
        state: EvolvedState::Pure(evolved),
    })
}

/// U_t rho0 U_t^dagger through the numeric propagator.
pub fn evolve_density_numeric(
    rho0: &ComplexMatrix,
    h: &ComplexMatrix,
    t: f64,
) -> Result<EvolvedResult> {
    let u = propagator(h, t)?;
    let evolved = u.matmul(rho0)?.matmul(&u.adjoint())?;
    Ok(EvolvedResult {
        time: t,
        path: EvolutionPath::Numeric,
        state: EvolvedState::Density(evolved),
    })
}

fn half_angles(theta: f64) -> (f64, f64) {
    ((theta / 2.0).cos(), (theta / 2.0).sin())
}

/// Closed-form evolution of a pure product state (up to a global phase):
///
/// (aa bb cos t - i ba ab sin t)|01> + (ba ab cos t - i aa bb sin t)|10>
///   + e^{i2t}(aa ab|00> + ba bb|11>)
///
/// with aa = cos(theta_a/2), ba = sin(theta_a/2) and likewise for b.
pub fn analytic_pure(theta_a: f64, theta_b: f64, t: f64) -> Result<EvolvedResult> {
    let (alpha_a, beta_a) = half_angles(theta_a);
    let (alpha_b, beta_b) = half_angles(theta_b);
    let (cos_t, sin_t) = (t.cos(), t.sin());
    let phase = (Complex64::i() * (2.0 * t)).exp();

    let a01 = Complex64::new(alpha_a * beta_b * cos_t, -beta_a * alpha_b * sin_t);
    let a10 = Complex64::new(beta_a * alpha_b * cos_t, -alpha_a * beta_b * sin_t);
    let a00 = phase * (alpha_a * alpha_b);
    let a11 = phase * (beta_a * beta_b);

    Ok(EvolvedResult {
        time: t,
        path: EvolutionPath::Analytic,
        state: EvolvedState::Pure(PureState::new(vec![a00, a01, a10, a11])?),
    })
}

/// Closed-form evolution of a z-axis Bloch-mixed product:
///
/// 4 rho = (1+ra)(1+rb)|00><00|
///       + [1 - ra rb + (ra - rb) cos 2t]|01><01| + i (ra - rb) sin 2t |01><10|
///       - i (ra - rb) sin 2t |10><01| + [1 - ra rb - (ra - rb) cos 2t]|10><10|
///       + (1-ra)(1-rb)|11><11|
pub fn analytic_rho3(r3a: f64, r3b: f64, t: f64) -> Result<EvolvedResult> {
    for (name, r) in [("r3a", r3a), ("r3b", r3b)] {
        if !r.is_finite() || r.abs() > 1.0 {
            return Err(Error::InvalidArgument(format!(
                "{name} must satisfy |r| <= 1, got {r}"
            )));
        }
    }
    let diff = r3a - r3b;
    let (cos_2t, sin_2t) = ((2.0 * t).cos(), (2.0 * t).sin());
    let mut rho = ComplexMatrix::zeros(4);
    rho.set(0, 0, Complex64::new((1.0 + r3a) * (1.0 + r3b) / 4.0, 0.0));
    rho.set(
        1,
        1,
        Complex64::new((1.0 - r3a * r3b + diff * cos_2t) / 4.0, 0.0),
    );
    rho.set(1, 2, Complex64::new(0.0, diff * sin_2t / 4.0));
    rho.set(2, 1, Complex64::new(0.0, -diff * sin_2t / 4.0));
    rho.set(
        2,
        2,
        Complex64::new((1.0 - r3a * r3b - diff * cos_2t) / 4.0, 0.0),
    );
    rho.set(3, 3, Complex64::new((1.0 - r3a) * (1.0 - r3b) / 4.0, 0.0));
    Ok(EvolvedResult {
        time: t,
        path: EvolutionPath::Analytic,
        state: EvolvedState::Density(rho),
    })
}

/// Unitary with the Bell states as columns, order Psi+, Psi-, Phi+, Phi-.
pub fn bell_basis() -> ComplexMatrix {
    let kinds = [
        BellKind::PsiPlus,
        BellKind::PsiMinus,
        BellKind::PhiPlus,
        BellKind::PhiMinus,
    ];
    let mut b = ComplexMatrix::zeros(4);
    for (col, kind) in kinds.into_iter().enumerate() {
        let psi = crate::states::bell_state(kind);
        for row in 0..4 {
            b.set(row, col, psi.amplitude(row));
        }
    }
    b
}

/// Closed-form evolution of an x-axis Bloch-mixed product, assembled in the
/// Bell basis and rotated to the computational basis:
///
/// 4 rho = (1 - ra rb)(|Psi-><Psi-| + |Phi-><Phi-|)
///       + (1 + ra rb)(|Psi+><Psi+| + |Phi+><Phi+|)
///       + (rb - ra)(e^{it}|Phi-><Psi-| + e^{-it}|Psi-><Phi-|)
///       + (rb + ra)(e^{i3t}|Phi+><Psi+| + e^{-i3t}|Psi+><Phi+|)
pub fn analytic_rho1(r1a: f64, r1b: f64, t: f64) -> Result<EvolvedResult> {
    for (name, r) in [("r1a", r1a), ("r1b", r1b)] {
        if !r.is_finite() || r.abs() > 1.0 {
            return Err(Error::InvalidArgument(format!(
                "{name} must satisfy |r| <= 1, got {r}"
            )));
        }
    }
    let rr = r1a * r1b;
    // Bell-basis indices: 0 Psi+, 1 Psi-, 2 Phi+, 3 Phi-
    let mut bell = ComplexMatrix::zeros(4);
    bell.set(0, 0, Complex64::new((1.0 + rr) / 4.0, 0.0));
    bell.set(1, 1, Complex64::new((1.0 - rr) / 4.0, 0.0));
    bell.set(2, 2, Complex64::new((1.0 + rr) / 4.0, 0.0));
    bell.set(3, 3, Complex64::new((1.0 - rr) / 4.0, 0.0));

    let minus = (r1b - r1a) / 4.0;
    bell.set(3, 1, (Complex64::i() * t).exp() * minus);
    bell.set(1, 3, (-Complex64::i() * t).exp() * minus);

    let plus = (r1b + r1a) / 4.0;
    bell.set(2, 0, (Complex64::i() * (3.0 * t)).exp() * plus);
    bell.set(0, 2, (-Complex64::i() * (3.0 * t)).exp() * plus);

    let b = bell_basis();
    let rho = b.matmul(&bell)?.matmul(&b.adjoint())?;
    Ok(EvolvedResult {
        time: t,
        path: EvolutionPath::Analytic,
        state: EvolvedState::Density(rho),
    })
}

/// Closed-form evolution of sqrt(w)|01> + sqrt(1-w)|10> (up to a global
/// phase):
///
/// (sqrt(w) cos t - i sqrt(1-w) sin t)|01> + (sqrt(1-w) cos t - i sqrt(w) sin t)|10>
pub fn analytic_entangled(w: f64, t: f64) -> Result<EvolvedResult> {
    if !w.is_finite() || !(0.0..=1.0).contains(&w) {
        return Err(Error::InvalidArgument(format!(
            "weight w must lie in [0, 1], got {w}"
        )));
    }
    let (sw, swc) = (w.sqrt(), (1.0 - w).sqrt());
    let (cos_t, sin_t) = (t.cos(), t.sin());
    let a01 = Complex64::new(sw * cos_t, -swc * sin_t);
    let a10 = Complex64::new(swc * cos_t, -sw * sin_t);
    Ok(EvolvedResult {
        time: t,
        path: EvolutionPath::Analytic,
        state: EvolvedState::Pure(PureState::new(vec![
            Complex64::ZERO,
            a01,
            a10,
            Complex64::ZERO,
        ])?),
    })
}

/// Closed-form evolution of the depolarized family: the channel commutes
/// with the unitary, so U_t rho_d U_t^dagger = (1-p)/4 identity
/// + p |Psi_t><Psi_t|.
pub fn analytic_depolarized(w: f64, p: f64, t: f64) -> Result<EvolvedResult> {
    let psi_t = analytic_entangled(w, t)?;
    let rho = crate::states::depolarize(&psi_t.dense(), p)?;
    Ok(EvolvedResult {
        time: t,
        path: EvolutionPath::Analytic,
        state: EvolvedState::Density(rho),
    })
}

/// Evolve any spec'd initial state at time t under the Hamiltonian for the
/// given dipole axis.
///
/// For a z-aligned axis the per-family closed forms apply, with the coupling
/// folded into the time argument (H = D H_z means phases advance at rate D).
/// Any other axis falls back to the numeric propagator.
pub fn evolve_spec(spec: &StateSpec, axis: &DipoleAxis, t: f64) -> Result<EvolvedResult> {
    if axis.is_z_aligned() {
        let te = axis.coupling() * t;
        return match *spec {
            StateSpec::PureProduct { theta_a, theta_b } => analytic_pure(theta_a, theta_b, te),
            StateSpec::BlochMixed {
                axis: crate::states::BlochAxis::Z,
                ra,
                rb,
            } => analytic_rho3(ra, rb, te),
            StateSpec::BlochMixed {
                axis: crate::states::BlochAxis::X,
                ra,
                rb,
            } => analytic_rho1(ra, rb, te),
            StateSpec::PartialEntangled { w } => analytic_entangled(w, te),
            StateSpec::Depolarized { w, p } => analytic_depolarized(w, p, te),
        };
    }
    let h = build_hamiltonian(axis);
    match spec.initial_state()? {
        InitialState::Pure(psi) => evolve_pure_numeric(&psi, &h, t),
        InitialState::Density(rho) => evolve_density_numeric(&rho, &h, t),
    }
}

/// Global-phase-insensitive distance between normalized states:
/// min over phi of || e^{i phi} u - v ||.
///
/// The minimizing phase is arg <u|v>; the difference vector is formed
/// explicitly rather than through sqrt(2 - 2|<u|v>|), which would cancel
/// catastrophically for nearly identical states.
pub fn phase_distance(u: &PureState, v: &PureState) -> Result<f64> {
    let z = u.inner(v)?;
    let phase = if z.norm() > 0.0 { z / z.norm() } else { Complex64::ONE };
    let sum: f64 = u
        .amplitudes()
        .iter()
        .zip(v.amplitudes())
        .map(|(a, b)| (phase * a - b).norm_sqr())
        .sum();
    Ok(sum.sqrt())
}
