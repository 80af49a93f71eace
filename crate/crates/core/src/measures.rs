//! Entanglement, coherence, and purity quantifiers, each in both its closed
//! form and a generic numeric form. The coherence reference basis is the
//! computational basis throughout.

use crate::dynamics::{EvolvedResult, EvolvedState};
use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, hermitian_sqrt, kron, partial_trace, sigma2, ComplexMatrix, PureState,
    Subsystem,
};
use crate::states::validate_density;
use crate::tol;

/// Aggregated quantifiers for one evolved state. The Wootters eigenvalues
/// are present for mixed inputs only.
#[derive(Clone, Copy, Debug)]
pub struct MeasureReport {
    pub concurrence: f64,
    pub coherence_a: f64,
    pub coherence_b: f64,
    pub purity: f64,
    pub wootters_lambdas: Option<[f64; 4]>,
}

/// Concurrence of a two-qubit pure state, |<psi| s2 x s2 |psi*>|, which in
/// amplitude form is 2 |a00 a11 - a01 a10|.
pub fn concurrence_pure(psi: &PureState) -> Result<f64> {
    if psi.dim() != 4 {
        return Err(Error::InvalidArgument(
            "concurrence_pure expects a two-qubit state".into(),
        ));
    }
    let det = psi.amplitude(0) * psi.amplitude(3) - psi.amplitude(1) * psi.amplitude(2);
    Ok(2.0 * det.norm())
}

fn half_angles(theta: f64) -> (f64, f64) {
    ((theta / 2.0).cos(), (theta / 2.0).sin())
}

/// Closed-form concurrence of the evolved pure product state,
/// sqrt(f^2 + g^2) with
///
/// f = 2 aa ba ab bb (cos 2t - cos 4t)
/// g = (aa^2 bb^2 + ba^2 ab^2) sin 2t + 2 aa ba ab bb sin 4t
pub fn concurrence_fg(theta_a: f64, theta_b: f64, t: f64) -> f64 {
    let (alpha_a, beta_a) = half_angles(theta_a);
    let (alpha_b, beta_b) = half_angles(theta_b);
    let prod = alpha_a * beta_a * alpha_b * beta_b;
    let f = 2.0 * prod * ((2.0 * t).cos() - (4.0 * t).cos());
    let g = (alpha_a.powi(2) * beta_b.powi(2) + beta_a.powi(2) * alpha_b.powi(2))
        * (2.0 * t).sin()
        + 2.0 * prod * (4.0 * t).sin();
    f.hypot(g)
}

/// The four eigenvalues of rho rho~ in descending order, where
/// rho~ = (s2 x s2) rho* (s2 x s2).
///
/// Computed through the similarity-equivalent Hermitian matrix
/// sqrt(rho) rho~ sqrt(rho), whose spectrum is real and non-negative for a
/// valid density matrix. Negative eigenvalues below 1e-9 clamp to zero;
/// larger violations are an error.
pub fn wootters_lambdas(rho: &ComplexMatrix) -> Result<[f64; 4]> {
    if rho.dim() != 4 {
        return Err(Error::InvalidArgument(
            "wootters_lambdas expects a 4x4 density matrix".into(),
        ));
    }
    let yy = kron(&sigma2(), &sigma2())?;
    let rho_tilde = yy.matmul(&rho.conjugate())?.matmul(&yy)?;
    let sqrt_rho = hermitian_sqrt(rho)?;
    let m = sqrt_rho.matmul(&rho_tilde)?.matmul(&sqrt_rho)?;
    let eig = hermitian_eig(&m)?;
    let floor = tol::EIGENVALUE_FLOOR * m.max_abs();
    let mut lambdas = [0.0; 4];
    for (slot, &lam) in lambdas.iter_mut().zip(eig.eigenvalues.iter().rev()) {
        if lam < -tol::EIGENVALUE_CLAMP {
            return Err(Error::NumericalInstability(format!(
                "Wootters eigenvalue {lam:.3e} below the clamp window"
            )));
        }
        *slot = if lam.abs() < floor { 0.0 } else { lam.max(0.0) };
    }
    Ok(lambdas)
}

/// Wootters concurrence max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4))
/// for a two-qubit density matrix.
pub fn concurrence_mixed(rho: &ComplexMatrix) -> Result<f64> {
    validate_density(rho)?;
    if rho.dim() != 4 {
        return Err(Error::InvalidArgument(
            "concurrence_mixed expects a 4x4 density matrix".into(),
        ));
    }
    let l = wootters_lambdas(rho)?;
    Ok((l[0].sqrt() - l[1].sqrt() - l[2].sqrt() - l[3].sqrt()).max(0.0))
}

/// l1-norm coherence: sum of the absolute off-diagonal entries in the
/// computational basis. The input is assumed to be a valid density matrix.
pub fn l1_coherence(rho: &ComplexMatrix) -> f64 {
    let n = rho.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += rho.get(i, j).norm();
            }
        }
    }
    sum
}

/// Tr(rho^2), in [1/dim, 1] for a valid density matrix.
pub fn purity(rho: &ComplexMatrix) -> f64 {
    rho.matmul(rho).expect("square input").trace().re
}

/// Closed-form concurrence of the evolved partially entangled state,
/// sqrt(sin^2 2t + 4 w (1-w) cos^2 2t).
pub fn concurrence_entangled_analytic(w: f64, t: f64) -> f64 {
    let s = (2.0 * t).sin();
    let c = (2.0 * t).cos();
    (s * s + 4.0 * w * (1.0 - w) * c * c).sqrt()
}

/// Closed-form l1 coherence of dipole a's reduced state after evolving the
/// pure product preparation:
///
/// C^2/4 = aa^2 ba^2 (ab^4 + bb^4) cos^2 t + ab^2 bb^2 (aa^4 + ba^4) sin^2 t
///       + 2 aa^2 ba^2 ab^2 bb^2 cos 2t cos 4t
///       - aa ba ab bb (aa^2 bb^2 + ba^2 ab^2) sin 2t sin 4t
///
/// The polynomial is non-negative in exact arithmetic; rounding can push it
/// a hair below zero, which clamps to zero.
pub fn reduced_coherence_analytic(theta_a: f64, theta_b: f64, t: f64) -> f64 {
    let (alpha_a, beta_a) = half_angles(theta_a);
    let (alpha_b, beta_b) = half_angles(theta_b);
    let (aa2, ba2) = (alpha_a * alpha_a, beta_a * beta_a);
    let (ab2, bb2) = (alpha_b * alpha_b, beta_b * beta_b);
    let quarter_c_sq = aa2 * ba2 * (ab2 * ab2 + bb2 * bb2) * t.cos().powi(2)
        + ab2 * bb2 * (aa2 * aa2 + ba2 * ba2) * t.sin().powi(2)
        + 2.0 * aa2 * ba2 * ab2 * bb2 * (2.0 * t).cos() * (4.0 * t).cos()
        - alpha_a
            * beta_a
            * alpha_b
            * beta_b
            * (aa2 * bb2 + ba2 * ab2)
            * (2.0 * t).sin()
            * (4.0 * t).sin();
    2.0 * quarter_c_sq.max(0.0).sqrt()
}

/// All measures of a two-qubit pure state.
pub fn report_pure(psi: &PureState) -> Result<MeasureReport> {
    if psi.dim() != 4 {
        return Err(Error::InvalidArgument(
            "report_pure expects a two-qubit state".into(),
        ));
    }
    let rho = psi.density();
    Ok(MeasureReport {
        concurrence: concurrence_pure(psi)?,
        coherence_a: l1_coherence(&partial_trace(&rho, Subsystem::First)?),
        coherence_b: l1_coherence(&partial_trace(&rho, Subsystem::Second)?),
        purity: purity(&rho),
        wootters_lambdas: None,
    })
}

/// All measures of a two-qubit density matrix, including the Wootters
/// eigenvalues.
pub fn report_mixed(rho: &ComplexMatrix) -> Result<MeasureReport> {
    validate_density(rho)?;
    if rho.dim() != 4 {
        return Err(Error::InvalidArgument(
            "report_mixed expects a 4x4 density matrix".into(),
        ));
    }
    let lambdas = wootters_lambdas(rho)?;
    let concurrence =
        (lambdas[0].sqrt() - lambdas[1].sqrt() - lambdas[2].sqrt() - lambdas[3].sqrt()).max(0.0);
    Ok(MeasureReport {
        concurrence,
        coherence_a: l1_coherence(&partial_trace(rho, Subsystem::First)?),
        coherence_b: l1_coherence(&partial_trace(rho, Subsystem::Second)?),
        purity: purity(rho),
        wootters_lambdas: Some(lambdas),
    })
}

/// Dispatch on the evolved representation.
pub fn report_state(result: &EvolvedResult) -> Result<MeasureReport> {
    match result.state() {
        EvolvedState::Pure(psi) => report_pure(psi),
        EvolvedState::Density(rho) => report_mixed(rho),
    }
}

/// Largest concurrence reached by the evolved pure product state over
/// t in [0, t_max], scanned on a uniform grid and then refined by
/// golden-section search around the best grid point.
pub fn max_concurrence_over_time(
    theta_a: f64,
    theta_b: f64,
    t_max: f64,
    n_grid: usize,
) -> (f64, f64) {
    assert!(n_grid >= 2, "need at least two grid points");
    let step = t_max / (n_grid - 1) as f64;
    let mut best_k = 0;
    let mut best = f64::NEG_INFINITY;
    for k in 0..n_grid {
        let e = concurrence_fg(theta_a, theta_b, k as f64 * step);
        if e > best {
            best = e;
            best_k = k;
        }
    }
    let lo = (best_k.saturating_sub(1)) as f64 * step;
    let hi = ((best_k + 1).min(n_grid - 1)) as f64 * step;
    let (mut a, mut b) = (lo, hi);
    let inv_phi = 0.5 * ((5.0f64).sqrt() - 1.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = concurrence_fg(theta_a, theta_b, c);
    let mut fd = concurrence_fg(theta_a, theta_b, d);
    for _ in 0..200 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = concurrence_fg(theta_a, theta_b, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = concurrence_fg(theta_a, theta_b, d);
        }
        if (b - a).abs() < 1e-14 {
            break;
        }
    }
    let t_star = 0.5 * (a + b);
    let refined = concurrence_fg(theta_a, theta_b, t_star);
    if refined > best {
        (t_star, refined)
    } else {
        (best_k as f64 * step, best)
    }
}
