//! The magnetic dipolar interaction Hamiltonian and its symmetry machinery:
//! construction for an arbitrary dipole axis, local-rotation conjugation,
//! and the Gibbs thermal state.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, kron, pauli_dot, sigma0, sigma1, sigma2, sigma3, ComplexMatrix,
};
use crate::tol;

fn vec_norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn check_unit(v: [f64; 3], what: &str) -> Result<()> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(format!("{what} must be finite")));
    }
    let norm = vec_norm(v);
    if (norm - 1.0).abs() > tol::ALGEBRAIC {
        return Err(Error::InvalidArgument(format!(
            "{what} must be a unit vector, |v| = {norm}"
        )));
    }
    Ok(())
}

/// Unit vector joining the dipole centers plus the coupling strength D
/// (energy units, hbar = 1). The constituent physical constants are folded
/// into D; with D = 1 time is measured in units of D/hbar.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DipoleAxis {
    n_hat: [f64; 3],
    coupling_d: f64,
}

impl DipoleAxis {
    pub fn new(n_hat: [f64; 3], coupling_d: f64) -> Result<Self> {
        check_unit(n_hat, "dipole axis")?;
        if !coupling_d.is_finite() || coupling_d <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "coupling D must be positive and finite, got {coupling_d}"
            )));
        }
        Ok(Self { n_hat, coupling_d })
    }

    /// Normalizes an arbitrary nonzero direction vector.
    pub fn from_unnormalized(v: [f64; 3], coupling_d: f64) -> Result<Self> {
        let norm = vec_norm(v);
        if !norm.is_finite() || norm <= 0.0 {
            return Err(Error::InvalidArgument(
                "dipole axis direction must be a nonzero finite vector".into(),
            ));
        }
        Self::new([v[0] / norm, v[1] / norm, v[2] / norm], coupling_d)
    }

    pub fn z(coupling_d: f64) -> Result<Self> {
        Self::new([0.0, 0.0, 1.0], coupling_d)
    }

    pub fn x(coupling_d: f64) -> Result<Self> {
        Self::new([1.0, 0.0, 0.0], coupling_d)
    }

    pub fn n_hat(&self) -> [f64; 3] {
        self.n_hat
    }

    pub fn coupling(&self) -> f64 {
        self.coupling_d
    }

    /// True when the axis points along +z or -z, where the closed-form
    /// evolved states apply.
    pub fn is_z_aligned(&self) -> bool {
        self.n_hat[0].abs() < tol::ALGEBRAIC && self.n_hat[1].abs() < tol::ALGEBRAIC
    }
}

/// Axis-angle description of a single-qubit rotation; generates the SU(2)
/// matrix exp(-i angle/2 axis.sigma).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalRotation {
    axis: [f64; 3],
    angle: f64,
}

impl LocalRotation {
    pub fn new(axis: [f64; 3], angle: f64) -> Result<Self> {
        check_unit(axis, "rotation axis")?;
        if !angle.is_finite() {
            return Err(Error::InvalidArgument("rotation angle must be finite".into()));
        }
        Ok(Self { axis, angle })
    }

    pub fn about_x(angle: f64) -> Self {
        Self::new([1.0, 0.0, 0.0], angle).expect("unit axis")
    }

    pub fn about_y(angle: f64) -> Self {
        Self::new([0.0, 1.0, 0.0], angle).expect("unit axis")
    }

    pub fn about_z(angle: f64) -> Self {
        Self::new([0.0, 0.0, 1.0], angle).expect("unit axis")
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }
}

/// The SU(2) matrix exp(-i angle/2 axis.sigma), unit determinant.
///
/// For a unit axis (axis.sigma)^2 = 1, so the exponential closes to
/// cos(angle/2) - i sin(angle/2) axis.sigma.
pub fn su2_matrix(rotation: &LocalRotation) -> ComplexMatrix {
    let half = rotation.angle / 2.0;
    let id = sigma0().scale_re(half.cos());
    let ns = pauli_dot(rotation.axis).scale(Complex64::new(0.0, -half.sin()));
    id.add(&ns).expect("2x2")
}

/// R_z(delta) = exp(-i delta sigma3 / 2).
pub fn rotation_z(delta: f64) -> ComplexMatrix {
    su2_matrix(&LocalRotation::about_z(delta))
}

/// MDI Hamiltonian D/2 [ sum_j sigma_j x sigma_j - 3 (n.sigma) x (n.sigma) ].
///
/// For n = z and D = 1 this is 2^-1 (s1 x s1 + s2 x s2 - 2 s3 x s3) with
/// spectrum {-1, -1, 0, 2} on the Bell states.
pub fn build_hamiltonian(axis: &DipoleAxis) -> ComplexMatrix {
    let mut h = kron(&sigma1(), &sigma1()).expect("2x2");
    h = h.add(&kron(&sigma2(), &sigma2()).expect("2x2")).expect("4x4");
    h = h.add(&kron(&sigma3(), &sigma3()).expect("2x2")).expect("4x4");
    let ns = pauli_dot(axis.n_hat());
    let nn = kron(&ns, &ns).expect("2x2").scale_re(3.0);
    h.sub(&nn).expect("4x4").scale_re(0.5 * axis.coupling())
}

/// (V x V) h (V x V)^dagger for the SU(2) matrix V of the rotation.
/// The spectrum is untouched; only the eigenbasis moves.
pub fn conjugate_hamiltonian(h: &ComplexMatrix, rotation: &LocalRotation) -> Result<ComplexMatrix> {
    if h.dim() != 4 {
        return Err(Error::InvalidArgument(format!(
            "conjugate_hamiltonian expects a 4x4 operator, got dimension {}",
            h.dim()
        )));
    }
    let v = su2_matrix(rotation);
    let vv = kron(&v, &v)?;
    vv.matmul(h)?.matmul(&vv.adjoint())
}

/// Image of a direction vector under the SO(3) rotation induced by V,
/// read off from V (n.sigma) V^dagger = (On).sigma.
pub fn rotate_axis(rotation: &LocalRotation, n: [f64; 3]) -> [f64; 3] {
    let v = su2_matrix(rotation);
    let conjugated = v
        .matmul(&pauli_dot(n))
        .and_then(|m| m.matmul(&v.adjoint()))
        .expect("2x2");
    let component = |sigma: ComplexMatrix| sigma.matmul(&conjugated).expect("2x2").trace().re / 2.0;
    [component(sigma1()), component(sigma2()), component(sigma3())]
}

/// Gibbs thermal state exp(-beta h)/Z via the spectral decomposition.
///
/// The Boltzmann weights are computed from the spectrum shifted so the
/// largest exponent is zero, which keeps large beta away from overflow.
pub fn gibbs_state(h: &ComplexMatrix, beta: f64) -> Result<ComplexMatrix> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "inverse temperature beta must be finite and non-negative, got {beta}"
        )));
    }
    let eig = hermitian_eig(h)?;
    let ground = eig.eigenvalues[0];
    let z: f64 = eig
        .eigenvalues
        .iter()
        .map(|lam| (-beta * (lam - ground)).exp())
        .sum();
    Ok(eig.map_spectrum(|lam| Complex64::new((-beta * (lam - ground)).exp() / z, 0.0)))
}

/// sigma3 x sigma0 + sigma0 x sigma3, the conserved total-excitation operator.
pub fn total_excitation_operator() -> ComplexMatrix {
    kron(&sigma3(), &sigma0())
        .and_then(|a| a.add(&kron(&sigma0(), &sigma3())?))
        .expect("2x2 factors")
}
