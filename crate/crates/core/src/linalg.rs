//! Dense complex linear algebra for 2x2 and 4x4 operators.
//!
//! Everything is sized for two-qubit work: row-major storage, the basis
//! order |00>, |01>, |10>, |11> with the first tensor factor belonging to
//! dipole a, and a cyclic-Jacobi Hermitian eigensolver instead of an
//! external numerics dependency. All values are immutable after
//! construction and every operation is a pure function of its inputs.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

const MAX_JACOBI_SWEEPS: usize = 64;

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 4 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "matrix dimension must be 2 or 4, got {dim}"
        )))
    }
}

/// Dense square complex matrix, row-major, dimension 2 or 4.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        check_dim(dim).expect("dimension 2 or 4");
        Self {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::from_vec(dim, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.dim + j] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    fn same_dim(&self, rhs: &Self, op: &str) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::InvalidArgument(format!(
                "{op}: dimension mismatch ({} vs {})",
                self.dim, rhs.dim
            )));
        }
        Ok(())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.same_dim(rhs, "matmul")?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + aik * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_dim(rhs, "add")?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { dim: self.dim, data })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.same_dim(rhs, "sub")?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { dim: self.dim, data })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conjugate(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn frobenius_distance(&self, rhs: &Self) -> Result<f64> {
        Ok(self.sub(rhs)?.frobenius_norm())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from self-adjointness, max |m_ij - conj(m_ji)|.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tolerance: f64) -> bool {
        self.hermiticity_error() <= tolerance
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::InvalidArgument(format!(
                "mul_vec: dimension mismatch ({} vs {})",
                self.dim,
                v.len()
            )));
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect())
    }

    /// Apply a norm-preserving operator to a pure state.
    pub fn apply(&self, psi: &PureState) -> Result<PureState> {
        PureState::new(self.mul_vec(psi.amplitudes())?)
    }

    /// <psi| self |psi>.
    pub fn expectation(&self, psi: &PureState) -> Result<Complex64> {
        let v = self.mul_vec(psi.amplitudes())?;
        Ok(psi
            .amplitudes()
            .iter()
            .zip(&v)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Normalized complex amplitude vector, dimension 2 or 4.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amp: Vec<Complex64>,
}

impl PureState {
    /// Amplitudes must satisfy sum |a_k|^2 = 1 within 1e-12.
    pub fn new(amp: Vec<Complex64>) -> Result<Self> {
        check_dim(amp.len())?;
        let norm_sqr: f64 = amp.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > tol::ALGEBRAIC {
            return Err(Error::InvalidArgument(format!(
                "state is not normalized: sum |a|^2 = {norm_sqr}"
            )));
        }
        Ok(Self { amp })
    }

    pub fn from_real(amp: &[f64]) -> Result<Self> {
        Self::new(amp.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.amp.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn amplitude(&self, i: usize) -> Complex64 {
        self.amp[i]
    }

    /// <self|other>.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::InvalidArgument(format!(
                "inner: dimension mismatch ({} vs {})",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Projector |psi><psi|.
    pub fn density(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut rho = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                rho.set(i, j, self.amp[i] * self.amp[j].conj());
            }
        }
        rho
    }
}

/// Real spectrum (ascending) with orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenSystem {
    /// V diag(lambda) V^dagger.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvectors.dim();
        let mut d = ComplexMatrix::zeros(n);
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            d.set(k, k, Complex64::new(lam, 0.0));
        }
        self.eigenvectors
            .matmul(&d)
            .and_then(|vd| vd.matmul(&self.eigenvectors.adjoint()))
            .expect("consistent dimensions")
    }

    /// V f(diag) V^dagger for a scalar function of the eigenvalues.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.eigenvectors.dim();
        let mut d = ComplexMatrix::zeros(n);
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            d.set(k, k, f(lam));
        }
        self.eigenvectors
            .matmul(&d)
            .and_then(|vd| vd.matmul(&self.eigenvectors.adjoint()))
            .expect("consistent dimensions")
    }
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Eigenvalues come back ascending; the eigenvector matrix is unitary. For a
/// degenerate cluster the eigenvectors only span the eigenspace, which is all
/// any spectral function here needs. Deterministic for a fixed input.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenSystem> {
    let n = m.dim();
    let scale = m.max_abs().max(1.0);
    let herm = m.hermiticity_error();
    if herm > tol::SPECTRAL * scale {
        return Err(Error::InvalidArgument(format!(
            "hermitian_eig: input is not Hermitian (max |m - m^dagger| = {herm:.3e})"
        )));
    }
    // Work on the symmetrized copy so rounding in the input cannot leak
    // imaginary parts into the spectrum.
    let mut a = m.add(&m.adjoint())?.scale_re(0.5);
    let mut v = ComplexMatrix::identity(n);
    let norm = a.frobenius_norm();
    if norm > 0.0 {
        for _ in 0..MAX_JACOBI_SWEEPS {
            if off_diagonal_norm(&a) <= norm * 1e-14 {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let apq = a.get(p, q);
                    let mag = apq.norm();
                    if mag <= norm * 1e-16 {
                        continue;
                    }
                    // Strip the phase so the 2x2 block is real symmetric,
                    // then rotate to annihilate it.
                    let phase = apq / mag;
                    let app = a.get(p, p).re;
                    let aqq = a.get(q, q).re;
                    let tau = (aqq - app) / (2.0 * mag);
                    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let mut g = ComplexMatrix::identity(n);
                    g.set(p, p, Complex64::new(c, 0.0));
                    g.set(p, q, Complex64::new(s, 0.0));
                    g.set(q, p, phase.conj() * (-s));
                    g.set(q, q, phase.conj() * c);
                    a = g.adjoint().matmul(&a)?.matmul(&g)?;
                    v = v.matmul(&g)?;
                }
            }
        }
    }
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap().then(i.cmp(&j)));
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, v.get(row, src));
        }
    }
    Ok(EigenSystem {
        eigenvalues: order.iter().map(|&i| diag[i]).collect(),
        eigenvectors: vectors,
    })
}

/// exp(-i * scale * m) for Hermitian m, via the spectral decomposition.
pub fn expm_i(m: &ComplexMatrix, scale: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    Ok(eig.map_spectrum(|lam| (-Complex64::i() * (scale * lam)).exp()))
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in [-1e-9, 0) count as rounding noise and clamp to zero;
/// anything more negative is an error.
pub fn hermitian_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    let floor = -tol::EIGENVALUE_CLAMP * m.max_abs().max(1.0);
    if let Some(&lam) = eig.eigenvalues.iter().find(|&&lam| lam < floor) {
        return Err(Error::NumericalInstability(format!(
            "hermitian_sqrt: eigenvalue {lam:.3e} of a supposedly PSD matrix"
        )));
    }
    Ok(eig.map_spectrum(|lam| Complex64::new(lam.max(0.0).sqrt(), 0.0)))
}

/// Which tensor factor a partial trace keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    /// Dipole a, the first tensor factor.
    First,
    /// Dipole b, the second tensor factor.
    Second,
}

/// Reduced operator of a two-qubit operator, tracing out the other factor.
/// Preserves the trace.
pub fn partial_trace(rho: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    if rho.dim() != 4 {
        return Err(Error::InvalidArgument(format!(
            "partial_trace expects a 4x4 operator, got dimension {}",
            rho.dim()
        )));
    }
    let mut out = ComplexMatrix::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            let mut sum = Complex64::ZERO;
            for k in 0..2 {
                sum += match keep {
                    Subsystem::First => rho.get(2 * i + k, 2 * j + k),
                    Subsystem::Second => rho.get(2 * k + i, 2 * k + j),
                };
            }
            out.set(i, j, sum);
        }
    }
    Ok(out)
}

/// Tensor (Kronecker) product of two 2x2 matrices in row-major block layout,
/// basis order |00>, |01>, |10>, |11>.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.dim() != 2 || b.dim() != 2 {
        return Err(Error::InvalidArgument(format!(
            "kron expects two 2x2 factors, got dimensions {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    let mut out = ComplexMatrix::zeros(4);
    for i in 0..2 {
        for j in 0..2 {
            let aij = a.get(i, j);
            for k in 0..2 {
                for l in 0..2 {
                    out.set(2 * i + k, 2 * j + l, aij * b.get(k, l));
                }
            }
        }
    }
    Ok(out)
}

/// 2x2 identity.
pub fn sigma0() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

pub fn sigma1() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).expect("static entries")
}

pub fn sigma2() -> ComplexMatrix {
    ComplexMatrix::from_vec(
        2,
        vec![
            Complex64::ZERO,
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::ZERO,
        ],
    )
    .expect("static entries")
}

pub fn sigma3() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]).expect("static entries")
}

/// n . sigma for a real 3-vector n.
pub fn pauli_dot(n: [f64; 3]) -> ComplexMatrix {
    let mut m = sigma1().scale_re(n[0]);
    m = m.add(&sigma2().scale_re(n[1])).expect("2x2");
    m.add(&sigma3().scale_re(n[2])).expect("2x2")
}
