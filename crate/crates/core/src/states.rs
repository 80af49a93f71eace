//! Initial-state families: parametrized pure products, Bloch-mixed products,
//! partially entangled vectors, and the depolarization channel. Density
//! matrix construction is centralized here; the dynamics module never parses
//! parameters.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, kron, ComplexMatrix, PureState};
use crate::tol;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

fn parse_err(field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.into(),
        message: message.into(),
    }
}

/// Bloch-ball axis of a mixed single-qubit preparation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlochAxis {
    X,
    Z,
}

impl fmt::Display for BlochAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlochAxis::X => write!(f, "x"),
            BlochAxis::Z => write!(f, "z"),
        }
    }
}

impl FromStr for BlochAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(BlochAxis::X),
            "z" | "Z" => Ok(BlochAxis::Z),
            other => Err(parse_err("axis", format!("expected `x` or `z`, got `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BellKind {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

/// Tagged description of an initial state family. This is the single
/// serializable state description used by the CLI and the sweep engine.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StateSpec {
    /// |psi_a> x |psi_b> with |psi_s> = cos(theta_s/2)|0> + sin(theta_s/2)|1>.
    PureProduct { theta_a: f64, theta_b: f64 },
    /// rho_a x rho_b with rho_s = (sigma0 + r_s sigma_axis)/2.
    BlochMixed { axis: BlochAxis, ra: f64, rb: f64 },
    /// sqrt(w)|01> + sqrt(1-w)|10>.
    PartialEntangled { w: f64 },
    /// Partially entangled vector pushed through the depolarization channel
    /// with weight p on the state.
    Depolarized { w: f64, p: f64 },
}

fn check_range(field: &str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if !value.is_finite() || value < lo || value > hi {
        return Err(parse_err(
            field,
            format!("value {value} outside [{lo}, {hi}]"),
        ));
    }
    Ok(())
}

impl StateSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            StateSpec::PureProduct { theta_a, theta_b } => {
                check_range("theta_a", theta_a, 0.0, TWO_PI)?;
                check_range("theta_b", theta_b, 0.0, TWO_PI)
            }
            StateSpec::BlochMixed { ra, rb, .. } => {
                check_range("ra", ra, -1.0, 1.0)?;
                check_range("rb", rb, -1.0, 1.0)
            }
            StateSpec::PartialEntangled { w } => check_range("w", w, 0.0, 1.0),
            StateSpec::Depolarized { w, p } => {
                check_range("w", w, 0.0, 1.0)?;
                check_range("p", p, 0.0, 1.0)
            }
        }
    }

    /// The initial state itself, as a vector when the family is pure.
    pub fn initial_state(&self) -> Result<InitialState> {
        self.validate()?;
        match *self {
            StateSpec::PureProduct { theta_a, theta_b } => Ok(InitialState::Pure(product_state(
                &pure_qubit(theta_a)?,
                &pure_qubit(theta_b)?,
            )?)),
            StateSpec::BlochMixed { axis, ra, rb } => Ok(InitialState::Density(kron(
                &bloch_mixed(axis, ra)?,
                &bloch_mixed(axis, rb)?,
            )?)),
            StateSpec::PartialEntangled { w } => Ok(InitialState::Pure(partial_entangled(w)?)),
            StateSpec::Depolarized { w, p } => Ok(InitialState::Density(depolarize(
                &partial_entangled(w)?.density(),
                p,
            )?)),
        }
    }

    pub fn initial_density(&self) -> Result<ComplexMatrix> {
        Ok(match self.initial_state()? {
            InitialState::Pure(psi) => psi.density(),
            InitialState::Density(rho) => rho,
        })
    }
}

/// An initial preparation: a vector for pure families, a density matrix
/// otherwise.
#[derive(Clone, Debug)]
pub enum InitialState {
    Pure(PureState),
    Density(ComplexMatrix),
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::PureProduct { theta_a, theta_b } => {
                write!(f, "pure:theta_a={theta_a},theta_b={theta_b}")
            }
            StateSpec::BlochMixed { axis, ra, rb } => {
                write!(f, "mixed:axis={axis},ra={ra},rb={rb}")
            }
            StateSpec::PartialEntangled { w } => write!(f, "ent:w={w}"),
            StateSpec::Depolarized { w, p } => write!(f, "depol:w={w},p={p}"),
        }
    }
}

impl FromStr for StateSpec {
    type Err = Error;

    /// Canonical textual form, e.g. `pure:theta_a=1.5708,theta_b=1.5708`,
    /// `mixed:axis=z,ra=0.5,rb=-0.5`, `ent:w=0.25`, `depol:w=0.25,p=0.8`.
    /// Angles are radians in decimal notation.
    fn from_str(s: &str) -> Result<Self> {
        let (family, rest) = s
            .split_once(':')
            .ok_or_else(|| parse_err("state", format!("missing `:` separator in `{s}`")))?;

        let mut pairs = Vec::new();
        for item in rest.split(',') {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| parse_err("state", format!("expected key=value, got `{item}`")))?;
            pairs.push((key.trim(), value.trim()));
        }
        let lookup = |field: &str| -> Result<&str> {
            pairs
                .iter()
                .find(|(k, _)| *k == field)
                .map(|(_, v)| *v)
                .ok_or_else(|| parse_err(field, "missing"))
        };
        let number = |field: &str| -> Result<f64> {
            lookup(field)?
                .parse::<f64>()
                .map_err(|e| parse_err(field, e.to_string()))
        };

        let spec = match family {
            "pure" => StateSpec::PureProduct {
                theta_a: number("theta_a")?,
                theta_b: number("theta_b")?,
            },
            "mixed" => StateSpec::BlochMixed {
                axis: lookup("axis")?.parse()?,
                ra: number("ra")?,
                rb: number("rb")?,
            },
            "ent" => StateSpec::PartialEntangled { w: number("w")? },
            "depol" => StateSpec::Depolarized {
                w: number("w")?,
                p: number("p")?,
            },
            other => {
                return Err(parse_err(
                    "state",
                    format!("unknown family `{other}` (expected pure, mixed, ent, or depol)"),
                ))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// cos(theta/2)|0> + sin(theta/2)|1> for theta in [0, 2pi].
pub fn pure_qubit(theta: f64) -> Result<PureState> {
    if !theta.is_finite() || !(0.0..=TWO_PI).contains(&theta) {
        return Err(Error::InvalidArgument(format!(
            "theta must lie in [0, 2pi], got {theta}"
        )));
    }
    PureState::from_real(&[(theta / 2.0).cos(), (theta / 2.0).sin()])
}

/// Tensor product of two single-qubit states, basis order |00>,|01>,|10>,|11>.
pub fn product_state(a: &PureState, b: &PureState) -> Result<PureState> {
    if a.dim() != 2 || b.dim() != 2 {
        return Err(Error::InvalidArgument(
            "product_state expects two single-qubit states".into(),
        ));
    }
    let mut amp = Vec::with_capacity(4);
    for i in 0..2 {
        for k in 0..2 {
            amp.push(a.amplitude(i) * b.amplitude(k));
        }
    }
    PureState::new(amp)
}

/// Single-qubit mixed state (sigma0 + r sigma_axis)/2 with |r| <= 1.
pub fn bloch_mixed(axis: BlochAxis, r: f64) -> Result<ComplexMatrix> {
    if !r.is_finite() || r.abs() > 1.0 {
        return Err(Error::InvalidArgument(format!(
            "Bloch component must satisfy |r| <= 1, got {r}"
        )));
    }
    let sigma = match axis {
        BlochAxis::X => crate::linalg::sigma1(),
        BlochAxis::Z => crate::linalg::sigma3(),
    };
    crate::linalg::sigma0()
        .add(&sigma.scale_re(r))
        .map(|m| m.scale_re(0.5))
}

/// sqrt(w)|01> + sqrt(1-w)|10> with w in [0, 1].
pub fn partial_entangled(w: f64) -> Result<PureState> {
    if !w.is_finite() || !(0.0..=1.0).contains(&w) {
        return Err(Error::InvalidArgument(format!(
            "weight w must lie in [0, 1], got {w}"
        )));
    }
    PureState::from_real(&[0.0, w.sqrt(), (1.0 - w).sqrt(), 0.0])
}

/// Depolarization channel: (1-p)/4 identity + p rho.
pub fn depolarize(rho: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "channel weight p must lie in [0, 1], got {p}"
        )));
    }
    validate_density(rho)?;
    ComplexMatrix::identity(rho.dim())
        .scale_re((1.0 - p) / rho.dim() as f64)
        .add(&rho.scale_re(p))
}

/// Product state with both qubits turned by the same local rotation before
/// the interaction switches on. The polar-angle parametrization covers two
/// coaxial rings on the Bloch sphere; the pre-rotation reorients those
/// rings, which stands in for a relative-phase parameter.
pub fn rotated_product_state(
    theta_a: f64,
    theta_b: f64,
    rotation: &crate::model::LocalRotation,
) -> Result<PureState> {
    let v = crate::model::su2_matrix(rotation);
    product_state(
        &v.apply(&pure_qubit(theta_a)?)?,
        &v.apply(&pure_qubit(theta_b)?)?,
    )
}

/// The four maximally entangled two-qubit states.
pub fn bell_state(kind: BellKind) -> PureState {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let amp = match kind {
        BellKind::PsiPlus => [0.0, s, s, 0.0],
        BellKind::PsiMinus => [0.0, s, -s, 0.0],
        BellKind::PhiPlus => [s, 0.0, 0.0, s],
        BellKind::PhiMinus => [s, 0.0, 0.0, -s],
    };
    PureState::from_real(&amp).expect("Bell states are normalized")
}

/// Checks the three density-matrix properties: Hermitian within 1e-12,
/// positive semidefinite (eigenvalues above -1e-12), unit trace within 1e-12.
pub fn validate_density(rho: &ComplexMatrix) -> Result<()> {
    let herm = rho.hermiticity_error();
    if herm > tol::ALGEBRAIC {
        return Err(Error::InvalidArgument(format!(
            "not a density matrix: hermiticity error {herm:.3e}"
        )));
    }
    let trace = rho.trace();
    if (trace.re - 1.0).abs() > tol::ALGEBRAIC || trace.im.abs() > tol::ALGEBRAIC {
        return Err(Error::InvalidArgument(format!(
            "not a density matrix: trace {trace}"
        )));
    }
    let eig = hermitian_eig(rho)?;
    if eig.eigenvalues[0] < -tol::ALGEBRAIC {
        return Err(Error::InvalidArgument(format!(
            "not a density matrix: eigenvalue {:.3e}",
            eig.eigenvalues[0]
        )));
    }
    Ok(())
}
