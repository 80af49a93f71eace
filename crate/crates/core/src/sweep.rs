//! Deterministic grid sweeps over (initial-state parameters x time) that
//! regenerate the surfaces behind the reference figures as tabular records.
//!
//! Grid points are independent, so with the `parallel` feature (on by
//! default) they are evaluated on a rayon pool; [`run_sweep_seq`] is the
//! sequential fallback and both produce identical records in identical
//! order. Records are emitted in lexicographic grid order, outermost axis
//! first, and are byte-identical across runs for the same configuration.

use std::fmt;
use std::str::FromStr;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::dynamics::{evolve_spec, EvolvedResult, EvolvedState};
use crate::error::{Error, Result};
use crate::linalg::{partial_trace, ComplexMatrix, Subsystem};
use crate::measures::{concurrence_mixed, concurrence_pure, l1_coherence, purity};
use crate::model::DipoleAxis;
use crate::states::{BlochAxis, StateSpec};

/// Initial-state family tag for a sweep; carries the Bloch axis for the
/// mixed-product family since that choice is not a numeric parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Pure,
    Mixed(BlochAxis),
    Entangled,
    Depolarized,
}

impl Family {
    /// Numeric parameters the family owns (time `t` is always allowed too).
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            Family::Pure => &["theta_a", "theta_b"],
            Family::Mixed(_) => &["ra", "rb"],
            Family::Entangled => &["w"],
            Family::Depolarized => &["w", "p"],
        }
    }

    fn param_domain(&self, name: &str) -> Option<(f64, f64)> {
        const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
        match (self, name) {
            (Family::Pure, "theta_a" | "theta_b") => Some((0.0, TWO_PI)),
            (Family::Mixed(_), "ra" | "rb") => Some((-1.0, 1.0)),
            (Family::Entangled, "w") => Some((0.0, 1.0)),
            (Family::Depolarized, "w" | "p") => Some((0.0, 1.0)),
            _ => None,
        }
    }

    fn spec(&self, value: impl Fn(&str) -> f64) -> StateSpec {
        match self {
            Family::Pure => StateSpec::PureProduct {
                theta_a: value("theta_a"),
                theta_b: value("theta_b"),
            },
            Family::Mixed(axis) => StateSpec::BlochMixed {
                axis: *axis,
                ra: value("ra"),
                rb: value("rb"),
            },
            Family::Entangled => StateSpec::PartialEntangled { w: value("w") },
            Family::Depolarized => StateSpec::Depolarized {
                w: value("w"),
                p: value("p"),
            },
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Pure => write!(f, "pure"),
            Family::Mixed(BlochAxis::X) => write!(f, "mixed-x"),
            Family::Mixed(BlochAxis::Z) => write!(f, "mixed-z"),
            Family::Entangled => write!(f, "ent"),
            Family::Depolarized => write!(f, "depol"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pure" => Ok(Family::Pure),
            "mixed-x" => Ok(Family::Mixed(BlochAxis::X)),
            "mixed-z" => Ok(Family::Mixed(BlochAxis::Z)),
            "ent" => Ok(Family::Entangled),
            "depol" => Ok(Family::Depolarized),
            other => Err(Error::Parse {
                field: "family".into(),
                message: format!(
                    "unknown family `{other}` (expected pure, mixed-x, mixed-z, ent, or depol)"
                ),
            }),
        }
    }
}

/// A quantity the sweep can tabulate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Concurrence,
    CoherenceA,
    CoherenceB,
    Purity,
}

impl Quantity {
    pub const ALL: [Quantity; 4] = [
        Quantity::Concurrence,
        Quantity::CoherenceA,
        Quantity::CoherenceB,
        Quantity::Purity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Quantity::Concurrence => "concurrence",
            Quantity::CoherenceA => "coherence_a",
            Quantity::CoherenceB => "coherence_b",
            Quantity::Purity => "purity",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| Error::Parse {
                field: "quantities".into(),
                message: format!("unknown quantity `{s}`"),
            })
    }
}

/// One swept axis: `count` points from `start` to `stop` inclusive, computed
/// as start + k (stop - start)/(count - 1) to avoid accumulation drift.
#[derive(Clone, Debug, PartialEq)]
pub struct GridAxis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridAxis {
    pub fn new(name: impl Into<String>, start: f64, stop: f64, count: usize) -> Self {
        Self {
            name: name.into(),
            start,
            stop,
            count,
        }
    }

    pub fn value(&self, k: usize) -> f64 {
        self.start + k as f64 * (self.stop - self.start) / (self.count - 1) as f64
    }

    /// True when the grid maps onto itself under x -> 2 center - x.
    fn symmetric_about(&self, center: f64) -> bool {
        (self.start + self.stop - 2.0 * center).abs() < 1e-12
    }
}

/// Full description of one sweep.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub family: Family,
    /// Parameters held constant, by name.
    pub fixed: Vec<(String, f64)>,
    /// Swept axes, outermost first.
    pub axes: Vec<GridAxis>,
    pub hamiltonian_axis: DipoleAxis,
    pub quantities: Vec<Quantity>,
}

/// One output row: the axis values followed by the requested quantities,
/// in header order.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub values: Vec<f64>,
}

/// The tabulated result of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    /// Axis names followed by quantity names.
    pub columns: Vec<String>,
    pub records: Vec<SweepRecord>,
}

struct Plan<'a> {
    cfg: &'a SweepConfig,
    total: usize,
}

impl<'a> Plan<'a> {
    fn new(cfg: &'a SweepConfig) -> Result<Self> {
        if cfg.quantities.is_empty() {
            return Err(Error::Config("no quantities requested".into()));
        }
        for (i, q) in cfg.quantities.iter().enumerate() {
            if cfg.quantities[..i].contains(q) {
                return Err(Error::Config(format!("duplicate quantity `{q}`")));
            }
        }
        if cfg.axes.is_empty() {
            return Err(Error::Config("no grid axes declared".into()));
        }

        let allowed = cfg.family.param_names();
        let mut seen: Vec<&str> = Vec::new();
        for axis in &cfg.axes {
            let name = axis.name.as_str();
            if name != "t" && !allowed.contains(&name) {
                return Err(Error::Config(format!(
                    "axis `{name}` does not belong to family `{}`",
                    cfg.family
                )));
            }
            if seen.contains(&name) {
                return Err(Error::Config(format!("axis `{name}` declared twice")));
            }
            seen.push(name);
            if axis.count < 2 {
                return Err(Error::Config(format!(
                    "axis `{name}` needs at least 2 points, got {}",
                    axis.count
                )));
            }
            if !axis.start.is_finite() || !axis.stop.is_finite() || axis.start >= axis.stop {
                return Err(Error::Config(format!(
                    "axis `{name}` needs start < stop, got [{}, {}]",
                    axis.start, axis.stop
                )));
            }
            if name != "t" {
                let (lo, hi) = cfg.family.param_domain(name).expect("validated above");
                if axis.start < lo || axis.stop > hi {
                    return Err(Error::Config(format!(
                        "axis `{name}` range [{}, {}] leaves the domain [{lo}, {hi}]",
                        axis.start, axis.stop
                    )));
                }
            }
        }
        for (name, value) in &cfg.fixed {
            let name = name.as_str();
            if name != "t" && !allowed.contains(&name) {
                return Err(Error::Config(format!(
                    "fixed parameter `{name}` does not belong to family `{}`",
                    cfg.family
                )));
            }
            if seen.contains(&name) {
                return Err(Error::Config(format!(
                    "parameter `{name}` is both fixed and swept"
                )));
            }
            seen.push(name);
            if !value.is_finite() {
                return Err(Error::Config(format!("fixed parameter `{name}` not finite")));
            }
            if name != "t" {
                let (lo, hi) = cfg.family.param_domain(name).expect("validated above");
                if *value < lo || *value > hi {
                    return Err(Error::Config(format!(
                        "fixed parameter `{name}` = {value} leaves the domain [{lo}, {hi}]"
                    )));
                }
            }
        }
        for required in allowed.iter().chain(std::iter::once(&"t")) {
            if !seen.contains(required) {
                return Err(Error::Config(format!(
                    "parameter `{required}` is neither fixed nor swept"
                )));
            }
        }

        let total = cfg.axes.iter().map(|a| a.count).product();
        Ok(Self { cfg, total })
    }

    /// Axis values of the flat index, outermost axis varying slowest.
    fn axis_values(&self, flat: usize) -> Vec<f64> {
        let n = self.cfg.axes.len();
        let mut values = vec![0.0; n];
        let mut rest = flat;
        for idx in (0..n).rev() {
            let axis = &self.cfg.axes[idx];
            let k = rest % axis.count;
            rest /= axis.count;
            values[idx] = axis.value(k);
        }
        values
    }

    fn record(&self, flat: usize) -> Result<SweepRecord> {
        let axis_values = self.axis_values(flat);
        let lookup = |name: &str| -> f64 {
            if let Some(pos) = self.cfg.axes.iter().position(|a| a.name == name) {
                return axis_values[pos];
            }
            self.cfg
                .fixed
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, v)| *v)
                .expect("validated: every parameter fixed or swept")
        };
        let spec = self.cfg.family.spec(lookup);
        let t = lookup("t");
        let evolved = evolve_spec(&spec, &self.cfg.hamiltonian_axis, t)?;

        let mut values = axis_values;
        // the density representation feeds three of the four quantities;
        // build it at most once per point
        let dense = std::cell::OnceCell::new();
        for q in &self.cfg.quantities {
            let v = quantity_value(&evolved, &dense, *q)?;
            if !v.is_finite() {
                return Err(Error::NumericalInstability(format!(
                    "non-finite {q} at grid point {flat}"
                )));
            }
            values.push(v);
        }
        Ok(SweepRecord { values })
    }
}

fn quantity_value(
    evolved: &EvolvedResult,
    dense: &std::cell::OnceCell<ComplexMatrix>,
    q: Quantity,
) -> Result<f64> {
    let dense_ref = || dense.get_or_init(|| evolved.dense());
    match q {
        Quantity::Concurrence => match evolved.state() {
            EvolvedState::Pure(psi) => concurrence_pure(psi),
            EvolvedState::Density(rho) => concurrence_mixed(rho),
        },
        Quantity::CoherenceA => Ok(l1_coherence(&partial_trace(dense_ref(), Subsystem::First)?)),
        Quantity::CoherenceB => Ok(l1_coherence(&partial_trace(
            dense_ref(),
            Subsystem::Second,
        )?)),
        Quantity::Purity => Ok(purity(dense_ref())),
    }
}

fn columns(cfg: &SweepConfig) -> Vec<String> {
    cfg.axes
        .iter()
        .map(|a| a.name.clone())
        .chain(cfg.quantities.iter().map(|q| q.name().to_string()))
        .collect()
}

/// Run a sweep, in parallel when the `parallel` feature is enabled.
/// Output order and values are identical to [`run_sweep_seq`].
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepTable> {
    let plan = Plan::new(cfg)?;
    #[cfg(feature = "parallel")]
    let records: Vec<SweepRecord> = (0..plan.total)
        .into_par_iter()
        .map(|flat| plan.record(flat))
        .collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let records: Vec<SweepRecord> = (0..plan.total)
        .map(|flat| plan.record(flat))
        .collect::<Result<_>>()?;
    Ok(SweepTable {
        columns: columns(cfg),
        records,
    })
}

/// Sequential evaluation of the same plan; the reference for determinism
/// checks and the benchmark baseline.
pub fn run_sweep_seq(cfg: &SweepConfig) -> Result<SweepTable> {
    let plan = Plan::new(cfg)?;
    let records: Vec<SweepRecord> = (0..plan.total)
        .map(|flat| plan.record(flat))
        .collect::<Result<_>>()?;
    Ok(SweepTable {
        columns: columns(cfg),
        records,
    })
}

/// A captioned symmetry of the swept surfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    /// Concurrence surfaces repeat with period pi in t.
    PeriodPi,
    /// Reflecting theta_b about pi mirrors the surface about theta_a = pi.
    ThetaReflection,
    /// The t = pi/8 surface is the t = 3pi/8 surface turned a quarter turn
    /// clockwise in the theta_a x theta_b plane.
    QuarterTurn,
    /// The x-axis mixed family is invariant under (ra, rb) -> (-ra, -rb).
    Rho1Reflection,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Symmetry::PeriodPi => "period-pi",
            Symmetry::ThetaReflection => "theta-reflection",
            Symmetry::QuarterTurn => "quarter-turn",
            Symmetry::Rho1Reflection => "rho1-reflection",
        };
        f.write_str(name)
    }
}

/// Outcome of one symmetry check.
#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub symmetry: Symmetry,
    pub max_mismatch: f64,
    pub tolerance: f64,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.max_mismatch < self.tolerance
    }
}

fn two_axes<'a>(cfg: &'a SweepConfig, first: &str, second: &str) -> Result<(&'a GridAxis, &'a GridAxis)> {
    if cfg.axes.len() != 2 || cfg.axes[0].name != first || cfg.axes[1].name != second {
        return Err(Error::Config(format!(
            "this symmetry check needs exactly the axes [{first}, {second}]"
        )));
    }
    Ok((&cfg.axes[0], &cfg.axes[1]))
}

/// Check one symmetry of a swept surface against its transformed
/// counterpart. Grids must be symmetric about the claimed axis; an
/// asymmetric grid is a configuration error.
pub fn verify_symmetry(cfg: &SweepConfig, symmetry: Symmetry) -> Result<SymmetryReport> {
    let tolerance = crate::tol::SYMMETRY;
    let max_mismatch = match symmetry {
        Symmetry::PeriodPi => {
            let t_axis = cfg
                .axes
                .iter()
                .find(|a| a.name == "t")
                .ok_or_else(|| Error::Config("period-pi check needs a t axis".into()))?;
            let base = run_sweep(cfg)?;
            let mut shifted_cfg = cfg.clone();
            let pos = cfg.axes.iter().position(|a| a.name == "t").unwrap();
            shifted_cfg.axes[pos] = GridAxis::new(
                "t",
                t_axis.start + std::f64::consts::PI,
                t_axis.stop + std::f64::consts::PI,
                t_axis.count,
            );
            let shifted = run_sweep(&shifted_cfg)?;
            // compare quantity columns only; the t column differs by pi
            let n_axes = cfg.axes.len();
            base.records
                .iter()
                .zip(&shifted.records)
                .flat_map(|(ra, rb)| {
                    ra.values[n_axes..]
                        .iter()
                        .zip(&rb.values[n_axes..])
                        .map(|(x, y)| (x - y).abs())
                })
                .fold(0.0, f64::max)
        }
        Symmetry::ThetaReflection => {
            if cfg.family != Family::Pure {
                return Err(Error::Config("theta reflection applies to the pure family".into()));
            }
            let (a_axis, b_axis) = two_axes(cfg, "theta_a", "theta_b")?;
            let pi = std::f64::consts::PI;
            if !a_axis.symmetric_about(pi) || !b_axis.symmetric_about(pi) {
                return Err(Error::Config(
                    "theta reflection needs both angle grids symmetric about pi".into(),
                ));
            }
            let (n, m) = (a_axis.count, b_axis.count);
            let table = run_sweep(cfg)?;
            let n_axes = 2;
            let mut worst = 0.0f64;
            for i in 0..n {
                for j in 0..m {
                    let lhs = &table.records[i * m + j].values[n_axes..];
                    let rhs = &table.records[(n - 1 - i) * m + (m - 1 - j)].values[n_axes..];
                    for (x, y) in lhs.iter().zip(rhs) {
                        worst = worst.max((x - y).abs());
                    }
                }
            }
            worst
        }
        Symmetry::QuarterTurn => {
            if cfg.family != Family::Pure {
                return Err(Error::Config("the quarter turn applies to the pure family".into()));
            }
            let (a_axis, b_axis) = two_axes(cfg, "theta_a", "theta_b")?;
            let pi = std::f64::consts::PI;
            if a_axis.count != b_axis.count
                || !a_axis.symmetric_about(pi)
                || !b_axis.symmetric_about(pi)
                || (a_axis.start - b_axis.start).abs() > 1e-12
            {
                return Err(Error::Config(
                    "the quarter turn needs identical angle grids symmetric about pi".into(),
                ));
            }
            let t_fixed = cfg
                .fixed
                .iter()
                .find(|(n, _)| n == "t")
                .map(|(_, v)| *v)
                .ok_or_else(|| Error::Config("the quarter turn needs a fixed t".into()))?;
            if (t_fixed - pi / 8.0).abs() > 1e-12 {
                return Err(Error::Config("the quarter turn compares t = pi/8 to 3pi/8".into()));
            }
            let eighth = run_sweep(cfg)?;
            let mut other_cfg = cfg.clone();
            for (name, value) in &mut other_cfg.fixed {
                if name == "t" {
                    *value = 3.0 * pi / 8.0;
                }
            }
            let three_eighths = run_sweep(&other_cfg)?;
            let n = a_axis.count;
            let n_axes = 2;
            let mut worst = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    // E_{3pi/8}(theta_a_i, theta_b_j) = E_{pi/8}(theta_b_j, 2pi - theta_a_i)
                    let lhs = &three_eighths.records[i * n + j].values[n_axes..];
                    let rhs = &eighth.records[j * n + (n - 1 - i)].values[n_axes..];
                    for (x, y) in lhs.iter().zip(rhs) {
                        worst = worst.max((x - y).abs());
                    }
                }
            }
            worst
        }
        Symmetry::Rho1Reflection => {
            if cfg.family != Family::Mixed(BlochAxis::X) {
                return Err(Error::Config(
                    "the rho1 reflection applies to the x-axis mixed family".into(),
                ));
            }
            let (a_axis, b_axis) = two_axes(cfg, "ra", "rb")?;
            if !a_axis.symmetric_about(0.0) || !b_axis.symmetric_about(0.0) {
                return Err(Error::Config(
                    "the rho1 reflection needs both grids symmetric about 0".into(),
                ));
            }
            let (n, m) = (a_axis.count, b_axis.count);
            let table = run_sweep(cfg)?;
            let n_axes = 2;
            let mut worst = 0.0f64;
            for i in 0..n {
                for j in 0..m {
                    let lhs = &table.records[i * m + j].values[n_axes..];
                    let rhs = &table.records[(n - 1 - i) * m + (m - 1 - j)].values[n_axes..];
                    for (x, y) in lhs.iter().zip(rhs) {
                        worst = worst.max((x - y).abs());
                    }
                }
            }
            worst
        }
    };
    Ok(SymmetryReport {
        symmetry,
        max_mismatch,
        tolerance,
    })
}

/// Named sweep configurations that regenerate the reference surfaces.
pub mod presets {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    pub const NAMES: [&str; 5] = ["fig1", "fig2-rho3", "fig2-rho1", "fig3", "fig4-coherence"];

    fn z_axis() -> DipoleAxis {
        DipoleAxis::z(1.0).expect("unit axis")
    }

    /// Concurrence of the evolved pure product family vs (theta_a, t) at
    /// theta_b = pi/2.
    pub fn fig1() -> SweepConfig {
        SweepConfig {
            family: Family::Pure,
            fixed: vec![("theta_b".into(), FRAC_PI_2)],
            axes: vec![
                GridAxis::new("theta_a", 0.0, 2.0 * PI, 101),
                GridAxis::new("t", 0.0, PI, 101),
            ],
            hamiltonian_axis: z_axis(),
            quantities: vec![Quantity::Concurrence],
        }
    }

    /// Concurrence of the evolved z-axis mixed family over (ra, rb) at
    /// t = pi/4.
    pub fn fig2_rho3() -> SweepConfig {
        SweepConfig {
            family: Family::Mixed(BlochAxis::Z),
            fixed: vec![("t".into(), FRAC_PI_4)],
            axes: vec![
                GridAxis::new("ra", -1.0, 1.0, 101),
                GridAxis::new("rb", -1.0, 1.0, 101),
            ],
            hamiltonian_axis: z_axis(),
            quantities: vec![Quantity::Concurrence],
        }
    }

    /// Concurrence of the evolved x-axis mixed family over (ra, rb) at
    /// t = pi/4.
    pub fn fig2_rho1() -> SweepConfig {
        SweepConfig {
            family: Family::Mixed(BlochAxis::X),
            fixed: vec![("t".into(), FRAC_PI_4)],
            axes: vec![
                GridAxis::new("ra", -1.0, 1.0, 101),
                GridAxis::new("rb", -1.0, 1.0, 101),
            ],
            hamiltonian_axis: z_axis(),
            quantities: vec![Quantity::Concurrence],
        }
    }

    /// Concurrence of the evolved partially entangled family over (t, w).
    pub fn fig3() -> SweepConfig {
        SweepConfig {
            family: Family::Entangled,
            fixed: vec![],
            axes: vec![
                GridAxis::new("t", 0.0, PI, 101),
                GridAxis::new("w", 0.0, 1.0, 101),
            ],
            hamiltonian_axis: z_axis(),
            quantities: vec![Quantity::Concurrence],
        }
    }

    /// Local coherence of dipole a for the evolved pure product family vs
    /// (theta_a, t) at theta_b = pi/2.
    pub fn fig4_coherence() -> SweepConfig {
        SweepConfig {
            family: Family::Pure,
            fixed: vec![("theta_b".into(), FRAC_PI_2)],
            axes: vec![
                GridAxis::new("theta_a", 0.0, 2.0 * PI, 101),
                GridAxis::new("t", 0.0, PI, 101),
            ],
            hamiltonian_axis: z_axis(),
            quantities: vec![Quantity::CoherenceA],
        }
    }

    pub fn by_name(name: &str) -> Option<SweepConfig> {
        match name {
            "fig1" => Some(fig1()),
            "fig2-rho3" => Some(fig2_rho3()),
            "fig2-rho1" => Some(fig2_rho1()),
            "fig3" => Some(fig3()),
            "fig4-coherence" => Some(fig4_coherence()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};

    fn small_fig1() -> SweepConfig {
        let mut cfg = presets::fig1();
        cfg.axes = vec![
            GridAxis::new("theta_a", 0.0, 2.0 * PI, 21),
            GridAxis::new("t", 0.0, PI, 21),
        ];
        cfg
    }

    #[test]
    fn fig1_preset_has_the_documented_shape() {
        let table = run_sweep(&presets::fig1()).unwrap();
        assert_eq!(table.columns, vec!["theta_a", "t", "concurrence"]);
        assert_eq!(table.records.len(), 101 * 101);
        let max = table
            .records
            .iter()
            .map(|r| r.values[2])
            .fold(0.0f64, f64::max);
        assert!((max - 1.0).abs() < 1e-4, "max concurrence {max}");
    }

    #[test]
    fn records_follow_lexicographic_grid_order() {
        let cfg = small_fig1();
        let table = run_sweep(&cfg).unwrap();
        // first record: theta_a = 0, t = 0; second: theta_a = 0, t = step
        assert_eq!(table.records[0].values[0], 0.0);
        assert_eq!(table.records[0].values[1], 0.0);
        assert_eq!(table.records[1].values[0], 0.0);
        assert!((table.records[1].values[1] - PI / 20.0).abs() < 1e-15);
        // record 21 bumps theta_a once
        assert!((table.records[21].values[0] - 2.0 * PI / 20.0).abs() < 1e-15);
    }

    #[test]
    fn grid_points_use_the_endpoint_formula() {
        let axis = GridAxis::new("t", 0.0, PI, 101);
        assert_eq!(axis.value(0), 0.0);
        assert_eq!(axis.value(100), PI);
    }

    #[test]
    fn parallel_and_sequential_agree_exactly() {
        let cfg = small_fig1();
        let par = run_sweep(&cfg).unwrap();
        let seq = run_sweep_seq(&cfg).unwrap();
        assert_eq!(par, seq);
    }

    #[test]
    fn two_runs_are_identical() {
        let cfg = presets::fig2_rho3();
        let one = run_sweep(&cfg).unwrap();
        let two = run_sweep(&cfg).unwrap();
        assert_eq!(one, two);
    }

    #[test]
    fn values_stay_in_range() {
        for cfg in [presets::fig3(), presets::fig2_rho1(), presets::fig4_coherence()] {
            let n_axes = cfg.axes.len();
            let table = run_sweep(&cfg).unwrap();
            for record in &table.records {
                for v in &record.values[n_axes..] {
                    assert!((-1e-10..=1.0 + 1e-10).contains(v), "{v}");
                }
            }
        }
    }

    #[test]
    fn fig2_rho3_peaks_at_opposite_poles() {
        let table = run_sweep(&presets::fig2_rho3()).unwrap();
        let find = |ra: f64, rb: f64| -> f64 {
            table
                .records
                .iter()
                .find(|r| (r.values[0] - ra).abs() < 1e-12 && (r.values[1] - rb).abs() < 1e-12)
                .unwrap()
                .values[2]
        };
        assert!((find(1.0, -1.0) - 1.0).abs() < 1e-9);
        assert!((find(-1.0, 1.0) - 1.0).abs() < 1e-9);
        assert!(find(0.0, 0.0) < 1e-9);
    }

    #[test]
    fn depolarized_concurrence_is_monotone_in_p() {
        let cfg = SweepConfig {
            family: Family::Depolarized,
            fixed: vec![("w".into(), 0.5), ("t".into(), FRAC_PI_4)],
            axes: vec![GridAxis::new("p", 0.0, 1.0, 101)],
            hamiltonian_axis: DipoleAxis::z(1.0).unwrap(),
            quantities: vec![Quantity::Concurrence],
        };
        let table = run_sweep(&cfg).unwrap();
        let mut prev = -1.0;
        for record in &table.records {
            let e = record.values[1];
            assert!(e >= prev - 1e-12, "not monotone at p = {}", record.values[0]);
            prev = e;
        }
    }

    #[test]
    fn bad_configs_fail_before_evaluation() {
        let mut cfg = presets::fig1();
        cfg.axes[0].name = "w".into();
        assert!(matches!(run_sweep(&cfg), Err(Error::Config(_))));

        let mut cfg = presets::fig1();
        cfg.axes[0].count = 1;
        assert!(matches!(run_sweep(&cfg), Err(Error::Config(_))));

        let mut cfg = presets::fig1();
        cfg.axes[0].stop = cfg.axes[0].start;
        assert!(matches!(run_sweep(&cfg), Err(Error::Config(_))));

        let mut cfg = presets::fig1();
        cfg.fixed.clear(); // theta_b now unbound
        assert!(matches!(run_sweep(&cfg), Err(Error::Config(_))));

        let mut cfg = presets::fig1();
        cfg.quantities.clear();
        assert!(matches!(run_sweep(&cfg), Err(Error::Config(_))));

        // swept range outside the family domain
        let mut cfg = presets::fig3();
        cfg.axes[1] = GridAxis::new("w", 0.0, 2.0, 11);
        assert!(matches!(run_sweep(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn period_pi_symmetry_holds() {
        let report = verify_symmetry(&small_fig1(), Symmetry::PeriodPi).unwrap();
        assert!(report.passed(), "mismatch {}", report.max_mismatch);
    }

    #[test]
    fn theta_reflection_holds_on_symmetric_grids() {
        let cfg = SweepConfig {
            family: Family::Pure,
            fixed: vec![("t".into(), 0.63)],
            axes: vec![
                GridAxis::new("theta_a", 0.0, 2.0 * PI, 41),
                GridAxis::new("theta_b", 0.0, 2.0 * PI, 41),
            ],
            hamiltonian_axis: DipoleAxis::z(1.0).unwrap(),
            quantities: vec![Quantity::Concurrence],
        };
        let report = verify_symmetry(&cfg, Symmetry::ThetaReflection).unwrap();
        assert!(report.passed(), "mismatch {}", report.max_mismatch);
    }

    #[test]
    fn theta_reflection_rejects_asymmetric_grids() {
        let cfg = SweepConfig {
            family: Family::Pure,
            fixed: vec![("t".into(), 0.63)],
            axes: vec![
                GridAxis::new("theta_a", 0.0, PI, 41),
                GridAxis::new("theta_b", 0.0, 2.0 * PI, 41),
            ],
            hamiltonian_axis: DipoleAxis::z(1.0).unwrap(),
            quantities: vec![Quantity::Concurrence],
        };
        assert!(matches!(
            verify_symmetry(&cfg, Symmetry::ThetaReflection),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn quarter_turn_symmetry_holds() {
        let cfg = SweepConfig {
            family: Family::Pure,
            fixed: vec![("t".into(), FRAC_PI_8)],
            axes: vec![
                GridAxis::new("theta_a", 0.0, 2.0 * PI, 41),
                GridAxis::new("theta_b", 0.0, 2.0 * PI, 41),
            ],
            hamiltonian_axis: DipoleAxis::z(1.0).unwrap(),
            quantities: vec![Quantity::Concurrence],
        };
        let report = verify_symmetry(&cfg, Symmetry::QuarterTurn).unwrap();
        assert!(report.passed(), "mismatch {}", report.max_mismatch);
    }

    #[test]
    fn rho1_reflection_holds() {
        let cfg = SweepConfig {
            family: Family::Mixed(BlochAxis::X),
            fixed: vec![("t".into(), 0.9)],
            axes: vec![
                GridAxis::new("ra", -1.0, 1.0, 41),
                GridAxis::new("rb", -1.0, 1.0, 41),
            ],
            hamiltonian_axis: DipoleAxis::z(1.0).unwrap(),
            quantities: vec![Quantity::Concurrence],
        };
        let report = verify_symmetry(&cfg, Symmetry::Rho1Reflection).unwrap();
        assert!(report.passed(), "mismatch {}", report.max_mismatch);
    }

    #[test]
    fn family_and_quantity_parse() {
        assert_eq!("mixed-x".parse::<Family>().unwrap(), Family::Mixed(BlochAxis::X));
        assert!("mixed".parse::<Family>().is_err());
        assert_eq!(
            "coherence_b".parse::<Quantity>().unwrap(),
            Quantity::CoherenceB
        );
        assert!("entropy".parse::<Quantity>().is_err());
    }
}
