//! Key=value sweep configuration files. The format mirrors the sweep
//! fields:
//!
//! ```text
//! # comment
//! family = pure
//! axis = 0,0,1
//! coupling_d = 1.0
//! quantities = concurrence,coherence_a
//! fixed.theta_b = 1.5707963267948966
//! grid.theta_a = 0,6.283185307179586,101
//! grid.t = 0,3.141592653589793,101
//! ```
//!
//! Grid axes sweep in file order, outermost first.

use std::path::Path;

use mdi_core::sweep::{Family, GridAxis, Quantity, SweepConfig};
use mdi_core::{Error, Result};

use crate::parse_axis;

fn parse_grid(name: &str, value: &str) -> Result<GridAxis> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::Parse {
            field: format!("grid.{name}"),
            message: format!("expected start,stop,count, got `{value}`"),
        });
    }
    let number = |s: &str| -> Result<f64> {
        s.parse().map_err(|_| Error::Parse {
            field: format!("grid.{name}"),
            message: format!("bad number `{s}`"),
        })
    };
    let count: usize = parts[2].parse().map_err(|_| Error::Parse {
        field: format!("grid.{name}"),
        message: format!("bad point count `{}`", parts[2]),
    })?;
    Ok(GridAxis::new(name, number(parts[0])?, number(parts[1])?, count))
}

pub fn parse_config(text: &str) -> Result<SweepConfig> {
    let mut family: Option<Family> = None;
    let mut axis_spec = "z".to_string();
    let mut coupling_d = 1.0f64;
    let mut quantities = vec![Quantity::Concurrence];
    let mut fixed: Vec<(String, f64)> = Vec::new();
    let mut axes: Vec<GridAxis> = Vec::new();

    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            field: format!("line {}", line_no + 1),
            message: format!("expected key = value, got `{line}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "family" => family = Some(value.parse()?),
            "axis" => axis_spec = value.to_string(),
            "coupling_d" => {
                coupling_d = value.parse().map_err(|_| Error::Parse {
                    field: "coupling_d".into(),
                    message: format!("bad number `{value}`"),
                })?
            }
            "quantities" => {
                quantities = value
                    .split(',')
                    .map(|q| q.trim().parse())
                    .collect::<Result<Vec<Quantity>>>()?;
            }
            _ => {
                if let Some(name) = key.strip_prefix("fixed.") {
                    let v: f64 = value.parse().map_err(|_| Error::Parse {
                        field: format!("fixed.{name}"),
                        message: format!("bad number `{value}`"),
                    })?;
                    fixed.push((name.to_string(), v));
                } else if let Some(name) = key.strip_prefix("grid.") {
                    axes.push(parse_grid(name, value)?);
                } else {
                    return Err(Error::Parse {
                        field: key.to_string(),
                        message: "unknown key".into(),
                    });
                }
            }
        }
    }

    Ok(SweepConfig {
        family: family.ok_or_else(|| Error::Parse {
            field: "family".into(),
            message: "missing".into(),
        })?,
        fixed,
        axes,
        hamiltonian_axis: parse_axis(&axis_spec, coupling_d)?,
        quantities,
    })
}

pub fn load(path: &Path) -> Result<SweepConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        field: "config".into(),
        message: format!("{}: {e}", path.display()),
    })?;
    parse_config(&text)
}
