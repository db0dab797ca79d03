//! JSON run configuration. Unknown keys are rejected at every level.

use serde::{Deserialize, Serialize};
use witness_lab::{Path, System};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessSpec>,
    #[serde(default)]
    pub options: Options,
}

/// Couplings are `[i, j, value]` triples with `i < j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub n: usize,
    pub delta: Vec<f64>,
    pub h: Vec<f64>,
    #[serde(default)]
    pub couplings: Vec<(usize, usize, f64)>,
}

/// Rate of change of each coefficient along a path; omitted blocks are zero.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub couplings: Vec<(usize, usize, f64)>,
}

/// Either `start`/`stop`/`points` or an explicit `values` list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub direction: DirectionSpec,
    pub grid: GridSpec,
}

/// Path used for `W_λ`, evaluated at the configured system (`λ = 0`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessSpec {
    pub direction: DirectionSpec,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fd_step: Option<f64>,
    /// Require a nondegenerate ground state and report the gap.
    #[serde(default)]
    pub ground: bool,
    /// Add the global witness to every sweep row.
    #[serde(default)]
    pub witnesses: bool,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn check_len(what: &str, got: usize, n: usize) -> Result<(), CliError> {
    if got == n {
        Ok(())
    } else {
        Err(invalid(format!(
            "{what} has {got} entries, expected n = {n}"
        )))
    }
}

fn positive(name: &str, value: Option<f64>) -> Result<(), CliError> {
    match value {
        Some(v) if !(v > 0.0 && v.is_finite()) => Err(invalid(format!(
            "{name} must be positive and finite, got {v}"
        ))),
        _ => Ok(()),
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: Self =
            serde_json::from_str(text).map_err(|e| invalid(format!("config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.system()?;
        if let Some(sweep) = &self.sweep {
            self.direction(&sweep.direction)?;
            self.grid()?;
        }
        if let Some(w) = &self.witness {
            self.direction(&w.direction)?;
        }
        let o = &self.options;
        positive("deg_tol", o.deg_tol)?;
        positive("fd_step", o.fd_step)?;
        if let Some(v) = o.var_tol {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(invalid(format!(
                    "var_tol must be nonnegative and finite, got {v}"
                )));
            }
        }
        if o.levels == Some(0) {
            return Err(invalid("levels must be at least 1"));
        }
        Ok(())
    }

    pub fn system(&self) -> Result<System, CliError> {
        let s = &self.system;
        check_len("delta", s.delta.len(), s.n)?;
        check_len("h", s.h.len(), s.n)?;
        Ok(System::new(s.delta.clone(), s.h.clone(), &s.couplings)?)
    }

    pub fn direction(&self, d: &DirectionSpec) -> Result<System, CliError> {
        let n = self.system.n;
        let delta = d.delta.clone().unwrap_or_else(|| vec![0.0; n]);
        let h = d.h.clone().unwrap_or_else(|| vec![0.0; n]);
        check_len("direction delta", delta.len(), n)?;
        check_len("direction h", h.len(), n)?;
        Ok(System::new(delta, h, &d.couplings)?)
    }

    pub fn sweep_path(&self) -> Result<Path, CliError> {
        let sweep = self
            .sweep
            .as_ref()
            .ok_or_else(|| invalid("config has no sweep block"))?;
        Ok(Path::new(
            self.system()?,
            self.direction(&sweep.direction)?,
        )?)
    }

    pub fn witness_path(&self) -> Result<Option<Path>, CliError> {
        self.witness
            .as_ref()
            .map(|w| Ok(Path::new(self.system()?, self.direction(&w.direction)?)?))
            .transpose()
    }

    pub fn grid(&self) -> Result<Vec<f64>, CliError> {
        let sweep = self
            .sweep
            .as_ref()
            .ok_or_else(|| invalid("config has no sweep block"))?;
        let g = &sweep.grid;
        match (g.start, g.stop, g.points, &g.values) {
            (None, None, None, Some(values)) => Ok(values.clone()),
            (Some(start), Some(stop), Some(points), None) => {
                if !(start.is_finite() && stop.is_finite() && start < stop) {
                    return Err(invalid(format!(
                        "grid needs start < stop, got {start}..{stop}"
                    )));
                }
                Ok(witness_lab::linspace(start, stop, points))
            }
            _ => Err(invalid(
                "grid needs either start, stop and points, or values",
            )),
        }
    }
}
