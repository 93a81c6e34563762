//! Run configuration: command-line flags layered over an optional TOML file.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use koblab_core::catalog::parse_complex;
use koblab_core::domains::ContainmentConfig;
use koblab_core::C64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Keys accepted in `--config` files. Every key is optional; a flag given
/// on the command line wins over the file.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub domain: Option<String>,
    pub k: Option<usize>,
    pub degree: Option<usize>,
    pub restarts: Option<usize>,
    pub stages: Option<usize>,
    pub iterations: Option<usize>,
    pub grid: Option<usize>,
    pub ladder: Option<Vec<f64>>,
    pub margin: Option<f64>,
    pub tolerance: Option<f64>,
    pub samples: Option<usize>,
    pub cutoff: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
    }
}

/// `(p, v, k)` as echoed in reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetEcho {
    pub p: Vec<C64>,
    pub v: Vec<C64>,
    pub k: usize,
}

/// Effective settings of one invocation, after merging flags, file and
/// defaults.
///
/// Ranges: `grid` is a power of two ≥ 8, ladder radii are increasing in
/// `(0, 1]`, `margin ≥ 0`, budgets are positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub domain: Option<String>,
    pub target: Option<TargetEcho>,
    pub degree: Option<usize>,
    pub restarts: Option<usize>,
    pub stages: Option<usize>,
    pub iterations: Option<usize>,
    pub grid: usize,
    pub ladder: Vec<f64>,
    pub margin: f64,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: &str, file: &FileConfig) -> Self {
        let base = ContainmentConfig::default();
        Self {
            command: command.to_string(),
            domain: file.domain.clone(),
            target: None,
            degree: file.degree,
            restarts: file.restarts,
            stages: file.stages,
            iterations: file.iterations,
            grid: file.grid.unwrap_or(base.grid),
            ladder: file.ladder.clone().unwrap_or(base.ladder),
            margin: file.margin.unwrap_or(base.margin),
            tolerance: file.tolerance,
            seed: file.seed,
            output: file.output.clone(),
            format: file.format.unwrap_or_default(),
        }
    }

    pub fn containment(&self) -> Result<ContainmentConfig, CliError> {
        let c = ContainmentConfig { grid: self.grid, ladder: self.ladder.clone(), margin: self.margin, ..Default::default() };
        c.validate()?;
        Ok(c)
    }

    pub fn require_seed(&self) -> Result<u64, CliError> {
        self.seed.ok_or_else(|| CliError::usage(format!("`{}` is randomized and needs --seed", self.command)))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.containment()?;
        for (name, v) in [("degree", self.degree), ("restarts", self.restarts), ("stages", self.stages), ("iterations", self.iterations)] {
            if v == Some(0) && name != "degree" {
                return Err(CliError::usage(format!("--{name} must be positive")));
            }
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(CliError::usage("--tolerance must be finite and non-negative"));
            }
        }
        Ok(())
    }
}

/// Comma-separated complex vector: `0,0,-1` or `0.3+0.1i,1`.
pub fn parse_vector(s: &str) -> Result<Vec<C64>, CliError> {
    let v = s.split(',').map(|x| parse_complex(x.trim())).collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err(CliError::usage("empty vector"));
    }
    Ok(v)
}

/// `a:b:n` → `n` evenly spaced values from `a` to `b` inclusive.
pub fn parse_range(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(CliError::usage(format!("range '{s}' must look like start:end:count")));
    };
    let num = |x: &str| x.trim().parse::<f64>().map_err(|_| CliError::usage(format!("bad number '{x}' in range '{s}'")));
    let (a, b) = (num(a)?, num(b)?);
    let n: usize = n.trim().parse().map_err(|_| CliError::usage(format!("bad count in range '{s}'")))?;
    if n == 0 {
        return Err(CliError::usage(format!("range '{s}' is empty")));
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(CliError::usage(format!("range '{s}' has non-finite endpoints")));
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect())
}
