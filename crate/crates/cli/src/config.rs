//! Run configuration: built-in defaults, then a JSON config file (from
//! `--config` or `SPECTRAL_WALLS_CONFIG`), then command-line overrides.

use std::path::Path;

use clap::Args;
use serde::Deserialize;
use serde_json::{json, Value};

use spectral_walls::classify::DEFAULT_ENUMERATION_BOUND;
use spectral_walls::exec::Execution;
use spectral_walls::fourier::{EstimatorConfig, FtConfig};
use spectral_walls::measure::DEFAULT_CLOSURE_CAP;
use spectral_walls::{Error, Result};

pub const CONFIG_ENV: &str = "SPECTRAL_WALLS_CONFIG";

/// Tolerance for oracle cross-checks when none is configured.
pub const ORACLE_TOLERANCE: f64 = 1e-12;
/// Tolerance for the Wiener estimator when none is configured.
pub const WIENER_TOLERANCE: f64 = 0.05;
/// Push-forward identity tolerance; fixed, since both sides are closed forms.
pub const PUSHFORWARD_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_GRID: usize = 10;

#[derive(Debug, Default, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub struct Overrides {
    /// Numerical tolerance (oracle: 1e-12, Wiener estimator: 0.05).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Sample count for the Wiener estimator.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Ball radius for the Wiener estimator.
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    /// Seed for every sampled quantity.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Lattice bound for listing torus concise-set families.
    #[arg(long, global = true)]
    pub enumeration_bound: Option<i64>,
    /// Component cap for the exp closure.
    #[arg(long, global = true)]
    pub closure_cap: Option<usize>,
    /// Grid bound B for oracle cross-checks and lattice identity checks.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Run everything on one thread.
    #[arg(long, global = true)]
    #[serde(default)]
    pub sequential: bool,
}

impl Overrides {
    fn layer(self, over: Overrides) -> Overrides {
        Overrides {
            tolerance: over.tolerance.or(self.tolerance),
            samples: over.samples.or(self.samples),
            radius: over.radius.or(self.radius),
            seed: over.seed.or(self.seed),
            enumeration_bound: over.enumeration_bound.or(self.enumeration_bound),
            closure_cap: over.closure_cap.or(self.closure_cap),
            grid: over.grid.or(self.grid),
            sequential: over.sequential || self.sequential,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Config {
    pub tolerance: Option<f64>,
    pub estimator: EstimatorConfig,
    pub enumeration_bound: i64,
    pub closure_cap: usize,
    pub grid: usize,
    pub source: Option<String>,
}

impl Config {
    pub fn load(path: Option<&Path>, cli: Overrides) -> Result<Config> {
        let file = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Error::Parse(format!("cannot read config {}: {e}", p.display())))?;
                serde_json::from_str::<Overrides>(&text)
                    .map_err(|e| Error::Parse(format!("config {}: {e}", p.display())))?
            }
            None => Overrides::default(),
        };
        let o = file.layer(cli);
        let base = EstimatorConfig::default();
        let estimator = EstimatorConfig {
            samples: o.samples.unwrap_or(base.samples),
            radius: o.radius.unwrap_or(base.radius),
            seed: o.seed.unwrap_or(base.seed),
            tolerance: o.tolerance.unwrap_or(WIENER_TOLERANCE),
            ft: FtConfig::default(),
            execution: if o.sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            },
        };
        estimator.validate()?;
        if let Some(t) = o.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidInput("tolerance must be positive".into()));
            }
        }
        let enumeration_bound = o.enumeration_bound.unwrap_or(DEFAULT_ENUMERATION_BOUND);
        if enumeration_bound < 0 {
            return Err(Error::InvalidInput("enumeration bound must be >= 0".into()));
        }
        Ok(Config {
            tolerance: o.tolerance,
            estimator,
            enumeration_bound,
            closure_cap: o.closure_cap.unwrap_or(DEFAULT_CLOSURE_CAP),
            grid: o.grid.unwrap_or(DEFAULT_GRID),
            source: path.map(|p| p.display().to_string()),
        })
    }

    pub fn execution(&self) -> Execution {
        self.estimator.execution
    }

    pub fn oracle_tolerance(&self) -> f64 {
        self.tolerance.unwrap_or(ORACLE_TOLERANCE)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tolerance": self.tolerance,
            "samples": self.estimator.samples,
            "radius": self.estimator.radius,
            "seed": self.estimator.seed,
            "enumeration_bound": self.enumeration_bound,
            "closure_cap": self.closure_cap,
            "grid": self.grid,
            "periodization": self.estimator.ft.periodization,
            "sequential": self.execution() == Execution::Sequential,
            "config_file": self.source,
        })
    }
}
