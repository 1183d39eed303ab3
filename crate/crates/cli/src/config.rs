//! Run configuration: an optional JSON file, overridden field by field by
//! command-line flags.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use troplag_core::smoothing::GridSpec;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub bbox: [Vec<f64>; 2],
    pub h: f64,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub epsilon: Option<f64>,
    pub c: Option<f64>,
    pub delta: Option<f64>,
    /// Far-field radius for the admissibility and subtorus checks.
    pub radius: Option<f64>,
    /// Half-width of the default cube window.
    pub window: Option<f64>,
    pub h: Option<f64>,
    pub grid: Option<GridConfig>,
    pub fan: Option<PathBuf>,
    pub cutoff: Option<String>,
    pub field: Option<String>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
}

macro_rules! overlay {
    ($dst:ident, $src:ident, $($f:ident),*) => {
        $( if $src.$f.is_some() { $dst.$f = $src.$f.clone(); } )*
    };
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> CliResult<RunConfig> {
        match path {
            None => Ok(RunConfig::default()),
            Some(p) => {
                let text = read_input(p)?;
                Ok(serde_json::from_str(&text)?)
            }
        }
    }

    /// Fields set in `flags` replace those from the file.
    pub fn merge(mut self, flags: &RunConfig) -> RunConfig {
        overlay!(self, flags, epsilon, c, delta, radius, window, h, grid, fan, cutoff, field, out, seed);
        self
    }

    pub fn validate(&self) -> CliResult<()> {
        let positive = [
            ("epsilon", self.epsilon),
            ("c", self.c),
            ("delta", self.delta),
            ("radius", self.radius),
            ("window", self.window),
            ("h", self.h),
            ("grid.h", self.grid.as_ref().map(|g| g.h)),
        ];
        for (name, v) in positive {
            if let Some(x) = v {
                if !(x > 0.0 && x.is_finite()) {
                    return Err(CliError::new("E_CONFIG", format!("{name} must be positive, got {x}")));
                }
            }
        }
        if let Some(f) = &self.fan {
            if !f.exists() {
                return Err(CliError::new("E_NOT_FOUND", format!("fan file {} does not exist", f.display())));
            }
        }
        Ok(())
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon.unwrap_or(0.05)
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("troplag-out"))
    }

    /// Explicit grid, else the cube `[−window, window]^n` with spacing `h`.
    /// The default spacing is `ε/1024` for `n = 1` and `ε/8` otherwise.
    pub fn grid(&self, n: usize) -> CliResult<GridSpec> {
        if let Some(g) = &self.grid {
            return Ok(GridSpec::new(g.bbox[0].clone(), g.bbox[1].clone(), g.h)?);
        }
        let eps = self.epsilon();
        let h = self.h.unwrap_or(if n == 1 { eps / 1024.0 } else { eps / 8.0 });
        Ok(GridSpec::cube(n, self.window.unwrap_or(2.0), h)?)
    }
}

pub fn read_input(path: &Path) -> CliResult<String> {
    if !path.exists() {
        return Err(CliError::new("E_NOT_FOUND", format!("{} does not exist", path.display())));
    }
    Ok(std::fs::read_to_string(path)?)
}
