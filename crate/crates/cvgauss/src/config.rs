//! Run configuration: sweep grids, tolerances and truncation overrides.
//!
//! Defaults reproduce the published figures and the acceptance tolerances.
//! A JSON file may override any subset of fields:
//!
//! ```json
//! {"sweep": {"e0_points": 50}, "tolerances": {"one_mode_oracle": 1e-7}}
//! ```

use std::path::Path;

use cvgauss_core::teleport::{FIG1_NBAR_IN, FIG1_R_IN, FIG2_E0};
use cvgauss_core::{DstsParams, TwoModeStsParams};
use cvgauss_fock::DimPolicy;
use serde::{Deserialize, Serialize};

use crate::{CliError, Result};

/// Environment variable capping every oracle dimension.
pub const MAX_DIM_ENV: &str = "CVGAUSS_MAX_DIM";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub r_in: f64,
    pub nbar_in: Vec<f64>,
    pub e0_min: f64,
    pub e0_max: f64,
    pub e0_points: usize,
    pub e0_list: Vec<f64>,
    pub q_min: f64,
    pub q_max: f64,
    pub q_points: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            r_in: FIG1_R_IN,
            nbar_in: FIG1_NBAR_IN.to_vec(),
            e0_min: 0.01,
            e0_max: 0.99,
            e0_points: 99,
            e0_list: FIG2_E0.to_vec(),
            q_min: 0.0,
            q_max: 0.95,
            q_points: 96,
        }
    }
}

impl SweepConfig {
    pub fn e0_grid(&self) -> Vec<f64> {
        cvgauss_core::linspace(self.e0_min, self.e0_max, self.e0_points)
    }

    pub fn q_grid(&self) -> Vec<f64> {
        cvgauss_core::linspace(self.q_min, self.q_max, self.q_points)
    }

    pub fn validate(&self) -> Result<()> {
        if self.e0_points < 2 || self.q_points < 2 {
            return Err(bad("grid sizes must be at least 2"));
        }
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        if !(unit(self.e0_min) && unit(self.e0_max) && self.e0_min < self.e0_max) {
            return Err(bad("e0 range must be an increasing pair in [0, 1]"));
        }
        if !(unit(self.q_min) && self.q_max < 1.0 && self.q_min < self.q_max) {
            return Err(bad("q range must be an increasing pair in [0, 1)"));
        }
        if !(self.r_in >= 0.0 && self.r_in.is_finite()) {
            return Err(bad("r_in must be finite and nonnegative"));
        }
        if self.nbar_in.is_empty() || !self.nbar_in.iter().all(|n| *n >= 0.0 && n.is_finite()) {
            return Err(bad(
                "nbar_in must be a nonempty list of nonnegative numbers",
            ));
        }
        if self.e0_list.is_empty() || !self.e0_list.iter().all(|e| unit(*e)) {
            return Err(bad("e0_list must be a nonempty list in [0, 1]"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub one_mode_oracle: f64,
    pub two_mode_oracle: f64,
    pub separability: f64,
    pub entanglement: f64,
    pub boundary: f64,
    pub nonclassicality: f64,
    pub teleport: f64,
    pub coherent_row: f64,
    pub fig1_endpoint: f64,
    pub fig2_identity: f64,
    pub symmetry: f64,
    pub multiplicativity: f64,
    pub trace_bound: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            one_mode_oracle: 1e-6,
            two_mode_oracle: 1e-4,
            separability: 1e-6,
            entanglement: 1e-4,
            boundary: 1e-3,
            nonclassicality: 1e-4,
            teleport: 1e-10,
            coherent_row: 1e-12,
            fig1_endpoint: 1e-9,
            fig2_identity: 1e-12,
            symmetry: 1e-12,
            multiplicativity: 1e-10,
            trace_bound: 1e-8,
        }
    }
}

impl Tolerances {
    /// Every tolerance set to `tol`.
    pub fn uniform(tol: f64) -> Self {
        Self {
            one_mode_oracle: tol,
            two_mode_oracle: tol,
            separability: tol,
            entanglement: tol,
            boundary: tol,
            nonclassicality: tol,
            teleport: tol,
            coherent_row: tol,
            fig1_endpoint: tol,
            fig2_identity: tol,
            symmetry: tol,
            multiplicativity: tol,
            trace_bound: tol,
        }
    }

    fn values(&self) -> [f64; 13] {
        [
            self.one_mode_oracle,
            self.two_mode_oracle,
            self.separability,
            self.entanglement,
            self.boundary,
            self.nonclassicality,
            self.teleport,
            self.coherent_row,
            self.fig1_endpoint,
            self.fig2_identity,
            self.symmetry,
            self.multiplicativity,
            self.trace_bound,
        ]
    }

    pub fn validate(&self) -> Result<()> {
        if self.values().iter().all(|t| *t > 0.0 && t.is_finite()) {
            Ok(())
        } else {
            Err(bad("tolerances must be positive and finite"))
        }
    }
}

/// Oracle truncation. `dim` forces one dimension for every oracle matrix;
/// otherwise it is picked per state and capped by `max_dim`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Truncation {
    pub dim: Option<usize>,
    pub max_dim: Option<usize>,
}

impl Truncation {
    fn cap(&self, policy: DimPolicy) -> DimPolicy {
        match self.max_dim {
            Some(m) => policy.with_cap(m.min(policy.cap)),
            None => policy,
        }
    }

    fn fixed(&self) -> Option<usize> {
        self.dim.map(|d| self.max_dim.map_or(d, |m| d.min(m)))
    }

    pub fn one_mode_dim(&self, states: &[DstsParams]) -> usize {
        let policy = self.cap(DimPolicy::ONE_MODE);
        self.fixed().unwrap_or_else(|| {
            states
                .iter()
                .map(|p| policy.one_mode_dim(p))
                .max()
                .unwrap_or(policy.floor)
        })
    }

    pub fn two_mode_dim(&self, states: &[TwoModeStsParams]) -> usize {
        let policy = self.cap(DimPolicy::TWO_MODE);
        self.fixed().unwrap_or_else(|| {
            states
                .iter()
                .map(|p| policy.two_mode_dim(p))
                .max()
                .unwrap_or(policy.floor)
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == Some(0) || self.max_dim == Some(0) {
            return Err(bad("oracle dimensions must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub sweep: SweepConfig,
    pub tolerances: Tolerances,
    pub truncation: Truncation,
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: Config =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Applies `CVGAUSS_MAX_DIM` when set; it can only lower the cap.
    pub fn apply_env_cap(&mut self, value: Option<&str>) -> Result<()> {
        if let Some(v) = value {
            let cap: usize = v.trim().parse().ok().filter(|c| *c > 0).ok_or_else(|| {
                bad(&format!(
                    "{MAX_DIM_ENV} must be a positive integer, got {v:?}"
                ))
            })?;
            self.truncation.max_dim = Some(self.truncation.max_dim.map_or(cap, |m| m.min(cap)));
        }
        self.truncation.validate()
    }

    pub fn validate(&self) -> Result<()> {
        self.sweep.validate()?;
        self.tolerances.validate()?;
        self.truncation.validate()
    }
}

fn bad(msg: &str) -> CliError {
    CliError::Input(msg.to_owned())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid_and_match_figures() {
        let c = Config::default();
        c.validate().unwrap();
        assert_eq!(c.sweep.e0_grid().len(), 99);
        assert_eq!(c.sweep.q_grid().len(), 96);
        assert_eq!(c.sweep.nbar_in, vec![0.0, 0.1, 0.5, 5.0]);
    }

    #[test]
    fn partial_file_overrides() {
        let c = Config::from_json(r#"{"sweep":{"e0_points":5},"tolerances":{"symmetry":1e-9}}"#)
            .unwrap();
        assert_eq!(c.sweep.e0_points, 5);
        assert_eq!(c.sweep.q_points, 96);
        assert_eq!(c.tolerances.symmetry, 1e-9);
        assert_eq!(c.tolerances.teleport, 1e-10);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        for bad in [
            r#"{"sweep":{"e0_points":1}}"#,
            r#"{"sweep":{"q_max":1.0}}"#,
            r#"{"tolerances":{"teleport":0}}"#,
            r#"{"tolerances":{"teleport":-1e-3}}"#,
            r#"{"truncation":{"dim":0}}"#,
            r#"{"sweep":{"unknown":1}}"#,
        ] {
            assert!(Config::from_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn env_cap_only_lowers() {
        let mut c = Config::default();
        c.apply_env_cap(Some("50")).unwrap();
        assert_eq!(c.truncation.max_dim, Some(50));
        c.apply_env_cap(Some("80")).unwrap();
        assert_eq!(c.truncation.max_dim, Some(50));
        assert!(c.apply_env_cap(Some("lots")).is_err());
        assert!(c.apply_env_cap(Some("0")).is_err());
        let p = DstsParams::new(2.0, 1.0, 0.0, cvgauss_core::Complex::new(1.0, 0.0)).unwrap();
        assert_eq!(c.truncation.one_mode_dim(&[p]), 50);
        let t = Truncation {
            dim: Some(300),
            max_dim: Some(64),
        };
        assert_eq!(t.one_mode_dim(&[p]), 64);
    }
}
