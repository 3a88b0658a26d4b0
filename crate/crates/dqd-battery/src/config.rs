//! Run configuration.
//!
//! A single TOML file with flat sections; every quantity is entered in
//! units of the reference rate Γ_R (energies in ħΓ_R, times in 1/Γ_R,
//! temperatures in Γ_R/k_B). Parsing is strict: unknown keys are rejected
//! so typos surface as errors, and serialize ∘ parse is the identity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feedback::Branch;
use crate::hamiltonian::QubitHamiltonian;
use crate::integrator::IntegratorParams;
use crate::phonon::{PhononParams, WEAK_COUPLING_LIMIT};
use crate::protocol::{ProtocolSchedule, StageSpec};
use crate::sweep::SweepAxis;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub epsilon: f64,
    pub tc: f64,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self { epsilon: 1.0, tc: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReservoirConfig {
    pub gamma_l: f64,
    pub gamma_r: f64,
}

impl Default for ReservoirConfig {
    fn default() -> Self {
        Self { gamma_l: 1.0, gamma_r: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ControlMode {
    /// Aim at the eigenvector of the effective Hamiltonian for the chosen
    /// branch, solved at `target_gamma_r`.
    #[default]
    Auto,
    /// Use the angles given explicitly.
    Explicit,
    /// No feedback anywhere.
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlConfig {
    pub mode: ControlMode,
    /// Γ_R the auto target is solved at; 0 selects the maximum-ergotropy
    /// limit target.
    pub target_gamma_r: f64,
    pub branch: Branch,
    pub theta: f64,
    pub theta_c: f64,
}

impl Default for ControlConfig {
    fn default() -> Self {
        Self {
            mode: ControlMode::Auto,
            target_gamma_r: 0.0,
            branch: Branch::PositiveSx,
            theta: 0.0,
            theta_c: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhononConfig {
    pub enabled: bool,
    pub g: f64,
    pub omega_c: f64,
    /// k_B T in units of Γ_R.
    pub temperature: f64,
}

impl Default for PhononConfig {
    fn default() -> Self {
        Self { enabled: false, g: 4e-4, omega_c: 500.0, temperature: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: String,
    pub format: OutputFormat,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { path: "out.csv".into(), format: OutputFormat::Csv }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErgotropyMapConfig {
    pub r: f64,
    pub n_theta: usize,
    pub n_phi: usize,
}

impl Default for ErgotropyMapConfig {
    fn default() -> Self {
        Self { r: 1.0, n_theta: 181, n_phi: 361 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    pub charge_duration: f64,
    pub max_decay_time: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            axis: SweepAxis::Epsilon,
            values: vec![1.0, 2.0, 4.0, 8.0],
            charge_duration: 60.0,
            max_decay_time: 1e5,
        }
    }
}

/// Full run configuration; all sections optional in the file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub system: SystemConfig,
    pub reservoirs: ReservoirConfig,
    pub control: ControlConfig,
    pub phonons: PhononConfig,
    pub integrator: IntegratorParams,
    pub output: OutputConfig,
    pub ergotropy_map: ErgotropyMapConfig,
    pub sweep: SweepConfig,
    /// Protocol stages; when empty, `simulate` uses the default three-stage
    /// transport-charge-store cycle.
    #[serde(rename = "stages", skip_serializing_if = "Vec::is_empty")]
    pub stages: Vec<StageSpec>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("RunConfig serializes to TOML")
    }

    /// Field-level validation of every embedded quantity.
    pub fn validate(&self) -> Result<()> {
        QubitHamiltonian::new(self.system.epsilon, self.system.tc)?;
        crate::liouville::ReservoirRates::new(self.reservoirs.gamma_l, self.reservoirs.gamma_r)
            .map_err(|e| Error::Config(format!("[reservoirs] {e}")))?;
        if self.phonons.enabled {
            PhononParams::from_temperature(
                self.phonons.g,
                self.phonons.omega_c,
                self.phonons.temperature,
            )
            .map_err(|e| Error::Config(format!("[phonons] {e}")))?;
        }
        self.integrator.validate().map_err(|e| Error::Config(format!("[integrator] {e}")))?;
        if self.ergotropy_map.n_theta < 2 || self.ergotropy_map.n_phi < 2 {
            return Err(Error::Config(format!(
                "[ergotropy_map] grid must be at least 2×2, got {}×{}",
                self.ergotropy_map.n_theta, self.ergotropy_map.n_phi
            )));
        }
        if !(0.0..=1.0 + crate::bloch::R_SLACK).contains(&self.ergotropy_map.r) {
            return Err(Error::Config(format!(
                "[ergotropy_map] r = {} outside [0, 1]",
                self.ergotropy_map.r
            )));
        }
        if !(self.control.target_gamma_r.is_finite() && self.control.target_gamma_r >= 0.0) {
            return Err(Error::Config(format!(
                "[control] target_gamma_r = {} must be nonnegative",
                self.control.target_gamma_r
            )));
        }
        if !self.sweep.values.iter().all(|v| v.is_finite()) {
            return Err(Error::Config("[sweep] values must be finite".into()));
        }
        if !self.stages.is_empty() {
            ProtocolSchedule::new(self.stages.clone())
                .map_err(|e| Error::Config(format!("[[stages]] {e}")))?;
        }
        Ok(())
    }

    /// Non-fatal advisories (e.g. coupling beyond the weak-interaction
    /// regime the dephasing rates were derived in).
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.phonons.enabled && self.phonons.g > WEAK_COUPLING_LIMIT {
            out.push(format!(
                "phonon coupling g = {} exceeds the weak-coupling regime (g ≲ {}); \
                 the dephasing rates are extrapolated",
                self.phonons.g, WEAK_COUPLING_LIMIT
            ));
        }
        out
    }

    pub fn hamiltonian(&self) -> QubitHamiltonian {
        QubitHamiltonian::new(self.system.epsilon, self.system.tc)
            .expect("validated configuration")
    }

    pub fn phonon_params(&self) -> Option<PhononParams> {
        if self.phonons.enabled {
            Some(
                PhononParams::from_temperature(
                    self.phonons.g,
                    self.phonons.omega_c,
                    self.phonons.temperature,
                )
                .expect("validated configuration"),
            )
        } else {
            None
        }
    }

    /// The schedule `simulate` runs: explicit stages if given, otherwise the
    /// three-stage transport-charge-store cycle at the configured rates.
    pub fn schedule(&self) -> Result<ProtocolSchedule> {
        if self.stages.is_empty() {
            ProtocolSchedule::transport_charge(
                self.reservoirs.gamma_l,
                self.reservoirs.gamma_r,
                1e-3,
                2e4,
                100.0,
                self.phonons.enabled,
            )
        } else {
            ProtocolSchedule::new(self.stages.clone())
        }
    }

    /// Resolve the control parameters for this run.
    pub fn control_params(&self) -> Result<crate::feedback::ControlParams> {
        match self.control.mode {
            ControlMode::Off => Ok(crate::feedback::ControlParams::identity()),
            ControlMode::Explicit => Ok(crate::feedback::ControlParams::explicit(
                self.control.theta,
                self.control.theta_c,
            )),
            ControlMode::Auto => {
                let target = crate::feedback::target_state(
                    &self.hamiltonian(),
                    self.control.target_gamma_r,
                    self.control.branch,
                )?;
                crate::feedback::solve_control_angles(&target)
            }
        }
    }
}
