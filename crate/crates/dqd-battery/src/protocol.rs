//! Multi-stage charging and storage protocols.
//!
//! A protocol is an ordered list of stages; within each stage the tunnel
//! rates, the control (on/off), and the phonon coupling are constant, so
//! each stage is one constant-generator integration. The canonical runs:
//!
//! * `transport_charge` — the three-stage battery cycle: (A) uncontrolled
//!   transport from the empty state to its steady state, (B) feedback
//!   charging with the drain throttled to a small Γ_R, (C) decoupled
//!   storage. With the stage-B drain at exactly zero, the pseudospin
//!   component transverse to the Hamiltonian axis left over from stage A
//!   only precesses and never decays, so the stored ergotropy saturates
//!   below the maximum; a small finite drain (default 10⁻³) damps it and
//!   brings the final ergotropy within ~6×10⁻⁴ of Δ.
//! * `feedback_charge` — charging from the empty state with the drain
//!   fully closed (Γ_R = 0). Every injected electron enters along the
//!   target direction, nothing transverse ever builds up, and the state
//!   converges to the maximum-ergotropy target at rate Γ_L. This is the
//!   fast charge used by the self-discharge sweeps.
//!
//! Observables tracked per sample: the Bloch-vector length |⟨σ(t)⟩| (the
//! purity measure of the conditional state) and the ergotropy of the
//! pseudospin, ½(|⟨σ⟩|Δ + ε⟨σ_z⟩ + 2Tc⟨σ_x⟩).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feedback::ControlParams;
use crate::hamiltonian::QubitHamiltonian;
use crate::integrator::{integrate, IntegratorParams, Sample, StopRule};
use crate::liouville::{Liouvillian, LiouvilleVector, ReservoirRates};
use crate::phonon::{dephasing_rates, PhononParams, PhononRates};

/// Stage termination: fixed span or steady-state detection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Termination {
    Duration { duration: f64 },
    SteadyState {
        residual: f64,
        #[serde(default = "default_max_time")]
        max_time: f64,
    },
}

fn default_max_time() -> f64 {
    1e3
}

impl Termination {
    pub fn steady_default() -> Self {
        Termination::SteadyState { residual: 1e-8, max_time: default_max_time() }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Termination::Duration { duration } => {
                if !(duration.is_finite() && *duration >= 0.0) {
                    return Err(Error::InvalidInput(format!(
                        "stage duration {duration} must be nonnegative"
                    )));
                }
            }
            Termination::SteadyState { residual, max_time } => {
                if !(residual.is_finite() && *residual > 0.0) {
                    return Err(Error::InvalidInput(format!(
                        "steady-state residual {residual} must be positive"
                    )));
                }
                if !(max_time.is_finite() && *max_time > 0.0) {
                    return Err(Error::InvalidInput(format!(
                        "steady-state cap {max_time} must be positive"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One stage of a protocol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageSpec {
    pub gamma_l: f64,
    pub gamma_r: f64,
    /// Apply the run's feedback control during this stage.
    pub control: bool,
    /// Couple the phonon bath during this stage.
    pub phonons: bool,
    #[serde(flatten)]
    pub until: Termination,
}

/// An ordered list of stages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolSchedule {
    pub stages: Vec<StageSpec>,
}

impl ProtocolSchedule {
    pub fn new(stages: Vec<StageSpec>) -> Result<Self> {
        let schedule = Self { stages };
        schedule.validate()?;
        Ok(schedule)
    }

    pub fn validate(&self) -> Result<()> {
        if self.stages.is_empty() {
            return Err(Error::InvalidInput("protocol needs at least one stage".into()));
        }
        for (i, stage) in self.stages.iter().enumerate() {
            ReservoirRates::new(stage.gamma_l, stage.gamma_r)
                .map_err(|e| Error::InvalidInput(format!("stage {i}: {e}")))?;
            stage.until.validate().map_err(|e| Error::InvalidInput(format!("stage {i}: {e}")))?;
        }
        Ok(())
    }

    /// The three-stage battery cycle A → B → C described in the module docs.
    pub fn transport_charge(
        gamma_l: f64,
        gamma_r: f64,
        charge_gamma_r: f64,
        charge_duration: f64,
        storage_duration: f64,
        phonons: bool,
    ) -> Result<Self> {
        Self::new(vec![
            StageSpec {
                gamma_l,
                gamma_r,
                control: false,
                phonons,
                until: Termination::steady_default(),
            },
            StageSpec {
                gamma_l,
                gamma_r: charge_gamma_r,
                control: true,
                phonons,
                until: Termination::Duration { duration: charge_duration },
            },
            StageSpec {
                gamma_l: 0.0,
                gamma_r: 0.0,
                control: false,
                phonons,
                until: Termination::Duration { duration: storage_duration },
            },
        ])
    }

    /// Fast feedback charge from the empty state (Γ_R = 0) plus storage.
    pub fn feedback_charge(
        gamma_l: f64,
        charge_duration: f64,
        storage_duration: f64,
        phonons: bool,
    ) -> Result<Self> {
        Self::new(vec![
            StageSpec {
                gamma_l,
                gamma_r: 0.0,
                control: true,
                phonons,
                until: Termination::Duration { duration: charge_duration },
            },
            StageSpec {
                gamma_l: 0.0,
                gamma_r: 0.0,
                control: false,
                phonons,
                until: Termination::Duration { duration: storage_duration },
            },
        ])
    }
}

/// Stage boundary marker: the stage's label and the time it began.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageMark {
    pub label: String,
    pub t_start: f64,
}

/// Per-stage outcome, including steady-state truncation diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct StageReport {
    pub label: String,
    pub t_end: f64,
    /// Some(reached) for steady-state stages; None for fixed durations.
    pub steady_reached: Option<bool>,
    pub end_residual: f64,
}

impl StageReport {
    pub fn truncated(&self) -> bool {
        self.steady_reached == Some(false)
    }
}

/// Concatenated integrated protocol with per-sample observables.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub marks: Vec<StageMark>,
    pub reports: Vec<StageReport>,
    pub end_state: LiouvilleVector,
    pub end_time: f64,
}

impl Trajectory {
    pub fn peak_ergotropy(&self) -> Option<&Sample> {
        self.samples.iter().max_by(|a, b| a.ergotropy.total_cmp(&b.ergotropy))
    }

    pub fn final_sample(&self) -> Option<&Sample> {
        self.samples.last()
    }
}

/// Stage label: A, B, C, ... then S26, S27, ...
pub fn stage_label(idx: usize) -> String {
    if idx < 26 {
        char::from(b'A' + idx as u8).to_string()
    } else {
        format!("S{idx}")
    }
}

/// Bloch-vector length and ergotropy of the transport state. The ergotropy
/// is the Bloch closed form applied to the raw pseudospin components, with
/// r = |⟨σ⟩|.
pub fn observables(v: &LiouvilleVector, h: &QubitHamiltonian) -> (f64, f64) {
    let bloch_norm = v.bloch_norm();
    let ergotropy =
        0.5 * (bloch_norm * h.delta() + h.epsilon() * v.sz + 2.0 * h.tc() * v.sx);
    (bloch_norm, ergotropy)
}

/// Run a protocol from `v0`, concatenating the per-stage segments.
///
/// The state is continuous across stage boundaries; sample times are
/// strictly increasing (each stage records from its first stride step, the
/// initial state is recorded once at t = 0). Stages whose steady-state rule
/// did not fire within the cap are flagged in the reports.
pub fn run_protocol(
    h: &QubitHamiltonian,
    schedule: &ProtocolSchedule,
    control: &ControlParams,
    phonons: Option<&PhononParams>,
    params: &IntegratorParams,
    v0: &LiouvilleVector,
) -> Result<Trajectory> {
    schedule.validate()?;
    params.validate()?;
    v0.check_physical(1e-9).map_err(Error::InvalidInput)?;

    let mut samples = Vec::new();
    let mut marks = Vec::new();
    let mut reports = Vec::new();
    let mut state = *v0;
    let mut t = 0.0;

    for (idx, stage) in schedule.stages.iter().enumerate() {
        let label = stage_label(idx);
        marks.push(StageMark { label: label.clone(), t_start: t });

        let rates = ReservoirRates::new(stage.gamma_l, stage.gamma_r)?;
        let ph = if stage.phonons {
            match phonons {
                Some(p) => dephasing_rates(h, p)?,
                None => {
                    return Err(Error::InvalidInput(format!(
                        "stage {idx} enables phonons but no phonon parameters were given"
                    )))
                }
            }
        } else {
            PhononRates::zero()
        };
        let ctrl = if stage.control { *control } else { ControlParams::identity() };
        let gen = Liouvillian::assemble(h, &rates, &ctrl, &ph);

        let stop = match stage.until {
            Termination::Duration { duration } => StopRule::Duration(duration),
            Termination::SteadyState { residual, max_time } => {
                StopRule::SteadyState { residual, max_time }
            }
        };
        let seg = integrate(&gen, &state, stop, params, h, t, idx, idx == 0)?;

        let steady_reached = match stage.until {
            Termination::SteadyState { .. } => Some(seg.steady_reached),
            Termination::Duration { .. } => None,
        };
        reports.push(StageReport {
            label,
            t_end: seg.end_time,
            steady_reached,
            end_residual: seg.end_residual,
        });
        samples.extend(seg.samples);
        state = seg.end_state;
        t = seg.end_time;
    }

    Ok(Trajectory { samples, marks, reports, end_state: state, end_time: t })
}
