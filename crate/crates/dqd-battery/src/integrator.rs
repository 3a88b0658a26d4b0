//! Fixed-step RK4 integration of the master equation.
//!
//! The generator is constant within a stage, so the classical fourth-order
//! Runge–Kutta rule with the default step dt = 10⁻³/Γ_R is both cheap and
//! certified: stage endpoints are required to agree with the
//! scaling-and-squaring matrix exponential to 1e-8 (see the acceptance
//! suite). Because probability conservation is a linear invariant of the
//! generator, RK4 preserves ρ₀₀ + n_occ exactly up to roundoff.

use nalgebra::Vector5;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::QubitHamiltonian;
use crate::liouville::{Liouvillian, LiouvilleVector};
use crate::protocol::observables;

/// Positivity slack beyond which the integrator aborts (step too large).
const POSITIVITY_ABORT: f64 = 1e-6;

/// Step size and output stride.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorParams {
    /// Time step in units of 1/Γ_R.
    pub dt: f64,
    /// Record every `record_stride`-th step.
    pub record_stride: usize,
}

impl Default for IntegratorParams {
    fn default() -> Self {
        Self { dt: 1e-3, record_stride: 10 }
    }
}

impl IntegratorParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidInput(format!("dt = {} must be positive", self.dt)));
        }
        if self.record_stride == 0 {
            return Err(Error::InvalidInput("record_stride must be at least 1".into()));
        }
        Ok(())
    }
}

/// One recorded point of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub stage: usize,
    pub state: LiouvilleVector,
    pub bloch_norm: f64,
    pub ergotropy: f64,
}

/// A contiguous integrated segment under one generator.
#[derive(Debug, Clone)]
pub struct Segment {
    pub samples: Vec<Sample>,
    pub end_state: LiouvilleVector,
    pub end_time: f64,
    /// ‖𝓛v‖₂ at the endpoint.
    pub end_residual: f64,
    /// Set when a steady-state stopping rule fired before the time cap.
    pub steady_reached: bool,
}

/// Stopping rule for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub enum StopRule {
    /// Run for a fixed span.
    Duration(f64),
    /// Run until ‖𝓛v‖₂ < residual, capped at max_time.
    SteadyState { residual: f64, max_time: f64 },
}

fn rk4_step(gen: &Liouvillian, v: &Vector5<f64>, dt: f64) -> Vector5<f64> {
    let k1 = gen.apply(v);
    let k2 = gen.apply(&(v + (0.5 * dt) * k1));
    let k3 = gen.apply(&(v + (0.5 * dt) * k2));
    let k4 = gen.apply(&(v + dt * k3));
    v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Integrate dv/dt = 𝓛v from `v0`, recording samples every stride steps
/// (plus the endpoint). Time stamps are offset by `t0` and samples are
/// tagged with `stage`. When `include_initial` is set the first recorded
/// sample is the initial state itself.
#[allow(clippy::too_many_arguments)]
pub fn integrate(
    gen: &Liouvillian,
    v0: &LiouvilleVector,
    stop: StopRule,
    params: &IntegratorParams,
    h: &QubitHamiltonian,
    t0: f64,
    stage: usize,
    include_initial: bool,
) -> Result<Segment> {
    params.validate()?;
    let dt = params.dt;
    let (t_span, check_residual, residual_threshold) = match stop {
        StopRule::Duration(t) => {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::InvalidInput(format!("duration {t} must be nonnegative")));
            }
            (t, false, 0.0)
        }
        StopRule::SteadyState { residual, max_time } => {
            if !(residual > 0.0 && max_time > 0.0) {
                return Err(Error::InvalidInput(
                    "steady-state stopping needs positive residual and max_time".into(),
                ));
            }
            (max_time, true, residual)
        }
    };

    let mut samples = Vec::new();
    let mut v = v0.as_vector();
    let mut t_local = 0.0;

    let record = |samples: &mut Vec<Sample>, t_local: f64, v: &Vector5<f64>| {
        let state = LiouvilleVector::from_vector(v);
        let (bloch_norm, ergotropy) = observables(&state, h);
        samples.push(Sample { t: t0 + t_local, stage, state, bloch_norm, ergotropy });
    };

    if include_initial {
        record(&mut samples, 0.0, &v);
    }

    let n_steps = (t_span / dt).ceil() as u64;
    let mut steady_reached = false;
    // residual checks are cheap (one extra matvec) but needless every step
    let residual_check_every: u64 = 100;

    for step in 1..=n_steps {
        let step_dt = if step == n_steps { t_span - (step - 1) as f64 * dt } else { dt };
        if step_dt > 0.0 {
            v = rk4_step(gen, &v, step_dt);
        }
        t_local = if step == n_steps { t_span } else { step as f64 * dt };

        let is_last = step == n_steps;
        let on_stride = step % params.record_stride as u64 == 0;
        if on_stride || is_last {
            let state = LiouvilleVector::from_vector(&v);
            if let Err(detail) = state.check_physical(POSITIVITY_ABORT) {
                return Err(Error::PositivityLoss { t: t0 + t_local, detail });
            }
            record(&mut samples, t_local, &v);
        }
        if check_residual && (step % residual_check_every == 0 || is_last) {
            let res = gen.apply(&v).norm();
            if res < residual_threshold {
                steady_reached = true;
                if !(on_stride || is_last) {
                    record(&mut samples, t_local, &v);
                }
                break;
            }
        }
    }

    if n_steps == 0 && samples.is_empty() {
        record(&mut samples, 0.0, &v);
    }

    let end_state = LiouvilleVector::from_vector(&v);
    let end_residual = gen.apply(&v).norm();
    Ok(Segment { samples, end_state, end_time: t0 + t_local, end_residual, steady_reached })
}
