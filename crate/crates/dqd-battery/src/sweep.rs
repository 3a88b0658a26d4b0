//! Self-discharge parameter sweeps.
//!
//! For each value of the swept parameter (detuning ε, tunnel coupling Tc,
//! or temperature k_BT) the battery is charged with the fast feedback
//! protocol, decoupled, and left to discharge against the phonon bath. The
//! decay curve 𝒲(t) is recorded from the point of maximum ergotropy and a
//! decay time is extracted by least squares on log 𝒲 over the window where
//! 𝒲 falls from its peak to peak/10. A phonon-free battery does not
//! discharge; the fitted rate is zero and the decay time infinite.
//!
//! Sweep points are independent and are fanned out across a rayon pool;
//! results are reassembled in input order, so the output is deterministic
//! regardless of thread count or submission order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feedback::{solve_control_angles, target_state, Branch};
use crate::hamiltonian::QubitHamiltonian;
use crate::integrator::{integrate, IntegratorParams, StopRule};
use crate::liouville::{Liouvillian, LiouvilleVector, ReservoirRates};
use crate::phonon::{dephasing_rates, PhononParams, PhononRates};
use crate::protocol::{run_protocol, ProtocolSchedule};

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepAxis {
    Epsilon,
    Tc,
    Temperature,
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::Epsilon => "epsilon",
            SweepAxis::Tc => "tc",
            SweepAxis::Temperature => "temperature",
        }
    }
}

impl std::str::FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "epsilon" | "eps" => Ok(SweepAxis::Epsilon),
            "tc" => Ok(SweepAxis::Tc),
            "temperature" | "t" | "kt" => Ok(SweepAxis::Temperature),
            other => Err(Error::Config(format!(
                "unknown sweep axis '{other}' (expected epsilon, tc, or temperature)"
            ))),
        }
    }
}

/// Base system for a sweep; the swept axis overrides one field per point.
#[derive(Debug, Clone, Copy)]
pub struct SweepBase {
    pub epsilon: f64,
    pub tc: f64,
    pub gamma_l: f64,
    /// Uncontrolled transport Γ_R for the pre-charge stage.
    pub gamma_r: f64,
    pub g: f64,
    pub omega_c: f64,
    pub temperature: f64,
}

impl Default for SweepBase {
    fn default() -> Self {
        Self {
            epsilon: 1.0,
            tc: 1.0,
            gamma_l: 1.0,
            gamma_r: 1.0,
            g: 4e-4,
            omega_c: 500.0,
            temperature: 1.0,
        }
    }
}

/// Sweep tuning knobs.
#[derive(Debug, Clone, Copy)]
pub struct SweepParams {
    pub integrator: IntegratorParams,
    /// Span of the feedback-charge stage.
    pub charge_duration: f64,
    /// Decay integration advances in chunks of this span.
    pub decay_chunk: f64,
    /// Hard cap on the decay span.
    pub max_decay_time: f64,
    /// Samples recorded per decay chunk.
    pub samples_per_chunk: usize,
}

impl Default for SweepParams {
    fn default() -> Self {
        Self {
            integrator: IntegratorParams::default(),
            charge_duration: 60.0,
            decay_chunk: 100.0,
            max_decay_time: 1e5,
            samples_per_chunk: 64,
        }
    }
}

/// Result for one sweep value.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub axis: SweepAxis,
    pub value: f64,
    pub peak_ergotropy: f64,
    /// Fitted decay rate of log 𝒲 (zero for a phonon-free battery).
    pub decay_rate: f64,
    /// 1/decay_rate; infinite when no decay was detected.
    pub decay_time: f64,
    /// (t, 𝒲) decay curve starting at the ergotropy peak, t relative to it.
    pub curve: Vec<(f64, f64)>,
}

/// Run the self-discharge sweep over `values` of `axis`.
///
/// `seed` only shuffles the order in which points are handed to the worker
/// pool; the physics and the output are deterministic.
pub fn self_discharge_sweep(
    base: &SweepBase,
    axis: SweepAxis,
    values: &[f64],
    params: &SweepParams,
    seed: Option<u64>,
) -> Result<Vec<SweepPoint>> {
    if values.is_empty() {
        return Err(Error::Config("sweep value list is empty".into()));
    }
    params.integrator.validate()?;

    let mut order: Vec<usize> = (0..values.len()).collect();
    if let Some(seed) = seed {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        order.shuffle(&mut rng);
    }

    let mut results: Vec<(usize, SweepPoint)> = order
        .into_par_iter()
        .map(|idx| sweep_point(base, axis, values[idx], params).map(|p| (idx, p)))
        .collect::<Result<Vec<_>>>()?;
    results.sort_by_key(|(idx, _)| *idx);
    Ok(results.into_iter().map(|(_, p)| p).collect())
}

fn sweep_point(
    base: &SweepBase,
    axis: SweepAxis,
    value: f64,
    params: &SweepParams,
) -> Result<SweepPoint> {
    let (epsilon, tc, temperature) = match axis {
        SweepAxis::Epsilon => (value, base.tc, base.temperature),
        SweepAxis::Tc => (base.epsilon, value, base.temperature),
        SweepAxis::Temperature => (base.epsilon, base.tc, value),
    };
    let h = QubitHamiltonian::new(epsilon, tc)?;
    let phonons = if base.g > 0.0 {
        Some(PhononParams::from_temperature(base.g, base.omega_c, temperature)?)
    } else {
        None
    };
    let control = solve_control_angles(&target_state(&h, 0.0, Branch::PositiveSx)?)?;

    // charge: fast feedback protocol from the empty state
    let schedule = ProtocolSchedule::feedback_charge(
        base.gamma_l,
        params.charge_duration,
        0.0,
        phonons.is_some(),
    )?;
    let charged = run_protocol(
        &h,
        &schedule,
        &control,
        phonons.as_ref(),
        &params.integrator,
        &LiouvilleVector::empty(),
    )?;

    // peak may sit inside the charge stage when the bath already bites there
    let mut curve: Vec<(f64, f64)> = Vec::new();
    let peak_sample = charged
        .peak_ergotropy()
        .expect("charge trajectory has samples");
    let (peak_t, peak_w) = (peak_sample.t, peak_sample.ergotropy);
    for s in &charged.samples {
        if s.t >= peak_t {
            curve.push((s.t - peak_t, s.ergotropy));
        }
    }
    let mut t_offset = charged.end_time - peak_t;
    let mut state = charged.end_state;

    // decoupled decay, chunked with early exit once the decade is covered
    let rates = ReservoirRates::new(0.0, 0.0)?;
    let ph_rates = match &phonons {
        Some(p) => dephasing_rates(&h, p)?,
        None => PhononRates::zero(),
    };
    let gen = Liouvillian::assemble(&h, &rates, &crate::feedback::ControlParams::identity(), &ph_rates);

    let chunk_steps = (params.decay_chunk / params.integrator.dt).ceil() as usize;
    let stride = (chunk_steps / params.samples_per_chunk.max(1)).max(1);
    let chunk_params = IntegratorParams { dt: params.integrator.dt, record_stride: stride };

    let mut peak = peak_w;
    while t_offset < params.max_decay_time {
        let seg = integrate(
            &gen,
            &state,
            StopRule::Duration(params.decay_chunk),
            &chunk_params,
            &h,
            t_offset,
            0,
            false,
        )?;
        let w_before = curve.last().map(|p| p.1).unwrap_or(peak);
        for s in &seg.samples {
            curve.push((s.t, s.ergotropy));
        }
        state = seg.end_state;
        t_offset = seg.end_time;
        let w_now = curve.last().map(|p| p.1).unwrap_or(peak);
        peak = peak.max(w_now);
        if w_now <= peak / 12.0 {
            break;
        }
        // flat curve: phonon-free storage never decays
        if (w_before - w_now).abs() <= 1e-10 * peak.max(1e-300) {
            break;
        }
    }

    // re-anchor the curve at its true peak
    let ipk = curve
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let (t_pk, w_pk) = curve[ipk];
    let curve: Vec<(f64, f64)> = curve[ipk..].iter().map(|&(t, w)| (t - t_pk, w)).collect();

    let (decay_rate, decay_time) = fit_decay(&curve, w_pk);
    Ok(SweepPoint { axis, value, peak_ergotropy: w_pk, decay_rate, decay_time, curve })
}

/// Least-squares slope of log 𝒲 over the window 𝒲 ∈ [peak/10, peak].
///
/// Returns (rate, 1/rate); a slope indistinguishable from zero (|rate| ≤
/// 1e-12) reports rate 0 and infinite decay time.
pub fn fit_decay(curve: &[(f64, f64)], peak: f64) -> (f64, f64) {
    let window: Vec<(f64, f64)> = curve
        .iter()
        .copied()
        .take_while(|&(_, w)| w >= peak / 10.0)
        .filter(|&(_, w)| w > 0.0)
        .collect();
    if window.len() < 2 {
        return (0.0, f64::INFINITY);
    }
    let n = window.len() as f64;
    let (mut st, mut sw, mut stt, mut stw) = (0.0, 0.0, 0.0, 0.0);
    for &(t, w) in &window {
        let lw = w.ln();
        st += t;
        sw += lw;
        stt += t * t;
        stw += t * lw;
    }
    let denom = n * stt - st * st;
    if denom == 0.0 {
        return (0.0, f64::INFINITY);
    }
    let slope = (n * stw - st * sw) / denom;
    let rate = -slope;
    if rate <= 1e-12 {
        (0.0, f64::INFINITY)
    } else {
        (rate, 1.0 / rate)
    }
}
