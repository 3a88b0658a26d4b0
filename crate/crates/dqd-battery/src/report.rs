//! CSV/JSON writers and gnuplot script emitters.
//!
//! All numbers are written with Rust's shortest round-trip formatting:
//! locale independent, '.' decimal separator, bit-identical across runs for
//! identical inputs.

use std::io::Write;

use crate::ergotropy::ErgotropySurface;
use crate::error::Result;
use crate::protocol::{stage_label, Trajectory};
use crate::sweep::SweepPoint;

/// `theta,phi,ergotropy`, row-major over θ then φ.
pub fn write_surface_csv(w: &mut impl Write, surface: &ErgotropySurface) -> Result<()> {
    writeln!(w, "theta,phi,ergotropy")?;
    for p in &surface.points {
        writeln!(w, "{},{},{}", p.theta, p.phi, p.ergotropy)?;
    }
    Ok(())
}

pub fn surface_json(surface: &ErgotropySurface) -> serde_json::Value {
    serde_json::Value::Array(
        surface
            .points
            .iter()
            .map(|p| {
                serde_json::json!({
                    "theta": p.theta,
                    "phi": p.phi,
                    "ergotropy": p.ergotropy,
                })
            })
            .collect(),
    )
}

/// `t,stage,rho00,nocc,sx,sy,sz,bloch_norm,ergotropy`.
pub fn write_trajectory_csv(w: &mut impl Write, traj: &Trajectory) -> Result<()> {
    writeln!(w, "t,stage,rho00,nocc,sx,sy,sz,bloch_norm,ergotropy")?;
    for s in &traj.samples {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            s.t,
            stage_label(s.stage),
            s.state.rho00,
            s.state.n_occ,
            s.state.sx,
            s.state.sy,
            s.state.sz,
            s.bloch_norm,
            s.ergotropy
        )?;
    }
    Ok(())
}

pub fn trajectory_json(traj: &Trajectory) -> serde_json::Value {
    serde_json::Value::Array(
        traj.samples
            .iter()
            .map(|s| {
                serde_json::json!({
                    "t": s.t,
                    "stage": stage_label(s.stage),
                    "rho00": s.state.rho00,
                    "nocc": s.state.n_occ,
                    "sx": s.state.sx,
                    "sy": s.state.sy,
                    "sz": s.state.sz,
                    "bloch_norm": s.bloch_norm,
                    "ergotropy": s.ergotropy,
                })
            })
            .collect(),
    )
}

/// `param_name,param_value,peak_ergotropy,decay_time`.
pub fn write_sweep_summary_csv(w: &mut impl Write, points: &[SweepPoint]) -> Result<()> {
    writeln!(w, "param_name,param_value,peak_ergotropy,decay_time")?;
    for p in points {
        writeln!(w, "{},{},{},{}", p.axis.name(), p.value, p.peak_ergotropy, p.decay_time)?;
    }
    Ok(())
}

pub fn sweep_summary_json(points: &[SweepPoint]) -> serde_json::Value {
    serde_json::Value::Array(
        points
            .iter()
            .map(|p| {
                serde_json::json!({
                    "param_name": p.axis.name(),
                    "param_value": p.value,
                    "peak_ergotropy": p.peak_ergotropy,
                    "decay_time": if p.decay_time.is_finite() {
                        serde_json::json!(p.decay_time)
                    } else {
                        serde_json::json!("inf")
                    },
                })
            })
            .collect(),
    )
}

/// Long-format decay curves: `param_name,param_value,t,ergotropy`.
pub fn write_sweep_curves_csv(w: &mut impl Write, points: &[SweepPoint]) -> Result<()> {
    writeln!(w, "param_name,param_value,t,ergotropy")?;
    for p in points {
        for &(t, erg) in &p.curve {
            writeln!(w, "{},{},{},{}", p.axis.name(), p.value, t, erg)?;
        }
    }
    Ok(())
}

/// Gnuplot script plotting ergotropy and Bloch norm of a trajectory CSV.
pub fn trajectory_gnuplot(csv_path: &str) -> String {
    format!(
        "set datafile separator ','\n\
         set xlabel 't [1/Γ_R]'\n\
         set ylabel 'ergotropy [Γ_R]'\n\
         set y2label '|⟨σ⟩|'\n\
         set y2tics\n\
         set key left top\n\
         plot '{csv_path}' skip 1 using 1:9 with lines title 'ergotropy', \\\n\
         \x20    '{csv_path}' skip 1 using 1:8 axes x1y2 with lines title 'Bloch norm'\n"
    )
}

/// Gnuplot script rendering the (θ, φ) ergotropy surface.
pub fn surface_gnuplot(csv_path: &str, n_phi: usize) -> String {
    format!(
        "set datafile separator ','\n\
         set xlabel 'theta [rad]'\n\
         set ylabel 'phi [rad]'\n\
         set view map\n\
         splot '{csv_path}' skip 1 using 1:2:3 every :::0::{} with pm3d notitle\n",
        n_phi.saturating_sub(1)
    )
}

/// Gnuplot script for the sweep decay curves on a log scale.
pub fn sweep_gnuplot(curves_csv_path: &str) -> String {
    format!(
        "set datafile separator ','\n\
         set xlabel 't since peak [1/Γ_R]'\n\
         set ylabel 'ergotropy [Γ_R]'\n\
         set logscale y\n\
         plot for [v in system(\"awk -F, 'NR>1 {{print $2}}' {curves_csv_path} | sort -u\")] \\\n\
         \x20    '{curves_csv_path}' skip 1 using 3:($2 == v ? $4 : 1/0) with lines title v\n"
    )
}
