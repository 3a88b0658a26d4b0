//! Simulator for a double-quantum-dot quantum battery under Markovian
//! feedback control.
//!
//! The battery is the position pseudospin of a single excess electron in
//! two tunnel-coupled dots in series between source and drain leads
//! (Coulomb blockade, high bias). Charge transport is described by a
//! Lindblad master equation in the 5-dimensional pseudospin Liouville
//! space; a Wiseman–Milburn feedback loop rotates each electron detected
//! entering the left dot toward a target state, and the stored work is
//! measured by the ergotropy of the pseudospin. An ohmic phonon bath
//! provides the self-discharge channel.
//!
//! Units: ħ = k_B = 1, all rates and energies relative to the reference
//! drain rate Γ_R, times in 1/Γ_R.
//!
//! Module map:
//! * [`bloch`], [`hamiltonian`], [`spectral`] — qubit states, the two-level
//!   Hamiltonian, closed-form 2×2 eigendecompositions.
//! * [`ergotropy`] — spectral and closed-form ergotropy, passive states,
//!   maxima, Bloch-sphere surfaces.
//! * [`liouville`] — the transport generator 𝓛₀ + 𝓙_L^(C) + 𝓙_R.
//! * [`feedback`] — target states, control angles, effective-Hamiltonian
//!   spectrum, stationary states.
//! * [`phonon`] — ohmic spectral density and the dephasing rates.
//! * [`expm`], [`integrator`] — matrix exponential and the RK4 integrator
//!   certified against it.
//! * [`protocol`], [`sweep`] — staged charging/storage protocols and
//!   self-discharge parameter sweeps.
//! * [`config`], [`report`], [`cli`] — TOML configuration, CSV/JSON/gnuplot
//!   output, command-line front end.
//!
//! The examples directory holds one runnable program per capability; start
//! with `ergotropy_basics` and `charging_protocol`.

pub mod bloch;
pub mod cli;
pub mod config;
pub mod ergotropy;
pub mod error;
pub mod expm;
pub mod feedback;
pub mod hamiltonian;
pub mod integrator;
pub mod liouville;
pub mod phonon;
pub mod protocol;
pub mod report;
pub mod spectral;
pub mod sweep;

pub use bloch::BlochState;
pub use error::{Error, Result};
pub use hamiltonian::QubitHamiltonian;
pub use liouville::{Liouvillian, LiouvilleVector, ReservoirRates};
