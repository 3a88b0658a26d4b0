//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A state, Hamiltonian, or rate failed validation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A parameter point where a closed-form expression is singular or
    /// leaves its domain (e.g. ε = 0 in the target-state coordinates, or a
    /// negative radicand under a square root).
    #[error("unsupported parameter point: {0}")]
    Domain(String),

    /// The requested feedback target lies on the unreachable half of the
    /// Bloch sphere (⟨σ_y⟩ < 0).
    #[error("unreachable target state: {0}")]
    UnreachableTarget(String),

    /// The generator has more than one stationary direction and no initial
    /// condition was supplied to project.
    #[error("steady state is not unique: {0}")]
    NonUniqueSteadyState(String),

    /// The integrator detected loss of positivity (step size too large for
    /// the requested generator).
    #[error("positivity lost at t = {t}: {detail}")]
    PositivityLoss { t: f64, detail: String },

    /// Configuration file could not be parsed or failed validation.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 1 for configuration problems,
    /// 2 for numerical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Config(_) | Error::InvalidInput(_) | Error::Io(_) => 1,
            Error::Domain(_)
            | Error::UnreachableTarget(_)
            | Error::NonUniqueSteadyState(_)
            | Error::PositivityLoss { .. } => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
