use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unsupported matrix dimension {0} (expected 2, 4 or 8)")]
    Dimension(usize),
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("density matrix trace is {0}, expected 1")]
    Trace(f64),
    #[error("invalid subsystem selection: {0}")]
    Subsystems(String),
    #[error("{what} did not converge (residual {residual:e})")]
    NoConvergence { what: &'static str, residual: f64 },
    #[error("non-finite input")]
    NonFinite,
    #[error("amplitudes not normalised (sum of squares {0})")]
    NotNormalized(f64),
    #[error("Acin coefficients invalid: {0}")]
    AcinParams(String),
    #[error("MSR angle {0} outside [0, pi/2]")]
    ThetaRange(f64),
    #[error("closed form requires phi = 0, got {0}")]
    NonzeroPhase(f64),
    #[error("direction is not a unit vector (norm {0})")]
    NotUnit(f64),
    #[error("measurement outcome has probability {0:e}; conditioned state undefined")]
    DegenerateOutcome(f64),
    #[error("invalid configuration: {0}")]
    Config(String),
}
