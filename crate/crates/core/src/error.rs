use thiserror::Error;

/// Everything that can go wrong in the simulator.
///
/// Variants carry the values that violated a precondition so callers can
/// report them without re-deriving the check.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid bounds: k_min = {k_min}, k_max = {k_max}, n = {n}")]
    InvalidBounds { k_min: f64, k_max: f64, n: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("state is not normalized (norm = {norm:.3e})")]
    NotNormalized { norm: f64 },

    #[error("grid truncates the Gaussian: norm deficit {deficit:.3e} exceeds 1e-6")]
    Truncation { deficit: f64 },

    #[error("all Rabi frequencies vanish; the mixing angle is undefined")]
    ZeroField,

    #[error("finite-difference step too large: step * kappa = {scaled:.3e} > 1e-4")]
    StepTooLarge { scaled: f64 },

    #[error("closed form only holds for c_theta = 1 (got {c_theta})")]
    UnsupportedRegime { c_theta: f64 },

    #[error("grid does not resolve the momentum-space phase: {fraction:.3e} of the norm lies beyond |x| = {edge:.1} (allowed 1e-10)")]
    Resolution { fraction: f64, edge: f64 },

    #[error("centre of mass integral has imaginary residual {residual:.3e}")]
    ImaginaryResidual { residual: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
