use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("angular momentum j = {0} is not a non-negative half-integer")]
    InvalidSpin(f64),

    #[error("invalid parabolic label (n={n}, n1={n1}, n2={n2}, m={m}): {reason}")]
    InvalidLabel {
        n: u32,
        n1: u32,
        n2: u32,
        m: i32,
        reason: &'static str,
    },

    #[error("manifold index must be at least 1")]
    ZeroManifold,

    #[error("dimension mismatch: {op} got {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is not hermitian: max |M - M^dagger| = {max_asymmetry:e}")]
    NotHermitian { max_asymmetry: f64 },

    #[error("state is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("field strength must be {expected}, got {value}")]
    InvalidField { value: f64, expected: &'static str },

    #[error("Stark eigenvector {index} does not match any parabolic label")]
    Unlabeled { index: usize },

    #[error("invalid config field `{field}`: {reason}")]
    InvalidConfig { field: String, reason: String },

    #[error("time step {dt:e} s rotates the velocity by {angle:.3e} rad per step (limit 0.1); try dt = {suggested:e} s")]
    UnstableTimeStep { dt: f64, angle: f64, suggested: f64 },
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
