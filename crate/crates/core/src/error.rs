use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("genus {genus} is outside the supported range 1..={max}")]
    GenusOutOfRange { genus: usize, max: usize },

    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },

    #[error("split index k = {k} must satisfy 1 <= k < g = {genus}")]
    SplitOutOfRange { genus: usize, k: usize },

    #[error("cannot parse characteristic {0:?}")]
    ParseCharacteristic(String),

    #[error("tuple entry {index} is an odd characteristic")]
    OddEntry { index: usize },

    #[error("tuple is empty")]
    EmptyTuple,

    #[error("tuple lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("imaginary part is not positive definite (lambda_min = {lambda_min:e})")]
    NotPositiveDefinite { lambda_min: f64 },

    #[error("matrix is not symplectic")]
    NotSymplectic,

    #[error("truncation radius would exceed cap {cap}")]
    RadiusCapExceeded { cap: usize },

    #[error("|Im z| = {norm} exceeds the cap {cap}")]
    ImaginaryShiftTooLarge { norm: f64, cap: f64 },

    #[error("target accuracy must be positive and finite, got {0}")]
    InvalidTarget(f64),

    #[error("C tau + D is near-singular (|det| = {det_abs:e})")]
    NearSingular { det_abs: f64 },

    #[error("orbit size exceeds cap {cap}")]
    OrbitCapExceeded { cap: usize },

    #[error("search exceeded node budget {budget}")]
    BudgetExceeded { budget: u64 },

    #[error("word length must be at least 1")]
    EmptyWord,

    #[error("inconsistent flags: {0}")]
    InconsistentFlags(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True for the errors that come from hitting a numeric or search cap
    /// rather than from bad input.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(
            self,
            Error::RadiusCapExceeded { .. }
                | Error::OrbitCapExceeded { .. }
                | Error::BudgetExceeded { .. }
                | Error::NearSingular { .. }
        )
    }
}
