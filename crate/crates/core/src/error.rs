use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("instance has no arms")]
    EmptyInstance,
    #[error("arm {arm}: theta ({theta}) must differ from its mean cost")]
    DegenerateArm { arm: usize, theta: f64 },
    #[error("arm {arm}: theta {theta} outside (0, 1)")]
    ThetaOutOfRange { arm: usize, theta: f64 },
    #[error("arm {arm}: mean cost {cost} must lie in (epsilon = {epsilon}, 1]")]
    CostBelowFloor { arm: usize, cost: f64, epsilon: f64 },
    #[error("arm {arm}: cost support [{lo}, {hi}] leaves [0, 1]")]
    BadSupport { arm: usize, lo: f64, hi: f64 },
    #[error("epsilon must be positive and finite, got {0}")]
    BadEpsilon(f64),
    #[error("alpha must be at least 1.5, got {0}")]
    BadAlpha(f64),
    #[error("index {index} out of range for {len} arms")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("arm {0} appears more than once in the list")]
    DuplicateIndex(usize),
    #[error("brute force limited to {max_k} arms, instance has {k}")]
    TooLarge { k: usize, max_k: usize },
    #[error("realization has {got} entries, instance has {expected} arms")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("KL divergence undefined for p = {p}, q = {q}")]
    KlSupport { p: f64, q: f64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("click log contains no records")]
    EmptyLog,
    #[error("item {0:?} has zero impressions")]
    ZeroImpressions(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by I/O or malformed input files rather than
    /// by parameter values that fail validation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::EmptyLog | Error::Json(_) | Error::Io(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
