use thiserror::Error;

/// Everything that can go wrong between building a state and writing a report.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SyncError {
    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("{requested} qubits exceed the statevector limit of {limit}; use the closed-form or marginal sampler instead")]
    Capacity { requested: usize, limit: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("{count} distribution sequences exceed the enumeration cap of {cap}")]
    EnumerationCap { count: u64, cap: u64 },

    #[error("round-robin schedule needs k to be a positive multiple of {multiple}, got {k}")]
    Indivisible { k: usize, multiple: usize },

    #[error("coverage: {0}")]
    Coverage(String),

    #[error("party {party} out of range for {n} parties")]
    UnknownParty { party: usize, n: usize },

    #[error("inconsistent qubit budget: {0}")]
    QubitBudget(String),

    #[error("malformed log record on line {line}: {reason}")]
    MalformedRecord { line: usize, reason: String },

    #[error("config line {line}: {reason}")]
    ConfigParse { line: usize, reason: String },

    #[error("config key `{key}`: {reason}")]
    ConfigValue { key: String, reason: String },

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for SyncError {
    fn from(err: std::io::Error) -> Self {
        SyncError::Io(err.to_string())
    }
}

impl From<csv::Error> for SyncError {
    fn from(err: csv::Error) -> Self {
        SyncError::Io(err.to_string())
    }
}

impl From<serde_json::Error> for SyncError {
    fn from(err: serde_json::Error) -> Self {
        SyncError::Io(err.to_string())
    }
}

impl SyncError {
    /// True for errors caused by the user's configuration rather than by the run itself.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            SyncError::ConfigParse { .. } | SyncError::ConfigValue { .. } | SyncError::Indivisible { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, SyncError>;
