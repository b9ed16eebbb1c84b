use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("half-intensity angle {0} rad is outside (0, pi/2)")]
    HalfAngleOutOfRange(f64),

    #[error("degenerate vector: zero length or non-finite components")]
    DegenerateVector,

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("SINR must be non-negative, got {0}")]
    NegativeSinr(f64),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("reflection coefficient {value} at index {index} is outside [0, 1]")]
    CoefficientOutOfRange { index: usize, value: f64 },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("{n} RIS elements exceed the enumeration cap of {cap}; use the SPCA solver instead")]
    TooManyElements { n: usize, cap: usize },

    #[error("config key `{key}`: {message}")]
    ConfigKey { key: String, message: String },

    #[error("config parse error: {0}")]
    ConfigParse(#[from] toml::de::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn key(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::ConfigKey {
            key: key.into(),
            message: message.into(),
        }
    }
}
