use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("enumeration cap exceeded: n + m = {total} > {cap}; use the recursive path")]
    EnumerationCap { total: u32, cap: u32 },

    #[error("coefficient {0} is not real")]
    NonRealCoefficient(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("hbar mismatch: factor built with {factor}, parameters require {expected}")]
    HbarMismatch { factor: f64, expected: f64 },

    #[error("wrong representation kind: {0}")]
    WrongKind(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("incompatible grids: momentum extent must be {required_lp} (got {actual_lp})")]
    IncompatibleGrids { required_lp: f64, actual_lp: f64 },

    #[error("normalization violated: {0}")]
    Normalization(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("operator is not Hermitian: {0}")]
    NotHermitian(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("config error on line {line} (key `{key}`): {message}")]
    Config {
        line: usize,
        key: String,
        message: String,
    },

    #[error("container format error: {0}")]
    Container(String),

    #[error("at h = {h}: {source}")]
    AtH {
        h: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn at_h(self, h: f64) -> Self {
        Error::AtH {
            h,
            source: Box::new(self),
        }
    }
}
