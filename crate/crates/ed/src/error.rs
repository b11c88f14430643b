use thiserror::Error;

pub type Result<T> = std::result::Result<T, EdError>;

#[derive(Debug, Error)]
pub enum EdError {
    #[error("{sites} sites outside the supported range {min}..={max}")]
    SiteCount {
        sites: usize,
        min: usize,
        max: usize,
    },

    #[error("no sector with {n_up} up spins on {sites} sites")]
    Sector { sites: usize, n_up: usize },

    #[error("vector of length {got} does not match basis dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("({i}, {j}) is not a site pair i < j < {sites}")]
    InvalidPair { i: usize, j: usize, sites: usize },

    #[error("the free-fermion evaluator handles open chains only")]
    PeriodicFreeFermion,

    #[error(
        "Lanczos stopped after {iterations} iterations with residual {residual:e}; \
         Ritz history {ritz_history:?}"
    )]
    NotConverged {
        iterations: usize,
        residual: f64,
        ritz_history: Vec<f64>,
    },

    #[error(transparent)]
    Core(#[from] xychain_core::Error),

    #[error("state file: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed state file: {0}")]
    Format(String),
}
