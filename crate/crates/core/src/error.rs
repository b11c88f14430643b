use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("pair distance must be at least 1")]
    ZeroDistance,

    #[error("correlator table stops at f_{have}, distance {need} needs f_{need}")]
    TableTooShort { need: usize, have: usize },

    #[error("density matrix invariant violated: {0}")]
    Invariant(String),

    #[error(
        "no entanglement onset for m = {distance} on [0, {upper}] \
         ({points} fields scanned, largest witness {max_witness:e})"
    )]
    NoOnset {
        distance: usize,
        upper: f64,
        points: usize,
        max_witness: f64,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
