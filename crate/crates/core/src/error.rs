use thiserror::Error;

/// Every fallible operation in the crate reports through this type.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{what}: argument {value} outside its domain")]
    Domain { what: &'static str, value: f64 },

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid arc: {0}")]
    InvalidArc(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("recurrence denominator vanishes at n = {n}")]
    Resonance { n: usize },

    #[error("no convergence after {iterations} iterations (relative residual {residual:.3e})")]
    NonConvergence {
        iterations: usize,
        residual: f64,
        history: Vec<f64>,
    },

    #[error("point ({x}, {y}) lies {distance:.3e} from the arc, inside the quadrature margin {margin:.3e}")]
    TooClose {
        x: f64,
        y: f64,
        distance: f64,
        margin: f64,
    },

    #[error("quadrature did not reach tolerance (estimate {estimate:.3e})")]
    Quadrature { estimate: f64 },

    #[error("linear algebra failure: {0}")]
    LinearAlgebra(String),

    #[error("config key `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
