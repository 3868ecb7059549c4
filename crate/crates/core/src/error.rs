use thiserror::Error;

/// Errors raised by the geometry, group and statistics routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two inputs that must differ coincide (e.g. a geodesic between equal points).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// An isometry pushed a point onto or beyond the boundary sphere.
    #[error("numeric drift: image norm {norm} left the open ball")]
    Drift { norm: f64 },

    /// Adaptive quadrature or an iterative solver failed to converge.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// An integer parameter is outside its supported range.
    #[error("{name} = {value} is out of range [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    /// The three λ-lengths of a face violate a strict triangle inequality.
    #[error("triangle inequality violated on face {face}: {inequality}")]
    TriangleInequality { face: String, inequality: String },

    #[error("vertices {0} and {1} are not adjacent on the octahedron")]
    NotAdjacent(String, String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
