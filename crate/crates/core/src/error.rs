use thiserror::Error;

use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,

    #[error("matrix dimensions do not match: {0}")]
    Shape(String),

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("quiver has a loop at vertex {0}")]
    LoopAt(Vertex),

    #[error("quiver has a 2-cycle between vertices {0} and {1}")]
    TwoCycle(Vertex, Vertex),

    #[error("algebra not certified finite-dimensional: irreducible paths of length {len_cap} remain")]
    NotFiniteDimensional { len_cap: usize },

    #[error("rewriting exceeded the size cap of {size_cap} rules or basis words")]
    RuleCapExceeded { size_cap: usize },

    #[error("algebra is not basic elementary: {0}")]
    NonElementary(String),

    #[error("invalid based algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("matrix is singular over Q")]
    Singular,

    #[error("projective resolution did not terminate within {cap} steps")]
    ResolutionCap { cap: usize },

    #[error("global dimension is {found}, at most 2 required")]
    GlobalDimensionTooLarge { found: usize },

    #[error("{sign} mutation is not defined at vertex {vertex}")]
    NotDefined { vertex: Vertex, sign: String },

    #[error("postcondition failed: {0}")]
    Postcondition(String),

    #[error("mutation class exceeded {cap} members")]
    ClassCapExceeded { cap: usize },

    #[error("quiver is not mutation equivalent to type A: {0}")]
    NotTypeA(String),
}

impl Error {
    /// True for failures caused by a resource cap rather than invalid input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::NotFiniteDimensional { .. }
                | Error::RuleCapExceeded { .. }
                | Error::ResolutionCap { .. }
                | Error::ClassCapExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
