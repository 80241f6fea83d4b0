//! Mutations of finite-dimensional algebras: tilting complexes at a vertex,
//! BB-tilting modules, their endomorphism algebras, and the matrix invariants
//! (Cartan, Euler, asymmetry) that travel with them.
//!
//! Vertices are numbered from 1 throughout; matrix indices start at 0.

pub mod algebra;
pub mod cluster;
pub mod error;
pub mod homology;
pub mod matops;
pub mod mutation;
pub mod rational;

pub use error::{Error, Result};

/// The guide's chapters, compiled so their snippets run as doctests.
#[cfg(doctest)]
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    pub mod presentations {}
    #[doc = include_str!("../../../book/src/tilting.md")]
    pub mod tilting {}
    #[doc = include_str!("../../../book/src/mutation.md")]
    pub mod mutation {}
    #[doc = include_str!("../../../book/src/good.md")]
    pub mod good {}
    #[doc = include_str!("../../../book/src/exchange.md")]
    pub mod exchange {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}

/// A quiver vertex, numbered from 1.
pub type Vertex = usize;

/// Resource limits shared by the expensive computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Longest irreducible path tolerated before the algebra is declared
    /// infinite-dimensional.
    pub len_cap: usize,
    /// Maximum number of rewriting rules or basis words.
    pub size_cap: usize,
    /// Maximum length of a projective resolution.
    pub resolution_cap: usize,
    /// Maximum size of an enumerated mutation class.
    pub class_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            len_cap: 64,
            size_cap: 20000,
            resolution_cap: 32,
            class_cap: 10000,
        }
    }
}
