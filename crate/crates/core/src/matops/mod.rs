//! Exact matrices, quivers and their Fomin-Zelevinsky mutation.

mod iso;
mod matrix;
mod quiver;
mod text;

pub use iso::{canonical_key, mutation_class, mutation_class_strict, CanonicalKey, MutationClass};
pub use matrix::{extend_independent, span_dim, ColumnSolver, IntMatrix, RatMatrix};
pub use quiver::{fz_mutate, quiver_mutate, quiver_of_skew, reflection, skew_of_quiver, Arrow, Quiver, Sign};
pub use text::parse_matrix;

pub(crate) use quiver::star;
