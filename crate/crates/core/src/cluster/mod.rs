//! Good mutations between neighboring 2-CY-tilted algebras: the two-sided
//! BB test, its numerical counterpart on Cartan matrices, and exploration of
//! type-A mutation classes.

mod good;
mod graph;
mod type_a;

pub use good::{
    asymmetry_sign_test, bb_sign_test, good_mutation, AsymmetrySignTest, Corroboration, GoodMutationVerdict, SignSide,
    SignTestReport,
};
pub use graph::{good_graph, GoodEdge, GoodGraph, GoodNode};
pub use type_a::{linear_quiver, type_a_relations};
