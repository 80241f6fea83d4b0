//! Modules over based algebras, minimal projective resolutions, and the
//! matrix invariants built from them.

mod invariants;
mod module;
mod resolution;

pub use invariants::{
    analyze, asymmetry, cartan, compare_euler_forms, coxeter_polynomial, coxeter_polynomial_of_cartan, euler,
    euler_of_cartan, extended_quiver, format_polynomial, s_matrix, AlgebraReport, FormComparison, SMode,
};
pub use module::{
    dual_algebra, injective, projective, projective_sum, radical_image, simple, standard_modules, ModuleMap, ModuleRep,
};
pub use resolution::{
    ext_dim, ext_dims, global_dimension, minimal_resolution, projective_coords, projective_cover, simple_resolutions,
    AlgMatrix, GlobalDimension, ProjectiveCover, Resolution, MAX_TERM_SUMMANDS,
};
