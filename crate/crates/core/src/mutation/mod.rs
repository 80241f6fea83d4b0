//! Two-term tilting complexes at a vertex and the algebra mutations they
//! define.

mod complex;
mod endo;
mod mutate;
mod tilting;

pub use complex::{
    compose_maps, hom_homotopy, identity_map, ChainMap, GradedMap, HomotopyHomSpace, ProjComplex, TwoTermComplex,
};
pub use endo::{
    endo_of_tilting, endomorphism_algebra, module_endomorphism_algebra, tilting_summands, transported_cartan,
};
pub use mutate::{
    check_extended_mutation, mutate, mutation_report, predicted_cartan, ExtendedMutationCheck, MutationReport,
};
pub use tilting::{
    approximation, bb_defined, bb_module, tilting_status, BbModule, BbValidation, TiltingStatus, Verdict,
};
