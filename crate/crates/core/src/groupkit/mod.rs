//! Finite groups as Cayley tables, with automorphisms, ordered identities
//! and the series needed to read off Fitting heights.

mod build;
mod group;
mod series;
mod verify;

pub use build::{build_elementary_abelian, build_semidirect, companion_matrix, ModMatrix, Semidirect};
pub use group::{
    evaluate_word, identity_holds_modulo, is_fixed_point_free, ordered_identity_holds, twist_is_bijective,
    Automorphism, Elem, FiniteGroup, Subgroup, DEFAULT_ORDER_CAP, FULL_CHECK_ORDER,
};
pub use series::{
    commutator_subgroup, derived_length, derived_series, derived_series_of, fitting_height, is_nilpotent,
    is_nilpotent_subgroup, is_solvable, is_solvable_subgroup, lower_central_series, lower_central_series_of,
    lower_fitting_series, nilpotent_residual, nilpotent_residual_of, subgroup_closure,
};
pub use verify::{default_identity, verify_theorem_main, Check, Outcome, VerificationVerdict};
