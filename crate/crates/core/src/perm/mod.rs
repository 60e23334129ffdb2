//! Permutation groups, stabilizers, orbit counting and support configurations.

mod diagnostics;
mod family;
mod functions;
mod group;
mod permutation;
mod support;

pub use diagnostics::{family_diagnostics, FamilyReport};
pub use family::{factorial, CustomLevel, FactorialProduct, GroupFamily};
pub use functions::{
    act_function, cmp_functions, count_functions, function_orbit, function_orbit_reps, FunctionOrbits, SeedLabel,
    FUNCTION_BUDGET,
};
pub use group::{symmetric_generators, PermGroup, RestrictionGroup, StabilizerData, ELEMENT_BUDGET};
pub use permutation::Permutation;
pub use support::{placed_support_orbits, PlacedConfiguration, SupportConfiguration, CONFIGURATION_BUDGET};
