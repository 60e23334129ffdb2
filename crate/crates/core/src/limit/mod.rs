//! Large-N limits: convergence of structure constants, the limit algebra and
//! its free-field structure.

mod convergence;
mod direct;
mod factorize;
mod free;
mod orbifold;
mod rescaled;
mod table;
mod wick;

pub use convergence::{analyze, fit_rate, ConvergenceReport, RateFit, Sample, Status, DEFAULT_TOLERANCE};
pub use direct::{direct_system_check, DirectSystemReport, WeightSaturation};
pub use factorize::{
    commutator_check, factorization_check, orbit_diagnostic, single_trace_generators, CommutatorWitness,
    FactorizationVerdict, OrbitDiagnostic,
};
pub use free::{
    commutator_from_b, fk_character, fk_commutator, free_character, free_decomposition, series_product,
    FreeDecomposition,
};
pub use orbifold::{single_trace_check, LimitBasis, LimitReport, OrbifoldLimit, SingleTraceCheck, TermReport, WeightBasis};
pub use rescaled::{
    default_levels, evaluate, exact_constant_term, interpolate, rational_lambda, rescaled_virasoro_reports, triples,
};
pub use table::{limit_borcherds_check, required_entries, BorcherdsCheck, LimitTable};
pub use wick::{
    compare_with_modes, double_factorial, mode_correlator, mode_tuples, perfect_matchings, wick_correlator, Insertion,
    Pairing, PairingSum,
};
