//! Verification suites for the ideal-theoretic claims, built on exact evaluation, Buchberger
//! certificates and exact Jacobian ranks.

pub mod census;
pub mod dimension;
pub mod groebner_suite;
pub mod orders;
pub mod report;
pub mod sample;
pub mod saturation_example;
pub mod vanishing;
pub mod witness;

pub use census::{bump_suite, census_suite, focal_count_suite, generator_census_suite};
pub use dimension::{dimension_grid, dimension_suite, ranks_at, DimensionError, Ranks, Variety};
pub use groebner_suite::{groebner_suite, hilbert_suite, quotient_suite};
pub use orders::{sampled_plain_order, sampled_product_order, twelve_orders, Block, BlockOrder};
pub use report::{timed, Check, Status, SuiteReport, Verdict};
pub use sample::{
    correspondence_at, perturbed_point, sample_correspondence, sample_correspondence_with,
};
pub use saturation_example::saturation_example_suite;
pub use vanishing::{
    vanishing_check, vanishing_grid, vanishing_grid_suite, vanishing_shapes_suite, vanishing_suite,
    VanishingTarget,
};
pub use witness::{
    division_suite, focals23_m4, nonmembership_witness_search, witness_suite, WitnessOutcome,
    WitnessStrategy, WITNESS_BUDGET,
};
