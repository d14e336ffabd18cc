//! Generator sets of the atlas ideals: the 2×2 minors `M`, the explicit basis
//! `G_M`, its bumped-down form `G_Aqp`, focal families, sums over world points,
//! saturation factor lists, and the triple-product constraint.

mod families;
mod saturation;
mod triple;

pub use families::{
    deg6_sign_mutant, focal_ideal_generators, gaqp_generators, gaqp_generators_at, gm_generators,
    gm_generators_at, minors2_generators, sum_extended, Family, GenTag, GeneratorSet,
};
pub use saturation::{minor_factor, saturation_factors, MinorFactor, SaturationSpec};
pub use triple::{
    eval_g, g_symbolic, triple_product_constraint, world_fixing_h, world_fixing_h_symbolic,
    GEvaluator,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("the block A[:, 1:3] is singular")]
    SingularBlock,
}
