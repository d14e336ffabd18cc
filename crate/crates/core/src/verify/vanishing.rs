//! Exact vanishing of generator families on sampled correspondences, with an
//! off-variety guard against transcribing the zero polynomial.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::report::{timed, Check, SuiteReport};
use super::sample::{correspondence_at, perturbed_point, sample_correspondence};
use crate::atlas_model::{AtlasShape, CameraArrangement, Correspondence, ScalarCamera};
use crate::idealgen::{
    focal_ideal_generators, gaqp_generators, gm_generators, minors2_generators, sum_extended,
    triple_product_constraint, Family, GEvaluator, GeneratorSet,
};
use crate::polyring::IntEvaluator;
use crate::specialize::{random_arrangement, GenericityTarget, SpecializeError};

/// Fraction of perturbed samples that must leave the variety.
pub const OFF_VARIETY_PERCENT: usize = 95;
/// Extra perturbed samples allowed per trial to exercise every generator.
pub const GUARD_FACTOR: usize = 4;

pub enum Evaluator {
    Poly(IntEvaluator),
    /// `g(A, p)` evaluated through the world-fixing matrix.
    G(Box<GEvaluator>),
}

impl Evaluator {
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        match self {
            Evaluator::Poly(e) => e.eval_big(point),
            Evaluator::G(g) => g.eval(point),
        }
    }
}

/// How correspondences are drawn for a target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampler {
    /// Ultra-minor-generic cameras.
    Generic,
    /// First camera `(I 0)`, the others generic.
    FirstCameraStandard,
}

/// A list of polynomials, each to vanish on the correspondence.
pub struct VanishingTarget {
    pub label: String,
    pub shape: AtlasShape,
    pub names: Vec<String>,
    pub evals: Vec<Evaluator>,
    pub sampler: Sampler,
}

impl VanishingTarget {
    pub fn from_set(gens: &GeneratorSet) -> Self {
        VanishingTarget {
            label: format!("{} m={} n={}", gens.label, gens.shape.m, gens.shape.n),
            shape: gens.shape,
            names: gens.tags.iter().map(|t| format!("{t:?}")).collect(),
            evals: gens
                .polys
                .par_iter()
                .map(|p| Evaluator::Poly(IntEvaluator::new(p)))
                .collect(),
            sampler: Sampler::Generic,
        }
    }

    /// The triple-product constraint `f` at `(2,3)`; needs `A_1 = (I 0)`.
    pub fn triple_product() -> Self {
        let shape = AtlasShape::new(2, 3);
        let f = triple_product_constraint(shape, None).expect("shape (2,3)");
        VanishingTarget {
            label: "f m=2 n=3".into(),
            shape,
            names: vec!["f".into()],
            evals: vec![Evaluator::Poly(IntEvaluator::new(&f))],
            sampler: Sampler::FirstCameraStandard,
        }
    }

    /// `g(A, p)` at `(2,3)`.
    pub fn g() -> Self {
        let shape = AtlasShape::new(2, 3);
        VanishingTarget {
            label: "g m=2 n=3".into(),
            shape,
            names: vec!["g".into()],
            evals: vec![Evaluator::G(Box::new(
                GEvaluator::new(shape).expect("shape (2,3)"),
            ))],
            sampler: Sampler::Generic,
        }
    }
}

/// Seed of sample `t` derived from a suite seed.
pub fn sub_seed(seed: u64, t: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(t as u64)
}

fn draw(target: &VanishingTarget, seed: u64) -> Result<Correspondence, SpecializeError> {
    match target.sampler {
        Sampler::Generic => sample_correspondence(target.shape, seed),
        Sampler::FirstCameraStandard => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (arr, _) = random_arrangement(
                target.shape.m,
                rand::Rng::gen(&mut rng),
                GenericityTarget::DistinctCenters,
            )?;
            let mut cams = arr.cameras;
            cams[0] = ScalarCamera::standard();
            correspondence_at(&CameraArrangement::new(cams), target.shape.n, &mut rng)
        }
    }
}

struct Sample {
    seed: u64,
    corr: Correspondence,
    /// First generator not vanishing on the correspondence.
    on_failure: Option<(usize, BigInt)>,
    off_nonzero: Vec<bool>,
}

fn run_sample(target: &VanishingTarget, seed: u64, t: usize) -> Result<Sample, SpecializeError> {
    let corr = draw(target, seed)?;
    let pt = corr.int_point();
    let on_failure = target.evals.iter().enumerate().find_map(|(k, e)| {
        let v = e.eval(&pt);
        (!v.is_zero()).then_some((k, v))
    });
    let off = perturbed_point(&corr, t);
    let off_nonzero = target
        .evals
        .iter()
        .map(|e| !e.eval(&off).is_zero())
        .collect();
    Ok(Sample {
        seed,
        corr,
        on_failure,
        off_nonzero,
    })
}

/// Pass iff every polynomial vanishes on `trials` seeded correspondences, at
/// least 95% of the perturbed samples leave the variety, and every polynomial
/// is nonzero at some perturbed sample.
pub fn vanishing_check(target: &VanishingTarget, trials: usize, seed: u64) -> Check {
    let id = format!("vanishing {}", target.label);
    let count = target.evals.len();
    if count == 0 {
        return Check::pass(id, "empty family").with_seed(seed);
    }
    let samples: Result<Vec<Sample>, SpecializeError> = (0..trials)
        .into_par_iter()
        .map(|t| run_sample(target, sub_seed(seed, t), t))
        .collect();
    let samples = match samples {
        Ok(s) => s,
        Err(e) => return Check::inconclusive(id, e.to_string(), "sampling failed").with_seed(seed),
    };
    if let Some(s) = samples.iter().find(|s| s.on_failure.is_some()) {
        let (k, v) = s.on_failure.clone().expect("found");
        let witness = json!({
            "sample_seed": s.seed,
            "generator": k,
            "tag": target.names[k],
            "value": v.to_string(),
            "correspondence": serde_json::from_str::<Value>(&s.corr.to_json()).expect("json"),
        });
        return Check::fail(
            id,
            witness,
            format!("generator {k} does not vanish on a correspondence"),
        )
        .with_seed(seed);
    }
    let off = samples
        .iter()
        .filter(|s| s.off_nonzero.iter().any(|&b| b))
        .count();
    let need = (trials * OFF_VARIETY_PERCENT).div_ceil(100);
    if off < need {
        let witness = json!({ "perturbed_nonzero": off, "required": need, "trials": trials });
        return Check::fail(id, witness, "too few perturbed samples leave the variety")
            .with_seed(seed);
    }
    let mut seen = vec![false; count];
    for s in &samples {
        for (k, &b) in s.off_nonzero.iter().enumerate() {
            seen[k] |= b;
        }
    }
    let mut t = trials;
    while seen.iter().any(|&b| !b) && t < GUARD_FACTOR * trials.max(1) {
        let s = match run_sample(target, sub_seed(seed, t), t) {
            Ok(s) => s,
            Err(e) => {
                return Check::inconclusive(id, e.to_string(), "sampling failed").with_seed(seed)
            }
        };
        for (k, &b) in s.off_nonzero.iter().enumerate() {
            seen[k] |= b;
        }
        t += 1;
    }
    if let Some(k) = seen.iter().position(|&b| !b) {
        let witness = json!({ "generator": k, "tag": target.names[k], "perturbed_samples": t });
        return Check::fail(
            id,
            witness,
            format!("generator {k} vanished at every perturbed sample"),
        )
        .with_seed(seed);
    }
    Check::pass(
        id,
        format!("{count} polynomials vanish on {trials} samples; {off}/{trials} perturbed samples nonzero; all exercised within {t} perturbations"),
    )
    .with_seed(seed)
}

pub fn vanishing_suite(gens: &GeneratorSet, trials: usize, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("vanishing", seed);
    r.push(timed(|| {
        vanishing_check(&VanishingTarget::from_set(gens), trials, seed)
    }));
    r
}

/// `(m, n)` with `1 ≤ m ≤ 4`, `1 ≤ n ≤ 2`, plus `(2, 3)`.
pub fn vanishing_grid() -> Vec<AtlasShape> {
    let mut g: Vec<AtlasShape> = (1..=4)
        .flat_map(|m| (1..=2).map(move |n| AtlasShape::new(m, n)))
        .collect();
    g.push(AtlasShape::new(2, 3));
    g
}

/// Minors2, Focals234, G_M and G_Aqp (summed over world points when `n > 1`).
pub fn families_at(shape: AtlasShape) -> Vec<GeneratorSet> {
    let mut v = vec![
        minors2_generators(shape),
        focal_ideal_generators(shape, &Family::Focals234),
    ];
    if shape.n == 1 {
        v.push(gm_generators(shape.m));
        v.push(gaqp_generators(shape.m));
    } else {
        v.push(sum_extended(shape, &Family::GM));
        v.push(sum_extended(shape, &Family::GAqp));
    }
    v.retain(|g| !g.is_empty());
    v
}

/// Every family over the grid, plus `f` and `g` at `(2,3)`; check seeds are
/// derived from `seed` by position.
pub fn vanishing_grid_suite(trials: usize, seed: u64) -> SuiteReport {
    vanishing_shapes_suite(&vanishing_grid(), true, trials, seed)
}

/// Every family at each of `shapes`, optionally followed by `f` and `g`.
pub fn vanishing_shapes_suite(
    shapes: &[AtlasShape],
    with_fg: bool,
    trials: usize,
    seed: u64,
) -> SuiteReport {
    let mut r = SuiteReport::new("vanishing", seed);
    let mut k = 0;
    for &shape in shapes {
        for gens in families_at(shape) {
            let s = sub_seed(seed, 1000 + k);
            r.push(timed(|| {
                vanishing_check(&VanishingTarget::from_set(&gens), trials, s)
            }));
            k += 1;
        }
    }
    if with_fg {
        for target in [VanishingTarget::triple_product(), VanishingTarget::g()] {
            let s = sub_seed(seed, 1000 + k);
            r.push(timed(|| vanishing_check(&target, trials, s)));
            k += 1;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idealgen::{deg6_sign_mutant, GenTag};
    use crate::polyring::Polynomial;
    use crate::verify::report::Status;

    #[test]
    fn focals_and_gm_vanish_at_small_scale() {
        let r = vanishing_suite(&gm_generators(2), 20, 5);
        assert!(r.all_pass(), "{}", r.to_text());
        let r = vanishing_suite(
            &focal_ideal_generators(AtlasShape::new(3, 1), &Family::Focals234),
            20,
            6,
        );
        assert!(r.all_pass(), "{}", r.to_text());
    }

    #[test]
    fn term_negated_focal_fails_with_witness() {
        let mut gens = focal_ideal_generators(AtlasShape::new(2, 1), &Family::Focals234);
        let f = &gens.polys[0];
        let mut terms = f.terms().to_vec();
        terms[0].0 = -terms[0].0.clone();
        gens.polys[0] = Polynomial::from_terms(f.nvars(), terms);
        let r = vanishing_suite(&gens, 10, 5);
        match &r.checks[0].status {
            Status::Fail { witness } => assert_eq!(witness["generator"], 0),
            other => panic!("mutant was not caught: {other:?}"),
        }
    }

    /// Every summand of a degree-6 element is a multiple of a 2×2 minor, so
    /// flipping its sign pattern keeps it on the variety; the Gröbner suite
    /// is the oracle that rejects it.
    #[test]
    fn degree_six_sign_mutant_still_vanishes() {
        let mut gens = gm_generators(2);
        let k = gens
            .tags
            .iter()
            .position(|t| matches!(t, GenTag::Deg6 { .. }))
            .unwrap();
        let GenTag::Deg6 { cams, rows, j } = gens.tags[k].clone() else {
            unreachable!()
        };
        gens.polys[k] = deg6_sign_mutant(gens.shape, j, cams, rows);
        assert!(vanishing_suite(&gens, 10, 5).all_pass());
    }

    #[test]
    fn zero_polynomial_is_caught_by_the_guard() {
        let mut gens = minors2_generators(AtlasShape::new(1, 1));
        gens.polys[0] = gens.shape.zero();
        let r = vanishing_suite(&gens, 10, 1);
        assert!(matches!(r.checks[0].status, Status::Fail { .. }));
    }

    #[test]
    fn triple_product_constraints_vanish() {
        assert!(vanishing_check(&VanishingTarget::triple_product(), 5, 2).is_pass());
        assert!(vanishing_check(&VanishingTarget::g(), 5, 3).is_pass());
    }
}
