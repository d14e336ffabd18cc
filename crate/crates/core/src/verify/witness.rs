//! Evaluation witnesses for non-membership: a point where every generator
//! vanishes but the target does not certifies that the target lies outside
//! the radical of the generated ideal.

use std::time::Duration;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::report::{timed, Check, SuiteReport};
use super::vanishing::{sub_seed, Evaluator};
use crate::atlas_model::AtlasShape;
use crate::focal::{enumerate_focals, focal_det};
use crate::idealgen::{focal_ideal_generators, sum_extended, Family, GEvaluator, GeneratorSet};
use crate::linalg::{self, IMat};
use crate::polyring::{
    format_poly, groebner_basis, normal_form, poly_det, verify_groebner, IntEvaluator, Limits,
    Polynomial, TermOrder,
};
use crate::specialize::{random_camera, random_int, random_invertible, random_matrix};

/// Where candidate points are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessStrategy {
    /// Every camera `U_i V_i` of rank two and every image point in its range.
    RankTwoCameras,
    /// Cameras 1 and 2 share a center; image points are random.
    CoincidentCenters,
    /// All coordinates random.
    Random,
}

#[derive(Clone, Debug, PartialEq)]
pub enum WitnessOutcome {
    /// Universe point and the target value there.
    Witness {
        point: Vec<BigInt>,
        value: BigInt,
        trials: usize,
    },
    NotFound {
        trials: usize,
    },
}

/// Default trial budget for witness searches.
pub const WITNESS_BUDGET: usize = 10_000;

fn candidate<R: Rng>(shape: AtlasShape, strategy: WitnessStrategy, rng: &mut R) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = (0..shape.nvars()).map(|_| random_int(rng)).collect();
    let set_camera = |v: &mut Vec<BigInt>, i: usize, a: &IMat| {
        for r in 1..=3 {
            for c in 1..=4 {
                v[shape.a(i, r, c) as usize] = a[r - 1][c - 1].clone();
            }
        }
    };
    match strategy {
        WitnessStrategy::Random => {}
        WitnessStrategy::RankTwoCameras => {
            for i in 1..=shape.m {
                let u = random_matrix(rng, 3, 2);
                let a = linalg::mat_mul(&u, &random_matrix(rng, 2, 4));
                set_camera(&mut v, i, &a);
                for j in 1..=shape.n {
                    let y: Vec<BigInt> = (0..2).map(|_| random_int(rng)).collect();
                    let p = linalg::mat_vec(&u, &y);
                    for k in 1..=3 {
                        v[shape.p(i, j, k) as usize] = p[k - 1].clone();
                    }
                }
            }
        }
        WitnessStrategy::CoincidentCenters => {
            let a1 = random_camera(rng).matrix();
            let a2 = linalg::mat_mul(&random_invertible(rng, 3), &a1);
            set_camera(&mut v, 1, &a1);
            if shape.m >= 2 {
                set_camera(&mut v, 2, &a2);
            }
        }
    }
    v
}

/// Searches `budget` seeded candidates for a point where all `gens` vanish
/// and `target` does not.
pub fn nonmembership_witness_search(
    target: &Evaluator,
    gens: &GeneratorSet,
    strategy: WitnessStrategy,
    budget: usize,
    seed: u64,
) -> WitnessOutcome {
    let evals: Vec<IntEvaluator> = gens.polys.iter().map(IntEvaluator::new).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 1..=budget {
        let pt = candidate(gens.shape, strategy, &mut rng);
        if evals.iter().all(|e| e.eval_big(&pt).is_zero()) {
            let value = target.eval(&pt);
            if !value.is_zero() {
                return WitnessOutcome::Witness {
                    point: pt,
                    value,
                    trials: t,
                };
            }
        }
    }
    WitnessOutcome::NotFound { trials: budget }
}

/// The point as a map from variable names to values.
pub fn witness_json(shape: AtlasShape, point: &[BigInt]) -> Value {
    let map: serde_json::Map<String, Value> = point
        .iter()
        .enumerate()
        .map(|(v, x)| (shape.name(v as _), Value::String(x.to_string())))
        .collect();
    Value::Object(map)
}

fn outcome_check(id: &str, shape: AtlasShape, out: WitnessOutcome, seed: u64) -> Check {
    match out {
        WitnessOutcome::Witness {
            point,
            value,
            trials,
        } => {
            let detail = format!(
                "witness found after {trials} trials; target value {value}; witness {}",
                witness_json(shape, &point)
            );
            Check::pass(id, detail)
        }
        WitnessOutcome::NotFound { trials } => {
            Check::inconclusive(id, format!("{trials} trials"), "no witness within budget")
        }
    }
    .with_seed(seed)
}

/// 2- and 3-focals of `(4, 1)`; the 4-focals are dropped by degree.
pub fn focals23_m4() -> GeneratorSet {
    let shape = AtlasShape::new(4, 1);
    let all = focal_ideal_generators(shape, &Family::Focals234);
    let (tags, polys) = all
        .tags
        .into_iter()
        .zip(all.polys)
        .filter(|(_, p)| p.total_degree().unwrap_or(0) < 8)
        .unzip();
    GeneratorSet {
        label: all.label,
        shape,
        polys,
        tags,
    }
}

/// The first 4-focal at `(4, 1)`.
pub fn first_four_focal() -> Polynomial {
    let shape = AtlasShape::new(4, 1);
    focal_det(&enumerate_focals(shape, 4, 1)[0], shape)
        .expect("fits")
        .value
}

/// Witness searches: a 4-focal outside the 2-, 3-focal ideal at `m = 4`, a
/// 2-focal that is a member (no witness may exist), and `g(A, p)` outside
/// the sum of the per-point focal ideals at `(2, 3)`.
pub fn witness_suite(budget: usize, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("witness", seed);
    let f23 = focals23_m4();
    let s4 = f23.shape;
    let s = sub_seed(seed, 1);
    r.push(timed(|| {
        let target = Evaluator::Poly(IntEvaluator::new(&first_four_focal()));
        let out =
            nonmembership_witness_search(&target, &f23, WitnessStrategy::RankTwoCameras, budget, s);
        outcome_check(
            "4-focal not in <2-,3-focals> m=4 (rank-two cameras)",
            s4,
            out,
            s,
        )
    }));
    let s = sub_seed(seed, 2);
    r.push(timed(|| {
        let id = "2-focal has no witness against <2-,3-focals> m=4";
        let target = Evaluator::Poly(IntEvaluator::new(&f23.polys[0]));
        let trials = budget.min(500);
        let out =
            nonmembership_witness_search(&target, &f23, WitnessStrategy::RankTwoCameras, trials, s);
        match out {
            WitnessOutcome::NotFound { trials } => {
                Check::pass(id, format!("none in {trials} trials (member)"))
            }
            WitnessOutcome::Witness { point, .. } => Check::fail(
                id,
                witness_json(s4, &point),
                "a generator cannot have a non-membership witness",
            ),
        }
        .with_seed(s)
    }));
    let s = sub_seed(seed, 3);
    r.push(timed(|| {
        let shape = AtlasShape::new(2, 3);
        let gens = sum_extended(shape, &Family::Focals234);
        let target = Evaluator::G(Box::new(GEvaluator::new(shape).expect("shape (2,3)")));
        let out = nonmembership_witness_search(
            &target,
            &gens,
            WitnessStrategy::CoincidentCenters,
            budget,
            s,
        );
        outcome_check(
            "g(A,p) not in sum of per-point focal ideals (2,3) (coincident centers)",
            shape,
            out,
            s,
        )
    }));
    r
}

/// Division route at `m = 4`: a reduced Gröbner basis of the 2- and
/// 3-focals is computed and certified; a 4-focal has a nonzero remainder,
/// while its multiples by the 3×3 minors of `A_1` reduce to zero.
pub fn division_suite(limits: &Limits) -> SuiteReport {
    let mut r = SuiteReport::new("witness division", 0);
    let f23 = focals23_m4();
    let shape = f23.shape;
    let ord = TermOrder::canonical(shape.nvars());
    let gb = match groebner_basis(&f23.polys, &ord, limits) {
        Ok(g) => g,
        Err(e) => {
            r.push(Check::inconclusive(
                "Groebner basis of <2-,3-focals> m=4",
                e,
                "completion budget",
            ));
            return r;
        }
    };
    let cert = verify_groebner(&gb, &ord, limits);
    r.push(super::groebner_suite::certificate_check(
        "Groebner basis of <2-,3-focals> m=4",
        &cert,
        shape,
    ));
    if !cert.is_verified() {
        return r;
    }
    let f = first_four_focal();
    r.push(timed(|| match normal_form(&f, &gb, &ord, limits) {
        Err(e) => Check::inconclusive("4-focal remainder nonzero", e, "normal form budget"),
        Ok(rem) => Check::from_bool(
            "4-focal remainder nonzero",
            !rem.is_zero(),
            || json!({ "remainder": "0" }),
            format!("remainder has {} terms", rem.len()),
        ),
    }));
    for cols in [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]] {
        let id = format!("det A_1[:, {cols:?}] * 4-focal reduces to 0");
        r.push(timed(|| {
            let m: Vec<Vec<Polynomial>> = (1..=3)
                .map(|row| {
                    cols.iter()
                        .map(|&c| shape.var_poly(shape.a(1, row, c)))
                        .collect()
                })
                .collect();
            let d = poly_det(&m, shape.nvars());
            match normal_form(&d.mul(&f), &gb, &ord, limits) {
                Err(e) => Check::inconclusive(id.clone(), e, "normal form budget"),
                Ok(rem) => Check::from_bool(
                    id.clone(),
                    rem.is_zero(),
                    || json!({ "remainder": format_poly(&rem, &shape.universe()) }),
                    "in the ideal",
                ),
            }
        }));
    }
    r
}

/// Limits used by [`division_suite`] when none are given.
pub fn division_limits() -> Limits {
    Limits {
        wallclock: Some(Duration::from_secs(1800)),
        ..Limits::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn focals23_census() {
        let f = focals23_m4();
        let n4 = enumerate_focals(f.shape, 4, 1).len();
        assert!(n4 > 0);
        assert_eq!(
            f.len() + n4,
            focal_ideal_generators(f.shape, &Family::Focals234).len()
        );
        assert_eq!(f.census().keys().copied().collect::<Vec<_>>(), vec![6, 7]);
    }

    #[test]
    fn witness_searches() {
        let r = witness_suite(200, 9);
        assert!(r.all_pass(), "{}", r.to_text());
    }

    #[test]
    fn random_points_rarely_satisfy_focals() {
        let f23 = focals23_m4();
        let target = Evaluator::Poly(IntEvaluator::new(&first_four_focal()));
        let out = nonmembership_witness_search(&target, &f23, WitnessStrategy::Random, 20, 1);
        assert_eq!(out, WitnessOutcome::NotFound { trials: 20 });
    }
}
