//! Two cameras and two world points: the two extended 2-focals generate an
//! ideal that no 4×4 minor of the stacked cameras can shrink.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::dimension::{ranks_at, Variety};
use super::report::{timed, Check, SuiteReport};
use super::vanishing::{sub_seed, vanishing_check, VanishingTarget};
use super::witness::witness_json;
use crate::atlas_model::AtlasShape;
use crate::idealgen::{
    minor_factor, saturation_factors, sum_extended, Family, MinorFactor, SaturationSpec,
};
use crate::polyring::{format_poly, normal_form, IntEvaluator, Limits, TermOrder};
use crate::specialize::random_int;

/// Candidate points tried per minor.
pub const POINT_BUDGET: usize = 200;

/// A random point on which `sigma` vanishes: the last selected camera row is
/// an integer combination of the other three selected rows.
fn point_on_minor<R: Rng>(shape: AtlasShape, sigma: &MinorFactor, rng: &mut R) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = (0..shape.nvars()).map(|_| random_int(rng)).collect();
    let row_vars = |col: usize| -> Vec<usize> {
        (1..=4)
            .map(|c| shape.a(col / 3 + 1, col % 3 + 1, c) as usize)
            .collect()
    };
    let (last, rest) = sigma.cols.split_last().expect("nonempty minor");
    let coeffs: Vec<BigInt> = rest.iter().map(|_| random_int(rng)).collect();
    for (c, dst) in row_vars(*last).into_iter().enumerate() {
        v[dst] = rest
            .iter()
            .zip(&coeffs)
            .map(|(&col, k)| k * &v[row_vars(col)[c]])
            .sum();
    }
    v
}

pub fn saturation_example_suite(trials: usize, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("saturation example", seed);
    let shape = AtlasShape::new(2, 2);
    let focals = sum_extended(shape, &Family::Focals234);
    let s = sub_seed(seed, 1);
    r.push(timed(|| {
        let mut c = vanishing_check(&VanishingTarget::from_set(&focals), trials, s);
        c.id = format!(
            "(i) both extended 2-focals vanish ({} generators)",
            focals.len()
        );
        c
    }));
    let ord = TermOrder::canonical(shape.nvars());
    let evals: Vec<IntEvaluator> = focals.polys.iter().map(IntEvaluator::new).collect();
    let limits = Limits::default();
    for (k, sigma) in saturation_factors(SaturationSpec::S, 2)
        .into_iter()
        .enumerate()
    {
        let sp = minor_factor(shape, &sigma);
        let cols: Vec<String> = sigma
            .cols
            .iter()
            .map(|c| format!("A{}[{}]", c / 3 + 1, c % 3 + 1))
            .collect();
        let name = cols.join(",");
        r.push(timed(|| {
            let id = format!("(ii) minor [{name}] divides no 2-focal");
            let rems: Result<Vec<_>, String> = focals
                .polys
                .iter()
                .map(|f| normal_form(f, std::slice::from_ref(&sp), &ord, &limits))
                .collect();
            match rems {
                Err(e) => Check::inconclusive(id, e, "normal form budget"),
                Ok(rems) => match rems.iter().position(|x| x.is_zero()) {
                    None => Check::pass(id, "all remainders nonzero"),
                    Some(i) => Check::fail(
                        id,
                        json!({ "focal": i, "minor": format_poly(&sp, &shape.universe()) }),
                        "minor divides a focal",
                    ),
                },
            }
        }));
        let s = sub_seed(seed, 100 + k);
        r.push(
            timed(|| {
                let id = format!("(ii) point with minor [{name}] = 0 and both 2-focals nonzero");
                let se = IntEvaluator::new(&sp);
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                for t in 1..=POINT_BUDGET {
                    let pt = point_on_minor(shape, &sigma, &mut rng);
                    debug_assert!(se.eval_big(&pt).is_zero());
                    if se.eval_big(&pt).is_zero()
                        && evals.iter().all(|e| !e.eval_big(&pt).is_zero())
                    {
                        return Check::pass(
                            id,
                            format!(
                                "found after {t} candidates; point {}",
                                witness_json(shape, &pt)
                            ),
                        );
                    }
                }
                Check::inconclusive(id, format!("{POINT_BUDGET} candidates"), "no point found")
            })
            .with_seed(s),
        );
    }
    let s = sub_seed(seed, 2);
    r.push(timed(|| {
        let id = "(iii) affine cone of Γ_Ap (2,2) has dimension 34";
        match ranks_at(Variety::Ap, shape, s) {
            Err(e) => Check::inconclusive(id, e.to_string(), "no valid chart"),
            Ok(x) => Check::from_bool(
                id,
                x.cone == 34 && x.agree(),
                || json!(x),
                format!(
                    "cone rank {}; projective {} (charts {} {})",
                    x.cone,
                    x.cone_dim(),
                    x.charts[0],
                    x.charts[1]
                ),
            ),
        }
        .with_seed(s)
    }));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_passes() {
        let r = saturation_example_suite(20, 3);
        assert_eq!(r.checks.len(), 1 + 2 * 15 + 1);
        assert!(r.all_pass(), "{}", r.to_text());
    }

    #[test]
    fn targeted_points_kill_the_minor() {
        let shape = AtlasShape::new(2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for sigma in saturation_factors(SaturationSpec::S, 2) {
            let pt = point_on_minor(shape, &sigma, &mut rng);
            assert!(IntEvaluator::new(&minor_factor(shape, &sigma))
                .eval_big(&pt)
                .is_zero());
        }
    }
}
