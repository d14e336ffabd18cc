//! Exact counts of focals and of the degree census of `G_M` and `G_Aqp`, and
//! fuzzed bump round trips.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::report::{timed, Check, SuiteReport};
use crate::atlas_model::AtlasShape;
use crate::focal::{bump_down, bump_up, enumerate_focals, focal_det, FocalPolynomial};
use crate::idealgen::{gaqp_generators, gm_generators};

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// Closed-form focal counts for `k = 2, 3, 4`.
pub fn expected_focal_counts(m: usize) -> [usize; 3] {
    [binom(m, 2), 27 * binom(m, 3), 81 * binom(m, 4)]
}

/// Closed-form degree census of `G_M` (`with_q`) or `G_Aqp`; zero counts omitted.
pub fn expected_census(m: usize, with_q: bool) -> BTreeMap<u32, usize> {
    let (c2, c3, c4) = (binom(m, 2), binom(m, 3), binom(m, 4));
    let rows: [(u32, usize); 7] = if with_q {
        [
            (3, 3 * m),
            (4, m),
            (5, 9 * c2),
            (6, 6 * c2),
            (7, c2 + 27 * c3),
            (8, 27 * c3),
            (9, 81 * c4),
        ]
    } else {
        [
            (3, 3 * m),
            (4, m),
            (5, 9 * c2),
            (6, 7 * c2),
            (7, 54 * c3),
            (8, 81 * c4),
            (9, 0),
        ]
    };
    rows.into_iter().filter(|&(_, c)| c > 0).collect()
}

fn census_text(c: &BTreeMap<u32, usize>) -> String {
    c.iter()
        .map(|(d, n)| format!("{d}:{n}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Focal counts for `m = 2..=max_m` and generator censuses for `m = 1..=max_m`.
pub fn census_suite(max_m: usize) -> SuiteReport {
    let mut r = focal_count_suite(max_m);
    r.extend(generator_census_suite(max_m));
    r
}

/// Focal counts for `m = 2..=max_m`.
pub fn focal_count_suite(max_m: usize) -> SuiteReport {
    let mut r = SuiteReport::new("census", 0);
    for m in 2..=max_m {
        r.push(timed(|| {
            let shape = AtlasShape::new(m, 1);
            let got: Vec<usize> = (2..=4)
                .map(|k| enumerate_focals(shape, k, 1).len())
                .collect();
            let want = expected_focal_counts(m);
            Check::from_bool(
                format!("focal counts m={m}"),
                got == want,
                || json!({ "got": got, "expected": want }),
                format!("k=2,3,4: {} {} {}", got[0], got[1], got[2]),
            )
        }));
    }
    r
}

/// Degree censuses of `G_M` and `G_Aqp` for `m = 1..=max_m`.
pub fn generator_census_suite(max_m: usize) -> SuiteReport {
    let mut r = SuiteReport::new("census", 0);
    for m in 1..=max_m {
        for (name, with_q) in [("G_M", true), ("G_Aqp", false)] {
            r.push(timed(|| {
                let set = if with_q {
                    gm_generators(m)
                } else {
                    gaqp_generators(m)
                };
                let got = set.census();
                let want = expected_census(m, with_q);
                Check::from_bool(
                    format!("{name} census m={m}"),
                    got == want,
                    || json!({ "got": census_text(&got), "expected": census_text(&want) }),
                    census_text(&got),
                )
            }));
        }
    }
    r
}

/// Checks the identity `bump_up(f) = ±p · f` against an independently expanded
/// canonical determinant of the bumped specification.
fn bump_consistent(g: &FocalPolynomial) -> bool {
    focal_det(&g.spec, g.shape).is_ok_and(|c| g.value == c.value.scale_int(g.sign as i64))
}

/// `trials` random chains: a proper focal on `m ∈ 3..=6` cameras is bumped up
/// by one or more unused cameras, then bumped down to the start.
pub fn bump_suite(trials: usize, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("bump", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases: Vec<Vec<FocalPolynomial>> = (3..=6)
        .map(|m| {
            let shape = AtlasShape::new(m, 1);
            (2..=4)
                .flat_map(|k| enumerate_focals(shape, k, 1))
                .map(|s| focal_det(&s, shape).expect("fits"))
                .collect()
        })
        .collect();
    let mut failures = Vec::new();
    let mut bumps = 0usize;
    for t in 0..trials {
        // resample until some camera is unused
        let (f, mut free) = loop {
            let pool = &bases[rng.gen_range(0..bases.len())];
            let f = pool.choose(&mut rng).expect("nonempty");
            let free: Vec<usize> = (1..=f.shape.m)
                .filter(|i| !f.spec.sigma().contains(i))
                .collect();
            if !free.is_empty() {
                break (f, free);
            }
        };
        free.shuffle(&mut rng);
        let depth = rng.gen_range(1..=free.len());
        let mut chain = vec![f.clone()];
        let mut ok = true;
        for &i in &free[..depth] {
            let g = bump_up(chain.last().expect("nonempty"), i, rng.gen_range(1..=3))
                .expect("unused camera");
            ok &= bump_consistent(&g);
            chain.push(g);
        }
        bumps += depth;
        let mut cur = chain.pop().expect("nonempty");
        for _ in 0..depth {
            match bump_down(&cur) {
                Some((d, v)) => {
                    ok &= d.value.mul(&f.shape.var_poly(v)) == cur.value && bump_consistent(&d);
                    cur = d;
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        ok &= cur.spec == f.spec && cur.value == f.value && cur.sign == f.sign;
        if !ok {
            failures.push(json!({ "trial": t, "focal": f.spec.to_string() }));
        }
    }
    let id = format!("{trials} bump round trips");
    r.push(
        Check::from_bool(
            id,
            failures.is_empty(),
            || json!(failures.iter().take(5).collect::<Vec<_>>()),
            format!("{bumps} bumps, {} failures", failures.len()),
        )
        .with_seed(seed),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(expected_focal_counts(4), [6, 108, 81]);
        assert_eq!(
            census_text(&expected_census(3, false)),
            "3:9 4:3 5:27 6:21 7:54"
        );
        assert_eq!(census_text(&expected_census(1, true)), "3:3 4:1");
    }

    #[test]
    fn small_censuses() {
        let r = census_suite(3);
        assert!(r.all_pass(), "{}", r.to_text());
    }

    #[test]
    fn bumps() {
        let r = bump_suite(200, 4);
        assert!(r.all_pass(), "{}", r.to_text());
    }
}
