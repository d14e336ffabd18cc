//! Seeded exact points of the image formation correspondence.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atlas_model::{
    image_point, AtlasShape, CameraArrangement, Correspondence, ProjectivePoint,
};
use crate::specialize::{
    random_arrangement, random_int, GenericityTarget, SpecializeError, MAX_RETRIES,
};

/// A random world point seen by every camera (`Ā_i q̄ ≠ 0` for all `i`).
pub fn random_visible_point<R: Rng>(
    arr: &CameraArrangement,
    rng: &mut R,
) -> Result<ProjectivePoint, SpecializeError> {
    for _ in 0..MAX_RETRIES {
        let v: Vec<BigInt> = (0..4).map(|_| random_int(rng)).collect();
        let Ok(q) = ProjectivePoint::new(&v) else {
            continue;
        };
        if arr.cameras.iter().all(|c| image_point(c, &q).is_ok()) {
            return Ok(q);
        }
    }
    Err(SpecializeError::DegenerateConfiguration(
        "no visible world point found".into(),
    ))
}

/// Images `p̄_ij` and scales `λ_ij` of `n` random world points under `arr`.
pub fn correspondence_at<R: Rng>(
    arr: &CameraArrangement,
    n: usize,
    rng: &mut R,
) -> Result<Correspondence, SpecializeError> {
    let points: Vec<ProjectivePoint> = (0..n)
        .map(|_| random_visible_point(arr, rng))
        .collect::<Result<_, _>>()?;
    let mut images = Vec::with_capacity(arr.m());
    let mut lambdas = Vec::with_capacity(arr.m());
    for cam in &arr.cameras {
        let (row, lam): (Vec<_>, Vec<_>) = points
            .iter()
            .map(|q| image_point(cam, q).expect("point is visible"))
            .unzip();
        images.push(row);
        lambdas.push(lam);
    }
    let c = Correspondence {
        arrangement: arr.clone(),
        points,
        images,
        lambdas,
    };
    debug_assert!(c.is_consistent());
    Ok(c)
}

/// Seeded correspondence over a certified ultra-minor-generic arrangement.
pub fn sample_correspondence(
    shape: AtlasShape,
    seed: u64,
) -> Result<Correspondence, SpecializeError> {
    sample_correspondence_with(shape, seed, GenericityTarget::Ultra)
}

pub fn sample_correspondence_with(
    shape: AtlasShape,
    seed: u64,
    target: GenericityTarget,
) -> Result<Correspondence, SpecializeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (arr, _) = random_arrangement(shape.m, rng.gen(), target)?;
    correspondence_at(&arr, shape.n, &mut rng)
}

/// The universe point of `c` with image coordinate `t mod 3mn` (in variable
/// order of the p block) raised by one.
pub fn perturbed_point(c: &Correspondence, t: usize) -> Vec<BigInt> {
    let s = c.shape();
    let ps = s.all_p_vars();
    let mut v = c.int_point();
    v[ps[t % ps.len()] as usize] += 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idealgen::minors2_generators;
    use crate::polyring::IntEvaluator;
    use num_traits::Zero;

    #[test]
    fn samples_are_consistent_and_reproducible() {
        let s = AtlasShape::new(3, 2);
        let c = sample_correspondence(s, 11).unwrap();
        assert!(c.is_consistent());
        assert_eq!(c.to_json(), sample_correspondence(s, 11).unwrap().to_json());
        assert_ne!(c.to_json(), sample_correspondence(s, 12).unwrap().to_json());
        let pt = c.int_point();
        for g in &minors2_generators(s).polys {
            assert!(IntEvaluator::new(g).eval_big(&pt).is_zero());
        }
        let off = perturbed_point(&c, 0);
        assert!(minors2_generators(s)
            .polys
            .iter()
            .any(|g| !IntEvaluator::new(g).eval_big(&off).is_zero()));
    }
}
