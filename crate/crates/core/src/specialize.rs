//! Specialization at scalar cameras, genericity certificates, group actions,
//! seeded generic arrangements, and projective basis change in ℙ³.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atlas_model::{AtlasShape, CameraArrangement, ProjectivePoint, ScalarCamera};
use crate::idealgen::{saturation_factors, MinorFactor, SaturationSpec};
use crate::linalg::{self, IMat};
use crate::polyring::{Polynomial, Q};

/// Random integer entries are drawn from `[−ENTRY_BOUND, ENTRY_BOUND]`.
pub const ENTRY_BOUND: i64 = 100;
/// Retry cap for certified random constructions.
pub const MAX_RETRIES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecializeError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("group element is singular")]
    SingularGroupElement,
    #[error("no {target:?} arrangement found after {tries} tries")]
    RetriesExhausted {
        target: GenericityTarget,
        tries: usize,
    },
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
}

/// Specialized polynomials; `zero[k]` flags generators that vanished identically.
#[derive(Clone, Debug)]
pub struct Specialized {
    pub polys: Vec<Polynomial>,
    pub zero: Vec<bool>,
}

impl Specialized {
    pub fn nonzero(&self) -> Vec<Polynomial> {
        self.polys
            .iter()
            .filter(|p| !p.is_zero())
            .cloned()
            .collect()
    }
}

/// Substitutes `Ā` and optionally `q̄`, `p̄` (indexed `[i-1][j-1]`); the result
/// stays in the universe of `shape`.
pub fn specialize(
    polys: &[Polynomial],
    shape: AtlasShape,
    arr: &CameraArrangement,
    q: Option<&[ProjectivePoint]>,
    p: Option<&[Vec<ProjectivePoint>]>,
) -> Result<Specialized, SpecializeError> {
    if arr.m() != shape.m {
        return Err(SpecializeError::ShapeMismatch(format!(
            "arrangement has {} cameras, shape has m={}",
            arr.m(),
            shape.m
        )));
    }
    if let Some(f) = polys.iter().find(|f| f.nvars() != shape.nvars()) {
        return Err(SpecializeError::ShapeMismatch(format!(
            "polynomial over {} variables, expected {}",
            f.nvars(),
            shape.nvars()
        )));
    }
    let mut vals = arr.substitution(shape);
    if let Some(q) = q {
        if q.len() != shape.n || q.iter().any(|x| x.dim() != 3) {
            return Err(SpecializeError::ShapeMismatch(
                "expected n world points in P^3".into(),
            ));
        }
        for (j, pt) in q.iter().enumerate() {
            for k in 1..=4 {
                vals[shape.q(j + 1, k) as usize] = Some(Q::from_integer(pt.coord(k).clone()));
            }
        }
    }
    if let Some(p) = p {
        if p.len() != shape.m
            || p.iter()
                .any(|r| r.len() != shape.n || r.iter().any(|x| x.dim() != 2))
        {
            return Err(SpecializeError::ShapeMismatch(
                "expected an m x n table of image points".into(),
            ));
        }
        for (i, row) in p.iter().enumerate() {
            for (j, pt) in row.iter().enumerate() {
                for k in 1..=3 {
                    vals[shape.p(i + 1, j + 1, k) as usize] =
                        Some(Q::from_integer(pt.coord(k).clone()));
                }
            }
        }
    }
    let polys: Vec<Polynomial> = polys.iter().map(|f| f.substitute(&vals)).collect();
    let zero = polys.iter().map(Polynomial::is_zero).collect();
    Ok(Specialized { polys, zero })
}

/// Which genericity stratum a construction must reach.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenericityTarget {
    DistinctCenters,
    Minor,
    Ultra,
}

/// Exact genericity certificate of an arrangement; offending witnesses are
/// 1-based camera indices or minors of the stacked `4 × 3m` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub rank_deficient: Vec<usize>,
    pub distinct_centers: bool,
    pub coincident_pair: Option<(usize, usize)>,
    pub minor_generic: bool,
    /// Stacked columns of a vanishing 4×4 minor.
    pub vanishing_minor: Option<Vec<usize>>,
    pub ultra_minor_generic: bool,
    /// `(k, rows, cols)` of a vanishing k×k minor.
    pub vanishing_ultra: Option<(usize, Vec<usize>, Vec<usize>)>,
}

impl GenericityReport {
    pub fn meets(&self, target: GenericityTarget) -> bool {
        match target {
            GenericityTarget::DistinctCenters => self.distinct_centers,
            GenericityTarget::Minor => self.minor_generic,
            GenericityTarget::Ultra => self.ultra_minor_generic,
        }
    }
}

fn first_vanishing(arr: &CameraArrangement, factors: Vec<MinorFactor>) -> Option<MinorFactor> {
    factors.into_iter().find(|f| f.eval(arr).is_zero())
}

pub fn genericity(arr: &CameraArrangement) -> GenericityReport {
    let m = arr.m();
    let rank_deficient: Vec<usize> = (1..=m).filter(|&i| arr.camera(i).rank() < 3).collect();
    let centers: Vec<Option<ProjectivePoint>> = arr.cameras.iter().map(|c| c.center()).collect();
    let coincident_pair = (1..=m)
        .tuple_combinations()
        .find(|&(a, b): &(usize, usize)| {
            centers[a - 1].is_some() && centers[a - 1] == centers[b - 1]
        });
    let distinct_centers = rank_deficient.is_empty() && coincident_pair.is_none();
    let vanishing_minor =
        first_vanishing(arr, saturation_factors(SaturationSpec::S, m)).map(|f| f.cols);
    let minor_generic = vanishing_minor.is_none();
    let vanishing_ultra = first_vanishing(arr, saturation_factors(SaturationSpec::SUltra, m))
        .map(|f| (f.size(), f.rows, f.cols));
    let ultra_minor_generic = vanishing_ultra.is_none();
    assert!(
        !ultra_minor_generic || minor_generic,
        "ultra minor generic must imply minor generic"
    );
    assert!(
        !minor_generic || distinct_centers,
        "minor generic must imply distinct centers"
    );
    GenericityReport {
        rank_deficient,
        distinct_centers,
        coincident_pair,
        minor_generic,
        vanishing_minor,
        ultra_minor_generic,
        vanishing_ultra,
    }
}

/// Elements of `PGL₃^m`, `PGL₄` and their product, as integer matrices.
#[derive(Clone, Debug)]
pub enum GroupElement {
    /// `A_i ↦ H_i A_i`
    Pgl3m(Vec<IMat>),
    /// `A_i ↦ A_i H⁻¹`
    Pgl4(IMat),
    /// `A_i ↦ H_i A_i H⁻¹`
    Combined(IMat, Vec<IMat>),
}

fn check_invertible(h: &IMat, n: usize) -> Result<(), SpecializeError> {
    if h.len() != n || h.iter().any(|r| r.len() != n) {
        return Err(SpecializeError::ShapeMismatch(format!(
            "expected a {n}x{n} matrix"
        )));
    }
    if linalg::det(h).is_zero() {
        return Err(SpecializeError::SingularGroupElement);
    }
    Ok(())
}

/// Acts on an arrangement; `H⁻¹` is applied projectively as `adj(H)`.
pub fn act(
    g: &GroupElement,
    arr: &CameraArrangement,
) -> Result<CameraArrangement, SpecializeError> {
    let (h4, h3s) = match g {
        GroupElement::Pgl3m(hs) => (None, Some(hs)),
        GroupElement::Pgl4(h) => (Some(h), None),
        GroupElement::Combined(h, hs) => (Some(h), Some(hs)),
    };
    if let Some(hs) = h3s {
        if hs.len() != arr.m() {
            return Err(SpecializeError::ShapeMismatch(
                "one 3x3 element per camera".into(),
            ));
        }
        for h in hs {
            check_invertible(h, 3)?;
        }
    }
    let inv = match h4 {
        Some(h) => {
            check_invertible(h, 4)?;
            Some(linalg::adjugate(h))
        }
        None => None,
    };
    let cams = arr
        .cameras
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut a = c.matrix();
            if let Some(hs) = h3s {
                a = linalg::mat_mul(&hs[i], &a);
            }
            if let Some(inv) = &inv {
                a = linalg::mat_mul(&a, inv);
            }
            ScalarCamera::new(&a).expect("3x4")
        })
        .collect();
    Ok(CameraArrangement::new(cams))
}

pub fn random_int<R: Rng>(rng: &mut R) -> BigInt {
    BigInt::from(rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND))
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> IMat {
    (0..rows)
        .map(|_| (0..cols).map(|_| random_int(rng)).collect())
        .collect()
}

/// A random invertible `n×n` integer matrix.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> IMat {
    loop {
        let h = random_matrix(rng, n, n);
        if !linalg::det(&h).is_zero() {
            return h;
        }
    }
}

pub fn random_camera<R: Rng>(rng: &mut R) -> ScalarCamera {
    loop {
        let c = ScalarCamera::new(&random_matrix(rng, 3, 4)).expect("3x4");
        if c.rank() == 3 {
            return c;
        }
    }
}

/// Seeded arrangement certified to meet `target`.
pub fn random_arrangement(
    m: usize,
    seed: u64,
    target: GenericityTarget,
) -> Result<(CameraArrangement, GenericityReport), SpecializeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let arr = CameraArrangement::new((0..m).map(|_| random_camera(&mut rng)).collect());
        let rep = genericity(&arr);
        if rep.meets(target) {
            return Ok((arr, rep));
        }
    }
    Err(SpecializeError::RetriesExhausted {
        target,
        tries: MAX_RETRIES,
    })
}

/// Seeded arrangement whose cameras `pair.0` and `pair.1` share a center
/// (`A_b = H·A_a`) while all other pairs have distinct centers.
pub fn random_arrangement_with_coincident_pair(
    m: usize,
    seed: u64,
    pair: (usize, usize),
) -> Result<(CameraArrangement, GenericityReport), SpecializeError> {
    let (a, b) = pair;
    if a == b || a == 0 || b == 0 || a > m || b > m {
        return Err(SpecializeError::ShapeMismatch(format!(
            "pair {pair:?} invalid for m={m}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let mut cams: Vec<ScalarCamera> = (0..m).map(|_| random_camera(&mut rng)).collect();
        let h = random_invertible(&mut rng, 3);
        cams[b - 1] = ScalarCamera::new(&linalg::mat_mul(&h, &cams[a - 1].matrix())).expect("3x4");
        let arr = CameraArrangement::new(cams);
        let rep = genericity(&arr);
        let others_distinct = rep.rank_deficient.is_empty()
            && (1..=m).tuple_combinations().all(|(x, y): (usize, usize)| {
                (x, y) == (a.min(b), a.max(b)) || arr.camera(x).center() != arr.camera(y).center()
            });
        if others_distinct {
            return Ok((arr, rep));
        }
    }
    Err(SpecializeError::RetriesExhausted {
        target: GenericityTarget::DistinctCenters,
        tries: MAX_RETRIES,
    })
}

/// `C = diag([5234]⁻¹, [1534]⁻¹, [1254]⁻¹, [1235]⁻¹)·(q1 q2 q3 q4)⁻¹`, scaled to a
/// primitive integer matrix. Maps `q_1..q_4` to the coordinate points and
/// `q_5` to `(1,1,1,1)`, projectively.
pub fn basis_change(qs: &[ProjectivePoint]) -> Result<IMat, SpecializeError> {
    if qs.len() != 5 || qs.iter().any(|q| q.dim() != 3) {
        return Err(SpecializeError::ShapeMismatch(
            "expected five points of P^3".into(),
        ));
    }
    let bracket = |idx: [usize; 4]| -> BigInt {
        let cols: IMat = (0..4)
            .map(|r| idx.iter().map(|&k| qs[k].coords()[r].clone()).collect())
            .collect();
        linalg::det(&cols)
    };
    for s in (0..5).combinations(4) {
        if bracket([s[0], s[1], s[2], s[3]]).is_zero() {
            return Err(SpecializeError::DegenerateConfiguration(format!(
                "points {} are linearly dependent",
                s.iter().map(|k| k + 1).join(",")
            )));
        }
    }
    let base: IMat = (0..4)
        .map(|r| (0..4).map(|k| qs[k].coords()[r].clone()).collect())
        .collect();
    let inv = linalg::inverse(&linalg::to_q(&base)).expect("independent");
    let d = [
        bracket([4, 1, 2, 3]),
        bracket([0, 4, 2, 3]),
        bracket([0, 1, 4, 3]),
        bracket([0, 1, 2, 4]),
    ];
    let c: Vec<Vec<Q>> = inv
        .iter()
        .zip(&d)
        .map(|(row, di)| {
            row.iter()
                .map(|x| x / Q::from_integer(di.clone()))
                .collect()
        })
        .collect();
    let flat: Vec<Q> = c.iter().flatten().cloned().collect();
    let ints = linalg::primitive_from_q(&flat);
    Ok(ints.chunks(4).map(|r| r.to_vec()).collect())
}

/// Checks `det((H^T S)[σ,τ]) = Σ_υ det(H^T[σ,υ])·det(S[υ,τ])` where `S` is the
/// stacked matrix, i.e. the stacked matrix of `(A_1 H, …, A_m H)`.
pub fn cauchy_binet_holds(
    arr: &CameraArrangement,
    h: &IMat,
    sigma: &[usize],
    tau: &[usize],
) -> bool {
    let s = arr.stacked();
    // stacked(A_i H) = Hᵀ·S, built directly to avoid rescaling the cameras
    let ht = linalg::transpose(h);
    let hs = linalg::mat_mul(&ht, &s);
    let sub = |m: &IMat, rows: &[usize], cols: &[usize]| -> IMat {
        rows.iter()
            .map(|&r| cols.iter().map(|&c| m[r - 1][c].clone()).collect())
            .collect()
    };
    let lhs = linalg::det(&sub(&hs, sigma, tau));
    let k = sigma.len();
    let mut rhs = BigInt::zero();
    for ups in (1..=4).combinations(k) {
        let hsub: IMat = sigma
            .iter()
            .map(|&r| ups.iter().map(|&c| ht[r - 1][c - 1].clone()).collect())
            .collect();
        rhs += linalg::det(&hsub) * linalg::det(&sub(&s, &ups, tau));
    }
    lhs == rhs
}

/// `((I 0), (0 I))`: distinct centers, not minor generic.
pub fn shifted_pair() -> CameraArrangement {
    CameraArrangement::new(vec![
        ScalarCamera::standard(),
        ScalarCamera::from_i64([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    ])
}

/// `((I 0), (I 0))`: coincident centers.
pub fn coincident_pair() -> CameraArrangement {
    CameraArrangement::new(vec![ScalarCamera::standard(), ScalarCamera::standard()])
}

/// `((I 0), (I 0), (0 I))`: the first two centers coincide.
pub fn partially_coincident_triple() -> CameraArrangement {
    let mut cams = coincident_pair().cameras;
    cams.push(shifted_pair().cameras[1].clone());
    CameraArrangement::new(cams)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::focal::{enumerate_focals, focal_det};
    use crate::polyring::parse_poly;

    #[test]
    fn shifted_pair_two_focal() {
        let shape = AtlasShape::new(2, 1);
        let f = focal_det(&enumerate_focals(shape, 2, 1)[0], shape).unwrap();
        let sp = specialize(
            std::slice::from_ref(&f.value),
            shape,
            &shifted_pair(),
            None,
            None,
        )
        .unwrap();
        let want = parse_poly("p1_3*p2_1 - p1_2*p2_2", &shape.universe()).unwrap();
        assert!(sp.polys[0].eq_up_to_sign(&want), "{:?}", sp.polys[0]);
        let sp = specialize(&[f.value], shape, &coincident_pair(), None, None).unwrap();
        assert!(sp.zero[0]);
    }

    #[test]
    fn partially_coincident_triple_focals() {
        let shape = AtlasShape::new(3, 1);
        let arr = partially_coincident_triple();
        for s in enumerate_focals(shape, 2, 1) {
            let sp = specialize(
                &[focal_det(&s, shape).unwrap().value],
                shape,
                &arr,
                None,
                None,
            )
            .unwrap();
            assert_eq!(sp.zero[0], s.sigma() == [1, 2], "{s}");
        }
        // some specialized 3-focals survive, but all lie in the multiview ideal
        // ⟨2-focals on (1,3), (2,3)⟩ + minors(2, (p_1 p_2))
        let mut ideal: Vec<Polynomial> = enumerate_focals(shape, 2, 1)
            .iter()
            .filter(|s| s.sigma() != [1, 2])
            .map(|s| {
                specialize(
                    &[focal_det(s, shape).unwrap().value],
                    shape,
                    &arr,
                    None,
                    None,
                )
                .unwrap()
                .polys[0]
                    .clone()
            })
            .collect();
        let p = |i: usize, k: usize| shape.var_poly(shape.p(i, 1, k));
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            ideal.push(p(1, a).mul(&p(2, b)).sub(&p(1, b).mul(&p(2, a))));
        }
        let ord = crate::polyring::TermOrder::canonical(shape.nvars());
        let limits = crate::polyring::Limits::default();
        let gb = crate::polyring::groebner_basis(&ideal, &ord, &limits).unwrap();
        let mut survivors = 0;
        for s in enumerate_focals(shape, 3, 1) {
            let sp = specialize(
                &[focal_det(&s, shape).unwrap().value],
                shape,
                &arr,
                None,
                None,
            )
            .unwrap();
            if !sp.zero[0] {
                survivors += 1;
                assert!(
                    crate::polyring::normal_form(&sp.polys[0], &gb, &ord, &limits)
                        .unwrap()
                        .is_zero(),
                    "{s}"
                );
            }
        }
        assert!(survivors > 0);
    }

    #[test]
    fn genericity_reports() {
        let r = genericity(&shifted_pair());
        assert!(r.distinct_centers && !r.minor_generic);
        let r = genericity(&coincident_pair());
        assert!(!r.distinct_centers);
        assert_eq!(r.coincident_pair, Some((1, 2)));
        let (a, r) = random_arrangement(3, 7, GenericityTarget::Ultra).unwrap();
        assert!(r.ultra_minor_generic);
        assert_eq!(
            random_arrangement(3, 7, GenericityTarget::Ultra).unwrap().0,
            a
        );
        let (_, r) = random_arrangement_with_coincident_pair(3, 5, (1, 3)).unwrap();
        assert_eq!(r.coincident_pair, Some((1, 3)));
    }

    #[test]
    fn actions() {
        let arr = shifted_pair();
        let id3 = vec![linalg::identity(3); 2];
        assert_eq!(act(&GroupElement::Pgl3m(id3.clone()), &arr).unwrap(), arr);
        assert_eq!(
            act(&GroupElement::Combined(linalg::identity(4), id3), &arr).unwrap(),
            arr
        );
        let sing = linalg::imat(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 0]]);
        assert_eq!(
            act(&GroupElement::Pgl4(sing), &arr),
            Err(SpecializeError::SingularGroupElement)
        );
        // a random H_i lifts distinct centers to minor generic
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut found = false;
        for _ in 0..MAX_RETRIES {
            let hs = vec![
                random_invertible(&mut rng, 3),
                random_invertible(&mut rng, 3),
            ];
            if genericity(&act(&GroupElement::Pgl3m(hs), &arr).unwrap()).minor_generic {
                found = true;
                break;
            }
        }
        assert!(found);
    }

    #[test]
    fn basis_change_maps_to_standard_frame() {
        let std: Vec<ProjectivePoint> = [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [1, 1, 1, 1],
        ]
        .iter()
        .map(|v| ProjectivePoint::from_i64(v).unwrap())
        .collect();
        assert_eq!(basis_change(&std).unwrap(), linalg::identity(4));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let qs: Vec<ProjectivePoint> = (0..5)
            .map(|_| ProjectivePoint::new(&random_matrix(&mut rng, 1, 4)[0]).unwrap())
            .collect();
        let c = basis_change(&qs).unwrap();
        for (k, q) in qs.iter().enumerate() {
            let img = ProjectivePoint::new(&linalg::mat_vec(&c, q.coords())).unwrap();
            let want: Vec<i64> = if k < 4 {
                (0..4).map(|r| i64::from(r == k)).collect()
            } else {
                vec![1; 4]
            };
            assert_eq!(img, ProjectivePoint::from_i64(&want).unwrap());
        }
        let mut flat = std.clone();
        flat[3] = ProjectivePoint::from_i64(&[1, 1, 0, 0]).unwrap();
        assert!(matches!(
            basis_change(&flat),
            Err(SpecializeError::DegenerateConfiguration(_))
        ));
    }

    #[test]
    fn cauchy_binet() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (arr, _) = random_arrangement(2, 1, GenericityTarget::Minor).unwrap();
        for k in 1..=4 {
            let h = random_invertible(&mut rng, 4);
            let sigma: Vec<usize> = (1..=4).take(k).collect();
            let tau: Vec<usize> = (0..6).skip(6 - k).collect();
            assert!(cauchy_binet_holds(&arr, &h, &sigma, &tau));
        }
    }
}
