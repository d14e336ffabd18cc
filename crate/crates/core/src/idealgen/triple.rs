use num_bigint::BigInt;
use num_traits::Zero;

use super::IdealError;
use crate::atlas_model::{AtlasShape, ScalarCamera};
use crate::linalg::{self, IMat};
use crate::polyring::{poly_det, IntEvaluator, Polynomial, Q};

fn cross(u: &[Polynomial], v: &[Polynomial]) -> Vec<Polynomial> {
    vec![
        u[1].mul(&v[2]).sub(&u[2].mul(&v[1])),
        u[2].mul(&v[0]).sub(&u[0].mul(&v[2])),
        u[0].mul(&v[1]).sub(&u[1].mul(&v[0])),
    ]
}

fn require_23(shape: AtlasShape) -> Result<(), IdealError> {
    if shape != AtlasShape::new(2, 3) {
        return Err(IdealError::ShapeMismatch(format!(
            "expected m=2 n=3, got m={} n={}",
            shape.m, shape.n
        )));
    }
    Ok(())
}

/// `det( p_21 × (B[:,1:3] p_11) | p_22 × (B[:,1:3] p_12) | p_23 × (B[:,1:3] p_13) )`
/// with the first camera fixed to `(I 0)`. `B` is the symbolic second camera
/// (the `A_2` variables) or a scalar camera.
pub fn triple_product_constraint(
    shape: AtlasShape,
    b2: Option<&ScalarCamera>,
) -> Result<Polynomial, IdealError> {
    require_23(shape)?;
    let b = |r: usize, c: usize| match b2 {
        None => shape.var_poly(shape.a(2, r, c)),
        Some(cam) => Polynomial::constant(shape.nvars(), Q::from_integer(cam.entry(r, c).clone())),
    };
    let p = |i: usize, j: usize, k: usize| shape.var_poly(shape.p(i, j, k));
    let cols: Vec<Vec<Polynomial>> = (1..=3)
        .map(|j| {
            let u: Vec<Polynomial> = (1..=3)
                .map(|r| (1..=3).fold(shape.zero(), |acc, c| acc.add(&b(r, c).mul(&p(1, j, c)))))
                .collect();
            let v: Vec<Polynomial> = (1..=3).map(|k| p(2, j, k)).collect();
            cross(&v, &u)
        })
        .collect();
    let m: Vec<Vec<Polynomial>> = (0..3)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    Ok(poly_det(&m, shape.nvars()))
}

/// `H(A_i) = (adj A_i[:,1:3], −adj A_i[:,1:3]·A_i[:,4]; 0, det A_i[:,1:3])` with
/// symbolic entries, so that `A_i·H = det(A_i[:,1:3])·(I 0)`.
pub fn world_fixing_h_symbolic(shape: AtlasShape, i: usize) -> Vec<Vec<Polynomial>> {
    let a = |r: usize, c: usize| shape.var_poly(shape.a(i, r, c));
    let nv = shape.nvars();
    let minor = |skip_r: usize, skip_c: usize| {
        let m: Vec<Vec<Polynomial>> = (1..=3)
            .filter(|&r| r != skip_r)
            .map(|r| (1..=3).filter(|&c| c != skip_c).map(|c| a(r, c)).collect())
            .collect();
        poly_det(&m, nv)
    };
    // adj[r][c] = (−1)^{r+c} · minor(c, r)
    let adj: Vec<Vec<Polynomial>> = (1..=3)
        .map(|r| {
            (1..=3)
                .map(|c| {
                    if (r + c) % 2 == 0 {
                        minor(c, r)
                    } else {
                        minor(c, r).neg()
                    }
                })
                .collect()
        })
        .collect();
    let block: Vec<Vec<Polynomial>> = (1..=3)
        .map(|r| (1..=3).map(|c| a(r, c)).collect())
        .collect();
    let det = poly_det(&block, nv);
    let mut h = Vec::with_capacity(4);
    for row in adj.iter() {
        let t = (0..3).fold(shape.zero(), |acc, k| acc.add(&row[k].mul(&a(k + 1, 4))));
        let mut out = row.clone();
        out.push(t.neg());
        h.push(out);
    }
    h.push(vec![shape.zero(), shape.zero(), shape.zero(), det]);
    h
}

fn h_of(a: &IMat) -> IMat {
    let block: IMat = a.iter().map(|r| r[..3].to_vec()).collect();
    let adj = linalg::adjugate(&block);
    let d = linalg::det(&block);
    let t4: Vec<BigInt> = a.iter().map(|r| r[3].clone()).collect();
    let top = linalg::mat_vec(&adj, &t4);
    let mut h: IMat = adj
        .into_iter()
        .zip(top)
        .map(|(mut r, t)| {
            r.push(-t);
            r
        })
        .collect();
    h.push(vec![BigInt::zero(), BigInt::zero(), BigInt::zero(), d]);
    h
}

/// Scalar `H(A)`; fails when `A[:,1:3]` is singular.
pub fn world_fixing_h(a: &ScalarCamera) -> Result<IMat, IdealError> {
    let m = a.matrix();
    let block: IMat = m.iter().map(|r| r[..3].to_vec()).collect();
    if linalg::det(&block).is_zero() {
        return Err(IdealError::SingularBlock);
    }
    Ok(h_of(&m))
}

/// `g(A, p) = f(A_2·H(A_1), p)` expanded symbolically (large).
pub fn g_symbolic(shape: AtlasShape) -> Result<Polynomial, IdealError> {
    let f = triple_product_constraint(shape, None)?;
    let h = world_fixing_h_symbolic(shape, 1);
    let mut images: Vec<Option<Polynomial>> = vec![None; shape.nvars()];
    for r in 1..=3 {
        for c in 1..=3 {
            let e = (1..=4).fold(shape.zero(), |acc, k| {
                acc.add(&shape.var_poly(shape.a(2, r, k)).mul(&h[k - 1][c - 1]))
            });
            images[shape.a(2, r, c) as usize] = Some(e);
        }
    }
    Ok(f.compose(&images))
}

/// Evaluates `g(A, p) = f(A_2·H(A_1), p)` without expanding it.
pub struct GEvaluator {
    shape: AtlasShape,
    f: IntEvaluator,
}

impl GEvaluator {
    pub fn new(shape: AtlasShape) -> Result<Self, IdealError> {
        let f = triple_product_constraint(shape, None)?;
        Ok(GEvaluator {
            shape,
            f: IntEvaluator::new(&f),
        })
    }

    /// `point` holds values for every variable of the `(2,3)` universe.
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        let s = self.shape;
        let cam = |i: usize| -> IMat {
            (1..=3)
                .map(|r| {
                    (1..=4)
                        .map(|c| point[s.a(i, r, c) as usize].clone())
                        .collect()
                })
                .collect()
        };
        let b2 = linalg::mat_mul(&cam(2), &h_of(&cam(1)));
        let mut pt = point.to_vec();
        for r in 1..=3 {
            for c in 1..=4 {
                pt[s.a(2, r, c) as usize] = b2[r - 1][c - 1].clone();
            }
        }
        self.f.eval_big(&pt)
    }
}

/// Convenience wrapper around [`GEvaluator`].
pub fn eval_g(shape: AtlasShape, point: &[BigInt]) -> Result<BigInt, IdealError> {
    Ok(GEvaluator::new(shape)?.eval(point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::is_multilinear;

    #[test]
    fn h_fixes_first_camera() {
        let shape = AtlasShape::new(2, 3);
        let h = world_fixing_h_symbolic(shape, 1);
        let a = |r: usize, c: usize| shape.var_poly(shape.a(1, r, c));
        let block: Vec<Vec<Polynomial>> = (1..=3)
            .map(|r| (1..=3).map(|c| a(r, c)).collect())
            .collect();
        let det = poly_det(&block, shape.nvars());
        for r in 1..=3 {
            for c in 1..=4 {
                let e = (1..=4).fold(shape.zero(), |acc, k| {
                    acc.add(&a(r, k).mul(&h[k - 1][c - 1]))
                });
                let want = if r == c { det.clone() } else { shape.zero() };
                assert_eq!(e, want, "entry {r},{c}");
            }
        }
        let id = ScalarCamera::standard();
        assert_eq!(world_fixing_h(&id).unwrap(), linalg::identity(4));
        let sing = ScalarCamera::from_i64([[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 0, 1]]);
        assert_eq!(world_fixing_h(&sing), Err(IdealError::SingularBlock));
    }

    #[test]
    fn f_is_multilinear_in_each_image_point() {
        let shape = AtlasShape::new(2, 3);
        let f = triple_product_constraint(shape, None).unwrap();
        assert_eq!(f.total_degree(), Some(9));
        let groups: Vec<Vec<_>> = (1..=2)
            .flat_map(|i| (1..=3).map(move |j| (i, j)))
            .map(|(i, j)| shape.p_vars(i, j))
            .collect();
        assert!(is_multilinear(&f, &groups));
        assert!(triple_product_constraint(AtlasShape::new(2, 2), None).is_err());
    }
}
