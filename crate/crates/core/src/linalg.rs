//! Exact dense linear algebra over ℤ and ℚ.
//!
//! Determinants and ranks use Bareiss fraction-free elimination; kernels and
//! inverses use Gauss–Jordan over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polyring::Q;

pub type IMat = Vec<Vec<BigInt>>;
pub type QMat = Vec<Vec<Q>>;

pub fn imat(rows: &[&[i64]]) -> IMat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn to_q(m: &IMat) -> QMat {
    m.iter()
        .map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let (n, k, p) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    (0..n)
        .map(|i| {
            (0..p)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for t in 0..k {
                        s += &a[i][t] * &b[t][j];
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IMat, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Bareiss elimination in place; returns (rank, sign of row swaps). For a
/// square full-rank matrix the last pivot is the determinant up to that sign.
fn bareiss(m: &mut IMat) -> (usize, i32) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut sign = 1;
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if piv != r {
            m.swap(piv, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    (r, sign)
}

/// Determinant of a square integer matrix.
pub fn det(m: &IMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(
        m.iter().all(|r| r.len() == n),
        "determinant needs a square matrix"
    );
    let mut a = m.clone();
    // Bareiss with full column scan: if rank drops the determinant is zero
    let (rank, sign) = bareiss_square(&mut a);
    if rank < n {
        return BigInt::zero();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

fn bareiss_square(m: &mut IMat) -> (usize, i32) {
    let n = m.len();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return (k, sign);
        };
        if piv != k {
            m.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    (n, sign)
}

pub fn rank(m: &IMat) -> usize {
    let mut a = m.clone();
    bareiss(&mut a).0
}

/// Clears denominators row by row (rank-preserving).
pub fn q_to_int_rows(m: &QMat) -> IMat {
    m.iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

pub fn rank_q(m: &QMat) -> usize {
    rank(&q_to_int_rows(m))
}

/// Reduced row echelon form over ℚ with pivot columns.
pub fn rref(m: &QMat) -> (QMat, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = Q::one() / a[r][c].clone();
        for j in c..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let v = &a[i][j] - &f * &a[r][j];
                    a[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the right kernel over ℚ.
pub fn kernel(m: &QMat) -> Vec<Vec<Q>> {
    let cols = m.first().map_or(0, |r| r.len());
    let (a, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Inverse over ℚ, if invertible.
pub fn inverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let aug: QMat = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    let (a, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Adjugate of a square integer matrix (`A·adj A = det A · I`).
pub fn adjugate(m: &IMat) -> IMat {
    let n = m.len();
    if n == 1 {
        return vec![vec![BigInt::one()]];
    }
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: IMat = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let d = det(&minor);
            adj[i][j] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

/// Divides by the content and makes the first nonzero entry positive.
pub fn primitive_vec(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let neg = v
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    v.iter()
        .map(|x| if neg { -(x / &g) } else { x / &g })
        .collect()
}

/// Scales a rational vector to a primitive integer vector.
pub fn primitive_from_q(v: &[Q]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    primitive_vec(&ints)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_rank() {
        let m = imat(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]);
        assert_eq!(det(&m), BigInt::from(2 + (1 - 3)));
        assert_eq!(rank(&m), 2);
        let s = imat(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&s), BigInt::from(-1));
        assert_eq!(rank(&imat(&[&[1, 2, 3], &[2, 4, 6]])), 1);
    }

    #[test]
    fn adjugate_identity() {
        let m = imat(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 4]]);
        let d = det(&m);
        let p = mat_mul(&m, &adjugate(&m));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p[i][j], if i == j { d.clone() } else { BigInt::zero() });
            }
        }
    }

    #[test]
    fn kernel_of_camera() {
        let a = to_q(&imat(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]));
        let k = kernel(&a);
        assert_eq!(k.len(), 1);
        assert_eq!(
            primitive_from_q(&k[0]),
            vec![0, 0, 0, 1]
                .into_iter()
                .map(BigInt::from)
                .collect::<Vec<_>>()
        );
        let inv = inverse(&to_q(&imat(&[&[2, 1], &[1, 1]]))).unwrap();
        assert_eq!(q_to_int_rows(&inv), imat(&[&[1, -1], &[-1, 2]]));
    }
}
