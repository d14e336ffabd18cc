//! Determinants of small matrices with polynomial entries.

use std::collections::HashMap;

use super::poly::Polynomial;

/// Determinant by expansion along rows, memoized on the set of used columns.
/// Intended for sizes up to about 12.
pub fn poly_det(m: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    let n = m.len();
    assert!(
        m.iter().all(|r| r.len() == n),
        "determinant needs a square matrix"
    );
    assert!(n <= 24, "matrix too large for subset expansion");
    if n == 0 {
        return Polynomial::one(nvars);
    }
    // minors[mask] = det of the last popcount(mask) rows on columns `mask`
    let mut minors: HashMap<u32, Polynomial> = HashMap::new();
    minors.insert(0, Polynomial::one(nvars));
    for row in (0..n).rev() {
        let size = n - row;
        let mut next: HashMap<u32, Polynomial> = HashMap::new();
        for mask in subsets(n, size) {
            let mut acc = Polynomial::zero(nvars);
            // columns of `mask` in ascending order; sign alternates with position
            for (pos, c) in (0..n).filter(|c| mask >> c & 1 == 1).enumerate() {
                if m[row][c].is_zero() {
                    continue;
                }
                let Some(sub) = minors.get(&(mask & !(1 << c))) else {
                    continue;
                };
                if sub.is_zero() {
                    continue;
                }
                let t = m[row][c].mul(sub);
                acc = if pos % 2 == 0 {
                    acc.add(&t)
                } else {
                    acc.sub(&t)
                };
            }
            next.insert(mask, acc);
        }
        minors = next;
    }
    minors.remove(&((1u32 << n) - 1)).expect("full mask")
}

fn subsets(n: usize, size: usize) -> Vec<u32> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::text::{parse_poly, NamedVars};

    #[test]
    fn two_by_two_and_three_by_three() {
        let nv = NamedVars::new(vec!["a", "b", "c", "d"]);
        let p = |s: &str| parse_poly(s, &nv).unwrap();
        let m = vec![vec![p("a"), p("b")], vec![p("c"), p("d")]];
        assert_eq!(poly_det(&m, 4), p("a*d - b*c"));
        let z = Polynomial::zero(4);
        let one = Polynomial::one(4);
        let perm = vec![
            vec![z.clone(), one.clone(), z.clone()],
            vec![one.clone(), z.clone(), z.clone()],
            vec![z.clone(), z, one.clone()],
        ];
        assert_eq!(poly_det(&perm, 4), one.neg());
    }
}
