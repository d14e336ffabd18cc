//! k-focal matrices and determinants, their enumeration, and bumping.
//!
//! A focal spec picks cameras `σ` and row sets `r_i ⊆ {1,2,3}` with
//! `Σ(|r_i| − 1) = 4`. The matrix has rows `(A_{σ_b}[r, :] | e_b·p_{σ_b}[r])`
//! in ascending (block, row) order and columns `A[:,1..4]` then one p-column
//! per block. The canonical determinant is this matrix's determinant.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::One;
use thiserror::Error;

use crate::atlas_model::AtlasShape;
use crate::polyring::{Monomial, Polynomial, Var, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FocalError {
    #[error("invalid focal spec: {0}")]
    InvalidSpec(String),
    #[error("camera {0} is already used by the focal")]
    CameraAlreadyUsed(usize),
    #[error("cannot parse focal spec: {0}")]
    Parse(String),
}

/// Camera indices, row sets and world point of a k-focal (all 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FocalSpec {
    sigma: Vec<usize>,
    rows: Vec<Vec<usize>>,
    point: usize,
}

impl FocalSpec {
    pub fn new(sigma: Vec<usize>, rows: Vec<Vec<usize>>, point: usize) -> Result<Self, FocalError> {
        let bad = |s: &str| Err(FocalError::InvalidSpec(s.to_string()));
        if sigma.len() < 2 {
            return bad("k must be at least 2");
        }
        if sigma.len() != rows.len() {
            return bad("one row set per camera");
        }
        if sigma[0] == 0 || sigma.windows(2).any(|w| w[0] >= w[1]) {
            return bad("cameras must be strictly increasing and 1-based");
        }
        if point == 0 {
            return bad("point index is 1-based");
        }
        for r in &rows {
            if r.is_empty()
                || r.iter().any(|&x| !(1..=3).contains(&x))
                || r.windows(2).any(|w| w[0] >= w[1])
            {
                return bad("row sets must be nonempty strictly increasing subsets of {1,2,3}");
            }
        }
        if rows.iter().map(|r| r.len() - 1).sum::<usize>() != 4 {
            return bad("row counts must satisfy sum(|r_i| - 1) = 4");
        }
        Ok(FocalSpec { sigma, rows, point })
    }

    pub fn k(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn point(&self) -> usize {
        self.point
    }

    /// All row sets have at least two rows (the 2-, 3- and 4-focals).
    pub fn is_proper(&self) -> bool {
        self.rows.iter().all(|r| r.len() >= 2)
    }

    pub fn with_point(&self, point: usize) -> FocalSpec {
        FocalSpec {
            point,
            ..self.clone()
        }
    }

    /// Checks that the spec fits in `shape`.
    pub fn check(&self, shape: AtlasShape) -> Result<(), FocalError> {
        if *self.sigma.last().expect("k >= 2") > shape.m {
            return Err(FocalError::InvalidSpec(format!(
                "camera index exceeds m = {}",
                shape.m
            )));
        }
        if self.point > shape.n {
            return Err(FocalError::InvalidSpec(format!(
                "point index exceeds n = {}",
                shape.n
            )));
        }
        Ok(())
    }

    /// `(block, camera, row)` for every matrix row, in matrix order.
    fn matrix_rows(&self) -> Vec<(usize, usize, usize)> {
        self.sigma
            .iter()
            .zip(&self.rows)
            .enumerate()
            .flat_map(|(b, (&i, rs))| rs.iter().map(move |&r| (b, i, r)))
            .collect()
    }
}

impl fmt::Display for FocalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sigma = self.sigma.iter().join(",");
        let rows = self.rows.iter().map(|r| r.iter().join("")).join("|");
        write!(
            f,
            "k={} sigma={} rows={} point={}",
            self.k(),
            sigma,
            rows,
            self.point
        )
    }
}

impl FromStr for FocalSpec {
    type Err = FocalError;

    fn from_str(s: &str) -> Result<Self, FocalError> {
        let perr = |m: String| FocalError::Parse(m);
        let (mut k, mut sigma, mut rows, mut point) = (None, None, None, None);
        for tok in s.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| perr(format!("expected key=value, got {tok}")))?;
            match key {
                "k" => k = Some(val.parse::<usize>().map_err(|e| perr(format!("k: {e}")))?),
                "sigma" => {
                    sigma = Some(
                        val.split(',')
                            .map(|x| x.parse::<usize>().map_err(|e| perr(format!("sigma: {e}"))))
                            .collect::<Result<Vec<_>, _>>()?,
                    )
                }
                "rows" => {
                    rows = Some(
                        val.split('|')
                            .map(|blk| {
                                blk.chars()
                                    .map(|c| {
                                        c.to_digit(10)
                                            .map(|d| d as usize)
                                            .ok_or_else(|| perr(format!("rows: bad digit {c}")))
                                    })
                                    .collect::<Result<Vec<_>, _>>()
                            })
                            .collect::<Result<Vec<_>, _>>()?,
                    )
                }
                "point" => {
                    point = Some(
                        val.parse::<usize>()
                            .map_err(|e| perr(format!("point: {e}")))?,
                    )
                }
                other => return Err(perr(format!("unknown key {other}"))),
            }
        }
        let sigma = sigma.ok_or_else(|| perr("missing sigma".into()))?;
        let rows = rows.ok_or_else(|| perr("missing rows".into()))?;
        if let Some(k) = k {
            if k != sigma.len() {
                return Err(perr(format!("k={k} but sigma has {} entries", sigma.len())));
            }
        }
        FocalSpec::new(sigma, rows, point.unwrap_or(1))
    }
}

/// Entry of a symbolic focal matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    Zero,
    Var(Var),
}

/// The `(4+k)×(4+k)` symbolic matrix of a spec.
pub fn focal_matrix(spec: &FocalSpec, shape: AtlasShape) -> Result<Vec<Vec<Entry>>, FocalError> {
    spec.check(shape)?;
    let k = spec.k();
    let j = spec.point;
    Ok(spec
        .matrix_rows()
        .into_iter()
        .map(|(b, i, r)| {
            let mut row: Vec<Entry> = (1..=4).map(|c| Entry::Var(shape.a(i, r, c))).collect();
            row.extend((0..k).map(|bb| {
                if bb == b {
                    Entry::Var(shape.p(i, j, r))
                } else {
                    Entry::Zero
                }
            }));
            row
        })
        .collect())
}

/// The 24 permutations of four columns with their signs.
fn perms4() -> &'static [([usize; 4], bool)] {
    use std::sync::OnceLock;
    static P: OnceLock<Vec<([usize; 4], bool)>> = OnceLock::new();
    P.get_or_init(|| {
        (0..4)
            .permutations(4)
            .map(|p| {
                let inv = (0..4)
                    .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
                    .filter(|&(a, b)| p[a] > p[b])
                    .count();
                ([p[0], p[1], p[2], p[3]], inv % 2 == 1)
            })
            .collect()
    })
}

/// A focal determinant; `value = sign · det(focal_matrix(spec))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FocalPolynomial {
    pub shape: AtlasShape,
    pub spec: FocalSpec,
    pub value: Polynomial,
    /// `+1` for the canonical ascending-order determinant, `-1` when negated.
    pub sign: i8,
}

/// Exact determinant by expansion along the p-columns: one p-row per block,
/// times the complementary 4×4 A-minor. Distinct terms never cancel.
pub fn focal_det(spec: &FocalSpec, shape: AtlasShape) -> Result<FocalPolynomial, FocalError> {
    spec.check(shape)?;
    let k = spec.k();
    let j = spec.point;
    let rows = spec.matrix_rows();
    // p-columns occupy 1-based positions 5..=4+k
    let col_sum: usize = (5..=4 + k).sum();
    let mut terms: Vec<(Q, Monomial)> = Vec::with_capacity(24 * 27);
    let choices = spec
        .rows
        .iter()
        .map(|r| 0..r.len())
        .multi_cartesian_product();
    for choice in choices {
        // global 0-based row of each chosen p-entry
        let mut chosen = Vec::with_capacity(k);
        let mut offset = 0;
        for (b, &c) in choice.iter().enumerate() {
            chosen.push(offset + c);
            offset += spec.rows[b].len();
        }
        let row_sum: usize = chosen.iter().map(|r| r + 1).sum();
        let neg_outer = (row_sum + col_sum) % 2 == 1;
        let pvars: Vec<Var> = chosen
            .iter()
            .map(|&g| shape.p(rows[g].1, j, rows[g].2))
            .collect();
        let rest: Vec<(usize, usize)> = (0..rows.len())
            .filter(|g| !chosen.contains(g))
            .map(|g| (rows[g].1, rows[g].2))
            .collect();
        debug_assert_eq!(rest.len(), 4);
        for (perm, odd) in perms4() {
            let mut vars = pvars.clone();
            vars.extend((0..4).map(|t| shape.a(rest[t].0, rest[t].1, perm[t] + 1)));
            let c = if neg_outer ^ odd { -Q::one() } else { Q::one() };
            terms.push((c, Monomial::from_vars(vars)));
        }
    }
    Ok(FocalPolynomial {
        shape,
        spec: spec.clone(),
        value: Polynomial::from_terms(shape.nvars(), terms),
        sign: 1,
    })
}

/// The proper k-focals (every `|r_i| ≥ 2`) at world point `j`, for `2 ≤ k ≤ 4`.
/// Counts are `C(m,2)`, `27·C(m,3)` and `81·C(m,4)`; empty for `k > 4`.
pub fn enumerate_focals(shape: AtlasShape, k: usize, j: usize) -> Vec<FocalSpec> {
    if !(2..=4).contains(&k) || k > shape.m {
        return Vec::new();
    }
    let pairs = [vec![1, 2], vec![1, 3], vec![2, 3]];
    let full = vec![1, 2, 3];
    // row-size patterns: k=2 → (3,3); k=3 → one full block; k=4 → all pairs
    let patterns: Vec<Vec<usize>> = match k {
        2 => vec![vec![3, 3]],
        3 => vec![vec![3, 2, 2], vec![2, 3, 2], vec![2, 2, 3]],
        _ => vec![vec![2, 2, 2, 2]],
    };
    let mut out = Vec::new();
    for sigma in (1..=shape.m).combinations(k) {
        for pat in &patterns {
            let options: Vec<Vec<Vec<usize>>> = pat
                .iter()
                .map(|&s| {
                    if s == 3 {
                        vec![full.clone()]
                    } else {
                        pairs.to_vec()
                    }
                })
                .collect();
            for rows in options.into_iter().multi_cartesian_product() {
                out.push(FocalSpec::new(sigma.clone(), rows, j).expect("valid by construction"));
            }
        }
    }
    out
}

/// All m-focals at world point `j`: every nonempty row choice of the full
/// `3m × (4+m)` matrix.
pub fn enumerate_m_focals(shape: AtlasShape, j: usize) -> Vec<FocalSpec> {
    let m = shape.m;
    if m < 2 {
        return Vec::new();
    }
    let subsets: Vec<Vec<usize>> = (1..=3).flat_map(|s| (1..=3).combinations(s)).collect();
    (0..m)
        .map(|_| subsets.clone())
        .multi_cartesian_product()
        .filter(|rows| rows.iter().map(|r| r.len() - 1).sum::<usize>() == 4)
        .map(|rows| FocalSpec::new((1..=m).collect(), rows, j).expect("valid by construction"))
        .collect()
}

/// `(global 0-based row, block index)` of camera `i`'s single row after insertion.
fn insertion_position(spec: &FocalSpec, i: usize) -> (usize, usize) {
    let b = spec.sigma.iter().take_while(|&&s| s < i).count();
    let r: usize = spec.rows[..b].iter().map(Vec::len).sum();
    (r, b)
}

/// Adds camera `i` with the single row `row`; the result equals `p_i[row]·f`
/// and carries the sign relative to the canonical (k+1)-focal.
pub fn bump_up(f: &FocalPolynomial, i: usize, row: usize) -> Result<FocalPolynomial, FocalError> {
    if f.spec.sigma.contains(&i) {
        return Err(FocalError::CameraAlreadyUsed(i));
    }
    if i == 0 || i > f.shape.m || !(1..=3).contains(&row) {
        return Err(FocalError::InvalidSpec(format!(
            "camera {i} row {row} out of range"
        )));
    }
    let (r, b) = insertion_position(&f.spec, i);
    let mut sigma = f.spec.sigma.clone();
    let mut rows = f.spec.rows.clone();
    sigma.insert(b, i);
    rows.insert(b, vec![row]);
    let spec = FocalSpec::new(sigma, rows, f.spec.point)?;
    // expanding the new p-column: det' = (−1)^{r+b} · p · det
    let flip = if (r + b) % 2 == 1 { -1 } else { 1 };
    let p = f.shape.var_poly(f.shape.p(i, f.spec.point, row));
    Ok(FocalPolynomial {
        shape: f.shape,
        spec,
        value: p.mul(&f.value),
        sign: f.sign * flip,
    })
}

/// Strips the first camera that uses a single row; returns the (k−1)-focal
/// with `f = var · result` and the divisor variable.
pub fn bump_down(f: &FocalPolynomial) -> Option<(FocalPolynomial, Var)> {
    if f.spec.k() <= 2 {
        return None;
    }
    let b = f.spec.rows.iter().position(|r| r.len() == 1)?;
    let i = f.spec.sigma[b];
    let row = f.spec.rows[b][0];
    let mut sigma = f.spec.sigma.clone();
    let mut rows = f.spec.rows.clone();
    sigma.remove(b);
    rows.remove(b);
    let spec = FocalSpec::new(sigma, rows, f.spec.point).ok()?;
    let (r, bb) = insertion_position(&spec, i);
    debug_assert_eq!(bb, b);
    let flip = if (r + b) % 2 == 1 { -1 } else { 1 };
    let v = f.shape.p(i, f.spec.point, row);
    let value = f.value.div_by_var(v)?;
    Some((
        FocalPolynomial {
            shape: f.shape,
            spec,
            value,
            sign: f.sign * flip,
        },
        v,
    ))
}

/// p-variable groups `p_{σ_b}` of a focal (the groups it is well-supported on).
pub fn p_groups(shape: AtlasShape, j: usize) -> Vec<Vec<Var>> {
    (1..=shape.m).map(|i| shape.p_vars(i, j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{is_multilinear, is_well_supported, poly_det};

    fn matrix_poly(mat: &[Vec<Entry>], shape: AtlasShape) -> Vec<Vec<Polynomial>> {
        mat.iter()
            .map(|r| {
                r.iter()
                    .map(|e| match e {
                        Entry::Zero => shape.zero(),
                        Entry::Var(v) => shape.var_poly(*v),
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn staircase_matches_generic_determinant() {
        let shape = AtlasShape::new(4, 2);
        let mut specs = enumerate_focals(shape, 2, 2);
        specs.extend(enumerate_focals(shape, 3, 1).into_iter().step_by(7));
        specs.extend(enumerate_focals(shape, 4, 1).into_iter().step_by(13));
        specs.extend(enumerate_m_focals(shape, 1).into_iter().step_by(17));
        for s in specs {
            let mat = focal_matrix(&s, shape).unwrap();
            let direct = poly_det(&matrix_poly(&mat, shape), shape.nvars());
            assert_eq!(focal_det(&s, shape).unwrap().value, direct, "{s}");
        }
    }

    #[test]
    fn two_focal_term_count_and_degrees() {
        let shape = AtlasShape::new(2, 1);
        let s = &enumerate_focals(shape, 2, 1)[0];
        let f = focal_det(s, shape).unwrap();
        assert_eq!(f.value.len(), 216);
        let d = shape.poly_multidegree(&f.value).unwrap();
        assert_eq!(d.0, vec![2, 2, 0, 1, 1]);
        assert!(is_multilinear(&f.value, &p_groups(shape, 1)));
        assert!(is_well_supported(&f.value, &p_groups(shape, 1)));
    }

    #[test]
    fn counts() {
        for m in 2..=6 {
            let s = AtlasShape::new(m, 1);
            let c = |k: usize| (1..=m).combinations(k).count();
            assert_eq!(enumerate_focals(s, 2, 1).len(), c(2));
            assert_eq!(enumerate_focals(s, 3, 1).len(), 27 * c(3));
            assert_eq!(enumerate_focals(s, 4, 1).len(), 81 * c(4));
        }
        // C(9,7): removing two of nine rows never empties a block
        assert_eq!(enumerate_m_focals(AtlasShape::new(3, 1), 1).len(), 36);
    }

    #[test]
    fn text_round_trip_and_rejects() {
        let s: FocalSpec = "k=3 sigma=1,2,4 rows=123|12|23 point=1".parse().unwrap();
        assert_eq!(s.to_string(), "k=3 sigma=1,2,4 rows=123|12|23 point=1");
        assert!("k=2 sigma=1,2 rows=113|123 point=1"
            .parse::<FocalSpec>()
            .is_err());
        assert!("k=2 sigma=1,2 rows=12|123 point=1"
            .parse::<FocalSpec>()
            .is_err());
        assert!(FocalSpec::new(vec![2, 1], vec![vec![1, 2, 3], vec![1, 2, 3]], 1).is_err());
    }

    #[test]
    fn bump_round_trip() {
        let shape = AtlasShape::new(5, 1);
        let f = focal_det(
            &FocalSpec::new(vec![2, 4], vec![vec![1, 2, 3], vec![1, 2, 3]], 1).unwrap(),
            shape,
        )
        .unwrap();
        let g = bump_up(&f, 3, 2).unwrap();
        let canon = focal_det(&g.spec, shape).unwrap();
        assert_eq!(g.value, canon.value.scale_int(g.sign as i64));
        let h = bump_up(&g, 1, 3).unwrap();
        assert_eq!(
            h.value,
            focal_det(&h.spec, shape)
                .unwrap()
                .value
                .scale_int(h.sign as i64)
        );
        let (g2, v) = bump_down(&h).unwrap();
        assert_eq!(v, shape.p(1, 1, 3));
        assert_eq!(g2.value, g.value);
        assert_eq!(g2.sign, g.sign);
        assert!(bump_down(&f).is_none());
        assert_eq!(bump_up(&f, 2, 1), Err(FocalError::CameraAlreadyUsed(2)));
    }

    #[test]
    fn five_focals_bump_down() {
        let shape = AtlasShape::new(5, 1);
        for s in enumerate_m_focals(shape, 1).into_iter().step_by(11) {
            let f = focal_det(&s, shape).unwrap();
            let (g, v) = bump_down(&f).expect("a 5-focal has a single-row camera");
            let canon = focal_det(&g.spec, shape).unwrap();
            assert_eq!(
                f.value,
                canon.value.scale_int(g.sign as i64).mul(&shape.var_poly(v))
            );
        }
    }
}
