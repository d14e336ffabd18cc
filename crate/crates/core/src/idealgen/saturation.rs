use itertools::Itertools;
use num_bigint::BigInt;

use crate::atlas_model::{AtlasShape, CameraArrangement};
use crate::linalg;
use crate::polyring::{poly_det, Polynomial};

/// Which saturating product over minors of the stacked `4 × 3m` matrix
/// `(A_1ᵀ … A_mᵀ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SaturationSpec {
    /// All `4×4` minors: `C(3m, 4)` factors.
    S,
    /// All minors of sizes 1..4: `Σ_k C(4,k)·C(3m,k)` factors.
    SUltra,
}

/// A minor of the stacked matrix; rows are world coordinates `1..=4`, columns
/// are `(camera, row)` pairs listed as 0-based stacked indices `3(i−1)+(r−1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorFactor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorFactor {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Value at a scalar arrangement.
    pub fn eval(&self, arr: &CameraArrangement) -> BigInt {
        let st = arr.stacked();
        let sub: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|&r| self.cols.iter().map(|&c| st[r - 1][c].clone()).collect())
            .collect();
        linalg::det(&sub)
    }
}

/// The symbolic minor.
pub fn minor_factor(shape: AtlasShape, f: &MinorFactor) -> Polynomial {
    let entry = |r: usize, col: usize| shape.var_poly(shape.a(col / 3 + 1, col % 3 + 1, r));
    let m: Vec<Vec<Polynomial>> = f
        .rows
        .iter()
        .map(|&r| f.cols.iter().map(|&c| entry(r, c)).collect())
        .collect();
    poly_det(&m, shape.nvars())
}

/// Factor list of `s` or `s_ultra` for `m` cameras (never expanded).
pub fn saturation_factors(which: SaturationSpec, m: usize) -> Vec<MinorFactor> {
    let sizes: Vec<usize> = match which {
        SaturationSpec::S => vec![4],
        SaturationSpec::SUltra => vec![1, 2, 3, 4],
    };
    let mut out = Vec::new();
    for k in sizes {
        for rows in (1..=4).combinations(k) {
            for cols in (0..3 * m).combinations(k) {
                out.push(MinorFactor {
                    rows: rows.clone(),
                    cols,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas_model::ScalarCamera;

    #[test]
    fn factor_counts() {
        assert_eq!(saturation_factors(SaturationSpec::S, 2).len(), 15);
        assert_eq!(saturation_factors(SaturationSpec::SUltra, 2).len(), 209);
    }

    #[test]
    fn symbolic_matches_scalar() {
        let shape = AtlasShape::new(2, 1);
        let arr = CameraArrangement::new(vec![
            ScalarCamera::from_i64([[1, 2, 0, 3], [0, 1, 4, 1], [2, 0, 1, 5]]),
            ScalarCamera::from_i64([[3, 1, 1, 0], [1, 0, 2, 2], [0, 1, 1, 7]]),
        ]);
        let vals = arr.substitution(shape);
        for f in saturation_factors(SaturationSpec::SUltra, 2)
            .into_iter()
            .step_by(5)
        {
            let sym = minor_factor(shape, &f).substitute(&vals);
            let c = sym
                .terms()
                .first()
                .map(|t| t.0.numer().clone())
                .unwrap_or_default();
            assert_eq!(c, f.eval(&arr), "{f:?}");
        }
    }
}
