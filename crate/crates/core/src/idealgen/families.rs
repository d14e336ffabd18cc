use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::atlas_model::AtlasShape;
use crate::focal::{enumerate_focals, enumerate_m_focals, focal_det, FocalSpec};
use crate::polyring::{poly_det, Polynomial};

/// Which generator family a set holds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Minors2,
    GM,
    GAqp,
    Focals234,
    MFocals,
    /// Union of the base family over the listed world points.
    SumExtended {
        base: Box<Family>,
        points: Vec<usize>,
    },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Minors2 => write!(f, "minors2"),
            Family::GM => write!(f, "gm"),
            Family::GAqp => write!(f, "gaqp"),
            Family::Focals234 => write!(f, "focals234"),
            Family::MFocals => write!(f, "mfocals"),
            Family::SumExtended { base, points } => {
                write!(f, "sum({base}; {})", points.iter().join(","))
            }
        }
    }
}

/// Provenance of one generator; camera, row and point indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GenTag {
    /// `det((A_i q_j | p_ij)[{r1,r2}, :])`
    Minor {
        i: usize,
        j: usize,
        rows: (usize, usize),
    },
    /// `det(A_i[:,1] | A_i q | p_i)`
    Deg4 {
        i: usize,
        j: usize,
    },
    Deg5 {
        cams: (usize, usize),
        rows: [(usize, usize); 2],
        j: usize,
    },
    /// `cams = (i, j)` is ordered; `rows = (k1, k2)` indexes rows of camera `i`.
    Deg6 {
        cams: (usize, usize),
        rows: (usize, usize),
        j: usize,
    },
    Deg7 {
        cams: [usize; 3],
        rows: [(usize, usize); 3],
        j: usize,
    },
    Focal(FocalSpec),
    /// `q_j[4]` times the focal.
    BumpedFocal(FocalSpec),
}

impl GenTag {
    pub fn is_bumped(&self) -> bool {
        matches!(self, GenTag::BumpedFocal(_))
    }
}

/// An ordered list of generators with their provenance and degree census.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub label: Family,
    pub shape: AtlasShape,
    pub polys: Vec<Polynomial>,
    pub tags: Vec<GenTag>,
}

impl GeneratorSet {
    fn new(label: Family, shape: AtlasShape, items: Vec<(GenTag, Polynomial)>) -> Self {
        let (tags, polys) = items.into_iter().unzip();
        GeneratorSet {
            label,
            shape,
            polys,
            tags,
        }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Number of generators per total degree.
    pub fn census(&self) -> BTreeMap<u32, usize> {
        let mut c = BTreeMap::new();
        for p in &self.polys {
            *c.entry(p.total_degree().unwrap_or(0)).or_insert(0) += 1;
        }
        c
    }

    pub fn census_line(&self) -> String {
        let parts = self
            .census()
            .iter()
            .map(|(d, n)| format!("{d}:{n}"))
            .join(" ");
        format!(
            "# {} m={} n={} count={} census {}",
            self.label,
            self.shape.m,
            self.shape.n,
            self.len(),
            parts
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GenTag, &Polynomial)> {
        self.tags.iter().zip(&self.polys)
    }
}

/// Symbolic building blocks at world point `j`.
struct Blocks {
    s: AtlasShape,
    j: usize,
}

impl Blocks {
    fn a(&self, i: usize, r: usize, c: usize) -> Polynomial {
        self.s.var_poly(self.s.a(i, r, c))
    }

    fn q(&self, k: usize) -> Polynomial {
        self.s.var_poly(self.s.q(self.j, k))
    }

    fn p(&self, i: usize, r: usize) -> Polynomial {
        self.s.var_poly(self.s.p(i, self.j, r))
    }

    /// `(A_i q)[r]`
    fn aq(&self, i: usize, r: usize) -> Polynomial {
        (1..=4).fold(self.s.zero(), |acc, c| {
            acc.add(&self.a(i, r, c).mul(&self.q(c)))
        })
    }

    /// `det((A_i q | p_i)[{r1,r2}, :])`
    fn minor_aq(&self, i: usize, r1: usize, r2: usize) -> Polynomial {
        self.aq(i, r1)
            .mul(&self.p(i, r2))
            .sub(&self.aq(i, r2).mul(&self.p(i, r1)))
    }

    /// `det((A_i[:,1] | p_i)[{r1,r2}, :])`
    fn minor_a1(&self, i: usize, r1: usize, r2: usize) -> Polynomial {
        self.a(i, r1, 1)
            .mul(&self.p(i, r2))
            .sub(&self.a(i, r2, 1).mul(&self.p(i, r1)))
    }

    /// `det [A_a[ra, 1:2]; A_b[rb, 1:2]]`
    fn d2(&self, a: usize, ra: usize, b: usize, rb: usize) -> Polynomial {
        self.a(a, ra, 1)
            .mul(&self.a(b, rb, 2))
            .sub(&self.a(a, ra, 2).mul(&self.a(b, rb, 1)))
    }

    fn det3(&self, cols: [Vec<Polynomial>; 3]) -> Polynomial {
        let m: Vec<Vec<Polynomial>> = (0..3)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        poly_det(&m, self.s.nvars())
    }

    fn col_a(&self, i: usize, c: usize) -> Vec<Polynomial> {
        (1..=3).map(|r| self.a(i, r, c)).collect()
    }

    fn col_aq(&self, i: usize) -> Vec<Polynomial> {
        (1..=3).map(|r| self.aq(i, r)).collect()
    }

    fn col_p(&self, i: usize) -> Vec<Polynomial> {
        (1..=3).map(|r| self.p(i, r)).collect()
    }

    fn deg4(&self, i: usize) -> Polynomial {
        self.det3([self.col_a(i, 1), self.col_aq(i), self.col_p(i)])
    }

    fn deg5(&self, i: usize, ri: (usize, usize), k: usize, rk: (usize, usize)) -> Polynomial {
        let x = self
            .minor_a1(i, ri.0, ri.1)
            .mul(&self.minor_aq(k, rk.0, rk.1));
        let y = self
            .minor_a1(k, rk.0, rk.1)
            .mul(&self.minor_aq(i, ri.0, ri.1));
        x.sub(&y)
    }

    /// `Σ_l (−1)^l N_k^l B_l + det(A_k[:,1] | A_k[:,2] | p_k) · M_i^{k1 k2}` where
    /// `N_k^l` drops row `l` of `(A_k q | p_k)`; the alternating sign makes the
    /// `q[1]` and `q[2]` parts cancel.
    fn deg6(&self, i: usize, k: usize, rows: (usize, usize)) -> Polynomial {
        self.deg6_signed(i, k, rows, true)
    }

    fn deg6_signed(
        &self,
        i: usize,
        k: usize,
        (k1, k2): (usize, usize),
        alternating: bool,
    ) -> Polynomial {
        let mut acc = self.s.zero();
        for l in 1..=3 {
            let (a, b) = match l {
                1 => (2, 3),
                2 => (1, 3),
                _ => (1, 2),
            };
            let n = self.minor_aq(k, a, b);
            let bl = self
                .p(i, k1)
                .mul(&self.d2(i, k2, k, l))
                .sub(&self.p(i, k2).mul(&self.d2(i, k1, k, l)));
            let t = n.mul(&bl);
            acc = if l % 2 == 1 || !alternating {
                acc.sub(&t)
            } else {
                acc.add(&t)
            };
        }
        let d = self.det3([self.col_a(k, 1), self.col_a(k, 2), self.col_p(k)]);
        acc.add(&d.mul(&self.minor_aq(i, k1, k2)))
    }

    /// The bracket pairing two cameras' row pairs in the degree-7 elements.
    fn bracket(
        &self,
        a: usize,
        (a1, a2): (usize, usize),
        b: usize,
        (b1, b2): (usize, usize),
    ) -> Polynomial {
        let t = |ra: usize, rb: usize, da: usize, db: usize| {
            self.p(a, ra)
                .mul(&self.p(b, rb))
                .mul(&self.d2(a, da, b, db))
        };
        t(a1, b1, a2, b2)
            .sub(&t(a1, b2, a2, b1))
            .sub(&t(a2, b1, a1, b2))
            .add(&t(a2, b2, a1, b1))
    }

    fn deg7(&self, c: [usize; 3], r: [(usize, usize); 3]) -> Polynomial {
        let x = self
            .minor_aq(c[0], r[0].0, r[0].1)
            .mul(&self.bracket(c[1], r[1], c[2], r[2]));
        let y = self
            .minor_aq(c[1], r[1].0, r[1].1)
            .mul(&self.bracket(c[0], r[0], c[2], r[2]));
        let z = self
            .minor_aq(c[2], r[2].0, r[2].1)
            .mul(&self.bracket(c[0], r[0], c[1], r[1]));
        x.sub(&y).add(&z)
    }
}

/// The degree-6 element for `cams = (i, k)` with a constant `−1` in place of
/// the alternating sign. It does not vanish on correspondences; it exists to
/// check that the vanishing suites detect sign errors.
pub fn deg6_sign_mutant(
    shape: AtlasShape,
    j: usize,
    cams: (usize, usize),
    rows: (usize, usize),
) -> Polynomial {
    Blocks { s: shape, j }.deg6_signed(cams.0, cams.1, rows, false)
}

const PAIRS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];

/// All `3mn` cubics `det((A_i q_j | p_ij)[{r1,r2}, :])`, ordered by point, camera, rows.
pub fn minors2_generators(shape: AtlasShape) -> GeneratorSet {
    let mut items = Vec::new();
    for j in 1..=shape.n {
        let b = Blocks { s: shape, j };
        for i in 1..=shape.m {
            for rows in PAIRS {
                items.push((GenTag::Minor { i, j, rows }, b.minor_aq(i, rows.0, rows.1)));
            }
        }
    }
    GeneratorSet::new(Family::Minors2, shape, items)
}

fn focal_items(
    shape: AtlasShape,
    specs: Vec<FocalSpec>,
    bumped: bool,
) -> Vec<(GenTag, Polynomial)> {
    specs
        .into_par_iter()
        .map(|s| {
            let f = focal_det(&s, shape).expect("spec fits the shape").value;
            if bumped {
                let q4 = shape.var_poly(shape.q(s.point(), 4));
                (GenTag::BumpedFocal(s), q4.mul(&f))
            } else {
                (GenTag::Focal(s), f)
            }
        })
        .collect()
}

fn appendix_items(shape: AtlasShape, j: usize, bumped: bool) -> Vec<(GenTag, Polynomial)> {
    let b = Blocks { s: shape, j };
    let m = shape.m;
    let mut items = Vec::new();
    for i in 1..=m {
        for rows in PAIRS {
            items.push((GenTag::Minor { i, j, rows }, b.minor_aq(i, rows.0, rows.1)));
        }
    }
    for i in 1..=m {
        items.push((GenTag::Deg4 { i, j }, b.deg4(i)));
    }
    let pairs: Vec<(usize, usize)> = (1..=m).tuple_combinations().collect();
    let deg5: Vec<_> = pairs
        .par_iter()
        .flat_map_iter(|&(i, k)| {
            let b = Blocks { s: shape, j };
            PAIRS
                .into_iter()
                .cartesian_product(PAIRS)
                .map(move |(ri, rk)| {
                    (
                        GenTag::Deg5 {
                            cams: (i, k),
                            rows: [ri, rk],
                            j,
                        },
                        b.deg5(i, ri, k, rk),
                    )
                })
        })
        .collect();
    items.extend(deg5);
    let ordered: Vec<(usize, usize)> = (1..=m)
        .cartesian_product(1..=m)
        .filter(|(i, k)| i != k)
        .collect();
    let deg6: Vec<_> = ordered
        .par_iter()
        .flat_map_iter(|&(i, k)| {
            let b = Blocks { s: shape, j };
            PAIRS.into_iter().map(move |rows| {
                (
                    GenTag::Deg6 {
                        cams: (i, k),
                        rows,
                        j,
                    },
                    b.deg6(i, k, rows),
                )
            })
        })
        .collect();
    items.extend(deg6);
    let twos = enumerate_focals(shape, 2, j);
    let threes = enumerate_focals(shape, 3, j);
    let fours = enumerate_focals(shape, 4, j);
    items.extend(focal_items(shape, twos, bumped));
    let triples: Vec<Vec<usize>> = (1..=m).combinations(3).collect();
    let deg7: Vec<_> = triples
        .par_iter()
        .flat_map_iter(|c| {
            let b = Blocks { s: shape, j };
            let c = [c[0], c[1], c[2]];
            (0..3)
                .map(|_| PAIRS)
                .multi_cartesian_product()
                .map(move |r| {
                    let r = [r[0], r[1], r[2]];
                    (
                        GenTag::Deg7 {
                            cams: c,
                            rows: r,
                            j,
                        },
                        b.deg7(c, r),
                    )
                })
        })
        .collect();
    items.extend(deg7);
    items.extend(focal_items(shape, threes, bumped));
    items.extend(focal_items(shape, fours, bumped));
    // group by total degree, keeping construction order within a degree
    items.sort_by_key(|(_, p)| p.total_degree().unwrap_or(0));
    items
}

/// `G_M` for world point `j` of `shape`.
pub fn gm_generators_at(shape: AtlasShape, j: usize) -> GeneratorSet {
    GeneratorSet::new(Family::GM, shape, appendix_items(shape, j, true))
}

/// `G_M` for `n = 1`: degrees 3..9 with counts `3m, m, 9C(m,2), 6C(m,2),
/// C(m,2)+27C(m,3), 27C(m,3), 81C(m,4)`.
pub fn gm_generators(m: usize) -> GeneratorSet {
    gm_generators_at(AtlasShape::new(m, 1), 1)
}

/// `G_Aqp` for world point `j`: `G_M` with every `q[4]`-bumped focal bumped down.
pub fn gaqp_generators_at(shape: AtlasShape, j: usize) -> GeneratorSet {
    GeneratorSet::new(Family::GAqp, shape, appendix_items(shape, j, false))
}

pub fn gaqp_generators(m: usize) -> GeneratorSet {
    gaqp_generators_at(AtlasShape::new(m, 1), 1)
}

/// Focal families, united over all world points of the shape.
pub fn focal_ideal_generators(shape: AtlasShape, family: &Family) -> GeneratorSet {
    let mut specs = Vec::new();
    for j in 1..=shape.n {
        match family {
            Family::Focals234 => {
                for k in 2..=4 {
                    specs.extend(enumerate_focals(shape, k, j));
                }
            }
            Family::MFocals => specs.extend(enumerate_m_focals(shape, j)),
            other => panic!("{other} is not a focal family"),
        }
    }
    let label = if shape.n == 1 {
        family.clone()
    } else {
        Family::SumExtended {
            base: Box::new(family.clone()),
            points: (1..=shape.n).collect(),
        }
    };
    GeneratorSet::new(label, shape, focal_items(shape, specs, false))
}

/// The union of a per-point family over all world points of `shape`.
pub fn sum_extended(shape: AtlasShape, base: &Family) -> GeneratorSet {
    let points: Vec<usize> = (1..=shape.n).collect();
    let mut items = Vec::new();
    for &j in &points {
        match base {
            Family::GM => items.extend(appendix_items(shape, j, true)),
            Family::GAqp => items.extend(appendix_items(shape, j, false)),
            Family::Minors2 => {
                let b = Blocks { s: shape, j };
                for i in 1..=shape.m {
                    for rows in PAIRS {
                        items.push((GenTag::Minor { i, j, rows }, b.minor_aq(i, rows.0, rows.1)));
                    }
                }
            }
            Family::Focals234 | Family::MFocals => {
                let specs = if *base == Family::Focals234 {
                    (2..=4)
                        .flat_map(|k| enumerate_focals(shape, k, j))
                        .collect()
                } else {
                    enumerate_m_focals(shape, j)
                };
                items.extend(focal_items(shape, specs, false));
            }
            Family::SumExtended { .. } => panic!("nested sums are not supported"),
        }
    }
    GeneratorSet::new(
        Family::SumExtended {
            base: Box::new(base.clone()),
            points,
        },
        shape,
        items,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Var;

    fn binom(n: usize, k: usize) -> usize {
        (1..=n).combinations(k).count()
    }

    #[test]
    fn gm_and_gaqp_census() {
        for m in 1..=3 {
            let gm = gm_generators(m).census();
            let c2 = binom(m, 2);
            let c3 = binom(m, 3);
            let want = [
                (3, 3 * m),
                (4, m),
                (5, 9 * c2),
                (6, 6 * c2),
                (7, c2 + 27 * c3),
                (8, 27 * c3),
            ];
            for (d, n) in want {
                assert_eq!(gm.get(&d).copied().unwrap_or(0), n, "m={m} degree {d}");
            }
            let ga = gaqp_generators(m).census();
            let want = [
                (3, 3 * m),
                (4, m),
                (5, 9 * c2),
                (6, 7 * c2),
                (7, 54 * c3),
                (8, 0),
                (9, 0),
            ];
            for (d, n) in want {
                assert_eq!(ga.get(&d).copied().unwrap_or(0), n, "m={m} degree {d}");
            }
        }
    }

    #[test]
    fn q_support_stratification() {
        let s = AtlasShape::new(3, 1);
        let qs: Vec<Var> = s.q_vars(1);
        for (tag, p) in gm_generators(3).iter() {
            let sup: Vec<usize> = (1..=4)
                .filter(|&k| p.support().contains(&qs[k - 1]))
                .collect();
            let want: Vec<usize> = match (tag, p.total_degree().unwrap()) {
                (GenTag::BumpedFocal(_), _) => vec![4],
                (_, 3) => vec![1, 2, 3, 4],
                (_, 4) | (_, 5) => vec![2, 3, 4],
                _ => vec![3, 4],
            };
            assert_eq!(sup, want, "{tag:?}");
        }
    }

    #[test]
    fn focal_family_sizes() {
        assert_eq!(
            focal_ideal_generators(AtlasShape::new(2, 1), &Family::Focals234).len(),
            1
        );
        assert_eq!(
            focal_ideal_generators(AtlasShape::new(3, 1), &Family::Focals234).len(),
            30
        );
        assert_eq!(
            focal_ideal_generators(AtlasShape::new(2, 2), &Family::Focals234).len(),
            2
        );
        assert_eq!(minors2_generators(AtlasShape::new(1, 1)).len(), 3);
        assert_eq!(
            sum_extended(AtlasShape::new(2, 2), &Family::GAqp).len(),
            2 * gaqp_generators(2).len()
        );
    }
}
