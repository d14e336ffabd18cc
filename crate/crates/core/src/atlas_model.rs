//! The atlas variable universe, its multigrading, scalar cameras and points,
//! and JSON serialization of arrangements and correspondences.
//!
//! Canonical variable order (index 0 most expensive):
//! `A_1[1,1], A_1[2,1], A_1[3,1], A_1[1,2], …, A_m[3,4], q_1[1], …, q_n[4],
//! p_11[1], …, p_mn[3]`. Camera entries are column-major, image points are
//! ordered by camera and then by world point.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{self, IMat};
use crate::polyring::{Grading, Monomial, MultiDegree, Polynomial, Var, VarNames, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("point lies in the kernel of the camera")]
    BaseLocus,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("zero vector is not a projective point")]
    ZeroPoint,
}

/// Number of cameras `m` and world points `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AtlasShape {
    pub m: usize,
    pub n: usize,
}

/// An indeterminate of the atlas; all indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variable {
    CameraEntry { i: usize, row: usize, col: usize },
    WorldCoord { j: usize, idx: usize },
    ImageCoord { i: usize, j: usize, idx: usize },
}

impl AtlasShape {
    pub fn new(m: usize, n: usize) -> Self {
        assert!(m >= 1 && n >= 1, "shape needs m, n >= 1");
        AtlasShape { m, n }
    }

    pub fn nvars(&self) -> usize {
        12 * self.m + 4 * self.n + 3 * self.m * self.n
    }

    fn q_base(&self) -> usize {
        12 * self.m
    }

    fn p_base(&self) -> usize {
        12 * self.m + 4 * self.n
    }

    /// `A_i[row, col]`.
    pub fn a(&self, i: usize, row: usize, col: usize) -> Var {
        debug_assert!(
            (1..=self.m).contains(&i) && (1..=3).contains(&row) && (1..=4).contains(&col)
        );
        ((i - 1) * 12 + (col - 1) * 3 + (row - 1)) as Var
    }

    /// `q_j[idx]`.
    pub fn q(&self, j: usize, idx: usize) -> Var {
        debug_assert!((1..=self.n).contains(&j) && (1..=4).contains(&idx));
        (self.q_base() + (j - 1) * 4 + (idx - 1)) as Var
    }

    /// `p_ij[idx]`.
    pub fn p(&self, i: usize, j: usize, idx: usize) -> Var {
        debug_assert!(
            (1..=self.m).contains(&i) && (1..=self.n).contains(&j) && (1..=3).contains(&idx)
        );
        (self.p_base() + ((i - 1) * self.n + (j - 1)) * 3 + (idx - 1)) as Var
    }

    pub fn index(&self, v: Variable) -> Var {
        match v {
            Variable::CameraEntry { i, row, col } => self.a(i, row, col),
            Variable::WorldCoord { j, idx } => self.q(j, idx),
            Variable::ImageCoord { i, j, idx } => self.p(i, j, idx),
        }
    }

    pub fn variable(&self, v: Var) -> Variable {
        let v = v as usize;
        if v < self.q_base() {
            let (i, r) = (v / 12, v % 12);
            Variable::CameraEntry {
                i: i + 1,
                row: r % 3 + 1,
                col: r / 3 + 1,
            }
        } else if v < self.p_base() {
            let r = v - self.q_base();
            Variable::WorldCoord {
                j: r / 4 + 1,
                idx: r % 4 + 1,
            }
        } else {
            let r = v - self.p_base();
            let (ij, idx) = (r / 3, r % 3);
            Variable::ImageCoord {
                i: ij / self.n + 1,
                j: ij % self.n + 1,
                idx: idx + 1,
            }
        }
    }

    pub fn a_vars(&self, i: usize) -> Vec<Var> {
        (1..=4)
            .flat_map(|c| (1..=3).map(move |r| (r, c)))
            .map(|(r, c)| self.a(i, r, c))
            .collect()
    }

    pub fn all_a_vars(&self) -> Vec<Var> {
        (1..=self.m).flat_map(|i| self.a_vars(i)).collect()
    }

    pub fn q_vars(&self, j: usize) -> Vec<Var> {
        (1..=4).map(|k| self.q(j, k)).collect()
    }

    pub fn all_q_vars(&self) -> Vec<Var> {
        (1..=self.n).flat_map(|j| self.q_vars(j)).collect()
    }

    pub fn p_vars(&self, i: usize, j: usize) -> Vec<Var> {
        (1..=3).map(|k| self.p(i, j, k)).collect()
    }

    pub fn all_p_vars(&self) -> Vec<Var> {
        (1..=self.m)
            .flat_map(|i| (1..=self.n).flat_map(move |j| (1..=3).map(move |k| (i, j, k))))
            .map(|(i, j, k)| self.p(i, j, k))
            .collect()
    }

    /// Number of multigrading slots: `m + n + mn`.
    pub fn nslots(&self) -> usize {
        self.m + self.n + self.m * self.n
    }

    /// Slot of a variable: `A_i -> i-1`, `q_j -> m+j-1`, `p_ij -> m+n+(i-1)n+(j-1)`.
    pub fn slot(&self, v: Var) -> usize {
        match self.variable(v) {
            Variable::CameraEntry { i, .. } => i - 1,
            Variable::WorldCoord { j, .. } => self.m + j - 1,
            Variable::ImageCoord { i, j, .. } => self.m + self.n + (i - 1) * self.n + (j - 1),
        }
    }

    pub fn grading(&self) -> Grading {
        Grading::new(
            (0..self.nvars()).map(|v| self.slot(v as Var)).collect(),
            self.nslots(),
        )
    }

    pub fn multidegree(&self, m: &Monomial) -> MultiDegree {
        self.grading().degree(m)
    }

    /// Multidegree of a multihomogeneous polynomial (None if not multihomogeneous).
    pub fn poly_multidegree(&self, f: &Polynomial) -> Option<MultiDegree> {
        let g = self.grading();
        let mut it = f.monomials().map(|m| g.degree(m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn name(&self, v: Var) -> String {
        match self.variable(v) {
            Variable::CameraEntry { i, row, col } => format!("A{i}_{row}{col}"),
            Variable::WorldCoord { j, idx } => {
                if self.n == 1 {
                    format!("q_{idx}")
                } else {
                    format!("q{j}_{idx}")
                }
            }
            Variable::ImageCoord { i, j, idx } => {
                if self.n == 1 {
                    format!("p{i}_{idx}")
                } else {
                    format!("p{i}{j}_{idx}")
                }
            }
        }
    }

    pub fn universe(&self) -> Universe {
        Universe::new(*self)
    }

    /// Symbolic polynomial of one variable.
    pub fn var_poly(&self, v: Var) -> Polynomial {
        Polynomial::var(self.nvars(), v)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }
}

/// Names and reverse lookup for the variables of a shape.
#[derive(Clone, Debug)]
pub struct Universe {
    shape: AtlasShape,
    names: Arc<Vec<String>>,
    index: Arc<HashMap<String, Var>>,
}

impl Universe {
    pub fn new(shape: AtlasShape) -> Self {
        let names: Vec<String> = (0..shape.nvars()).map(|v| shape.name(v as Var)).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            index.entry(n.clone()).or_insert(i as Var);
        }
        Universe {
            shape,
            names: Arc::new(names),
            index: Arc::new(index),
        }
    }

    pub fn shape(&self) -> AtlasShape {
        self.shape
    }
}

impl VarNames for Universe {
    fn nvars(&self) -> usize {
        self.names.len()
    }
    fn name(&self, v: Var) -> String {
        self.names[v as usize].clone()
    }
    fn lookup(&self, name: &str) -> Option<Var> {
        self.index.get(name).copied()
    }
}

/// A 3×4 camera matrix in primitive integer form, first nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarCamera {
    rows: [[BigInt; 4]; 3],
}

impl ScalarCamera {
    /// Canonicalizes an integer matrix; the zero matrix is kept as is.
    pub fn new(m: &IMat) -> Result<Self, ModelError> {
        if m.len() != 3 || m.iter().any(|r| r.len() != 4) {
            return Err(ModelError::ShapeMismatch("camera must be 3x4".into()));
        }
        let flat: Vec<BigInt> = m.iter().flatten().cloned().collect();
        let prim = linalg::primitive_vec(&flat);
        let rows = std::array::from_fn(|r| std::array::from_fn(|c| prim[r * 4 + c].clone()));
        Ok(ScalarCamera { rows })
    }

    pub fn from_i64(rows: [[i64; 4]; 3]) -> Self {
        let m: IMat = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::new(&m).expect("3x4")
    }

    /// `(I 0)`.
    pub fn standard() -> Self {
        Self::from_i64([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.rows[row - 1][col - 1]
    }

    pub fn matrix(&self) -> IMat {
        self.rows.iter().map(|r| r.to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix())
    }

    /// Kernel basis over ℚ, each vector in primitive integer form.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        linalg::kernel(&linalg::to_q(&self.matrix()))
            .iter()
            .map(|v| linalg::primitive_from_q(v))
            .collect()
    }

    /// Camera center when the rank is 3.
    pub fn center(&self) -> Option<ProjectivePoint> {
        let k = self.kernel();
        (k.len() == 1).then(|| ProjectivePoint {
            coords: k[0].clone(),
        })
    }

    pub fn apply(&self, q: &[BigInt]) -> Vec<BigInt> {
        linalg::mat_vec(&self.matrix(), q)
    }
}

/// A point of ℙ² or ℙ³ in primitive integer form, first nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<BigInt>,
}

impl ProjectivePoint {
    pub fn new(v: &[BigInt]) -> Result<Self, ModelError> {
        if v.iter().all(|x| x.is_zero()) {
            return Err(ModelError::ZeroPoint);
        }
        Ok(ProjectivePoint {
            coords: linalg::primitive_vec(v),
        })
    }

    pub fn from_i64(v: &[i64]) -> Result<Self, ModelError> {
        Self::new(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    pub fn from_q(v: &[Q]) -> Result<Self, ModelError> {
        if v.iter().all(|x| x.is_zero()) {
            return Err(ModelError::ZeroPoint);
        }
        Ok(ProjectivePoint {
            coords: linalg::primitive_from_q(v),
        })
    }

    /// 2 for image points, 3 for world points.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> &BigInt {
        &self.coords[k - 1]
    }
}

/// `p ~ A q` with the witness `λ` such that `A q = λ p`.
pub fn image_point(
    a: &ScalarCamera,
    q: &ProjectivePoint,
) -> Result<(ProjectivePoint, Q), ModelError> {
    if q.dim() != 3 {
        return Err(ModelError::ShapeMismatch(
            "world point must lie in P^3".into(),
        ));
    }
    let v = a.apply(q.coords());
    if v.iter().all(|x| x.is_zero()) {
        return Err(ModelError::BaseLocus);
    }
    let p = ProjectivePoint::new(&v)?;
    let k = v.iter().position(|x| !x.is_zero()).expect("nonzero");
    Ok((p.clone(), Q::new(v[k].clone(), p.coords[k].clone())))
}

/// An ordered list of scalar cameras.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CameraArrangement {
    pub cameras: Vec<ScalarCamera>,
}

impl CameraArrangement {
    pub fn new(cameras: Vec<ScalarCamera>) -> Self {
        assert!(
            !cameras.is_empty(),
            "an arrangement has at least one camera"
        );
        CameraArrangement { cameras }
    }

    pub fn m(&self) -> usize {
        self.cameras.len()
    }

    pub fn camera(&self, i: usize) -> &ScalarCamera {
        &self.cameras[i - 1]
    }

    /// The 4×3m matrix `(A_1ᵀ … A_mᵀ)`; column `3(i-1)+r-1` is row `r` of `A_i`.
    pub fn stacked(&self) -> IMat {
        let mut out: IMat = (0..4).map(|_| Vec::with_capacity(3 * self.m())).collect();
        for cam in &self.cameras {
            for r in 1..=3 {
                for (c, row) in out.iter_mut().enumerate() {
                    row.push(cam.entry(r, c + 1).clone());
                }
            }
        }
        out
    }

    /// Values for the `A` variables of `shape` (other variables left free).
    pub fn substitution(&self, shape: AtlasShape) -> Vec<Option<Q>> {
        assert_eq!(shape.m, self.m());
        let mut vals = vec![None; shape.nvars()];
        for i in 1..=self.m() {
            for r in 1..=3 {
                for c in 1..=4 {
                    vals[shape.a(i, r, c) as usize] =
                        Some(Q::from_integer(self.camera(i).entry(r, c).clone()));
                }
            }
        }
        vals
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ArrangementJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, ModelError> {
        let j: ArrangementJson = serde_json::from_str(s).map_err(json_err)?;
        j.into_arrangement()
    }

    /// Rows of each camera, one camera per block.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CameraArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, cam) in self.cameras.iter().enumerate() {
            writeln!(f, "camera {}", i + 1)?;
            for r in 1..=3 {
                let row: Vec<String> = (1..=4).map(|c| cam.entry(r, c).to_string()).collect();
                writeln!(f, "{}", row.join(" "))?;
            }
        }
        Ok(())
    }
}

/// A sampled point of the image-formation correspondence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub arrangement: CameraArrangement,
    pub points: Vec<ProjectivePoint>,
    /// `images[i-1][j-1] = p̄_ij`
    pub images: Vec<Vec<ProjectivePoint>>,
    /// `lambdas[i-1][j-1] = λ_ij`
    pub lambdas: Vec<Vec<Q>>,
}

impl Correspondence {
    pub fn shape(&self) -> AtlasShape {
        AtlasShape::new(self.arrangement.m(), self.points.len())
    }

    /// Checks `Ā_i q̄_j = λ_ij p̄_ij` exactly.
    pub fn is_consistent(&self) -> bool {
        let s = self.shape();
        for i in 1..=s.m {
            for j in 1..=s.n {
                let v = self
                    .arrangement
                    .camera(i)
                    .apply(self.points[j - 1].coords());
                let lam = &self.lambdas[i - 1][j - 1];
                let p = self.images[i - 1][j - 1].coords();
                if lam.is_zero()
                    || v.iter().zip(p).any(|(a, b)| {
                        Q::from_integer(a.clone()) != lam * Q::from_integer(b.clone())
                    })
                {
                    return false;
                }
            }
        }
        true
    }

    /// Full integer point of the universe `(A, q, p)`.
    pub fn int_point(&self) -> Vec<BigInt> {
        let s = self.shape();
        let mut v = vec![BigInt::zero(); s.nvars()];
        for i in 1..=s.m {
            for r in 1..=3 {
                for c in 1..=4 {
                    v[s.a(i, r, c) as usize] = self.arrangement.camera(i).entry(r, c).clone();
                }
            }
        }
        for j in 1..=s.n {
            for k in 1..=4 {
                v[s.q(j, k) as usize] = self.points[j - 1].coord(k).clone();
            }
        }
        for i in 1..=s.m {
            for j in 1..=s.n {
                for k in 1..=3 {
                    v[s.p(i, j, k) as usize] = self.images[i - 1][j - 1].coord(k).clone();
                }
            }
        }
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CorrespondenceJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, ModelError> {
        let j: CorrespondenceJson = serde_json::from_str(s).map_err(json_err)?;
        j.into_correspondence()
    }
}

fn json_err(e: serde_json::Error) -> ModelError {
    ModelError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Integer that serializes as a JSON number when it fits in `i64`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            I(i64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::I(x) => Ok(JsonInt(BigInt::from(x))),
            Raw::S(s) => s
                .parse()
                .map(JsonInt)
                .map_err(|_| de::Error::custom(format!("not an integer: {s}"))),
        }
    }
}

/// Rational that serializes as a JSON number when integral, else `"a/b"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonRat(pub Q);

impl Serialize for JsonRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            JsonInt(self.0.numer().clone()).serialize(s)
        } else {
            s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

impl<'de> Deserialize<'de> for JsonRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            I(i64),
            S(String),
        }
        let parse = |s: &str| -> Option<Q> {
            match s.split_once('/') {
                Some((a, b)) => {
                    let a: BigInt = a.trim().parse().ok()?;
                    let b: BigInt = b.trim().parse().ok()?;
                    (!b.is_zero()).then(|| Q::new(a, b))
                }
                None => Some(Q::from_integer(s.trim().parse().ok()?)),
            }
        };
        match Raw::deserialize(d)? {
            Raw::I(x) => Ok(JsonRat(Q::from_integer(BigInt::from(x)))),
            Raw::S(s) => parse(&s)
                .map(JsonRat)
                .ok_or_else(|| de::Error::custom(format!("not a rational: {s}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrangementJson {
    m: usize,
    cameras: Vec<[[JsonInt; 4]; 3]>,
}

impl From<&CameraArrangement> for ArrangementJson {
    fn from(a: &CameraArrangement) -> Self {
        ArrangementJson {
            m: a.m(),
            cameras: a
                .cameras
                .iter()
                .map(|c| {
                    std::array::from_fn(|r| {
                        std::array::from_fn(|k| JsonInt(c.entry(r + 1, k + 1).clone()))
                    })
                })
                .collect(),
        }
    }
}

fn camera_from_json(c: &[[JsonInt; 4]; 3]) -> Result<ScalarCamera, ModelError> {
    ScalarCamera::new(
        &c.iter()
            .map(|r| r.iter().map(|x| x.0.clone()).collect())
            .collect(),
    )
}

impl ArrangementJson {
    fn into_arrangement(self) -> Result<CameraArrangement, ModelError> {
        if self.m == 0 || self.cameras.len() != self.m {
            return Err(ModelError::Parse {
                line: 0,
                column: 0,
                message: format!("expected {} cameras, found {}", self.m, self.cameras.len()),
            });
        }
        Ok(CameraArrangement::new(
            self.cameras
                .iter()
                .map(camera_from_json)
                .collect::<Result<_, _>>()?,
        ))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CorrespondenceJson {
    m: usize,
    n: usize,
    cameras: Vec<[[JsonInt; 4]; 3]>,
    points: Vec<[JsonInt; 4]>,
    images: Vec<Vec<[JsonInt; 3]>>,
    lambdas: Vec<Vec<JsonRat>>,
}

impl From<&Correspondence> for CorrespondenceJson {
    fn from(c: &Correspondence) -> Self {
        let a = ArrangementJson::from(&c.arrangement);
        CorrespondenceJson {
            m: a.m,
            n: c.points.len(),
            cameras: a.cameras,
            points: c
                .points
                .iter()
                .map(|p| std::array::from_fn(|k| JsonInt(p.coords[k].clone())))
                .collect(),
            images: c
                .images
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|p| std::array::from_fn(|k| JsonInt(p.coords[k].clone())))
                        .collect()
                })
                .collect(),
            lambdas: c
                .lambdas
                .iter()
                .map(|row| row.iter().map(|l| JsonRat(l.clone())).collect())
                .collect(),
        }
    }
}

impl CorrespondenceJson {
    fn into_correspondence(self) -> Result<Correspondence, ModelError> {
        let bad = |msg: String| ModelError::Parse {
            line: 0,
            column: 0,
            message: msg,
        };
        if self.m == 0 || self.n == 0 || self.cameras.len() != self.m || self.points.len() != self.n
        {
            return Err(bad("camera or point count disagrees with m, n".into()));
        }
        if self.images.len() != self.m || self.images.iter().any(|r| r.len() != self.n) {
            return Err(bad("images must be an m x n table".into()));
        }
        if self.lambdas.len() != self.m || self.lambdas.iter().any(|r| r.len() != self.n) {
            return Err(bad("lambdas must be an m x n table".into()));
        }
        let arrangement = CameraArrangement::new(
            self.cameras
                .iter()
                .map(camera_from_json)
                .collect::<Result<_, _>>()?,
        );
        let pt = |v: &[JsonInt]| {
            ProjectivePoint::new(&v.iter().map(|x| x.0.clone()).collect::<Vec<_>>())
        };
        let points = self
            .points
            .iter()
            .map(|p| pt(p))
            .collect::<Result<_, _>>()?;
        let images = self
            .images
            .iter()
            .map(|row| row.iter().map(|p| pt(p)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        let lambdas = self
            .lambdas
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.0).collect())
            .collect();
        let c = Correspondence {
            arrangement,
            points,
            images,
            lambdas,
        };
        if !c.is_consistent() {
            return Err(bad("images do not satisfy A q = lambda p".into()));
        }
        Ok(c)
    }
}

/// Sign-insensitive helper: `|x|` as a rational.
pub fn q_abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_indexing_round_trips() {
        for (m, n) in [(1, 1), (2, 3), (4, 2)] {
            let s = AtlasShape::new(m, n);
            for v in 0..s.nvars() {
                assert_eq!(s.index(s.variable(v as Var)), v as Var);
            }
            assert_eq!(s.a(1, 2, 1), 1);
            assert_eq!(s.a(1, 1, 2), 3);
        }
    }

    #[test]
    fn names() {
        let s = AtlasShape::new(2, 1);
        assert_eq!(s.name(s.a(2, 3, 4)), "A2_34");
        assert_eq!(s.name(s.q(1, 4)), "q_4");
        assert_eq!(s.name(s.p(2, 1, 1)), "p2_1");
        let t = AtlasShape::new(2, 2);
        assert_eq!(t.name(t.q(2, 1)), "q2_1");
        assert_eq!(t.name(t.p(1, 2, 3)), "p12_3");
        assert_eq!(t.universe().lookup("p12_3"), Some(t.p(1, 2, 3)));
    }

    #[test]
    fn image_points() {
        let id = ScalarCamera::standard();
        let q = ProjectivePoint::from_i64(&[1, 2, 3, 4]).unwrap();
        assert_eq!(
            image_point(&id, &q).unwrap().0,
            ProjectivePoint::from_i64(&[1, 2, 3]).unwrap()
        );
        let c = ProjectivePoint::from_i64(&[0, 0, 0, 1]).unwrap();
        assert_eq!(image_point(&id, &c), Err(ModelError::BaseLocus));
        let b = ScalarCamera::from_i64([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert_eq!(
            image_point(&b, &q).unwrap().0,
            ProjectivePoint::from_i64(&[2, 3, 4]).unwrap()
        );
        let q2 = ProjectivePoint::from_i64(&[-2, -4, -6, 1]).unwrap();
        let (p, lam) = image_point(&id, &q2).unwrap();
        assert_eq!(p, ProjectivePoint::from_i64(&[1, 2, 3]).unwrap());
        // the stored point is (2,4,6,-1) after canonical scaling
        assert_eq!(lam, crate::polyring::q_int(2));
    }

    #[test]
    fn canonical_scaling() {
        let p = ProjectivePoint::from_i64(&[0, -4, 6]).unwrap();
        assert_eq!(
            p.coords(),
            &[BigInt::from(0), BigInt::from(2), BigInt::from(-3)]
        );
        let p2 = ProjectivePoint::from_i64(&[0, 2, -3]).unwrap();
        assert_eq!(p, p2);
    }

    #[test]
    fn arrangement_json() {
        let a = CameraArrangement::new(vec![
            ScalarCamera::standard(),
            ScalarCamera::from_i64([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
        ]);
        let s = a.to_json();
        assert!(
            s.starts_with(r#"{"m":2,"cameras":[[[1,0,0,0],[0,1,0,0],[0,0,1,0]]"#),
            "{s}"
        );
        assert_eq!(CameraArrangement::from_json(&s).unwrap(), a);
        let bad = r#"{"m":1,"cameras":[[[1,0,0],[0,1,0],[0,0,1]]]}"#;
        assert!(matches!(
            CameraArrangement::from_json(bad),
            Err(ModelError::Parse { line: 1, .. })
        ));
    }
}
