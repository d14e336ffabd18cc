//! Exact multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};
use super::order::{cmp_grevlex, TermOrder};
use super::PolyError;

/// Rational coefficient type.
pub type Q = BigRational;

/// Canonical comparison: GRevLex in variable index order.
pub(crate) fn canon_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    cmp_grevlex(a.pairs(), b.pairs())
}

/// Polynomial over a universe of `nvars` variables.
///
/// Terms are sorted descending under the canonical order, monomials are
/// distinct and coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Q, Monomial)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(c, Monomial::one())],
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, v: Var) -> Self {
        assert!((v as usize) < nvars);
        Polynomial {
            nvars,
            terms: vec![(Q::one(), Monomial::var(v))],
        }
    }

    pub fn monomial(nvars: usize, c: Q, m: Monomial) -> Self {
        Self::from_terms(nvars, vec![(c, m)])
    }

    /// Builds a canonical polynomial from arbitrary terms (duplicates merged,
    /// zeros dropped).
    pub fn from_terms(nvars: usize, terms: Vec<(Q, Monomial)>) -> Self {
        let mut map: HashMap<Monomial, Q> = HashMap::with_capacity(terms.len());
        for (c, m) in terms {
            debug_assert!(m.max_var().is_none_or(|v| (v as usize) < nvars));
            *map.entry(m).or_insert_with(Q::zero) += c;
        }
        let mut t: Vec<(Q, Monomial)> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c, m))
            .collect();
        t.sort_unstable_by(|a, b| canon_cmp(&b.1, &a.1));
        Polynomial { nvars, terms: t }
    }

    /// Integer-coefficient constructor.
    pub fn from_int_terms(nvars: usize, terms: Vec<(BigInt, Monomial)>) -> Self {
        Self::from_terms(
            nvars,
            terms
                .into_iter()
                .map(|(c, m)| (Q::from_integer(c), m))
                .collect(),
        )
    }

    /// Trusted constructor for terms already canonical.
    pub(crate) fn from_sorted_unchecked(nvars: usize, terms: Vec<(Q, Monomial)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| canon_cmp(&w[0].1, &w[1].1) == Ordering::Greater));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Q, Monomial)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|t| &t.1)
    }

    fn check_universe(&self, other: &Polynomial) {
        assert_eq!(
            self.nvars, other.nvars,
            "operands must share one variable universe"
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_universe(other);
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match canon_cmp(&a[i].1, &b[j].1) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].0 + &b[j].0;
                    if !c.is_zero() {
                        out.push((c, a[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(c, m)| (-c, m.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, m)| (a * c, m.clone())).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Polynomial {
        self.scale(&Q::from_integer(BigInt::from(c)))
    }

    /// Multiplication by a term `c·m`; order is preserved.
    pub fn mul_term(&self, c: &Q, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, t)| (a * c, t.mul(m))).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_universe(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let mut map: HashMap<Monomial, Q> = HashMap::with_capacity(self.len() * other.len());
        for (a, ma) in &self.terms {
            for (b, mb) in &other.terms {
                *map.entry(ma.mul(mb)).or_insert_with(Q::zero) += a * b;
            }
        }
        let mut t: Vec<(Q, Monomial)> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c, m))
            .collect();
        t.sort_unstable_by(|a, b| canon_cmp(&b.1, &a.1));
        Polynomial {
            nvars: self.nvars,
            terms: t,
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Polynomial::one(self.nvars);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Total degree (None for the zero polynomial).
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.1.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|t| t.1.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Variables occurring in some term, sorted.
    pub fn support(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self
            .terms
            .iter()
            .flat_map(|t| t.1.vars().collect::<Vec<_>>())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Leading term under `ord`.
    pub fn leading_term(&self, ord: &TermOrder) -> Result<(Q, Monomial), PolyError> {
        let best = self
            .terms
            .iter()
            .max_by(|a, b| ord.compare(&a.1, &b.1))
            .ok_or(PolyError::ZeroPolynomial)?;
        Ok(best.clone())
    }

    pub fn leading_monomial(&self, ord: &TermOrder) -> Result<Monomial, PolyError> {
        self.leading_term(ord).map(|t| t.1)
    }

    /// Terms sorted descending under `ord`.
    pub fn sorted_terms(&self, ord: &TermOrder) -> Vec<(Q, Monomial)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| ord.compare(&b.1, &a.1));
        t
    }

    /// Integer-primitive scaling with positive leading coefficient under the
    /// canonical order.
    pub fn normalized(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let (ints, _) = self.to_primitive_integers();
        let mut terms: Vec<(Q, Monomial)> = ints
            .into_iter()
            .zip(self.terms.iter())
            .map(|(c, t)| (Q::from_integer(c), t.1.clone()))
            .collect();
        if terms[0].0.is_negative() {
            for t in terms.iter_mut() {
                t.0 = -t.0.clone();
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    /// Coefficients scaled to coprime integers (sign of the input kept), with
    /// the rational factor `s` such that `self = s · (result)`.
    pub fn to_primitive_integers(&self) -> (Vec<BigInt>, Q) {
        if self.is_zero() {
            return (Vec::new(), Q::one());
        }
        let mut den = BigInt::one();
        for (c, _) in &self.terms {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .terms
            .iter()
            .map(|(c, _)| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        let ints: Vec<BigInt> = ints.into_iter().map(|c| c / &g).collect();
        (ints, Q::new(g, den))
    }

    /// True iff `self == ±other`.
    pub fn eq_up_to_sign(&self, other: &Polynomial) -> bool {
        self == other || *self == other.neg()
    }

    /// Exact division by a variable when every term is divisible by it.
    pub fn div_by_var(&self, v: Var) -> Option<Polynomial> {
        let x = Monomial::var(v);
        let mut out = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            out.push((c.clone(), x.quotient_of(m)?));
        }
        Some(Polynomial::from_sorted_unchecked(self.nvars, out))
    }

    /// Substitutes values for some variables; others are kept symbolic.
    pub fn substitute(&self, values: &[Option<Q>]) -> Polynomial {
        assert_eq!(values.len(), self.nvars);
        let mut out = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Vec::new();
            for &(v, e) in m.pairs() {
                match &values[v as usize] {
                    Some(val) => {
                        for _ in 0..e {
                            coef *= val;
                        }
                    }
                    None => rest.push((v, e)),
                }
                if coef.is_zero() {
                    break;
                }
            }
            if !coef.is_zero() {
                out.push((coef, Monomial::from_pairs(rest)));
            }
        }
        Polynomial::from_terms(self.nvars, out)
    }

    /// Replaces variables by polynomials (variables mapped to `None` stay).
    pub fn compose(&self, images: &[Option<Polynomial>]) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let mut acc: HashMap<Monomial, Q> = HashMap::new();
        for (c, m) in &self.terms {
            let mut keep = Vec::new();
            let mut prod = Polynomial::constant(self.nvars, c.clone());
            for &(v, e) in m.pairs() {
                match &images[v as usize] {
                    Some(img) => {
                        for _ in 0..e {
                            prod = prod.mul(img);
                        }
                    }
                    None => keep.push((v, e)),
                }
            }
            let km = Monomial::from_pairs(keep);
            for (a, t) in prod.terms {
                *acc.entry(t.mul(&km)).or_insert_with(Q::zero) += a;
            }
        }
        let t: Vec<(Q, Monomial)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c, m))
            .collect();
        Polynomial::from_terms(self.nvars, t)
    }

    /// Evaluates at a full rational point.
    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Q::zero();
        for (c, m) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                for _ in 0..e {
                    t *= &point[v as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Moves the polynomial into a larger universe via an index map.
    pub fn relabel(&self, nvars: usize, map: &[Var]) -> Polynomial {
        Polynomial::from_terms(
            nvars,
            self.terms
                .iter()
                .map(|(c, m)| (c.clone(), m.relabel(map)))
                .collect(),
        )
    }
}

/// Integer polynomial specialised for fast evaluation at integer points.
#[derive(Clone, Debug)]
pub struct IntEvaluator {
    terms: Vec<(BigInt, Option<i64>, Monomial)>,
}

impl IntEvaluator {
    /// Clears denominators; evaluation results are scaled by a positive
    /// constant, which preserves zero tests.
    pub fn new(p: &Polynomial) -> Self {
        let (ints, _) = p.to_primitive_integers();
        let terms = ints
            .into_iter()
            .zip(p.terms())
            .map(|(c, t)| {
                let small = i64::try_from(&c).ok();
                (c, small, t.1.clone())
            })
            .collect();
        IntEvaluator { terms }
    }

    /// Evaluates at an integer point, using checked `i128` arithmetic with a
    /// big-integer fallback.
    pub fn eval(&self, point: &[i64]) -> BigInt {
        let mut fast: i128 = 0;
        let mut slow = BigInt::zero();
        'term: for (c, small, m) in &self.terms {
            if let Some(s) = small {
                let mut acc: i128 = *s as i128;
                let mut ok = true;
                for &(v, e) in m.pairs() {
                    for _ in 0..e {
                        match acc.checked_mul(point[v as usize] as i128) {
                            Some(x) => acc = x,
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if !ok {
                        break;
                    }
                }
                if ok {
                    match fast.checked_add(acc) {
                        Some(x) => fast = x,
                        None => {
                            slow += BigInt::from(fast) + BigInt::from(acc);
                            fast = 0;
                        }
                    }
                    continue 'term;
                }
            }
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                for _ in 0..e {
                    t *= point[v as usize];
                }
            }
            slow += t;
        }
        slow + BigInt::from(fast)
    }

    /// Evaluates at a big-integer point.
    pub fn eval_big(&self, point: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (c, _, m) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                for _ in 0..e {
                    t *= &point[v as usize];
                }
            }
            acc += t;
        }
        acc
    }
}

pub fn q_int(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: Var) -> Polynomial {
        Polynomial::var(3, v)
    }

    #[test]
    fn cancellation() {
        let s = x(0).add(&x(1)).add(&x(0).sub(&x(1)));
        assert_eq!(s, x(0).scale_int(2));
        assert!(x(0).mul(&Polynomial::zero(3)).is_zero());
    }

    #[test]
    fn binomial_square_has_three_terms() {
        let f = x(0).mul(&x(1)).sub(&x(2).mul(&x(1)));
        assert_eq!(f.mul(&f).len(), 3);
    }

    #[test]
    fn normalization() {
        let f = x(0)
            .scale(&Q::new(BigInt::from(-2), BigInt::from(3)))
            .add(&x(1).scale_int(4));
        let n = f.normalized();
        assert_eq!(n, x(0).sub(&x(1).scale_int(6)));
        assert!(n.eq_up_to_sign(&n.neg()));
    }

    #[test]
    fn substitution_and_eval() {
        let f = x(0).mul(&x(1)).add(&x(2));
        let g = f.substitute(&[Some(q_int(2)), None, None]);
        assert_eq!(g, x(1).scale_int(2).add(&x(2)));
        assert_eq!(f.eval(&[q_int(2), q_int(3), q_int(5)]), q_int(11));
        let e = IntEvaluator::new(&f);
        assert_eq!(e.eval(&[2, 3, 5]), BigInt::from(11));
        let big = i64::MAX / 2;
        assert_eq!(
            e.eval(&[big, big, 0]),
            BigInt::from(big) * BigInt::from(big)
        );
    }

    #[test]
    fn compose_matches_eval() {
        let f = x(0).mul(&x(0)).sub(&x(1));
        let img = x(1).add(&x(2));
        let g = f.compose(&[Some(img.clone()), None, None]);
        assert_eq!(g, img.mul(&img).sub(&x(1)));
    }
}
