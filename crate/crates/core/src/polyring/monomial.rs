//! Sparse monomials over an indexed variable universe.

use std::fmt;

use smallvec::SmallVec;

/// Variable index into a universe.
pub type Var = u16;

/// A power product stored as `(variable, exponent)` pairs sorted by variable
/// index. Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[(Var, u16); 10]>);

impl Monomial {
    /// The unit monomial.
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    /// A single variable.
    pub fn var(v: Var) -> Self {
        let mut s = SmallVec::new();
        s.push((v, 1));
        Monomial(s)
    }

    /// Builds a monomial from `(variable, exponent)` pairs in any order; repeated
    /// variables accumulate and zero exponents are dropped.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u16)>>(pairs: I) -> Self {
        let mut v: SmallVec<[(Var, u16); 10]> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        v.sort_unstable_by_key(|p| p.0);
        let mut out: SmallVec<[(Var, u16); 10]> = SmallVec::with_capacity(v.len());
        for (x, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == x => last.1 += e,
                _ => out.push((x, e)),
            }
        }
        Monomial(out)
    }

    /// Builds a monomial from a product of variables (with repetition).
    pub fn from_vars<I: IntoIterator<Item = Var>>(vars: I) -> Self {
        Self::from_pairs(vars.into_iter().map(|v| (v, 1)))
    }

    /// Sorted `(variable, exponent)` pairs.
    pub fn pairs(&self) -> &[(Var, u16)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1 as u32).sum()
    }

    pub fn exponent(&self, v: Var) -> u16 {
        match self.0.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|p| p.0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|p| p.1 == 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (va, ea) = a[i];
            let (vb, eb) = b[j];
            if va < vb {
                out.push((va, ea));
                i += 1;
            } else if vb < va {
                out.push((vb, eb));
                j += 1;
            } else {
                out.push((va, ea + eb));
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        let (a, b) = (&self.0, &other.0);
        if a.len() > b.len() {
            return false;
        }
        let mut j = 0;
        for &(va, ea) in a.iter() {
            while j < b.len() && b[j].0 < va {
                j += 1;
            }
            if j == b.len() || b[j].0 != va || b[j].1 < ea {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut out = SmallVec::with_capacity(other.0.len());
        let mut i = 0;
        for &(vb, eb) in other.0.iter() {
            if i < self.0.len() && self.0[i].0 == vb {
                let e = eb - self.0[i].1;
                if e > 0 {
                    out.push((vb, e));
                }
                i += 1;
            } else {
                out.push((vb, eb));
            }
        }
        Some(Monomial(out))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (va, ea) = a[i];
            let (vb, eb) = b[j];
            if va < vb {
                out.push((va, ea));
                i += 1;
            } else if vb < va {
                out.push((vb, eb));
                j += 1;
            } else {
                out.push((va, ea.max(eb)));
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// True iff the two monomials share no variable.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// Applies a variable relabelling; the result is re-sorted.
    pub fn relabel(&self, map: &[Var]) -> Monomial {
        let mut v: SmallVec<[(Var, u16); 10]> =
            self.0.iter().map(|&(x, e)| (map[x as usize], e)).collect();
        v.sort_unstable_by_key(|p| p.0);
        Monomial(v)
    }

    /// Bit mask of `variable mod 64` presence, used to reject divisibility early.
    pub fn divmask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, p| m | (1u64 << (p.0 % 64)))
    }

    /// Largest variable index present, if any.
    pub fn max_var(&self) -> Option<Var> {
        self.0.last().map(|p| p.0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    format!("x{v}")
                } else {
                    format!("x{v}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_div_lcm() {
        let a = Monomial::from_pairs([(0, 2), (3, 1)]);
        let b = Monomial::from_pairs([(3, 2), (5, 1)]);
        let ab = a.mul(&b);
        assert_eq!(ab, Monomial::from_pairs([(0, 2), (3, 3), (5, 1)]));
        assert!(a.divides(&ab));
        assert_eq!(a.quotient_of(&ab), Some(b.clone()));
        assert_eq!(a.lcm(&b), Monomial::from_pairs([(0, 2), (3, 2), (5, 1)]));
        assert!(!a.is_coprime(&b));
        assert!(Monomial::var(1).is_coprime(&a));
        assert!(!b.divides(&a));
    }

    #[test]
    fn from_pairs_merges_and_drops_zero() {
        let m = Monomial::from_pairs([(2, 1), (1, 0), (2, 2)]);
        assert_eq!(m.pairs(), &[(2, 3)]);
        assert!(!m.is_squarefree());
        assert_eq!(m.degree(), 3);
    }
}
