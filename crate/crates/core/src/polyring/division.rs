//! Multivariate division with quotients and S-polynomials over the rationals.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::order::{RankCmp, TermOrder};
use super::poly::{Polynomial, Q};
use super::PolyError;

/// Terms in rank space, descending under a comparator.
type RankTerms = Vec<(Q, Monomial)>;

fn to_rank_terms(p: &Polynomial, ord: &TermOrder, cmp: &RankCmp) -> RankTerms {
    let mut t: RankTerms = p
        .terms()
        .iter()
        .map(|(c, m)| (c.clone(), ord.to_rank(m)))
        .collect();
    t.sort_by(|a, b| cmp.cmp(&b.1, &a.1));
    t
}

fn from_rank_terms(nvars: usize, t: RankTerms, ord: &TermOrder) -> Polynomial {
    Polynomial::from_terms(
        nvars,
        t.into_iter().map(|(c, m)| (c, ord.from_rank(&m))).collect(),
    )
}

/// `a - c·u·b` on descending term lists, starting from index `from` of `a`.
fn sub_scaled(
    a: &[(Q, Monomial)],
    c: &Q,
    u: &Monomial,
    b: &[(Q, Monomial)],
    cmp: &RankCmp,
) -> RankTerms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bj: Option<(Q, Monomial)> = None;
    loop {
        if bj.is_none() && j < b.len() {
            bj = Some((-(c * &b[j].0), b[j].1.mul(u)));
            j += 1;
        }
        match (a.get(i), bj.as_ref()) {
            (None, None) => break,
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(_)) => out.push(bj.take().expect("present")),
            (Some(x), Some(y)) => match cmp.cmp(&x.1, &y.1) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Less => out.push(bj.take().expect("present")),
                Ordering::Equal => {
                    let s = &x.0 + &y.0;
                    if !s.is_zero() {
                        out.push((s, x.1.clone()));
                    }
                    i += 1;
                    bj = None;
                }
            },
        }
    }
    out
}

/// Result of dividing `f` by a list of divisors.
#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Standard multivariate division; divisors are tried in list order and the
/// leading term is processed first.
pub fn divide(
    f: &Polynomial,
    divisors: &[Polynomial],
    ord: &TermOrder,
) -> Result<Division, PolyError> {
    let nvars = f.nvars();
    if divisors.iter().any(|g| g.is_zero()) {
        return Err(PolyError::ZeroPolynomial);
    }
    let cmp = ord.comparator();
    let gs: Vec<RankTerms> = divisors
        .iter()
        .map(|g| to_rank_terms(g, ord, &cmp))
        .collect();
    let mut quots: Vec<Vec<(Q, Monomial)>> = vec![Vec::new(); divisors.len()];
    let mut rem: RankTerms = Vec::new();
    let mut p = to_rank_terms(f, ord, &cmp);
    while let Some((c, t)) = p.first().cloned() {
        let hit = gs
            .iter()
            .enumerate()
            .find_map(|(k, g)| g[0].1.quotient_of(&t).map(|u| (k, u)));
        match hit {
            Some((k, u)) => {
                let q = &c / &gs[k][0].0;
                p = sub_scaled(&p[1..], &q, &u, &gs[k][1..], &cmp);
                quots[k].push((q, u));
            }
            None => {
                rem.push((c, t));
                p.remove(0);
            }
        }
    }
    Ok(Division {
        quotients: quots
            .into_iter()
            .map(|q| from_rank_terms(nvars, q, ord))
            .collect(),
        remainder: from_rank_terms(nvars, rem, ord),
    })
}

/// `S(f,g) = lcm(in f, in g)·(f/in f − g/in g)`, with `in` the leading term.
pub fn s_polynomial(
    f: &Polynomial,
    g: &Polynomial,
    ord: &TermOrder,
) -> Result<Polynomial, PolyError> {
    let (cf, mf) = f.leading_term(ord)?;
    let (cg, mg) = g.leading_term(ord)?;
    let l = mf.lcm(&mg);
    let uf = mf.quotient_of(&l).expect("lcm is a multiple");
    let ug = mg.quotient_of(&l).expect("lcm is a multiple");
    let a = f.mul_term(&(Q::one() / cf), &uf);
    let b = g.mul_term(&(Q::one() / cg), &ug);
    Ok(a.sub(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::text::{parse_poly, NamedVars};

    #[test]
    fn divide_by_self_and_empty() {
        let nv = NamedVars::new(vec!["x", "y"]);
        let g = parse_poly("x*y - y^2", &nv).unwrap();
        let ord = TermOrder::lex(vec![0, 1]);
        let d = divide(&g, std::slice::from_ref(&g), &ord).unwrap();
        assert!(d.remainder.is_zero());
        assert_eq!(d.quotients[0], Polynomial::one(2));
        let d = divide(&g, &[], &ord).unwrap();
        assert_eq!(d.remainder, g);
    }

    #[test]
    fn s_poly_self_is_zero() {
        let nv = NamedVars::new(vec!["x", "y"]);
        let g = parse_poly("x^2 + x*y - 3", &nv).unwrap();
        let ord = TermOrder::grevlex(vec![0, 1]);
        assert!(s_polynomial(&g, &g, &ord).unwrap().is_zero());
    }

    #[test]
    fn division_identity() {
        let nv = NamedVars::new(vec!["x", "y", "z"]);
        let f = parse_poly("x^3*y + 2*x*y*z - z^4 + y", &nv).unwrap();
        let gs = vec![
            parse_poly("x*y - z", &nv).unwrap(),
            parse_poly("x^2 + z^2", &nv).unwrap(),
        ];
        for ord in [
            TermOrder::lex(vec![0, 1, 2]),
            TermOrder::grevlex(vec![2, 0, 1]),
        ] {
            let d = divide(&f, &gs, &ord).unwrap();
            let mut acc = d.remainder.clone();
            for (q, g) in d.quotients.iter().zip(&gs) {
                acc = acc.add(&q.mul(g));
            }
            assert_eq!(acc, f);
            for m in d.remainder.monomials() {
                for g in &gs {
                    assert!(!g.leading_monomial(&ord).unwrap().divides(m));
                }
            }
        }
    }
}
