//! Buchberger-criterion verification, normal forms and a small Buchberger
//! completion, all on fraction-free integer coefficients in rank space.
//!
//! Scaling a polynomial by a nonzero constant changes neither its leading
//! monomial nor whether it reduces to zero, so reductions use pseudo-division
//! `f <- (a/g)·f − (c/g)·u·h` with `g = gcd(a, c)`.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::order::{RankCmp, TermOrder};
use super::poly::{Polynomial, Q};

/// Resource limits; exhausting any of them yields `Inconclusive`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_pairs: Option<usize>,
    pub max_poly_terms: Option<usize>,
    pub wallclock: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_pairs: None,
            max_poly_terms: Some(2_000_000),
            wallclock: None,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            max_pairs: None,
            max_poly_terms: None,
            wallclock: None,
        }
    }
}

/// Outcome of a Buchberger-criterion check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GbStatus {
    Verified,
    /// A pair of generator indices whose S-polynomial leaves a nonzero
    /// head-irreducible remainder (recorded up to a nonzero scalar).
    Refuted {
        pair: (usize, usize),
        remainder: Polynomial,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairStats {
    pub total: usize,
    pub coprime_skipped: usize,
    pub chain_skipped: usize,
    pub reduced: usize,
}

/// Certificate produced by [`verify_groebner`].
#[derive(Clone, Debug)]
pub struct GBCertificate {
    pub generators: Vec<Polynomial>,
    pub order: TermOrder,
    pub status: GbStatus,
    pub leading_monomials: Vec<Monomial>,
    /// Every stored leading monomial is squarefree.
    pub squarefree_initial: bool,
    pub stats: PairStats,
}

impl GBCertificate {
    pub fn is_verified(&self) -> bool {
        self.status == GbStatus::Verified
    }
}

/// Engine polynomial: rank-space monomials, integer coefficients, descending.
#[derive(Clone, Debug)]
pub(crate) struct EPoly {
    pub terms: Vec<(BigInt, Monomial)>,
}

impl EPoly {
    pub fn from_poly(p: &Polynomial, ord: &TermOrder, cmp: &RankCmp) -> EPoly {
        let (ints, _) = p.to_primitive_integers();
        let mut terms: Vec<(BigInt, Monomial)> = ints
            .into_iter()
            .zip(p.terms())
            .map(|(c, t)| (c, ord.to_rank(&t.1)))
            .collect();
        terms.sort_by(|a, b| cmp.cmp(&b.1, &a.1));
        EPoly { terms }
    }

    pub fn to_poly(&self, nvars: usize, ord: &TermOrder) -> Polynomial {
        Polynomial::from_int_terms(
            nvars,
            self.terms
                .iter()
                .map(|(c, m)| (c.clone(), ord.from_rank(m)))
                .collect(),
        )
    }

    pub fn lead(&self) -> &Monomial {
        &self.terms[0].1
    }
}

fn content(terms: &[(BigInt, Monomial)]) -> BigInt {
    let mut g = BigInt::zero();
    for (c, _) in terms {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn make_primitive(terms: &mut [(BigInt, Monomial)]) {
    let g = content(terms);
    if !g.is_zero() && !g.is_one() {
        for t in terms.iter_mut() {
            t.0 /= &g;
        }
    }
}

/// `fa·a − fb·u·b` on descending term lists.
fn combine(
    a: &[(BigInt, Monomial)],
    fa: &BigInt,
    b: &[(BigInt, Monomial)],
    fb: &BigInt,
    u: &Monomial,
    cmp: &RankCmp,
) -> Vec<(BigInt, Monomial)> {
    let a_one = fa.is_one();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut pending: Option<Monomial> = None;
    while i < a.len() || j < b.len() {
        if pending.is_none() && j < b.len() {
            pending = Some(b[j].1.mul(u));
        }
        let ord = match (a.get(i), pending.as_ref()) {
            (Some(x), Some(y)) => cmp.cmp(&x.1, y),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                let c = if a_one { a[i].0.clone() } else { &a[i].0 * fa };
                out.push((c, a[i].1.clone()));
                i += 1;
            }
            Ordering::Less => {
                out.push((-(&b[j].0 * fb), pending.take().expect("pending")));
                j += 1;
            }
            Ordering::Equal => {
                let ca = if a_one { a[i].0.clone() } else { &a[i].0 * fa };
                let s = ca - &b[j].0 * fb;
                if !s.is_zero() {
                    out.push((s, a[i].1.clone()));
                }
                pending = None;
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Leading monomials with divisibility masks for fast reducer lookup.
pub(crate) struct Basis {
    pub polys: Vec<EPoly>,
    masks: Vec<u64>,
}

impl Basis {
    pub fn new(polys: Vec<EPoly>) -> Basis {
        let masks = polys.iter().map(|p| p.lead().divmask()).collect();
        Basis { polys, masks }
    }

    pub fn push(&mut self, p: EPoly) {
        self.masks.push(p.lead().divmask());
        self.polys.push(p);
    }

    fn reducer(&self, t: &Monomial, skip: Option<usize>) -> Option<(usize, Monomial)> {
        let mt = t.divmask();
        for (k, p) in self.polys.iter().enumerate() {
            if Some(k) == skip || self.masks[k] & !mt != 0 {
                continue;
            }
            if let Some(u) = p.lead().quotient_of(t) {
                return Some((k, u));
            }
        }
        None
    }
}

pub(crate) enum Reduced {
    Zero,
    /// Head-irreducible nonzero polynomial.
    Nonzero(Vec<(BigInt, Monomial)>),
    Limit(String),
}

pub(crate) struct Budget {
    pub max_terms: Option<usize>,
    pub deadline: Option<Instant>,
}

impl Budget {
    pub fn from_limits(l: &Limits, start: Instant) -> Budget {
        Budget {
            max_terms: l.max_poly_terms,
            deadline: l.wallclock.map(|d| start + d),
        }
    }

    fn check(&self, len: usize) -> Option<String> {
        if let Some(m) = self.max_terms {
            if len > m {
                return Some(format!("intermediate polynomial exceeded {m} terms"));
            }
        }
        if let Some(d) = self.deadline {
            if Instant::now() > d {
                return Some("wallclock limit reached".to_string());
            }
        }
        None
    }
}

/// One reduction step of the head of `f` by basis element `k` with cofactor `u`.
/// Returns the new list and the factor by which `f` was scaled.
fn step(
    f: &[(BigInt, Monomial)],
    h: &EPoly,
    u: &Monomial,
    cmp: &RankCmp,
) -> (Vec<(BigInt, Monomial)>, BigInt) {
    let c = &f[0].0;
    let a = &h.terms[0].0;
    let g = c.gcd(a);
    let mut fa = a / &g;
    let mut fc = c / &g;
    if fa.is_negative() {
        fa = -fa;
        fc = -fc;
    }
    (combine(&f[1..], &fa, &h.terms[1..], &fc, u, cmp), fa)
}

/// Head-reduces until zero or a head-irreducible polynomial remains.
pub(crate) fn head_reduce(
    mut f: Vec<(BigInt, Monomial)>,
    basis: &Basis,
    cmp: &RankCmp,
    budget: &Budget,
) -> Reduced {
    let mut scaled_steps = 0u32;
    while !f.is_empty() {
        if let Some(msg) = budget.check(f.len()) {
            return Reduced::Limit(msg);
        }
        match basis.reducer(&f[0].1, None) {
            None => return Reduced::Nonzero(f),
            Some((k, u)) => {
                let (nf, fa) = step(&f, &basis.polys[k], &u, cmp);
                f = nf;
                if !fa.is_one() {
                    scaled_steps += 1;
                    if scaled_steps.is_multiple_of(4) {
                        make_primitive(&mut f);
                    }
                }
            }
        }
    }
    Reduced::Zero
}

/// Full reduction; the remainder equals the rational division remainder.
pub(crate) fn full_reduce(
    mut f: Vec<(BigInt, Monomial)>,
    basis: &Basis,
    skip: Option<usize>,
    cmp: &RankCmp,
    budget: &Budget,
) -> Result<Vec<(Q, Monomial)>, String> {
    let mut scale = BigInt::one();
    let mut rem: Vec<(Q, Monomial)> = Vec::new();
    while !f.is_empty() {
        if let Some(msg) = budget.check(f.len()) {
            return Err(msg);
        }
        match basis.reducer(&f[0].1, skip) {
            None => {
                let (c, t) = f.remove(0);
                rem.push((Q::new(c, scale.clone()), t));
            }
            Some((k, u)) => {
                let (nf, fa) = step(&f, &basis.polys[k], &u, cmp);
                f = nf;
                if !fa.is_one() {
                    scale *= &fa;
                    let g = content(&f).gcd(&scale);
                    if !g.is_one() && !g.is_zero() {
                        for t in f.iter_mut() {
                            t.0 /= &g;
                        }
                        scale /= &g;
                    }
                }
            }
        }
    }
    Ok(rem)
}

/// S-polynomial up to a nonzero scalar, leading terms cancelled.
pub(crate) fn spoly(f: &EPoly, g: &EPoly, cmp: &RankCmp) -> Vec<(BigInt, Monomial)> {
    let l = f.lead().lcm(g.lead());
    let uf = f.lead().quotient_of(&l).expect("lcm multiple");
    let ug = g.lead().quotient_of(&l).expect("lcm multiple");
    let (cf, cg) = (&f.terms[0].0, &g.terms[0].0);
    let gg = cf.gcd(cg);
    let a = cg / &gg;
    let b = cf / &gg;
    // a·uf·f − b·ug·g
    let fu: Vec<(BigInt, Monomial)> = f.terms[1..]
        .iter()
        .map(|(c, m)| (c * &a, m.mul(&uf)))
        .collect();
    let mut s = combine(&fu, &BigInt::one(), &g.terms[1..], &b, &ug, cmp);
    make_primitive(&mut s);
    s
}

/// Pairs that must be reduced, after the coprime and chain criteria, in a
/// fixed processing order (by degree of the lcm, then indices).
fn critical_pairs(leads: &[Monomial], stats: &mut PairStats) -> Vec<(usize, usize)> {
    let n = leads.len();
    let mut pairs: Vec<(u32, usize, usize)> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 0..n {
        for i in 0..j {
            pairs.push((leads[i].lcm(&leads[j]).degree(), j, i));
        }
    }
    pairs.sort_unstable();
    stats.total = pairs.len();
    let mut in_b = vec![true; n * n];
    let idx = |i: usize, j: usize| if i < j { i * n + j } else { j * n + i };
    let masks: Vec<u64> = leads.iter().map(|m| m.divmask()).collect();
    let mut out = Vec::new();
    for &(_, j, i) in &pairs {
        in_b[idx(i, j)] = false;
        if leads[i].is_coprime(&leads[j]) {
            stats.coprime_skipped += 1;
            continue;
        }
        let l = leads[i].lcm(&leads[j]);
        let ml = l.divmask();
        let chain = (0..n).any(|k| {
            k != i
                && k != j
                && masks[k] & !ml == 0
                && !in_b[idx(i, k)]
                && !in_b[idx(j, k)]
                && leads[k].divides(&l)
        });
        if chain {
            stats.chain_skipped += 1;
            continue;
        }
        out.push((i, j));
    }
    out
}

enum PairOutcome {
    Zero,
    Nonzero(Vec<(BigInt, Monomial)>),
    Limit(String),
    Skipped,
}

/// Applies Buchberger's criterion to `gens` under `ord`.
///
/// Zero generators are dropped. Pairs are enumerated deterministically and may
/// be reduced in parallel; the reported witness is the first refuting pair in
/// enumeration order.
pub fn verify_groebner(gens: &[Polynomial], ord: &TermOrder, limits: &Limits) -> GBCertificate {
    let start = Instant::now();
    let generators: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let cmp = ord.comparator();
    let eps: Vec<EPoly> = generators
        .iter()
        .map(|g| EPoly::from_poly(g, ord, &cmp))
        .collect();
    let leads_rank: Vec<Monomial> = eps.iter().map(|e| e.lead().clone()).collect();
    let leading_monomials: Vec<Monomial> = leads_rank.iter().map(|m| ord.from_rank(m)).collect();
    let squarefree_initial = leading_monomials.iter().all(|m| m.is_squarefree());
    let mut stats = PairStats::default();
    let todo = critical_pairs(&leads_rank, &mut stats);
    let nvars = ord.nvars();
    let finish = |status: GbStatus, stats: PairStats| GBCertificate {
        generators: generators.clone(),
        order: ord.clone(),
        status,
        leading_monomials: leading_monomials.clone(),
        squarefree_initial,
        stats,
    };
    let (todo, truncated) = match limits.max_pairs {
        Some(mp) if todo.len() > mp => (todo[..mp].to_vec(), true),
        _ => (todo, false),
    };
    let basis = Basis::new(eps);
    let budget = Budget::from_limits(limits, start);
    let first_bad = AtomicUsize::new(usize::MAX);
    let outcomes: Vec<PairOutcome> = todo
        .par_iter()
        .enumerate()
        .map(|(n, &(i, j))| {
            if n > first_bad.load(AtomicOrdering::Relaxed) {
                return PairOutcome::Skipped;
            }
            let s = spoly(&basis.polys[i], &basis.polys[j], &cmp);
            match head_reduce(s, &basis, &cmp, &budget) {
                Reduced::Zero => PairOutcome::Zero,
                Reduced::Nonzero(r) => {
                    first_bad.fetch_min(n, AtomicOrdering::Relaxed);
                    PairOutcome::Nonzero(r)
                }
                Reduced::Limit(msg) => PairOutcome::Limit(msg),
            }
        })
        .collect();
    stats.reduced = outcomes
        .iter()
        .filter(|o| !matches!(o, PairOutcome::Skipped))
        .count();
    for (n, o) in outcomes.iter().enumerate() {
        if let PairOutcome::Nonzero(r) = o {
            let (i, j) = todo[n];
            let rem = EPoly { terms: r.clone() }.to_poly(nvars, ord);
            return finish(
                GbStatus::Refuted {
                    pair: (i, j),
                    remainder: rem,
                },
                stats,
            );
        }
    }
    if let Some(PairOutcome::Limit(msg)) =
        outcomes.iter().find(|o| matches!(o, PairOutcome::Limit(_)))
    {
        return finish(
            GbStatus::Inconclusive {
                reason: msg.clone(),
            },
            stats,
        );
    }
    if truncated {
        let mp = limits.max_pairs.unwrap_or(0);
        return finish(
            GbStatus::Inconclusive {
                reason: format!("more than {mp} critical pairs"),
            },
            stats,
        );
    }
    finish(GbStatus::Verified, stats)
}

/// Remainder of `f` on division by `divisors` (list order), computed
/// fraction-free; equals the remainder of [`super::division::divide`].
pub fn normal_form(
    f: &Polynomial,
    divisors: &[Polynomial],
    ord: &TermOrder,
    limits: &Limits,
) -> Result<Polynomial, String> {
    let cmp = ord.comparator();
    let basis = Basis::new(
        divisors
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| EPoly::from_poly(g, ord, &cmp))
            .collect(),
    );
    if f.is_zero() {
        return Ok(f.clone());
    }
    let (ints, s) = f.to_primitive_integers();
    let mut terms: Vec<(BigInt, Monomial)> = ints
        .into_iter()
        .zip(f.terms())
        .map(|(c, t)| (c, ord.to_rank(&t.1)))
        .collect();
    terms.sort_by(|a, b| cmp.cmp(&b.1, &a.1));
    let rem = full_reduce(
        terms,
        &basis,
        None,
        &cmp,
        &Budget::from_limits(limits, Instant::now()),
    )?;
    Ok(Polynomial::from_terms(
        f.nvars(),
        rem.into_iter()
            .map(|(c, m)| (c * &s, ord.from_rank(&m)))
            .collect(),
    ))
}

/// Buchberger completion followed by reduction; returns the reduced Gröbner
/// basis normalized to primitive integers with positive leading coefficient.
pub fn groebner_basis(
    gens: &[Polynomial],
    ord: &TermOrder,
    limits: &Limits,
) -> Result<Vec<Polynomial>, String> {
    let start = Instant::now();
    let budget = Budget::from_limits(limits, start);
    let cmp = ord.comparator();
    let nvars = ord.nvars();
    let mut basis = Basis::new(Vec::new());
    for g in gens.iter().filter(|g| !g.is_zero()) {
        basis.push(EPoly::from_poly(g, ord, &cmp));
    }
    let mut heap: BinaryHeap<std::cmp::Reverse<(u32, usize, usize)>> = BinaryHeap::new();
    let mut in_b: HashSet<(usize, usize)> = HashSet::new();
    let add_pairs = |basis: &Basis,
                     heap: &mut BinaryHeap<std::cmp::Reverse<(u32, usize, usize)>>,
                     in_b: &mut HashSet<(usize, usize)>,
                     j: usize| {
        for i in 0..j {
            let d = basis.polys[i].lead().lcm(basis.polys[j].lead()).degree();
            heap.push(std::cmp::Reverse((d, j, i)));
            in_b.insert((i, j));
        }
    };
    for j in 0..basis.polys.len() {
        add_pairs(&basis, &mut heap, &mut in_b, j);
    }
    let mut processed = 0usize;
    while let Some(std::cmp::Reverse((_, j, i))) = heap.pop() {
        in_b.remove(&(i, j));
        let (li, lj) = (basis.polys[i].lead().clone(), basis.polys[j].lead().clone());
        if li.is_coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.polys.len()).any(|k| {
            k != i
                && k != j
                && !in_b.contains(&key(i, k))
                && !in_b.contains(&key(j, k))
                && basis.polys[k].lead().divides(&l)
        });
        if chain {
            continue;
        }
        processed += 1;
        if let Some(mp) = limits.max_pairs {
            if processed > mp {
                return Err(format!("more than {mp} pairs reduced"));
            }
        }
        let s = spoly(&basis.polys[i], &basis.polys[j], &cmp);
        let rem = full_reduce(s, &basis, None, &cmp, &budget)?;
        if rem.is_empty() {
            continue;
        }
        let p = Polynomial::from_terms(
            nvars,
            rem.into_iter()
                .map(|(c, m)| (c, ord.from_rank(&m)))
                .collect(),
        );
        basis.push(EPoly::from_poly(&p, ord, &cmp));
        let j = basis.polys.len() - 1;
        add_pairs(&basis, &mut heap, &mut in_b, j);
    }
    // minimize
    let polys = basis.polys;
    let mut keep: Vec<EPoly> = Vec::new();
    for (k, p) in polys.iter().enumerate() {
        let redundant = polys
            .iter()
            .enumerate()
            .any(|(o, q)| o != k && q.lead().divides(p.lead()) && (q.lead() != p.lead() || o < k));
        if !redundant {
            keep.push(p.clone());
        }
    }
    keep.sort_by(|a, b| cmp.cmp(a.lead(), b.lead()));
    // interreduce tails
    let reduced_basis = Basis::new(keep.clone());
    let mut out = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let rem = full_reduce(
            keep[k].terms.clone(),
            &reduced_basis,
            Some(k),
            &cmp,
            &budget,
        )?;
        let p = Polynomial::from_terms(
            nvars,
            rem.into_iter()
                .map(|(c, m)| (c, ord.from_rank(&m)))
                .collect(),
        );
        out.push(p.normalized());
    }
    let _ = start;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::division::divide;
    use crate::polyring::text::{parse_poly, NamedVars};

    #[test]
    fn single_generator_verified() {
        let nv = NamedVars::new(vec!["x", "y"]);
        let g = parse_poly("x^2 - y", &nv).unwrap();
        let c = verify_groebner(&[g], &TermOrder::lex(vec![0, 1]), &Limits::default());
        assert!(c.is_verified());
    }

    #[test]
    fn refuted_example() {
        let nv = NamedVars::new(vec!["x", "y"]);
        let gs = vec![
            parse_poly("x^2", &nv).unwrap(),
            parse_poly("x*y + y^2", &nv).unwrap(),
        ];
        let c = verify_groebner(&gs, &TermOrder::lex(vec![0, 1]), &Limits::default());
        match c.status {
            GbStatus::Refuted { pair, remainder } => {
                assert_eq!(pair, (0, 1));
                assert!(!remainder.is_zero());
            }
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn completion_of_refuted_example() {
        let nv = NamedVars::new(vec!["x", "y"]);
        let gs = vec![
            parse_poly("x^2", &nv).unwrap(),
            parse_poly("x*y + y^2", &nv).unwrap(),
        ];
        let ord = TermOrder::lex(vec![0, 1]);
        let gb = groebner_basis(&gs, &ord, &Limits::default()).unwrap();
        assert!(verify_groebner(&gb, &ord, &Limits::default()).is_verified());
        assert!(gb.contains(&parse_poly("y^3", &nv).unwrap()));
    }

    #[test]
    fn normal_form_matches_division() {
        let nv = NamedVars::new(vec!["x", "y", "z"]);
        let f = parse_poly("3*x^3*y + 2*x*y*z - 5*z^4 + y", &nv).unwrap();
        let gs = vec![
            parse_poly("2*x*y - z", &nv).unwrap(),
            parse_poly("3*x^2 + z^2", &nv).unwrap(),
        ];
        for ord in [
            TermOrder::lex(vec![0, 1, 2]),
            TermOrder::grevlex(vec![1, 2, 0]),
        ] {
            let d = divide(&f, &gs, &ord).unwrap();
            assert_eq!(
                normal_form(&f, &gs, &ord, &Limits::default()).unwrap(),
                d.remainder
            );
        }
    }

    #[test]
    fn limits_are_inconclusive() {
        let nv = NamedVars::new(vec!["x", "y", "z"]);
        let gs = vec![
            parse_poly("x^2 - y*z", &nv).unwrap(),
            parse_poly("x*y - z^2", &nv).unwrap(),
            parse_poly("y^2 - x*z", &nv).unwrap(),
        ];
        let lim = Limits {
            max_pairs: Some(0),
            ..Limits::default()
        };
        let c = verify_groebner(&gs, &TermOrder::grevlex(vec![0, 1, 2]), &lim);
        assert!(
            matches!(c.status, GbStatus::Inconclusive { .. }),
            "{:?}",
            c.status
        );
    }
}
