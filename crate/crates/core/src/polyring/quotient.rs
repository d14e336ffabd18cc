//! Gröbner bases of ideal quotients `⟨G⟩ : x` by a single variable.

use super::groebner::{GBCertificate, GbStatus};
use super::monomial::{Monomial, Var};
use super::order::{OrderKind, Scheme, TermOrder};
use super::poly::Polynomial;
use super::PolyError;

/// Which lemma justifies the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientMode {
    /// GRevLex order with `x` the cheapest variable.
    GrevlexCheapest,
    /// Product order in which the designated groups dominate, every generator
    /// multilinear and well-supported on the groups, `x` cheapest in its group.
    WellSupportedProduct { groups: Vec<Vec<Var>> },
}

/// True iff every term has degree at most one in each group.
pub fn is_multilinear(g: &Polynomial, groups: &[Vec<Var>]) -> bool {
    g.terms().iter().all(|(_, m)| {
        groups
            .iter()
            .all(|grp| grp.iter().map(|&v| m.exponent(v) as u32).sum::<u32>() <= 1)
    })
}

/// Every product of one supported variable per involved group divides a term.
pub fn is_well_supported(g: &Polynomial, groups: &[Vec<Var>]) -> bool {
    let supports: Vec<Vec<Var>> = groups
        .iter()
        .map(|grp| {
            grp.iter()
                .copied()
                .filter(|&v| g.terms().iter().any(|(_, m)| m.exponent(v) > 0))
                .collect::<Vec<_>>()
        })
        .filter(|s: &Vec<Var>| !s.is_empty())
        .collect();
    let mut idx = vec![0usize; supports.len()];
    loop {
        let prod = Monomial::from_vars(idx.iter().zip(&supports).map(|(&i, s)| s[i]));
        if !g.monomials().any(|m| prod.divides(m)) {
            return false;
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return true;
            }
            idx[k] += 1;
            if idx[k] < supports[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// True iff the variables in `vars` are exactly the most expensive ones and end
/// on a block boundary (so the order is a product order with them on top).
fn dominates_as_product(ord: &TermOrder, vars: &[Var]) -> bool {
    let k = vars.len();
    let mut top: Vec<Var> = ord.var_order()[..k].to_vec();
    let mut want = vars.to_vec();
    top.sort_unstable();
    want.sort_unstable();
    want.dedup();
    if top != want || want.len() != k {
        return false;
    }
    match ord.kind() {
        OrderKind::Plain(Scheme::Lex) => true,
        OrderKind::Plain(Scheme::GRevLex) => k == ord.nvars(),
        OrderKind::Product(blocks) => {
            let mut acc = 0;
            for &(len, _) in blocks {
                if acc == k {
                    return true;
                }
                acc += len;
            }
            acc == k
        }
    }
}

/// `{g : x ∤ g} ∪ {g/x : x | g}` after checking the mode's hypotheses.
pub fn quotient_by_variable(
    gens: &[Polynomial],
    x: Var,
    ord: &TermOrder,
    mode: &QuotientMode,
) -> Result<Vec<Polynomial>, PolyError> {
    match mode {
        QuotientMode::GrevlexCheapest => {
            if !ord.is_grevlex() {
                return Err(PolyError::PreconditionViolated(
                    "order is not GRevLex".into(),
                ));
            }
            if ord.cheapest() != Some(x) {
                return Err(PolyError::PreconditionViolated(
                    "variable is not the cheapest".into(),
                ));
            }
        }
        QuotientMode::WellSupportedProduct { groups } => {
            let all: Vec<Var> = groups.iter().flatten().copied().collect();
            if !dominates_as_product(ord, &all) {
                return Err(PolyError::PreconditionViolated(
                    "order is not a product order with the designated groups on top".into(),
                ));
            }
            let grp = groups.iter().find(|g| g.contains(&x)).ok_or_else(|| {
                PolyError::PreconditionViolated("variable lies in no designated group".into())
            })?;
            if grp.iter().any(|&v| ord.rank_of(v) > ord.rank_of(x)) {
                return Err(PolyError::PreconditionViolated(
                    "variable is not cheapest in its group".into(),
                ));
            }
            for (k, g) in gens.iter().enumerate() {
                if !is_multilinear(g, groups) {
                    return Err(PolyError::PreconditionViolated(format!(
                        "generator {k} is not multilinear"
                    )));
                }
                if !is_well_supported(g, groups) {
                    return Err(PolyError::PreconditionViolated(format!(
                        "generator {k} is not well-supported"
                    )));
                }
            }
        }
    }
    Ok(gens
        .iter()
        .map(|g| g.div_by_var(x).unwrap_or_else(|| g.clone()))
        .collect())
}

/// Squarefree initial ideal of a verified basis (sufficient for radicality).
pub fn is_radical_certified(cert: &GBCertificate) -> Result<bool, PolyError> {
    if cert.status != GbStatus::Verified {
        return Err(PolyError::UnverifiedBasis);
    }
    Ok(cert.squarefree_initial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::text::{parse_poly, NamedVars};

    #[test]
    fn well_supported_example() {
        // groups {x11,x12,x13}, {x21,x22}
        let nv = NamedVars::new(vec!["x11", "x12", "x13", "x21", "x22", "y"]);
        let groups = vec![vec![0, 1, 2], vec![3, 4]];
        let g = parse_poly("x12*x22 + y^2*x11*x21 + 3*x11*x22 + 2*y*x12*x21", &nv).unwrap();
        assert!(is_multilinear(&g, &groups));
        assert!(is_well_supported(&g, &groups));
        let g2 = parse_poly("y^2*x11*x21 + 3*x11*x22 + 2*y*x12*x21", &nv).unwrap();
        assert!(!is_well_supported(&g2, &groups));
    }

    #[test]
    fn preconditions() {
        let nv = NamedVars::new(vec!["x", "y", "z"]);
        let g = vec![
            parse_poly("x*z - y^2", &nv).unwrap(),
            parse_poly("y*z", &nv).unwrap(),
        ];
        let ord = TermOrder::grevlex(vec![0, 1, 2]);
        let q = quotient_by_variable(&g, 2, &ord, &QuotientMode::GrevlexCheapest).unwrap();
        assert_eq!(q[1], parse_poly("y", &nv).unwrap());
        assert_eq!(q[0], g[0]);
        assert!(quotient_by_variable(&g, 1, &ord, &QuotientMode::GrevlexCheapest).is_err());
        let lex = TermOrder::lex(vec![0, 1, 2]);
        assert!(quotient_by_variable(&g, 2, &lex, &QuotientMode::GrevlexCheapest).is_err());
    }
}
