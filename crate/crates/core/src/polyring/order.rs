//! Term orders: Lex, GRevLex and product-block orders over a total variable order.
//!
//! Every order is stored together with a ranking of the variables (rank 0 is the
//! most expensive variable). Comparisons are carried out on monomials relabelled
//! into rank space, where the ranking coincides with the index order.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, Var};

/// Inner comparison scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    Lex,
    GRevLex,
}

/// Shape of an order once variables are ranked.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    Plain(Scheme),
    /// Consecutive rank ranges given by their lengths, most significant first.
    Product(Vec<(usize, Scheme)>),
}

/// A monomial order on `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermOrder {
    kind: OrderKind,
    /// rank -> variable
    var_order: Vec<Var>,
    /// variable -> rank
    rank: Vec<Var>,
}

impl TermOrder {
    fn build(kind: OrderKind, var_order: Vec<Var>) -> Self {
        let n = var_order.len();
        let mut rank = vec![Var::MAX; n];
        for (r, &v) in var_order.iter().enumerate() {
            assert!(
                (v as usize) < n && rank[v as usize] == Var::MAX,
                "variable order must be a permutation"
            );
            rank[v as usize] = r as Var;
        }
        TermOrder {
            kind,
            var_order,
            rank,
        }
    }

    /// Lex with `var_order[0]` most expensive.
    pub fn lex(var_order: Vec<Var>) -> Self {
        Self::build(OrderKind::Plain(Scheme::Lex), var_order)
    }

    /// GRevLex with `var_order[0]` most expensive.
    pub fn grevlex(var_order: Vec<Var>) -> Self {
        Self::build(OrderKind::Plain(Scheme::GRevLex), var_order)
    }

    /// Product order: earlier blocks dominate; each block carries its own
    /// internal variable order and scheme.
    pub fn product(blocks: Vec<(Vec<Var>, Scheme)>) -> Self {
        let lens = blocks.iter().map(|b| (b.0.len(), b.1)).collect();
        let var_order = blocks.into_iter().flat_map(|b| b.0).collect();
        Self::build(OrderKind::Product(lens), var_order)
    }

    /// GRevLex in index order (index 0 most expensive).
    pub fn canonical(nvars: usize) -> Self {
        Self::grevlex((0..nvars as Var).collect())
    }

    pub fn nvars(&self) -> usize {
        self.var_order.len()
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    /// Variables from most to least expensive.
    pub fn var_order(&self) -> &[Var] {
        &self.var_order
    }

    /// Rank of a variable (0 = most expensive).
    pub fn rank_of(&self, v: Var) -> Var {
        self.rank[v as usize]
    }

    pub fn ranks(&self) -> &[Var] {
        &self.rank
    }

    /// The least expensive variable.
    pub fn cheapest(&self) -> Option<Var> {
        self.var_order.last().copied()
    }

    pub fn is_grevlex(&self) -> bool {
        self.kind == OrderKind::Plain(Scheme::GRevLex)
    }

    /// True when the variable ranking is the identity.
    pub fn is_identity_ranked(&self) -> bool {
        self.var_order
            .iter()
            .enumerate()
            .all(|(i, &v)| i == v as usize)
    }

    /// Rank-space comparator for this order.
    pub fn comparator(&self) -> RankCmp {
        match &self.kind {
            OrderKind::Plain(s) => RankCmp::Plain(*s),
            OrderKind::Product(lens) => {
                let mut start = 0usize;
                let mut blocks = Vec::with_capacity(lens.len());
                for &(len, s) in lens {
                    blocks.push((start as Var, (start + len) as Var, s));
                    start += len;
                }
                RankCmp::Product(blocks)
            }
        }
    }

    /// Relabels a monomial into rank space.
    pub fn to_rank(&self, m: &Monomial) -> Monomial {
        if self.is_identity_ranked() {
            m.clone()
        } else {
            m.relabel(&self.rank)
        }
    }

    /// Relabels a rank-space monomial back to variable indices.
    pub fn from_rank(&self, m: &Monomial) -> Monomial {
        if self.is_identity_ranked() {
            m.clone()
        } else {
            m.relabel(&self.var_order)
        }
    }

    /// Compares two monomials given in variable-index space.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let c = self.comparator();
        if self.is_identity_ranked() {
            c.cmp(a, b)
        } else {
            c.cmp(&self.to_rank(a), &self.to_rank(b))
        }
    }
}

/// Comparator on rank-space monomials.
#[derive(Clone, Debug)]
pub enum RankCmp {
    Plain(Scheme),
    /// Half-open rank ranges `[start, end)` with their schemes.
    Product(Vec<(Var, Var, Scheme)>),
}

impl RankCmp {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            RankCmp::Plain(Scheme::Lex) => cmp_lex(a.pairs(), b.pairs()),
            RankCmp::Plain(Scheme::GRevLex) => cmp_grevlex(a.pairs(), b.pairs()),
            RankCmp::Product(blocks) => {
                for &(lo, hi, s) in blocks {
                    let sa = block_slice(a.pairs(), lo, hi);
                    let sb = block_slice(b.pairs(), lo, hi);
                    let o = match s {
                        Scheme::Lex => cmp_lex(sa, sb),
                        Scheme::GRevLex => cmp_grevlex(sa, sb),
                    };
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
        }
    }
}

fn block_slice(p: &[(Var, u16)], lo: Var, hi: Var) -> &[(Var, u16)] {
    let s = p.partition_point(|x| x.0 < lo);
    let e = p.partition_point(|x| x.0 < hi);
    &p[s..e]
}

/// Lex on rank-sorted pairs; smaller rank is more expensive.
pub fn cmp_lex(a: &[(Var, u16)], b: &[(Var, u16)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&(va, ea)), Some(&(vb, eb))) => {
                if va < vb {
                    return Ordering::Greater;
                }
                if vb < va {
                    return Ordering::Less;
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
                i += 1;
                j += 1;
            }
        }
    }
}

/// GRevLex on rank-sorted pairs.
pub fn cmp_grevlex(a: &[(Var, u16)], b: &[(Var, u16)]) -> Ordering {
    let da: u32 = a.iter().map(|p| p.1 as u32).sum();
    let db: u32 = b.iter().map(|p| p.1 as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    let (mut i, mut j) = (a.len(), b.len());
    while i > 0 && j > 0 {
        let (va, ea) = a[i - 1];
        let (vb, eb) = b[j - 1];
        if va > vb {
            return Ordering::Less;
        }
        if vb > va {
            return Ordering::Greater;
        }
        if ea != eb {
            return eb.cmp(&ea);
        }
        i -= 1;
        j -= 1;
    }
    // equal degrees force both to be exhausted together
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: &[(Var, u16)]) -> Monomial {
        Monomial::from_pairs(p.iter().copied())
    }

    #[test]
    fn lex_basics() {
        let o = TermOrder::lex(vec![0, 1, 2]);
        assert_eq!(o.compare(&m(&[(0, 1)]), &m(&[(1, 5)])), Ordering::Greater);
        assert_eq!(
            o.compare(&m(&[(1, 1), (2, 1)]), &m(&[(1, 1)])),
            Ordering::Greater
        );
        let r = TermOrder::lex(vec![2, 1, 0]);
        assert_eq!(r.compare(&m(&[(0, 1)]), &m(&[(1, 1)])), Ordering::Less);
    }

    #[test]
    fn grevlex_basics() {
        // x > y > z: x*z < y^2 in grevlex
        let o = TermOrder::grevlex(vec![0, 1, 2]);
        assert_eq!(
            o.compare(&m(&[(0, 1), (2, 1)]), &m(&[(1, 2)])),
            Ordering::Less
        );
        assert_eq!(
            o.compare(&m(&[(0, 2)]), &m(&[(0, 1), (1, 1)])),
            Ordering::Greater
        );
        assert_eq!(o.compare(&m(&[(2, 3)]), &m(&[(0, 2)])), Ordering::Greater);
        assert_eq!(
            o.compare(&m(&[(0, 1), (1, 1)]), &m(&[(0, 1), (1, 1)])),
            Ordering::Equal
        );
    }

    #[test]
    fn product_blocks() {
        // block {2} dominates block {0,1}
        let o = TermOrder::product(vec![(vec![2], Scheme::GRevLex), (vec![0, 1], Scheme::Lex)]);
        assert_eq!(o.compare(&m(&[(2, 1)]), &m(&[(0, 7)])), Ordering::Greater);
        assert_eq!(
            o.compare(&m(&[(2, 1), (1, 1)]), &m(&[(2, 1), (0, 1)])),
            Ordering::Less
        );
    }
}
