//! Named and sampled term orders on the atlas universe.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::atlas_model::AtlasShape;
use crate::polyring::{Scheme, TermOrder, Var};

/// Variable group of the atlas universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Block {
    A,
    Q,
    P,
}

impl Block {
    fn vars(self, shape: AtlasShape) -> Vec<Var> {
        match self {
            Block::A => shape.all_a_vars(),
            Block::Q => shape.all_q_vars(),
            Block::P => shape.all_p_vars(),
        }
    }

    fn letter(self) -> char {
        match self {
            Block::A => 'A',
            Block::Q => 'q',
            Block::P => 'p',
        }
    }
}

/// A plain order whose variable ranking lists the blocks in `blocks` order,
/// each block in canonical order. Text form: `grevlex:pAq`, `lex:Aqp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockOrder {
    pub scheme: Scheme,
    pub blocks: [Block; 3],
}

impl BlockOrder {
    pub fn canonical() -> Self {
        BlockOrder {
            scheme: Scheme::GRevLex,
            blocks: [Block::A, Block::Q, Block::P],
        }
    }

    pub fn build(&self, shape: AtlasShape) -> TermOrder {
        let vars: Vec<Var> = self.blocks.iter().flat_map(|b| b.vars(shape)).collect();
        match self.scheme {
            Scheme::Lex => TermOrder::lex(vars),
            Scheme::GRevLex => TermOrder::grevlex(vars),
        }
    }
}

impl fmt::Display for BlockOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.scheme {
            Scheme::Lex => "lex",
            Scheme::GRevLex => "grevlex",
        };
        let b: String = self.blocks.iter().map(|b| b.letter()).collect();
        write!(f, "{s}:{b}")
    }
}

impl FromStr for BlockOrder {
    type Err = String;

    /// Accepts `lex`, `grevlex` (canonical block order) or `scheme:XYZ`.
    fn from_str(s: &str) -> Result<Self, String> {
        let (scheme, blocks) = s.split_once(':').unwrap_or((s, "Aqp"));
        let scheme = match scheme {
            "lex" => Scheme::Lex,
            "grevlex" => Scheme::GRevLex,
            other => {
                return Err(format!(
                    "unknown scheme `{other}` (expected lex or grevlex)"
                ))
            }
        };
        let parsed: Vec<Block> = blocks
            .chars()
            .map(|c| match c {
                'A' => Ok(Block::A),
                'q' => Ok(Block::Q),
                'p' => Ok(Block::P),
                other => Err(format!("unknown block `{other}` (expected A, q, p)")),
            })
            .collect::<Result<_, _>>()?;
        let [a, b, c] = parsed[..] else {
            return Err("block order must list A, q and p once each".into());
        };
        if a == b || b == c || a == c {
            return Err("block order must list A, q and p once each".into());
        }
        Ok(BlockOrder {
            scheme,
            blocks: [a, b, c],
        })
    }
}

/// `{Lex, GRevLex}` × the six block permutations.
pub fn twelve_orders() -> Vec<BlockOrder> {
    use Block::*;
    let perms = [
        [A, Q, P],
        [A, P, Q],
        [Q, A, P],
        [Q, P, A],
        [P, A, Q],
        [P, Q, A],
    ];
    [Scheme::Lex, Scheme::GRevLex]
        .into_iter()
        .flat_map(|scheme| {
            perms
                .into_iter()
                .map(move |blocks| BlockOrder { scheme, blocks })
        })
        .collect()
}

fn random_scheme<R: Rng>(rng: &mut R) -> Scheme {
    if rng.gen_bool(0.5) {
        Scheme::Lex
    } else {
        Scheme::GRevLex
    }
}

/// Product order `p > A > q` with shuffled variables and a random scheme in
/// each block.
pub fn sampled_product_order<R: Rng>(shape: AtlasShape, rng: &mut R) -> TermOrder {
    let blocks = [Block::P, Block::A, Block::Q]
        .into_iter()
        .map(|b| {
            let mut v = b.vars(shape);
            v.shuffle(rng);
            (v, random_scheme(rng))
        })
        .collect();
    TermOrder::product(blocks)
}

/// Plain order with every variable shuffled and a random scheme; used on
/// specialized polynomials, where only the p (and q) variables occur.
pub fn sampled_plain_order<R: Rng>(shape: AtlasShape, rng: &mut R) -> TermOrder {
    let mut v: Vec<Var> = (0..shape.nvars() as Var).collect();
    v.shuffle(rng);
    match random_scheme(rng) {
        Scheme::Lex => TermOrder::lex(v),
        Scheme::GRevLex => TermOrder::grevlex(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn twelve_distinct_orders_round_trip() {
        let all = twelve_orders();
        assert_eq!(all.len(), 12);
        for (k, o) in all.iter().enumerate() {
            assert_eq!(o.to_string().parse::<BlockOrder>().unwrap(), *o);
            assert!(all[..k].iter().all(|p| p != o));
        }
        assert_eq!(
            "grevlex".parse::<BlockOrder>().unwrap(),
            BlockOrder::canonical()
        );
        assert!("lex:AAp".parse::<BlockOrder>().is_err());
        let s = AtlasShape::new(2, 1);
        assert_eq!(
            BlockOrder::canonical().build(s),
            TermOrder::canonical(s.nvars())
        );
    }

    #[test]
    fn product_order_puts_p_first() {
        let s = AtlasShape::new(2, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let o = sampled_product_order(s, &mut rng);
        let np = s.all_p_vars().len();
        let mut top: Vec<Var> = o.var_order()[..np].to_vec();
        top.sort_unstable();
        assert_eq!(top, s.all_p_vars());
    }
}
