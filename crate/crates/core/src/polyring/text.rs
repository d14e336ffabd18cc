//! Plain-text rendering and parsing of polynomials.
//!
//! Grammar: `poly := ['-'] term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
//! `factor := int ['/' int] | name ['^' int]`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};
use super::poly::{Polynomial, Q};
use super::PolyError;

/// Names for the variables of a universe.
pub trait VarNames {
    fn nvars(&self) -> usize;
    fn name(&self, v: Var) -> String;
    fn lookup(&self, name: &str) -> Option<Var>;
}

/// An explicit list of variable names.
#[derive(Clone, Debug)]
pub struct NamedVars {
    names: Vec<String>,
    index: HashMap<String, Var>,
}

impl NamedVars {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as Var))
            .collect();
        NamedVars { names, index }
    }

    pub fn var(&self, name: &str) -> Var {
        self.index[name]
    }

    /// The polynomial consisting of one named variable.
    pub fn poly(&self, name: &str) -> Polynomial {
        Polynomial::var(self.names.len(), self.var(name))
    }
}

impl VarNames for NamedVars {
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

fn format_monomial(m: &Monomial, names: &dyn VarNames) -> String {
    m.pairs()
        .iter()
        .map(|&(v, e)| {
            if e == 1 {
                names.name(v)
            } else {
                format!("{}^{}", names.name(v), e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn format_coeff(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Renders terms in stored (canonical) order.
pub fn format_poly(p: &Polynomial, names: &dyn VarNames) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (c, m)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&format_coeff(&a));
        } else if a.is_one() {
            out.push_str(&format_monomial(m, names));
        } else {
            out.push_str(&format_coeff(&a));
            out.push('*');
            out.push_str(&format_monomial(m, names));
        }
    }
    out
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            column: self.pos + 1,
            message: msg.to_string(),
        }
    }
    fn int(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(txt.parse().expect("digits parse"))
    }
    fn ident(&mut self) -> Result<String, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected variable name"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }
}

/// Parses the text format; unknown names are errors.
pub fn parse_poly(text: &str, names: &dyn VarNames) -> Result<Polynomial, PolyError> {
    let mut lx = Lexer {
        s: text.as_bytes(),
        pos: 0,
    };
    let mut terms: Vec<(Q, Monomial)> = Vec::new();
    let mut sign = Q::one();
    if lx.peek() == Some(b'-') {
        sign = -sign;
        lx.pos += 1;
    } else if lx.peek() == Some(b'+') {
        lx.pos += 1;
    }
    loop {
        let mut coef = sign.clone();
        let mut vars: Vec<(Var, u16)> = Vec::new();
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = lx.int()?;
                    let mut q = Q::from_integer(num);
                    if lx.peek() == Some(b'/') {
                        lx.pos += 1;
                        let den = lx.int()?;
                        if den.is_zero() {
                            return Err(lx.err("zero denominator"));
                        }
                        q /= Q::from_integer(den);
                    }
                    coef *= q;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let col = lx.pos + 1;
                    let name = lx.ident()?;
                    let v = names.lookup(&name).ok_or(PolyError::Parse {
                        column: col,
                        message: format!("unknown variable {name}"),
                    })?;
                    let mut e: u16 = 1;
                    if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        let x = lx.int()?;
                        e = u16::try_from(&x).map_err(|_| lx.err("exponent too large"))?;
                    }
                    vars.push((v, e));
                }
                _ => return Err(lx.err("expected factor")),
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        terms.push((coef, Monomial::from_pairs(vars)));
        match lx.peek() {
            None => break,
            Some(b'+') => {
                sign = Q::one();
                lx.pos += 1;
            }
            Some(b'-') => {
                sign = -Q::one();
                lx.pos += 1;
            }
            Some(_) => return Err(lx.err("expected '+' or '-'")),
        }
    }
    if terms.len() == 1 && terms[0].0.is_zero() {
        return Ok(Polynomial::zero(names.nvars()));
    }
    Ok(Polynomial::from_terms(names.nvars(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let nv = NamedVars::new(vec!["x", "y", "z"]);
        let f = parse_poly("3*x^2*y - y*z + 1/2 - x", &nv).unwrap();
        assert_eq!(format_poly(&f, &nv), "3*x^2*y - y*z - x + 1/2");
        assert_eq!(parse_poly(&format_poly(&f, &nv), &nv).unwrap(), f);
        assert!(parse_poly("0", &nv).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_column() {
        let nv = NamedVars::new(vec!["x"]);
        match parse_poly("x + w", &nv) {
            Err(PolyError::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly("x +", &nv).is_err());
    }
}
