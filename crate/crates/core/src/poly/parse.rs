//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! expr    := [+|-] term {(+|-) term}
//! term    := factor {(* factor) | (/ factor)}
//! factor  := primary [^ int | ^(p/q)]
//! primary := int | ident | ( expr ) | [ cyclotomic ]
//! ```
//!
//! Division is only accepted by nonzero constants.

use std::sync::Arc;

use num_traits::Zero;

use super::monomial::{exp, Exp};
use super::puiseux::PuiseuxPoly;
use super::vars::VarTable;
use crate::arith::{CycNum, Rat};
use crate::error::{Error, Result};

/// Cursor over the input shared with the product-form parser.
pub(crate) struct Cursor<'a> {
    pub src: &'a str,
    pub pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos, msg)
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let end = chars
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        self.pos += end;
        Some(rest[..end].to_string())
    }

    /// Peeks at the identifier under the cursor without consuming it.
    pub fn peek_ident(&mut self) -> Option<String> {
        let save = self.pos;
        let id = self.ident();
        self.pos = save;
        id
    }

    pub fn integer(&mut self) -> Option<i64> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let end = rest
            .char_indices()
            .find(|(_, c)| !c.is_ascii_digit())
            .map_or(rest.len(), |(i, _)| i);
        if end == 0 {
            return None;
        }
        let v = rest[..end].parse().ok()?;
        self.pos += end;
        Some(v)
    }

    fn big_integer(&mut self) -> Option<Rat> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let end = rest
            .char_indices()
            .find(|(_, c)| !c.is_ascii_digit())
            .map_or(rest.len(), |(i, _)| i);
        if end == 0 {
            return None;
        }
        let v: num_bigint::BigInt = rest[..end].parse().ok()?;
        self.pos += end;
        Some(Rat::from_integer(v))
    }

    /// Exponent after `^`: a bare integer or a parenthesized fraction.
    pub fn exponent(&mut self) -> Result<Exp> {
        if self.eat('(') {
            let p = self
                .integer()
                .ok_or_else(|| self.error("expected exponent numerator"))?;
            let e = if self.eat('/') {
                let q = self
                    .integer()
                    .ok_or_else(|| self.error("expected exponent denominator"))?;
                if q == 0 {
                    return Err(self.error("zero exponent denominator"));
                }
                exp(p, q)
            } else {
                exp(p, 1)
            };
            self.expect(')')?;
            Ok(e)
        } else {
            let p = self
                .integer()
                .ok_or_else(|| self.error("expected exponent"))?;
            Ok(exp(p, 1))
        }
    }

    /// Text between a `[` already consumed and the matching `]`.
    pub fn bracketed(&mut self) -> Result<(usize, &'a str)> {
        let start = self.pos;
        let rest = &self.src[start..];
        let end = rest
            .find(']')
            .ok_or_else(|| self.error("unterminated `[`"))?;
        self.pos = start + end + 1;
        Ok((start, &rest[..end]))
    }
}

/// Parser for polynomial expressions over a fixed variable table.
pub(crate) struct PolyParser<'a, 'b> {
    pub cur: &'b mut Cursor<'a>,
    pub vars: &'b Arc<VarTable>,
}

impl PolyParser<'_, '_> {
    pub fn expr(&mut self) -> Result<PuiseuxPoly> {
        let neg = if self.cur.eat('-') {
            true
        } else {
            self.cur.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            if self.cur.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.cur.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PuiseuxPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.cur.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.cur.peek() == Some('/') {
                let at = self.cur.pos;
                self.cur.eat('/');
                let d = self.factor()?;
                let c = d
                    .is_constant()
                    .then(|| d.constant_term())
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| Error::parse(at, "division only by a nonzero constant"))?;
                let inv = c.inverse()?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    pub fn factor(&mut self) -> Result<PuiseuxPoly> {
        let base = self.primary()?;
        if self.cur.eat('^') {
            let at = self.cur.pos;
            let e = self.cur.exponent()?;
            if e < Exp::zero() {
                return Err(Error::parse(at, "negative exponent"));
            }
            return base.monomial_pow(e);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<PuiseuxPoly> {
        match self.cur.peek() {
            Some('(') => {
                self.cur.eat('(');
                let e = self.expr()?;
                self.cur.expect(')')?;
                Ok(e)
            }
            Some('[') => {
                self.cur.eat('[');
                let (start, body) = self.cur.bracketed()?;
                let c: CycNum = body.parse().map_err(|e| match e {
                    Error::Parse { offset, message } => Error::parse(start + offset, message),
                    other => other,
                })?;
                Ok(PuiseuxPoly::constant(self.vars, c))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.cur.big_integer().expect("digit present");
                Ok(PuiseuxPoly::from_rat(self.vars, n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let at = self.cur.pos;
                let name = self.cur.ident().expect("identifier present");
                let i = self
                    .vars
                    .index_of(&name)
                    .ok_or_else(|| Error::parse(at, format!("unknown variable `{name}`")))?;
                Ok(PuiseuxPoly::var_idx(self.vars, i, Exp::from_integer(1)))
            }
            Some(c) => Err(self.cur.error(format!("unexpected `{c}`"))),
            None => Err(self.cur.error("unexpected end of input")),
        }
    }
}

/// Parses a polynomial over the given table; the whole input must be consumed.
pub fn parse_poly(src: &str, vars: &Arc<VarTable>) -> Result<PuiseuxPoly> {
    let mut cur = Cursor::new(src);
    let p = PolyParser {
        cur: &mut cur,
        vars,
    }
    .expr()?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(p)
}

/// Variable names in order of first appearance, skipping bracketed
/// cyclotomic coefficients and the `Delta` block keyword.
pub fn infer_vars(src: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut cur = Cursor::new(src);
    while let Some(c) = cur.peek() {
        if c == '[' {
            cur.eat('[');
            if cur.bracketed().is_err() {
                break;
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let id = cur.ident().expect("identifier present");
            let is_block = id
                .strip_prefix("Delta")
                .is_some_and(|r| r.chars().all(|c| c.is_ascii_digit()));
            if !is_block && !out.contains(&id) {
                out.push(id);
            }
        } else if c.is_ascii_digit() {
            cur.integer();
        } else {
            cur.pos += c.len_utf8();
        }
    }
    out
}

/// Parses a polynomial, building the variable table from first appearance.
pub fn parse_poly_infer(src: &str) -> Result<PuiseuxPoly> {
    let vars = VarTable::new(&infer_vars(src))?;
    parse_poly(src, &vars)
}
