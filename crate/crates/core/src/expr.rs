//! Polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := int | 'x' | 'Phi' '(' uint ')' | '(' expr ')' | '-' base
//! ```
//!
//! Unary minus belongs to `base`, so `-x^2` reads as `(-x)^2`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::factorz::cyclotomic;
use crate::polycore::Poly;

/// Exponents above this are rejected.
pub const MAX_EXPONENT: u32 = 4096;
/// Largest index accepted by `Phi(m)`.
pub const MAX_PHI_INDEX: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Int(BigInt),
    X,
    Phi(usize),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    pub fn eval(&self) -> Result<Poly> {
        Ok(match self {
            PolyExpr::Int(n) => Poly::constant(n.clone()),
            PolyExpr::X => Poly::x(),
            PolyExpr::Phi(m) => cyclotomic(*m),
            PolyExpr::Neg(a) => -a.eval()?,
            PolyExpr::Add(a, b) => &a.eval()? + &b.eval()?,
            PolyExpr::Sub(a, b) => &a.eval()? - &b.eval()?,
            PolyExpr::Mul(a, b) => &a.eval()? * &b.eval()?,
            PolyExpr::Pow(a, e) => {
                let base = a.eval()?;
                if base.degree().unwrap_or(0) * (*e as usize) > MAX_EXPONENT as usize {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: "result degree too large".into(),
                    });
                }
                base.pow(*e)
            }
        })
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn uint(&mut self, max: u64, what: &str) -> Result<u64> {
        let start = self.pos;
        let text = self.digits()?;
        match text.parse::<u64>() {
            Ok(v) if v <= max => Ok(v),
            _ => Err(Error::Parse {
                pos: start,
                msg: format!("{what} exceeds {max}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.factor()?;
        while self.eat(b'*') {
            lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<PolyExpr> {
        let base = self.base()?;
        if self.eat(b'^') {
            let e = self.uint(MAX_EXPONENT as u64, "exponent")? as u32;
            return Ok(PolyExpr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<PolyExpr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(PolyExpr::Neg(Box::new(self.base()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(PolyExpr::X)
            }
            Some(b'P') => {
                if !self.src[self.pos..].starts_with(b"Phi") {
                    return self.err("unknown identifier");
                }
                self.pos += 3;
                self.expect(b'(')?;
                let start = self.pos;
                let m = self.uint(MAX_PHI_INDEX as u64, "Phi index")? as usize;
                if m < 1 {
                    return Err(Error::Parse {
                        pos: start,
                        msg: "Phi index must be at least 1".into(),
                    });
                }
                self.expect(b')')?;
                Ok(PolyExpr::Phi(m))
            }
            Some(c) if c.is_ascii_digit() => {
                let text = self.digits()?;
                Ok(PolyExpr::Int(text.parse().expect("decimal digits")))
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<PolyExpr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

pub fn parse_poly(text: &str) -> Result<Poly> {
    parse_expr(text)?.eval()
}
