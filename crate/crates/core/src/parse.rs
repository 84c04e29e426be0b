//! Expression language for scalars, torus elements, algebra elements and
//! polynomials.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" ["-"] INT)?
//! atom   := INT | "q" | "s" | "t" | "c_s" | "c_t" | "d_s" | "d_t"
//!         | "E[" INT "," INT "]" | "x" INT "(" SINT "," SINT ")" | "(" expr ")"
//! ```
//!
//! Division is only by scalars. Printed forms of every value type parse back
//! to the same value.

use num_bigint::BigInt;

use crate::eala::{AlgebraConfig, Generator, LieElem};
use crate::error::{Error, Result};
use crate::fock::{Poly, Var};
use crate::scalar::{FieldMode, Scalar};
use crate::torus::TorusElem;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k];
        let start = k;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                k += 1;
                continue;
            }
            b'0'..=b'9' => {
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                out.push((start, Tok::Int(src[start..k].parse().expect("digits"))));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while k < bytes.len() && (bytes[k].is_ascii_alphanumeric() || bytes[k] == b'_') {
                    k += 1;
                }
                out.push((start, Tok::Ident(src[start..k].to_string())));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            _ => {
                let ch = src[k..].chars().next().unwrap_or('?');
                return Err(syntax(k, format!("unexpected character '{ch}'")));
            }
        };
        out.push((start, tok));
        k += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

/// A parsed value; arithmetic promotes scalars into the other kinds.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Scalar),
    Torus(TorusElem),
    Lie(LieElem),
    Poly(Poly),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Torus(_) => "torus element",
            Value::Lie(_) => "algebra element",
            Value::Poly(_) => "polynomial",
        }
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    field: &'a FieldMode,
    cfg: Option<&'a AlgebraConfig>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if t.1 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let (pos, t) = self.bump();
        if t == want {
            Ok(())
        } else {
            Err(syntax(pos, format!("expected {what}")))
        }
    }

    fn small_int(&mut self, signed: bool) -> Result<i64> {
        let neg = signed && *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let (pos, t) = self.bump();
        let Tok::Int(v) = t else {
            return Err(syntax(pos, "expected an integer"));
        };
        let v = if neg { -v } else { v };
        i64::try_from(v).map_err(|_| syntax(pos, "integer too large"))
    }

    fn cfg(&self, pos: usize) -> Result<&'a AlgebraConfig> {
        self.cfg
            .ok_or_else(|| syntax(pos, "algebra elements need a configuration"))
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            let negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            let pos = self.bump().0;
            let rhs = self.term()?;
            let rhs = if negate { neg(rhs) } else { rhs };
            acc = add(acc, rhs, pos)?;
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            let div = match self.peek() {
                Tok::Star => false,
                Tok::Slash => true,
                _ => return Ok(acc),
            };
            let pos = self.bump().0;
            let rhs = self.unary()?;
            acc = if div {
                divide(acc, rhs, pos)?
            } else {
                mul(acc, rhs, self.field, pos)?
            };
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let pos = self.bump().0;
        let e = self.small_int(true)?;
        pow(base, e, self.field, pos)
    }

    fn atom(&mut self) -> Result<Value> {
        let (pos, t) = self.bump();
        match t {
            Tok::Int(v) => Ok(Value::Scalar(Scalar::from_bigint(v))),
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(v)
            }
            Tok::Ident(name) => self.ident(pos, &name),
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            _ => Err(syntax(pos, "expected a value")),
        }
    }

    fn ident(&mut self, pos: usize, name: &str) -> Result<Value> {
        match name {
            "q" => Ok(Value::Scalar(self.field.q())),
            "s" => Ok(Value::Torus(TorusElem::s())),
            "t" => Ok(Value::Torus(TorusElem::t())),
            "c_s" | "c_t" | "d_s" | "d_t" => Ok(Value::Lie(central(self.cfg(pos)?, name))),
            "E" => {
                let cfg = self.cfg(pos)?;
                self.expect(Tok::LBracket, "'['")?;
                let i = self.small_int(false)?;
                self.expect(Tok::Comma, "','")?;
                let j = self.small_int(false)?;
                self.expect(Tok::RBracket, "']'")?;
                let idx = |v: i64| usize::try_from(v).unwrap_or(0);
                for v in [i, j] {
                    if !(1..=cfg.l() as i64).contains(&v) {
                        return Err(Error::IndexOutOfRange {
                            index: v,
                            lo: 1,
                            hi: cfg.l() as i64,
                        });
                    }
                }
                Ok(Value::Lie(LieElem::e(cfg, idx(i), idx(j), 0, 0)?))
            }
            _ if name.len() > 1 && name.starts_with('x') && name[1..].bytes().all(|b| b.is_ascii_digit()) => {
                let cfg = self.cfg(pos)?;
                let i: i64 = name[1..].parse().map_err(|_| syntax(pos, "variable index too large"))?;
                if !(2..=cfg.l() as i64).contains(&i) {
                    return Err(Error::IndexOutOfRange {
                        index: i,
                        lo: 2,
                        hi: cfg.l() as i64,
                    });
                }
                self.expect(Tok::LParen, "'('")?;
                let m = self.small_int(true)?;
                self.expect(Tok::Comma, "','")?;
                let n = self.small_int(true)?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Value::Poly(Poly::var(Var::new(i as usize, m, n))))
            }
            _ => Err(syntax(pos, format!("unknown identifier '{name}'"))),
        }
    }
}

fn central(cfg: &AlgebraConfig, name: &str) -> LieElem {
    let g = match name {
        "c_s" => Generator::Cs,
        "c_t" => Generator::Ct,
        "d_s" => Generator::Ds,
        _ => Generator::Dt,
    };
    g.to_elem(cfg).expect("no indices")
}

fn neg(v: Value) -> Value {
    match v {
        Value::Scalar(a) => Value::Scalar(-a),
        Value::Torus(a) => Value::Torus(a.neg()),
        Value::Lie(a) => Value::Lie(a.neg()),
        Value::Poly(a) => Value::Poly(a.neg()),
    }
}

fn mismatch(op: &str, a: &Value, b: &Value, pos: usize) -> Error {
    syntax(pos, format!("cannot {op} {} and {}", a.kind(), b.kind()))
}

fn add(a: Value, b: Value, pos: usize) -> Result<Value> {
    use Value::*;
    Ok(match (a, b) {
        (Scalar(x), Scalar(y)) => Scalar(x + y),
        (Torus(x), Torus(y)) => Torus(x.add(&y)),
        (Torus(x), Scalar(c)) | (Scalar(c), Torus(x)) => Torus(x.add(&TorusElem::constant(c))),
        (Poly(x), Poly(y)) => Poly(x.add(&y)),
        (Poly(x), Scalar(c)) | (Scalar(c), Poly(x)) => Poly(x.add(&crate::fock::Poly::constant(c))),
        (Lie(x), Lie(y)) => Lie(x.add(&y)?),
        (Lie(x), Scalar(c)) | (Scalar(c), Lie(x)) if c.is_zero() => Lie(x),
        (a, b) => return Err(mismatch("add", &a, &b, pos)),
    })
}

fn mul(a: Value, b: Value, field: &FieldMode, pos: usize) -> Result<Value> {
    use Value::*;
    Ok(match (a, b) {
        (Scalar(x), Scalar(y)) => Scalar(x * y),
        (Scalar(c), Torus(x)) | (Torus(x), Scalar(c)) => Torus(x.scale(&c)),
        (Scalar(c), Lie(x)) | (Lie(x), Scalar(c)) => Lie(x.scale(&c)),
        (Scalar(c), Poly(x)) | (Poly(x), Scalar(c)) => Poly(x.scale(&c)),
        (Torus(x), Torus(y)) => Torus(x.mul(&y, field)),
        (Lie(x), Torus(u)) => Lie(x.mul_torus(&u, false).map_err(|e| at(e, pos))?),
        (Torus(u), Lie(x)) => Lie(x.mul_torus(&u, true).map_err(|e| at(e, pos))?),
        (Poly(x), Poly(y)) => Poly(x.mul(&y)),
        (a, b) => return Err(mismatch("multiply", &a, &b, pos)),
    })
}

fn at(e: Error, pos: usize) -> Error {
    match e {
        Error::Precondition(msg) => syntax(pos, msg),
        other => other,
    }
}

fn divide(a: Value, b: Value, pos: usize) -> Result<Value> {
    let Value::Scalar(d) = b else {
        return Err(syntax(pos, format!("cannot divide by a {}", b.kind())));
    };
    let inv = d.inv()?;
    Ok(match a {
        Value::Scalar(x) => Value::Scalar(x * inv),
        Value::Torus(x) => Value::Torus(x.scale(&inv)),
        Value::Lie(x) => Value::Lie(x.scale(&inv)),
        Value::Poly(x) => Value::Poly(x.scale(&inv)),
    })
}

fn pow(base: Value, e: i64, field: &FieldMode, pos: usize) -> Result<Value> {
    Ok(match base {
        Value::Scalar(x) => Value::Scalar(x.pow(e)?),
        Value::Torus(x) => Value::Torus(x.pow(e, field).map_err(|e| at(e, pos))?),
        Value::Poly(x) => {
            let e = u32::try_from(e).map_err(|_| syntax(pos, "polynomial exponents must be nonnegative"))?;
            Value::Poly(x.pow(e))
        }
        Value::Lie(_) => return Err(syntax(pos, "algebra elements cannot be raised to a power")),
    })
}

fn run(src: &str, field: &FieldMode, cfg: Option<&AlgebraConfig>) -> Result<Value> {
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
        field,
        cfg,
    };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(v)
}

/// Parses any expression over `cfg`.
pub fn parse_expr(src: &str, cfg: &AlgebraConfig) -> Result<Value> {
    run(src, cfg.field(), Some(cfg))
}

pub fn parse_scalar(src: &str, field: &FieldMode) -> Result<Scalar> {
    match run(src, field, None)? {
        Value::Scalar(c) => Ok(c),
        other => Err(syntax(0, format!("expected a scalar, got a {}", other.kind()))),
    }
}

pub fn parse_torus(src: &str, field: &FieldMode) -> Result<TorusElem> {
    match run(src, field, None)? {
        Value::Scalar(c) => Ok(TorusElem::constant(c)),
        Value::Torus(x) => Ok(x),
        other => Err(syntax(0, format!("expected a torus element, got a {}", other.kind()))),
    }
}

pub fn parse_lie_expr(src: &str, cfg: &AlgebraConfig) -> Result<LieElem> {
    match parse_expr(src, cfg)? {
        Value::Lie(x) => Ok(x),
        Value::Scalar(c) if c.is_zero() => Ok(LieElem::zero(cfg)),
        other => Err(syntax(
            0,
            format!("expected an algebra element, got a {}", other.kind()),
        )),
    }
}

pub fn parse_poly_expr(src: &str, cfg: &AlgebraConfig) -> Result<Poly> {
    match parse_expr(src, cfg)? {
        Value::Poly(p) => Ok(p),
        Value::Scalar(c) => Ok(Poly::constant(c)),
        other => Err(syntax(0, format!("expected a polynomial, got a {}", other.kind()))),
    }
}
