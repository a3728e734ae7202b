//! Text syntax for expressions:
//!
//! ```text
//! expr    := ('+'|'-')? term (('+'|'-') term)*
//! term    := factor (('*'|'/') factor)*
//! factor  := base ('^' uint)?
//! base    := variable | 'E' '(' int ')' | 'log1m' | 'log1p' | literal | 'i' | '(' expr ')'
//! literal := uint ('/' uint)? 'i'?
//! ```
//!
//! Variables are `x y t s z zb`; `E(m)` is `e^{m·base}` for the algebra's
//! exponential base. Division is only by nonzero constants. Juxtaposition is
//! not multiplication, except that a literal directly followed by `i` is
//! imaginary (`3/2i` is `(3/2)·i`).

use num_bigint::BigInt;

use super::atoms::{AtomSet, Var};
use super::canonical::Expr;
use crate::error::{Error, Result};
use crate::numeric::{GaussianRational, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Num(src[start..i].parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(Error::Parse { pos: start, msg: format!("unexpected character '{other}'") })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    atoms: AtomSet,
}

/// Parses `src` into a canonical expression over `atoms`.
pub fn parse(src: &str, atoms: AtomSet) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, at: 0, atoms };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        _ => Err(p.err("unexpected trailing input")),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos(), msg: msg.into() }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn lift<T>(&self, r: Result<T>, pos: usize) -> Result<T> {
        r.map_err(|e| match e {
            Error::Usage(msg) => Error::Parse { pos, msg },
            other => other,
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            let op = self.peek().clone();
            match op {
                Tok::Plus | Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = if op == Tok::Plus { acc.add(&rhs)? } else { acc.sub(&rhs)? };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    let pos = self.pos();
                    self.bump();
                    let rhs = self.factor()?;
                    if acc.has_log() && rhs.has_log() {
                        return Err(Error::Parse { pos, msg: "log atom squared".into() });
                    }
                    acc = acc.mul(&rhs)?;
                }
                Tok::Slash => {
                    let pos = self.pos();
                    self.bump();
                    let rhs = self.factor()?;
                    let c = rhs
                        .as_constant()
                        .filter(|c| !c.is_zero())
                        .ok_or(Error::Parse { pos, msg: "division by a non-constant or zero".into() })?;
                    acc = acc.scale(&c.inv().expect("nonzero"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let pos = self.pos();
        self.bump();
        let k = match self.bump() {
            Tok::Num(n) => u32::try_from(n).map_err(|_| Error::Parse { pos, msg: "exponent too large".into() })?,
            _ => return Err(Error::Parse { pos, msg: "expected unsigned integer exponent".into() }),
        };
        if base.has_log() && k >= 2 {
            return Err(Error::Parse { pos, msg: "log atom squared".into() });
        }
        base.pow(k)
    }

    fn base(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => self.literal(n),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => self.ident(&name, pos),
            _ => Err(Error::Parse { pos, msg: "expected a variable, literal or '('".into() }),
        }
    }

    fn literal(&mut self, numer: BigInt) -> Result<Expr> {
        let mut q = Rational::from(numer);
        if *self.peek() == Tok::Slash {
            if let Tok::Num(d) = self.peek2().clone() {
                let pos = self.pos();
                self.bump();
                self.bump();
                q = Rational::from_bigints(q.numer().clone(), d)
                    .ok_or(Error::Parse { pos, msg: "zero denominator".into() })?;
            }
        }
        let c = if *self.peek() == Tok::Ident("i".into()) {
            self.bump();
            GaussianRational::new(Rational::zero(), q)
        } else {
            GaussianRational::real(q)
        };
        Ok(Expr::constant(self.atoms, c))
    }

    fn ident(&mut self, name: &str, pos: usize) -> Result<Expr> {
        if name == "i" {
            return Ok(Expr::constant(self.atoms, GaussianRational::i()));
        }
        if name == "E" {
            self.expect(Tok::LParen, "'(' after E")?;
            let neg = if *self.peek() == Tok::Minus {
                self.bump();
                true
            } else {
                false
            };
            let wpos = self.pos();
            let w = match self.bump() {
                Tok::Num(n) => i32::try_from(n)
                    .map_err(|_| Error::Parse { pos: wpos, msg: "exponential weight too large".into() })?,
                _ => return Err(Error::Parse { pos: wpos, msg: "expected integer weight".into() }),
            };
            self.expect(Tok::RParen, "')'")?;
            if self.atoms.exp_base.is_none() {
                return Err(Error::Parse { pos, msg: "unknown atom E for this geometry".into() });
            }
            return self.lift(Expr::exp(self.atoms, if neg { -w } else { w }), pos);
        }
        if name == "log1m" || name == "log1p" {
            if self.atoms.log.map(|k| k.token()) != Some(name) {
                return Err(Error::Parse { pos, msg: format!("unknown atom {name} for this geometry") });
            }
            return self.lift(Expr::log(self.atoms), pos);
        }
        match Var::from_name(name) {
            Some(v) if self.atoms.vars.contains(v) => self.lift(Expr::var(self.atoms, v), pos),
            Some(_) => Err(Error::Parse { pos, msg: format!("unknown atom {name} for this geometry") }),
            None => Err(Error::Parse { pos, msg: format!("unknown identifier '{name}'") }),
        }
    }
}
