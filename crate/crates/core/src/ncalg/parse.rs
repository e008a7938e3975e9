//! Expression syntax shared by every text format.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := number ['/' number] | ident | '(' expr ')' | '[' expr ',' expr ']'
//! ```
//!
//! Identifiers are `[A-Za-z_][A-Za-z0-9_']*`. `x^-1` denotes the adjoined
//! inverse of `x` in noncommutative contexts and a negative power in
//! commutative ones.

use super::comm::CommPoly;
use super::context::Generators;
use super::poly::NcPoly;
use crate::error::{Error, Result};
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Rat),
    Ident(String, usize),
    Neg(Box<Expr>),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Power(Box<Expr>, i32, usize),
    Bracket(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

impl Lexer {
    fn new(src: &str, line: usize, col0: usize) -> Result<Self> {
        let chars: Vec<char> = src.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = col0 + i;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Num(chars[start..i].iter().collect()), col));
            } else if is_ident_start(c) {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            } else if "+-*/^()[],".contains(c) {
                toks.push((Tok::Sym(c), col));
                i += 1;
            } else {
                return Err(Error::parse(line, col, format!("unexpected character `{c}`")));
            }
        }
        Ok(Lexer {
            toks,
            pos: 0,
            line,
            end: col0 + chars.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col(), msg)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                let v = s.parse::<i64>().map_err(|_| self.err("integer too large"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected an integer")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let neg = self.eat('-');
        terms.push((neg, self.term()?));
        loop {
            if self.eat('+') {
                terms.push((false, self.term()?));
            } else if self.eat('-') {
                terms.push((true, self.term()?));
            } else {
                break;
            }
        }
        if terms.len() == 1 && !terms[0].0 {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(Expr::Sum(terms))
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.unary()?];
        while self.eat('*') {
            factors.push(self.unary()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap());
        }
        Ok(Expr::Product(factors))
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        let col = self.col();
        if self.eat('^') {
            let neg = self.eat('-');
            let e = self.integer()?;
            let e = i32::try_from(e).map_err(|_| Error::parse(self.line, col, "exponent too large"))?;
            return Ok(Expr::Power(Box::new(base), if neg { -e } else { e }, col));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(_)) => {
                let n = self.integer()?;
                if self.eat('/') {
                    let d = self.integer()?;
                    if d == 0 {
                        return Err(Error::parse(self.line, col, "zero denominator"));
                    }
                    Ok(Expr::Num(Rat::new(n, d)))
                } else {
                    Ok(Expr::Num(Rat::from_int(n)))
                }
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Ident(s, col))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            Some(_) => Err(self.err("expected a number, name, `(` or `[`")),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parses `src`; `line` and `col0` locate it for diagnostics (1-based).
pub fn parse_expr(src: &str, line: usize, col0: usize) -> Result<Expr> {
    let mut lx = Lexer::new(src, line, col0)?;
    if lx.peek().is_none() {
        return Err(lx.err("empty expression"));
    }
    let e = lx.expr()?;
    if lx.peek().is_some() {
        return Err(lx.err("unexpected trailing input"));
    }
    Ok(e)
}

impl Expr {
    /// Evaluates in the free algebra on `gens`. `x^-k` uses the adjoined
    /// inverse of `x`.
    pub fn to_nc(&self, gens: &Generators, line: usize) -> Result<NcPoly> {
        Ok(match self {
            Expr::Num(r) => NcPoly::constant(r.clone()),
            Expr::Ident(s, col) => match gens.index_of(s) {
                Some(i) => NcPoly::generator(i),
                None => return Err(Error::parse(line, *col, format!("unknown name `{s}`"))),
            },
            Expr::Neg(e) => -&e.to_nc(gens, line)?,
            Expr::Sum(ts) => {
                let mut acc = NcPoly::zero();
                for (neg, t) in ts {
                    let v = t.to_nc(gens, line)?;
                    acc = if *neg { &acc - &v } else { &acc + &v };
                }
                acc
            }
            Expr::Product(fs) => {
                let mut acc = NcPoly::one();
                for f in fs {
                    acc = &acc * &f.to_nc(gens, line)?;
                }
                acc
            }
            Expr::Power(b, e, col) => {
                if *e >= 0 {
                    b.to_nc(gens, line)?.pow(*e as usize)
                } else {
                    let Expr::Ident(s, _) = b.as_ref() else {
                        return Err(Error::parse(line, *col, "negative powers apply to names only"));
                    };
                    let inv = gens
                        .index_of(s)
                        .and_then(|i| gens.inverse_index(i))
                        .ok_or_else(|| Error::parse(line, *col, format!("`{s}` is not invertible here")))?;
                    NcPoly::generator(inv).pow((-e) as usize)
                }
            }
            Expr::Bracket(a, b) => a.to_nc(gens, line)?.commutator(&b.to_nc(gens, line)?),
        })
    }

    /// Evaluates as a commutative Laurent polynomial in `names`.
    pub fn to_comm<S: AsRef<str>>(&self, names: &[S], line: usize) -> Result<CommPoly> {
        let nv = names.len();
        Ok(match self {
            Expr::Num(r) => CommPoly::constant(nv, r.clone()),
            Expr::Ident(s, col) => match names.iter().position(|n| n.as_ref() == s) {
                Some(i) => CommPoly::var(nv, i),
                None => return Err(Error::parse(line, *col, format!("unknown name `{s}`"))),
            },
            Expr::Neg(e) => -&e.to_comm(names, line)?,
            Expr::Sum(ts) => {
                let mut acc = CommPoly::zero(nv);
                for (neg, t) in ts {
                    let v = t.to_comm(names, line)?;
                    acc = if *neg { &acc - &v } else { &acc + &v };
                }
                acc
            }
            Expr::Product(fs) => {
                let mut acc = CommPoly::one(nv);
                for f in fs {
                    acc = &acc * &f.to_comm(names, line)?;
                }
                acc
            }
            Expr::Power(b, e, col) => {
                let base = b.to_comm(names, line)?;
                if *e >= 0 {
                    base.pow(*e as u32)
                } else {
                    let mut terms = base.terms();
                    let (Some((ex, c)), None) = (terms.next(), terms.next()) else {
                        return Err(Error::parse(line, *col, "negative powers apply to monomials only"));
                    };
                    let inv = CommPoly::monomial(ex.iter().map(|k| -k).collect(), c.recip());
                    inv.pow((-e) as u32)
                }
            }
            Expr::Bracket(_, _) => CommPoly::zero(nv),
        })
    }
}

/// Parses a noncommutative polynomial over `gens`.
pub fn parse_nc(src: &str, gens: &Generators) -> Result<NcPoly> {
    parse_expr(src, 1, 1)?.to_nc(gens, 1)
}

/// Parses a commutative Laurent polynomial over `names`.
pub fn parse_comm<S: AsRef<str>>(src: &str, names: &[S]) -> Result<CommPoly> {
    parse_expr(src, 1, 1)?.to_comm(names, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_canonical_text() {
        let gens = Generators::plain(&["x", "y"]).unwrap();
        let p = parse_nc("1 - 2/3*x*y + x*y*x", &gens).unwrap();
        assert_eq!(p.display(&gens.names()).to_string(), "1 - 2/3*x*y + x*y*x");
        let q = parse_nc("[x, y] - (x*y - y*x)", &gens).unwrap();
        assert!(q.is_zero());
        let r = parse_nc("-(x + 2)^2", &gens).unwrap();
        assert_eq!(r.display(&gens.names()).to_string(), "-4 - 4*x - x*x");
    }

    #[test]
    fn inverses() {
        let gens = Generators::with_inverses(&["b1", "b3"], &["b3"]).unwrap();
        let p = parse_nc("-b1*b3^-1", &gens).unwrap();
        assert_eq!(p.display(&gens.names()).to_string(), "-b1*b3^-1");
        assert!(parse_nc("b1^-1", &gens).is_err());
        let c = parse_comm("b3^-2 + b1*b3^-1", &["b1", "b3"]).unwrap();
        assert_eq!(c.display(&["b1", "b3"]).to_string(), "b3^-2 + b1*b3^-1");
    }

    #[test]
    fn diagnostics_carry_columns() {
        let gens = Generators::plain(&["x"]).unwrap();
        match parse_expr("x * ) ", 4, 10) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!((line, column), (4, 14));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_nc("x*q", &gens), Err(Error::Parse { column: 3, .. })));
    }
}
