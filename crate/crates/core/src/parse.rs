//! Text form of homogeneous polynomials.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' uint)?
//! coeff  := int | int '/' uint | '(' ratfun-in-z ')'
//! ```
//!
//! A leading sign on the first term is accepted. Inside parentheses the
//! coefficient is an arbitrary rational expression in `z` using `+ - * / ^`.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{MovingPoly, Poly};
use crate::ratfun::RationalFunction;
use crate::rational::Rational;
use crate::univariate::UniPoly;
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].1.is_alphanumeric() || bytes[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(bytes[start..i].iter().map(|(_, c)| c).collect())));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(n)
            }
            _ => self.err("expected unsigned integer"),
        }
    }

    fn small_uint(&mut self) -> Result<u32> {
        let n = self.uint()?;
        u32::try_from(n).or_else(|_| self.err("exponent too large"))
    }

    fn expr(&mut self) -> Result<Vec<(Monomial, RationalFunction)>> {
        let mut terms = Vec::new();
        let mut neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if neg { -&c } else { c }));
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        if self.at < self.toks.len() {
            return self.err("unexpected token");
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(Monomial, RationalFunction)> {
        let mut exps = vec![0u32; self.vars.len()];
        let coeff = match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                let q = if self.eat('/') {
                    let d = self.uint()?;
                    if d.is_zero() {
                        return Err(Error::ZeroDenominator);
                    }
                    Rational::new(n, d)
                } else {
                    Rational::from_integer(n)
                };
                Some(RationalFunction::constant(q))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let r = self.rexpr()?;
                self.expect(')')?;
                Some(r)
            }
            _ => None,
        };
        let mut need_factor = coeff.is_none();
        loop {
            if need_factor {
                self.factor(&mut exps)?;
            }
            if !self.eat('*') {
                break;
            }
            need_factor = true;
        }
        Ok((Monomial::new(exps), coeff.unwrap_or_else(RationalFunction::one)))
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                let Some(i) = self.vars.iter().position(|v| *v == name) else {
                    return Err(Error::UnknownVariable(name));
                };
                self.at += 1;
                let e = if self.eat('^') { self.small_uint()? } else { 1 };
                exps[i] += e;
                Ok(())
            }
            _ => self.err("expected variable"),
        }
    }

    fn rexpr(&mut self) -> Result<RationalFunction> {
        let mut acc = RationalFunction::zero();
        let mut neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t = self.rterm()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn rterm(&mut self) -> Result<RationalFunction> {
        let mut acc = self.rpow()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.rpow()?;
            } else if self.eat('/') {
                let d = self.rpow()?;
                if d.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                acc = &acc * &d.recip()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn rpow(&mut self) -> Result<RationalFunction> {
        let base = self.ratom()?;
        if self.eat('^') {
            let e = self.small_uint()?;
            let mut acc = RationalFunction::one();
            for _ in 0..e {
                acc = &acc * &base;
            }
            Ok(acc)
        } else {
            Ok(base)
        }
    }

    fn ratom(&mut self) -> Result<RationalFunction> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(RationalFunction::constant(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) if name == "z" => {
                self.at += 1;
                Ok(RationalFunction::from_poly(UniPoly::z()))
            }
            Some(Tok::Ident(name)) => Err(Error::UnknownVariable(name)),
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let r = self.rexpr()?;
                self.expect(')')?;
                Ok(r)
            }
            Some(Tok::Sym('-')) => {
                self.at += 1;
                Ok(-&self.ratom()?)
            }
            _ => self.err("expected coefficient expression"),
        }
    }
}

/// Parses a (possibly moving) homogeneous polynomial over `variables`.
pub fn parse_poly(text: &str, variables: &[String]) -> Result<MovingPoly> {
    if variables.is_empty() {
        return Err(Error::Invalid("empty variable list".into()));
    }
    for (i, v) in variables.iter().enumerate() {
        if variables[..i].contains(v) {
            return Err(Error::Invalid(format!("duplicate variable `{v}`")));
        }
    }
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax { pos: 0, msg: "empty input".into() });
    }
    let mut p = Parser { toks, at: 0, end: text.len(), vars: variables };
    let terms = p.expr()?;
    let degree = terms[0].0.degree();
    MovingPoly::from_terms(variables.len(), Some(degree), terms)
}

/// Parses a polynomial whose coefficients must all be constants.
pub fn parse_fixed(text: &str, variables: &[String]) -> Result<Poly> {
    parse_poly(text, variables)?.as_constant().ok_or(Error::NotConstant)
}

/// Parses a standalone rational function of `z`.
pub fn parse_ratfun(text: &str) -> Result<RationalFunction> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len(), vars: &[] };
    let r = p.rexpr()?;
    if p.at < p.toks.len() {
        return p.err("unexpected token");
    }
    Ok(r)
}

impl RationalFunction {
    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}
