//! Exact multivariate polynomials over Q.
//!
//! Term storage is order-agnostic (a BTree keyed by the exponent vector);
//! sorted views are produced on demand for whichever monomial order a
//! computation is using. Coefficients are arbitrary-precision rationals and
//! no zero coefficient is ever stored.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::order::MonomialOrder;
use crate::ring::{Monomial, Ring};

pub type Coef = BigRational;

pub fn rat(n: i64, d: i64) -> Coef {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Coef {
    BigRational::from(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Coef>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Coef) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.len()), c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Polynomial {
        Polynomial::constant(ring, Coef::one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        p.terms.insert(Monomial::var(ring.len(), i), Coef::one());
        p
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Polynomial> {
        Ok(Polynomial::var(ring, ring.index_of(name)?))
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, Coef)>) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Coef) -> Polynomial {
        Polynomial::from_terms(ring, vec![(m, c)])
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coef)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coef {
        self.terms.get(m).cloned().unwrap_or_else(Coef::zero)
    }

    pub fn constant_term(&self) -> Coef {
        self.coefficient(&Monomial::one(self.ring.len()))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// In-place accumulate, dropping the entry when it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Coef) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.ring.len());
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in self.terms.iter() {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Coef) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let mut out = Polynomial::zero(&self.ring);
        for (m, k) in self.terms.iter() {
            out.terms.insert(m.clone(), k * c);
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coef) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut out = Polynomial::zero(&self.ring);
        for (mm, cc) in self.terms.iter() {
            out.terms.insert(mm.mul(m)?, cc * c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                out.add_term(m1.mul(m2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let mut out = Polynomial::one(&self.ring);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Leading term with respect to `ord`; errors on the zero polynomial.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Monomial, Coef)> {
        let mut best: Option<&Monomial> = None;
        for m in self.terms.keys() {
            best = Some(match best {
                None => m,
                Some(b) => {
                    if ord.cmp_unchecked(m, b) == std::cmp::Ordering::Greater {
                        m
                    } else {
                        b
                    }
                }
            });
        }
        match best {
            Some(m) => Ok((m.clone(), self.terms[m].clone())),
            None => Err(Error::ZeroPolynomial),
        }
    }

    /// Terms sorted descending in `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(Monomial, Coef)> {
        let mut v: Vec<(Monomial, Coef)> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| ord.cmp_unchecked(&b.0, &a.0));
        v
    }

    /// Ring indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.len()];
        for m in self.terms.keys() {
            for i in m.support() {
                seen[i] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, s)| **s)
            .map(|(i, _)| i)
            .collect()
    }

    /// True when the polynomial only involves the given variable indices.
    pub fn supported_on(&self, keep: &[bool]) -> bool {
        self.terms
            .keys()
            .all(|m| m.support().all(|i| keep[i]))
    }

    /// Evaluate at a full rational point (one value per ring variable).
    pub fn eval(&self, point: &[Coef]) -> Result<Coef> {
        if point.len() != self.ring.len() {
            return Err(Error::DimensionMismatch(point.len(), self.ring.len()));
        }
        let mut acc = Coef::zero();
        for (m, c) in self.terms.iter() {
            let mut t = c.clone();
            for i in m.support() {
                for _ in 0..m.exp(i) {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute polynomials for a subset of variables (by ring index).
    pub fn substitute(&self, map: &BTreeMap<usize, Polynomial>) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in self.terms.iter() {
            let mut t = Polynomial::constant(&self.ring, c.clone());
            for i in m.support() {
                let base = match map.get(&i) {
                    Some(p) => p.clone(),
                    None => Polynomial::var(&self.ring, i),
                };
                t = t.mul(&base.pow(m.exp(i))?)?;
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Apply v^2 -> v to every variable (binary semantics).
    pub fn multilinearized(&self) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in self.terms.iter() {
            out.add_term(m.multilinearized(), c.clone());
        }
        out
    }

    /// Rename into another ring by variable name; fails if a used variable is
    /// missing there.
    pub fn into_ring(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        let mut out = Polynomial::zero(ring);
        for (m, c) in self.terms.iter() {
            let mut exps = vec![0u32; ring.len()];
            for i in m.support() {
                let j = ring.index_of(self.ring.name(i))?;
                exps[j] = m.exp(i);
            }
            out.add_term(Monomial::from_exps(exps), c.clone());
        }
        Ok(out)
    }

    /// Sum of |coefficients|.
    pub fn coef_abs_sum(&self) -> Coef {
        let mut acc = Coef::zero();
        for c in self.terms.values() {
            acc += c.abs();
        }
        acc
    }

    /// Canonical text form: terms sorted grevlex descending.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let sorted = self.sorted_terms(&MonomialOrder::GrevLex);
        let mut out = String::new();
        for (i, (m, c)) in sorted.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coef_is_one = mag.is_one();
            if m.is_one() {
                out.push_str(&format_coef(&mag));
            } else {
                if !coef_is_one {
                    out.push_str(&format_coef(&mag));
                    out.push('*');
                }
                out.push_str(&m.display(&self.ring).to_string());
            }
        }
        out
    }

    /// Parse the text format: sum of terms `c*v1^e1*...`, rationals as `p/q`.
    pub fn parse(ring: &Arc<Ring>, input: &str) -> Result<Polynomial> {
        parse_poly(ring, input)
    }
}

pub fn format_coef(c: &Coef) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

// ------------------------------------------------------------------
// text parser
// ------------------------------------------------------------------

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

#[derive(Debug, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Int(BigInt),
    Ident(String),
    End,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer {
            chars: s.chars().peekable(),
        }
    }

    fn next_tok(&mut self) -> Result<Tok> {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
        let c = match self.chars.peek() {
            None => return Ok(Tok::End),
            Some(c) => *c,
        };
        match c {
            '+' => {
                self.chars.next();
                Ok(Tok::Plus)
            }
            '-' => {
                self.chars.next();
                Ok(Tok::Minus)
            }
            '*' => {
                self.chars.next();
                Ok(Tok::Star)
            }
            '^' => {
                self.chars.next();
                Ok(Tok::Caret)
            }
            '/' => {
                self.chars.next();
                Ok(Tok::Slash)
            }
            '(' => {
                self.chars.next();
                Ok(Tok::LParen)
            }
            ')' => {
                self.chars.next();
                Ok(Tok::RParen)
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                    s.push(self.chars.next().unwrap());
                }
                Ok(Tok::Int(s.parse().unwrap()))
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while matches!(self.chars.peek(), Some(c) if c.is_alphanumeric() || *c == '_') {
                    s.push(self.chars.next().unwrap());
                }
                Ok(Tok::Ident(s))
            }
            other => Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    current: Tok,
    ring: Arc<Ring>,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<()> {
        self.current = self.lexer.next_tok()?;
        Ok(())
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.current {
                Tok::Plus => {
                    self.bump()?;
                    acc = acc.add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := ['-'] factor ('*' factor)*   with implicit '/' inside numbers
    fn term(&mut self) -> Result<Polynomial> {
        let mut sign = Coef::one();
        while self.current == Tok::Minus {
            sign = -sign;
            self.bump()?;
        }
        let mut acc = self.factor()?;
        while self.current == Tok::Star {
            self.bump()?;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc.scale(&sign))
    }

    // factor := number ['/' number] | ident ['^' int] | '(' expr ')' ['^' int]
    fn factor(&mut self) -> Result<Polynomial> {
        match std::mem::replace(&mut self.current, Tok::End) {
            Tok::Int(n) => {
                self.bump()?;
                let mut c = BigRational::from(n);
                if self.current == Tok::Slash {
                    self.bump()?;
                    match std::mem::replace(&mut self.current, Tok::End) {
                        Tok::Int(d) => {
                            self.bump()?;
                            if d.is_zero() {
                                return Err(Error::Parse("zero denominator".into()));
                            }
                            c /= BigRational::from(d);
                        }
                        t => return Err(Error::Parse(format!("expected denominator, got {t:?}"))),
                    }
                }
                Ok(Polynomial::constant(&self.ring, c))
            }
            Tok::Ident(name) => {
                self.bump()?;
                let base = Polynomial::var_named(&self.ring, &name)?;
                self.maybe_pow(base)
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.current != Tok::RParen {
                    return Err(Error::Parse("expected `)`".into()));
                }
                self.bump()?;
                self.maybe_pow(inner)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }

    fn maybe_pow(&mut self, base: Polynomial) -> Result<Polynomial> {
        if self.current == Tok::Caret {
            self.bump()?;
            match std::mem::replace(&mut self.current, Tok::End) {
                Tok::Int(e) => {
                    self.bump()?;
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    base.pow(e)
                }
                t => Err(Error::Parse(format!("expected exponent, got {t:?}"))),
            }
        } else {
            Ok(base)
        }
    }
}

fn parse_poly(ring: &Arc<Ring>, input: &str) -> Result<Polynomial> {
    let mut p = Parser {
        lexer: Lexer::new(input),
        current: Tok::End,
        ring: ring.clone(),
    };
    p.bump()?;
    if p.current == Tok::End {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let poly = p.expr()?;
    if p.current != Tok::End {
        return Err(Error::Parse("trailing input".into()));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> Arc<Ring> {
        Ring::new(vec!["x", "y"])
    }

    #[test]
    fn add_cancels() {
        let r = ring2();
        let p = Polynomial::parse(&r, "x + y").unwrap();
        let q = Polynomial::parse(&r, "x - y").unwrap();
        assert_eq!(p.add(&q).unwrap(), Polynomial::parse(&r, "2*x").unwrap());
    }

    #[test]
    fn mul_by_zero_absorbs() {
        let r = ring2();
        let p = Polynomial::parse(&r, "3*x^2*y - 1/2").unwrap();
        assert!(p.mul(&Polynomial::zero(&r)).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring2();
        let p = Polynomial::parse(&r, "x + y").unwrap();
        let q = Polynomial::parse(&r, "x - y").unwrap();
        assert_eq!(
            p.mul(&q).unwrap(),
            Polynomial::parse(&r, "x^2 - y^2").unwrap()
        );
    }

    #[test]
    fn leading_term_by_order() {
        let r = ring2();
        let p = Polynomial::parse(&r, "x + y^2").unwrap();
        let (m, c) = p.leading_term(&MonomialOrder::Lex).unwrap();
        assert_eq!(m, Monomial::from_exps(vec![1, 0]));
        assert!(c.is_one());
        let (m, _) = p.leading_term(&MonomialOrder::GrevLex).unwrap();
        assert_eq!(m, Monomial::from_exps(vec![0, 2]));
        assert!(Polynomial::zero(&r).leading_term(&MonomialOrder::Lex).is_err());
    }

    #[test]
    fn single_term_leading() {
        let r = ring2();
        let p = Polynomial::parse(&r, "5*x^2*y").unwrap();
        for ord in [MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::DegLex] {
            let (m, c) = p.leading_term(&ord).unwrap();
            assert_eq!(m, Monomial::from_exps(vec![2, 1]));
            assert_eq!(c, int(5));
        }
    }

    #[test]
    fn text_round_trip() {
        let r = ring2();
        let p = Polynomial::parse(&r, "3/2*x^2*y - x + 7").unwrap();
        let q = Polynomial::parse(&r, &p.to_text()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r1 = ring2();
        let r2 = Ring::new(vec!["x", "y", "z"]);
        let p = Polynomial::parse(&r1, "x").unwrap();
        let q = Polynomial::parse(&r2, "x").unwrap();
        assert!(matches!(p.add(&q), Err(Error::RingMismatch)));
    }

    #[test]
    fn parse_rejects_unknown_variable() {
        let r = ring2();
        assert!(Polynomial::parse(&r, "x + w").is_err());
    }
}
