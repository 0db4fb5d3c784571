//! Ordinals below ε₀ in Cantor normal form.
//!
//! Text syntax: `0`, naturals, `w`, `w^<atom>`, `*<nat>` coefficients and
//! `+` sums, e.g. `w^2*2+w+3` or `w^(w+1)`. An exponent atom is a natural,
//! another `w` power, or a parenthesized sum. Parsing is strict: summands
//! must have strictly decreasing exponents and nonzero coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// `ω^e₁·c₁ + … + ω^eₙ·cₙ` with `e₁ > … > eₙ` and every `cᵢ > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OrdinalCNF {
    terms: Vec<(OrdinalCNF, u64)>,
}

impl OrdinalCNF {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn natural(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        OrdinalCNF {
            terms: vec![(Self::zero(), n)],
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::natural(1))
    }

    pub fn omega_pow(exponent: OrdinalCNF) -> Self {
        OrdinalCNF {
            terms: vec![(exponent, 1)],
        }
    }

    /// Builds from summands, rejecting anything not in normal form.
    pub fn from_terms(terms: Vec<(OrdinalCNF, u64)>) -> Option<Self> {
        let decreasing = terms.windows(2).all(|w| w[0].0 > w[1].0);
        let positive = terms.iter().all(|(_, c)| *c > 0);
        (decreasing && positive).then_some(OrdinalCNF { terms })
    }

    pub fn terms(&self) -> &[(OrdinalCNF, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(n)` when the ordinal is finite.
    pub fn as_natural(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|(e, _)| e.is_zero())
    }

    /// Ordinal sum; absorbs the summands of `self` below the leading
    /// exponent of `other`.
    pub fn checked_add(&self, other: &OrdinalCNF) -> Result<OrdinalCNF> {
        let Some((lead, lead_coeff)) = other.terms.first() else {
            return Ok(self.clone());
        };
        let mut terms: Vec<(OrdinalCNF, u64)> = self
            .terms
            .iter()
            .take_while(|(e, _)| e >= lead)
            .cloned()
            .collect();
        match terms.last_mut() {
            Some((e, c)) if e == lead => {
                *c = c.checked_add(*lead_coeff).ok_or(Error::Overflow)?;
                terms.extend(other.terms[1..].iter().cloned());
            }
            _ => terms.extend(other.terms.iter().cloned()),
        }
        Ok(OrdinalCNF { terms })
    }

    /// Writes `self = β + ω^γ` with `γ` the last exponent; `β` is a multiple
    /// of `ω^γ`.
    pub fn peel_last(&self) -> Result<(OrdinalCNF, OrdinalCNF)> {
        let mut terms = self.terms.clone();
        let (gamma, coeff) = terms.pop().ok_or(Error::ZeroHasNoLastTerm)?;
        if coeff > 1 {
            terms.push((gamma.clone(), coeff - 1));
        }
        Ok((OrdinalCNF { terms }, gamma))
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let simple = match self.terms.as_slice() {
            [] => true,
            [(e, c)] => e.is_zero() || *c == 1,
            _ => false,
        };
        if simple {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }
}

impl Ord for OrdinalCNF {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for OrdinalCNF {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn ord_compare(a: &OrdinalCNF, b: &OrdinalCNF) -> Ordering {
    a.cmp(b)
}

impl fmt::Display for OrdinalCNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            write!(f, "w")?;
            if e.as_natural() != Some(1) {
                write!(f, "^")?;
                e.fmt_atom(f)?;
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for OrdinalCNF {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let value = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::syntax(p.pos, "unexpected trailing input"));
        }
        Ok(value)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn natural(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::syntax(start, "expected a natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::syntax(start, "natural number too large"))
    }

    fn sum(&mut self) -> Result<OrdinalCNF> {
        let start = self.pos;
        let first = self.summand()?;
        if first.is_zero() {
            // a lone `0` is fine, `0+…` is not canonical
            if self.peek() == Some(b'+') {
                return Err(Error::syntax(start, "zero summand is not canonical"));
            }
            return Ok(first);
        }
        let mut terms = first.terms;
        while self.eat(b'+') {
            let at = self.pos;
            let next = self.summand()?;
            let [(e, c)] = <[_; 1]>::try_from(next.terms).map_err(|_| {
                Error::syntax(at, "zero summand is not canonical")
            })?;
            if terms.last().is_some_and(|(prev, _)| *prev <= e) {
                return Err(Error::syntax(at, "exponents must strictly decrease"));
            }
            terms.push((e, c));
        }
        Ok(OrdinalCNF { terms })
    }

    // NAT | 'w' ('^' atom)? ('*' NAT)?
    fn summand(&mut self) -> Result<OrdinalCNF> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let exponent = if self.eat(b'^') {
                    self.atom()?
                } else {
                    OrdinalCNF::natural(1)
                };
                let coeff = if self.eat(b'*') {
                    let at = self.pos;
                    let c = self.natural()?;
                    if c == 0 {
                        return Err(Error::syntax(at, "zero coefficient is not canonical"));
                    }
                    c
                } else {
                    1
                };
                Ok(OrdinalCNF {
                    terms: vec![(exponent, coeff)],
                })
            }
            Some(b) if b.is_ascii_digit() => Ok(OrdinalCNF::natural(self.natural()?)),
            _ => Err(Error::syntax(self.pos, "expected a natural or `w`")),
        }
    }

    fn atom(&mut self) -> Result<OrdinalCNF> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(b')') {
                    return Err(Error::syntax(self.pos, "expected `)`"));
                }
                Ok(inner)
            }
            Some(b'w') => {
                self.pos += 1;
                let exponent = if self.eat(b'^') {
                    self.atom()?
                } else {
                    OrdinalCNF::natural(1)
                };
                Ok(OrdinalCNF::omega_pow(exponent))
            }
            Some(b) if b.is_ascii_digit() => Ok(OrdinalCNF::natural(self.natural()?)),
            _ => Err(Error::syntax(self.pos, "expected an exponent")),
        }
    }
}
