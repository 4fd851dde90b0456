//! Text syntax for rational functions, e.g. `(z1 + 2)/(z1^2*(z1 + z2)) - 1/z2`.
//!
//! Denominators must factor into linear forms proportional to lines of the
//! arrangement; `z1..zr` are the coordinates.

use crate::arrangement::Arrangement;
use crate::element::RationalElement;
use crate::error::{Error, Result};
use crate::linalg::parse_q;
use crate::poly::Polynomial;
use crate::Q;
use num_traits::Zero;
use std::collections::BTreeMap;

pub fn parse_element(arr: &Arrangement, s: &str) -> Result<RationalElement> {
    let mut p = P { arr, s: s.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e.collect())
}

/// Writes `p` as `c * prod line_i^{e_i}` over the lines of `arr`.
pub fn factor_over_lines(arr: &Arrangement, p: &Polynomial) -> Option<(Q, Vec<(usize, u32)>)> {
    if p.is_zero() {
        return None;
    }
    let mut rest = p.clone();
    let mut exps: BTreeMap<usize, u32> = BTreeMap::new();
    for (i, l) in arr.lines().iter().enumerate() {
        while let Some(q) = rest.div_linear(l) {
            rest = q;
            *exps.entry(i).or_insert(0) += 1;
        }
    }
    rest.is_constant().then(|| (rest.constant_term(), exps.into_iter().collect()))
}

struct P<'a> {
    arr: &'a Arrangement,
    s: &'a [u8],
    pos: usize,
}

impl P<'_> {
    fn r(&self) -> usize {
        self.arr.dim()
    }
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }
    fn err(&self, m: &str) -> Error {
        Error::Parse(format!("{m} at position {}", self.pos))
    }
    fn expr(&mut self) -> Result<RationalElement> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.scale(&-Q::from_integer(1.into()));
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }
    fn term(&mut self) -> Result<RationalElement> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.factor()?.collect();
                    acc = self.divide(&acc, &d).map_err(|_| Error::Parse(format!("divisor is not a product of arrangement forms at position {at}")))?;
                }
                _ => return Ok(acc),
            }
        }
    }
    fn divide(&self, a: &RationalElement, d: &RationalElement) -> Result<RationalElement> {
        let r = self.r();
        let poly = match d.terms() {
            [] => return Err(Error::SingularPoint),
            [t] if t.denominator.is_empty() => t.numerator.clone(),
            _ => return Err(Error::SingularPoint),
        };
        let (c, exps) = factor_over_lines(self.arr, &poly).ok_or(Error::SingularPoint)?;
        if c.is_zero() {
            return Err(Error::SingularPoint);
        }
        Ok(a.mul(&RationalElement::pure(r, c.recip(), &exps)))
    }
    fn factor(&mut self) -> Result<RationalElement> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.peek();
            let k: u32 = self.digits().and_then(|d| d.parse().ok()).ok_or_else(|| self.err("expected exponent"))?;
            let mut out = RationalElement::polynomial(Polynomial::one(self.r()));
            for _ in 0..k {
                out = out.mul(&base);
            }
            return Ok(out.collect());
        }
        Ok(base)
    }
    fn digits(&mut self) -> Option<String> {
        let st = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'.') {
            self.pos += 1;
        }
        (self.pos > st).then(|| String::from_utf8_lossy(&self.s[st..self.pos]).into_owned())
    }
    fn atom(&mut self) -> Result<RationalElement> {
        let r = self.r();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                Ok(RationalElement::polynomial(Polynomial::constant(r, parse_q(&d)?)))
            }
            Some(b'z') => {
                self.pos += 1;
                let d = self.digits().ok_or_else(|| self.err("expected variable index"))?;
                let i: usize = d.parse().map_err(|_| self.err("bad variable index"))?;
                if i == 0 || i > r {
                    return Err(self.err("variable index out of range"));
                }
                Ok(RationalElement::polynomial(Polynomial::var(r, i - 1)))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}
