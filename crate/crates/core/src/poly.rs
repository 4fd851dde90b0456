//! Sparse multivariate polynomials with rational coefficients.

use crate::error::{Error, Result};
use crate::linalg::{factorial, parse_q, q};
use crate::Q;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exps: Vec<u32>, c: Q) -> Self {
        let mut p = Self::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Q::one())
    }

    /// The linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(&unit(n, i), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(&e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, exps: &[u32], c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(exps) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(exps);
                }
            }
            None => {
                self.terms.insert(exps.to_vec(), c);
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Polynomial) {
        for (e, c) in &other.terms {
            self.add_term(e, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Polynomial, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(e, c * s);
        }
    }

    pub fn scale(&self, s: &Q) -> Polynomial {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut r = Self::one(self.nvars);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree().unwrap_or(0) == 0
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == d).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e.iter().sum();
            out.entry(d).or_insert_with(|| Self::zero(self.nvars)).terms.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            s += t;
        }
        s
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                p.add_term(&e2, c * q(e[i] as i64));
            }
        }
        p
    }

    pub fn directional_derivative(&self, v: &[Q]) -> Polynomial {
        let mut p = Self::zero(self.nvars);
        for (i, vi) in v.iter().enumerate() {
            if !vi.is_zero() {
                p.add_scaled(&self.derivative(i), vi);
            }
        }
        p
    }

    /// Substitutes `x_i -> images[i]`; all images share one variable count.
    pub fn compose(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let m = images.first().map_or(0, |p| p.nvars);
        let mut cache: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Self::one(m), p.clone()]).collect();
        let mut out = Self::zero(m);
        for (e, c) in &self.terms {
            let mut t = Self::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][k as usize];
            }
            out.add_assign_ref(&t);
        }
        out
    }

    /// Linear change of variables `x_i -> sum_j m[i][j] y_j`.
    pub fn linear_substitute(&self, m: &[Vec<Q>]) -> Polynomial {
        let images: Vec<Polynomial> = m.iter().map(|r| Self::linear(r)).collect();
        if images.is_empty() {
            return self.clone();
        }
        self.compose(&images)
    }

    /// Re-embeds the polynomial into `nvars` variables, sending variable `i` to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Polynomial {
        let mut p = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            p.add_term(&e2, c.clone());
        }
        p
    }

    /// Applies `P(d)` (the constant-coefficient operator with symbol `P`) to `f`.
    pub fn apply_as_operator(&self, f: &Polynomial) -> Polynomial {
        let mut out = Self::zero(f.nvars);
        for (e, c) in &self.terms {
            let mut g = f.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    g = g.derivative(i);
                }
            }
            out.add_scaled(&g, c);
        }
        out
    }

    /// `m!` for a multi-index.
    pub fn multi_factorial(e: &[u32]) -> Q {
        e.iter().fold(Q::one(), |a, &k| a * factorial(k))
    }

    /// Exact quotient by the linear form `sum l_i z_i`, if it divides.
    pub fn div_linear(&self, l: &[Q]) -> Option<Polynomial> {
        let j = l.iter().position(|c| !c.is_zero())?;
        let mut rem = self.clone();
        let mut quo = Polynomial::zero(self.nvars);
        let lin = Polynomial::linear(l);
        while let Some((e, c)) = rem.terms.iter().filter(|(e, _)| e[j] > 0).max_by_key(|(e, _)| e[j]).map(|(e, c)| (e.clone(), c.clone())) {
            let mut e2 = e;
            e2[j] -= 1;
            let t = Polynomial::monomial(e2, c / &l[j]);
            rem = &rem - &(&t * &lin);
            quo.add_assign_ref(&t);
        }
        rem.is_zero().then_some(quo)
    }

    pub fn display_with(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut s = String::new();
        for (n, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let mono = monomial_string(e, prefix);
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }

    /// Parses output of [`Polynomial::display_with`] (and general `+ - * / ^ ()` expressions
    /// whose divisors are constants).
    pub fn parse(s: &str, prefix: &str, nvars: usize) -> Result<Polynomial> {
        let mut p = Parser { s: s.as_bytes(), pos: 0, prefix, nvars };
        let r = p.expr()?;
        p.ws();
        if p.pos != p.s.len() {
            return Err(Error::Parse(format!("trailing input in polynomial '{s}'")));
        }
        Ok(r)
    }
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

fn monomial_string(e: &[u32], prefix: &str) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("{prefix}{}", i + 1) } else { format!("{prefix}{}^{k}", i + 1) })
        .collect();
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("z"))
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    prefix: &'a str,
    nvars: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }
    fn err(&self, m: &str) -> Error {
        Error::Parse(format!("{m} at position {}", self.pos))
    }
    fn expr(&mut self) -> Result<Polynomial> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            neg = true;
        }
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }
    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    if !f.is_constant() || f.is_zero() {
                        return Err(self.err("division by a non-constant"));
                    }
                    acc = acc.scale(&f.constant_term().recip());
                }
                _ => return Ok(acc),
            }
        }
    }
    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.ws();
            let k = self.digits().ok_or_else(|| self.err("expected exponent"))?;
            let k: u32 = k.parse().map_err(|_| self.err("bad exponent"))?;
            return Ok(base.pow(k));
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
    fn atom(&mut self) -> Result<Polynomial> {
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
                Ok(Polynomial::constant(self.nvars, parse_q(&d)?))
            }
            Some(_) if self.s[self.pos..].starts_with(self.prefix.as_bytes()) => {
                self.pos += self.prefix.len();
                let d = self.digits().ok_or_else(|| self.err("expected variable index"))?;
                let i: usize = d.parse().map_err(|_| self.err("bad variable index"))?;
                if i == 0 || i > self.nvars {
                    return Err(self.err("variable index out of range"));
                }
                Ok(Polynomial::var(self.nvars, i - 1))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        r.add_assign_ref(o);
        r
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        r.add_scaled(o, &-Q::one());
        r
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        let n = self.nvars.max(o.nvars);
        let mut r = Polynomial::zero(n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(&e, c1 * c2);
            }
        }
        r
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Q::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, o: Polynomial) -> Polynomial {
        &self + &o
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, o: Polynomial) -> Polynomial {
        &self - &o
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, o: Polynomial) -> Polynomial {
        &self * &o
    }
}
