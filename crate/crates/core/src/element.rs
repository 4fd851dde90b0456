//! Elements of the ring of rational functions with poles on the arrangement.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::linalg::{dot, q};
use crate::poly::Polynomial;
use crate::Q;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Denominator exponents keyed by line index.
pub type Denom = BTreeMap<usize, u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionTerm {
    pub numerator: Polynomial,
    pub denominator: Denom,
}

impl FractionTerm {
    pub fn new(numerator: Polynomial, denominator: Denom) -> Self {
        let denominator = denominator.into_iter().filter(|&(_, n)| n > 0).collect();
        FractionTerm { numerator, denominator }
    }

    pub fn support(&self) -> Vec<usize> {
        self.denominator.keys().copied().collect()
    }

    pub fn pole_order(&self) -> u32 {
        self.denominator.values().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalElement {
    nvars: usize,
    terms: Vec<FractionTerm>,
}

impl RationalElement {
    pub fn zero(nvars: usize) -> Self {
        RationalElement { nvars, terms: vec![] }
    }

    pub fn from_terms(nvars: usize, terms: Vec<FractionTerm>) -> Self {
        RationalElement { nvars, terms: terms.into_iter().filter(|t| !t.numerator.is_zero()).collect() }
    }

    pub fn polynomial(p: Polynomial) -> Self {
        let n = p.nvars();
        Self::from_terms(n, vec![FractionTerm::new(p, Denom::new())])
    }

    pub fn fraction(numerator: Polynomial, denominator: &[(usize, u32)]) -> Self {
        let n = numerator.nvars();
        let mut d = Denom::new();
        for &(i, e) in denominator {
            *d.entry(i).or_insert(0) += e;
        }
        Self::from_terms(n, vec![FractionTerm::new(numerator, d)])
    }

    /// `c / prod alpha^n` over line indices.
    pub fn pure(nvars: usize, c: Q, denominator: &[(usize, u32)]) -> Self {
        Self::fraction(Polynomial::constant(nvars, c), denominator)
    }

    /// `phi_sigma = 1 / prod_{alpha in sigma} alpha`.
    pub fn phi(nvars: usize, sigma: &[usize]) -> Self {
        let d: Vec<(usize, u32)> = sigma.iter().map(|&i| (i, 1)).collect();
        Self::pure(nvars, Q::one(), &d)
    }

    /// Builds a term from input-vector indices, rescaling to primitive lines.
    pub fn from_inputs(arr: &Arrangement, numerator: Polynomial, denominator: &[(usize, u32)]) -> Result<Self> {
        if numerator.nvars() != arr.dim() {
            return Err(Error::DimensionMismatch { expected: arr.dim(), got: numerator.nvars() });
        }
        let mut c = Q::one();
        let mut d = Vec::new();
        for &(i, e) in denominator {
            let (line, s) = arr.class_of(i)?;
            c /= num_traits::pow(s, e as usize);
            d.push((line, e));
        }
        Ok(Self::fraction(numerator.scale(&c), &d))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[FractionTerm] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<FractionTerm> {
        self.terms
    }

    pub fn has_no_terms(&self) -> bool {
        self.terms.is_empty()
    }

    /// Merges terms with equal denominators and drops zero numerators.
    pub fn collect(&self) -> RationalElement {
        let mut m: BTreeMap<Denom, Polynomial> = BTreeMap::new();
        for t in &self.terms {
            m.entry(t.denominator.clone()).or_insert_with(|| Polynomial::zero(self.nvars)).add_assign_ref(&t.numerator);
        }
        Self::from_map(self.nvars, m)
    }

    pub fn from_map(nvars: usize, m: BTreeMap<Denom, Polynomial>) -> Self {
        Self::from_terms(nvars, m.into_iter().map(|(d, p)| FractionTerm::new(p, d)).collect())
    }

    pub fn add(&self, o: &RationalElement) -> RationalElement {
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().cloned());
        RationalElement { nvars: self.nvars, terms: t }
    }

    pub fn sub(&self, o: &RationalElement) -> RationalElement {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> RationalElement {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|t| FractionTerm::new(t.numerator.scale(c), t.denominator.clone())).collect(),
        )
    }

    pub fn mul_poly(&self, p: &Polynomial) -> RationalElement {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|t| FractionTerm::new(&t.numerator * p, t.denominator.clone())).collect(),
        )
    }

    pub fn mul(&self, o: &RationalElement) -> RationalElement {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &o.terms {
                let mut d = a.denominator.clone();
                for (&i, &e) in &b.denominator {
                    *d.entry(i).or_insert(0) += e;
                }
                terms.push(FractionTerm::new(&a.numerator * &b.numerator, d));
            }
        }
        Self::from_terms(self.nvars, terms)
    }

    pub fn evaluate(&self, arr: &Arrangement, y: &[Q]) -> Result<Q> {
        if y.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: y.len() });
        }
        let mut s = Q::zero();
        for t in &self.terms {
            let mut den = Q::one();
            for (&i, &e) in &t.denominator {
                let v = dot(arr.line(i), y);
                if v.is_zero() {
                    return Err(Error::SingularPoint);
                }
                den *= num_traits::pow(v, e as usize);
            }
            s += t.numerator.eval(y) / den;
        }
        Ok(s)
    }

    /// Directional derivative along `v` (a vector in the dual coordinates z).
    pub fn derivative(&self, arr: &Arrangement, v: &[Q]) -> RationalElement {
        let mut terms = Vec::new();
        for t in &self.terms {
            terms.push(FractionTerm::new(t.numerator.directional_derivative(v), t.denominator.clone()));
            for (&i, &e) in &t.denominator {
                let c = dot(arr.line(i), v);
                if c.is_zero() {
                    continue;
                }
                let mut d = t.denominator.clone();
                *d.get_mut(&i).unwrap() += 1;
                terms.push(FractionTerm::new(t.numerator.scale(&(-c * q(e as i64))), d));
            }
        }
        Self::from_terms(self.nvars, terms)
    }

    /// Applies the constant-coefficient operator `P(d/dz)`.
    pub fn apply_operator(&self, arr: &Arrangement, p: &Polynomial) -> RationalElement {
        let mut cache: BTreeMap<Vec<u32>, RationalElement> = BTreeMap::new();
        let mut out = RationalElement::zero(self.nvars);
        for (e, c) in p.terms() {
            let d = derivative_multi(arr, self, e, &mut cache);
            out = out.add(&d.scale(c));
        }
        out
    }

    /// Degrees occurring among the homogeneous pieces.
    pub fn degrees(&self) -> BTreeSet<i64> {
        let mut s = BTreeSet::new();
        for t in &self.terms {
            let p = t.pole_order() as i64;
            for d in t.numerator.homogeneous_parts().keys() {
                s.insert(*d as i64 - p);
            }
        }
        s
    }

    pub fn graded_component(&self, d: i64) -> RationalElement {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let k = d + t.pole_order() as i64;
                (k >= 0).then(|| FractionTerm::new(t.numerator.homogeneous_part(k as u32), t.denominator.clone()))
            })
            .collect();
        Self::from_terms(self.nvars, terms)
    }

    /// Text form such as `z2/(z1*(z1+z2)^2)`, using input vectors for the
    /// denominators through each line's representative.
    pub fn display(&self, arr: &Arrangement) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for t in &self.terms {
            let mut num = t.numerator.clone();
            let mut dens = Vec::new();
            for (&i, &e) in &t.denominator {
                let s = arr.representative_scalar(i);
                num = num.scale(&num_traits::pow(s, e as usize));
                let lf = Polynomial::linear(&arr.inputs()[arr.representative(i)]).display_with("z");
                let lf = if lf.contains(['+', '-']) { format!("({lf})") } else { lf };
                dens.push(if e == 1 { lf } else { format!("{lf}^{e}") });
            }
            let ns = num.display_with("z");
            let ns = if num.num_terms() > 1 { format!("({ns})") } else { ns };
            if dens.is_empty() {
                parts.push(ns);
            } else {
                let ds = dens.join("*");
                let ds = if dens.len() == 1 && !ds.contains(['*', '^']) { ds } else { format!("({ds})") };
                parts.push(format!("{ns}/{ds}"));
            }
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
        s
    }
}

fn derivative_multi(
    arr: &Arrangement,
    f: &RationalElement,
    e: &[u32],
    cache: &mut BTreeMap<Vec<u32>, RationalElement>,
) -> RationalElement {
    if let Some(r) = cache.get(e) {
        return r.clone();
    }
    let r = match e.iter().position(|&k| k > 0) {
        None => f.clone(),
        Some(i) => {
            let mut e2 = e.to_vec();
            e2[i] -= 1;
            let prev = derivative_multi(arr, f, &e2, cache);
            let mut v = vec![Q::zero(); f.nvars()];
            v[i] = Q::one();
            prev.derivative(arr, &v).collect()
        }
    };
    cache.insert(e.to_vec(), r.clone());
    r
}
