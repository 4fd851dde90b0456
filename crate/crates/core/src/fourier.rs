//! Cone characteristic functions and the stratified Fourier transform.

use crate::arrangement::Arrangement;
use crate::element::RationalElement;
use crate::error::{Error, Result};
use crate::geometry::{cone_contains, cprime, cutting_normals, sigma_delta, volume, Chamber, SimplicialCone, Space};
use crate::laplace::PiecewisePoly;
use crate::linalg::{dot, sign};
use crate::poly::Polynomial;
use crate::residue::Session;
use crate::Q;
use num_traits::{One, Signed, Zero};

/// Finite sum of `P(h) [C]` over simplicial cones with strictness flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeFunction {
    pub dim: usize,
    pub terms: Vec<(Polynomial, SimplicialCone)>,
}

impl ConeFunction {
    pub fn zero(dim: usize) -> Self {
        ConeFunction { dim, terms: Vec::new() }
    }

    pub fn indicator(cone: SimplicialCone) -> Self {
        let dim = cone.generators.len();
        ConeFunction { dim, terms: vec![(Polynomial::one(dim), cone)] }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, coeff: Polynomial, cone: SimplicialCone) {
        if !coeff.is_zero() {
            self.terms.push((coeff, cone));
        }
    }

    pub fn scale(&self, c: &Q) -> ConeFunction {
        let mut out = ConeFunction::zero(self.dim);
        for (p, cone) in &self.terms {
            out.push(p.scale(c), cone.clone());
        }
        out
    }

    pub fn add(&self, o: &ConeFunction) -> ConeFunction {
        let mut out = self.clone();
        out.terms.extend(o.terms.iter().cloned());
        out
    }

    pub fn sub(&self, o: &ConeFunction) -> ConeFunction {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn evaluate(&self, h: &[Q]) -> Q {
        evaluate_total(self, h)
    }
}

/// `sum coeff(h) * [h in cone]`.
pub fn evaluate_total(f: &ConeFunction, h: &[Q]) -> Q {
    let mut s = Q::zero();
    for (p, cone) in &f.terms {
        if cone_contains(cone, h) {
            s += p.eval(h);
        }
    }
    s
}

/// `[C(sigma)'_gamma]`.
pub fn a_gamma(sigma: &[Vec<Q>], gamma: &Chamber) -> ConeFunction {
    ConeFunction::indicator(cprime(sigma, gamma))
}

/// Flips every generator negative on `delta` using `[C(-a)] = -[C(a)^0]` modulo
/// cones containing lines.
pub fn representative_in_dual_cone(f: &ConeFunction, delta: &Chamber) -> ConeFunction {
    let mut out = ConeFunction::zero(f.dim);
    for (p, cone) in &f.terms {
        let mut c = cone.clone();
        let mut neg = false;
        for (g, s) in c.generators.iter_mut().zip(c.strict.iter_mut()) {
            if dot(g, &delta.witness).is_negative() {
                for x in g.iter_mut() {
                    *x = -x.clone();
                }
                *s = !*s;
                neg = !neg;
            }
        }
        out.push(if neg { p.scale(&-Q::one()) } else { p.clone() }, c);
    }
    out
}

/// Transform of a combination of simple fractions `c / prod_{a in sigma} a` over
/// bases, computed term by term from the cones `C(sigma)'_gamma`.
pub fn simple_fourier(arr: &Arrangement, phi: &RationalElement, gamma: &Chamber, delta: &Chamber) -> Result<ConeFunction> {
    let r = arr.dim();
    let mut out = ConeFunction::zero(r);
    for t in phi.terms() {
        if !t.numerator.is_constant() || t.denominator.values().any(|&e| e != 1) {
            return Err(Error::NotABasis);
        }
        let sigma: Vec<usize> = t.denominator.keys().copied().collect();
        if !arr.is_basis(&sigma) {
            return Err(Error::NotABasis);
        }
        let v = arr.vectors_of(&sigma);
        let c = t.numerator.constant_term() / volume(&v)?;
        out = out.add(&representative_in_dual_cone(&a_gamma(&v, gamma), delta).scale(&c));
    }
    Ok(out)
}

/// `F_{gamma,delta}(phi) = sum_b eps c_b(h) / vol(b) [C(b^delta)'_gamma]`.
pub fn stratified_fourier(arr: &Arrangement, phi: &RationalElement, gamma: &Chamber, delta: &Chamber) -> Result<ConeFunction> {
    Ok(stratified_fourier_all(arr, phi, std::slice::from_ref(gamma), delta)?.remove(0))
}

/// [`stratified_fourier`] for several chambers `gamma`, sharing the residue computation.
pub fn stratified_fourier_all(arr: &Arrangement, phi: &RationalElement, gammas: &[Chamber], delta: &Chamber) -> Result<Vec<ConeFunction>> {
    if gammas.iter().any(|g| g.space != Space::Primal) || delta.space != Space::Dual {
        return Err(Error::ChamberNotFound);
    }
    if !arr.is_regular_dual(&delta.witness) {
        return Err(Error::OnWall);
    }
    let r = arr.dim();
    let mut s = Session::new(arr);
    let coeffs = s.jk_residue_exp(phi, 1);
    let mut terms = Vec::new();
    for (b, c) in s.nbc().iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let v = arr.vectors_of(b);
        let (flipped, eps) = sigma_delta(&v, delta);
        let f = Q::from_integer((eps as i64).into()) / volume(&v)?;
        terms.push((c.scale(&f), flipped));
    }
    Ok(gammas
        .iter()
        .map(|gamma| {
            let mut out = ConeFunction::zero(r);
            for (c, flipped) in &terms {
                out.push(c.clone(), cprime(flipped, gamma));
            }
            out
        })
        .collect())
}

/// Sign vector of the primal chamber containing `h + eps p` for small `eps > 0`.
pub fn perturbed_signs(arr: &Arrangement, h: &[Q], p: &[Q]) -> Result<Vec<i8>> {
    cutting_normals(arr, Space::Primal)
        .iter()
        .map(|n| {
            let s = sign(&dot(n, h));
            let s = if s != 0 { s } else { sign(&dot(n, p)) };
            if s == 0 {
                Err(Error::OnWall)
            } else {
                Ok(s)
            }
        })
        .collect()
}

/// `lim_{eps -> 0+} f(h + eps p)` for a piecewise polynomial.
pub fn one_sided_limit(arr: &Arrangement, pp: &PiecewisePoly, h: &[Q], p: &[Q]) -> Result<Q> {
    let signs = perturbed_signs(arr, h, p)?;
    Ok(pp.piece_for_signs(&signs).ok_or(Error::ChamberNotFound)?.eval(h))
}

/// Integer points of the box `[-radius, radius]^dim`.
pub fn box_points(dim: usize, radius: i64) -> Vec<Vec<Q>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        let mut next = Vec::new();
        for p in &out {
            for x in -radius..=radius {
                let mut v: Vec<Q> = p.clone();
                v.push(Q::from_integer(x.into()));
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Pointwise comparison on a test set; returns the first point where they differ.
pub fn first_difference(f: &ConeFunction, g: &ConeFunction, points: &[Vec<Q>]) -> Option<Vec<Q>> {
    points.iter().find(|h| evaluate_total(f, h) != evaluate_total(g, h)).cloned()
}
