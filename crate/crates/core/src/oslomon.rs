//! nbc bases, Orlik-Solomon relations, iterated residues, wall residues and
//! separation of variables.

use crate::arrangement::{subsets, Arrangement};
use crate::element::{Denom, RationalElement};
use crate::error::{Error, Result};
use crate::linalg::{binom_neg, det, dot, inverse, kernel, primitive, rank, rref, sign, solve};
use crate::normalize::Normalizer;
use crate::poly::Polynomial;
use crate::residue::Session;
use crate::Q;
use num_traits::{One, Zero};

/// nbc bases of the given vectors (assumed pairwise non-proportional) of rank `r`.
pub fn nbc_of_vectors(vecs: &[Vec<Q>], r: usize) -> Vec<Vec<usize>> {
    let n = vecs.len();
    subsets(n, r)
        .into_iter()
        .filter(|b| {
            let bv: Vec<Vec<Q>> = b.iter().map(|&i| vecs[i].clone()).collect();
            if rank(&bv) != r {
                return false;
            }
            (0..n).filter(|j| !b.contains(j)).all(|j| {
                let mut s: Vec<Vec<Q>> = b.iter().filter(|&&i| i > j).map(|&i| vecs[i].clone()).collect();
                s.push(vecs[j].clone());
                rank(&s) == s.len()
            })
        })
        .collect()
}

pub(crate) fn nbc_basis_unchecked(arr: &Arrangement) -> Vec<Vec<usize>> {
    nbc_of_vectors(arr.lines(), arr.dim())
}

/// The nbc basis for the stored line order.
pub fn nbc_basis(arr: &Arrangement) -> Result<Vec<Vec<usize>>> {
    if !arr.spans() {
        return Err(Error::NotSpanning { rank: arr.rank(), dim: arr.dim() });
    }
    Ok(nbc_basis_unchecked(arr))
}

/// nbc basis for the line order `order` (a permutation of line indices); the
/// result uses the original line indices.
pub fn nbc_basis_for_order(arr: &Arrangement, order: &[usize]) -> Vec<Vec<usize>> {
    let vecs: Vec<Vec<Q>> = order.iter().map(|&i| arr.line(i).to_vec()).collect();
    nbc_of_vectors(&vecs, arr.dim()).into_iter().map(|b| b.iter().map(|&p| order[p]).collect()).collect()
}

fn proportion(b: &[Q], a: &[Q]) -> Option<Q> {
    let p = a.iter().position(|x| !x.is_zero())?;
    let t = &b[p] / &a[p];
    b.iter().zip(a).all(|(x, y)| *x == &t * y).then_some(t)
}

/// Quotient coordinates of `v` modulo `beta`: the largest-index nonzero entry of
/// `beta` is eliminated.
pub fn quotient(beta: &[Q], v: &[Q]) -> Vec<Q> {
    let p = beta.iter().rposition(|x| !x.is_zero()).unwrap();
    let f = &v[p] / &beta[p];
    (0..v.len()).filter(|&j| j != p).map(|j| &v[j] - &f * &beta[j]).collect()
}

/// Iterated residue of `phi_sigma` along the ordered basis `b`.
pub fn iterated_residue_vectors(b: &[Vec<Q>], sigma: &[Vec<Q>]) -> Q {
    let r = b.len();
    if r == 0 {
        return Q::one();
    }
    let last = &b[r - 1];
    let Some((idx, t)) = sigma.iter().enumerate().find_map(|(i, a)| proportion(last, a).map(|t| (i, t))) else {
        return Q::zero();
    };
    let b2: Vec<Vec<Q>> = b[..r - 1].iter().map(|v| quotient(last, v)).collect();
    let s2: Vec<Vec<Q>> = sigma.iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, v)| quotient(last, v)).collect();
    t * iterated_residue_vectors(&b2, &s2)
}

/// The relation `phi_sigma - sum_beta c_beta phi_{sigma + alpha - beta}` where
/// `alpha = sum_beta c_beta beta`.
pub fn os_relation(arr: &Arrangement, sigma: &[usize], alpha: usize) -> Result<RationalElement> {
    if !arr.is_basis(sigma) {
        return Err(Error::NotABasis);
    }
    if sigma.contains(&alpha) {
        return Err(Error::AlphaInSigma);
    }
    let r = arr.dim();
    let c = solve(&arr.vectors_of(sigma), arr.line(alpha)).ok_or(Error::NotABasis)?;
    let mut out = RationalElement::phi(r, sigma);
    for (k, ck) in c.iter().enumerate() {
        if ck.is_zero() {
            continue;
        }
        let mut tau: Vec<usize> = sigma.to_vec();
        tau[k] = alpha;
        out = out.sub(&RationalElement::phi(r, &tau).scale(ck));
    }
    Ok(out)
}

/// A hyperplane of V spanned by lines, with a fixed frame and orientation.
#[derive(Clone, Debug)]
pub struct WallData {
    pub span: Vec<usize>,
    /// RREF basis `w_1..w_{r-1}` of the wall; wall coordinates refer to it.
    pub frame: Vec<Vec<Q>>,
    pivots: Vec<usize>,
    /// Primitive covector with kernel the wall, first nonzero entry positive.
    pub z0: Vec<Q>,
    /// Covector positive on the side where `det[w_1..w_{r-1}, h] > 0`.
    pub positive_normal: Vec<Q>,
    /// Lines inside the wall (parent indices, inherited order).
    pub delta0: Vec<usize>,
    pub delta1: Vec<usize>,
    /// Wall arrangement in frame coordinates; line `i` is parent line `delta0[i]`.
    pub induced: Arrangement,
    /// `z0(beta) / det[w, beta]` for any `beta` off the wall.
    orientation: Q,
    /// Section `zeta -> z` of the restriction `V* -> V0*`.
    section: Vec<Vec<Q>>,
}

impl WallData {
    pub fn new(arr: &Arrangement, span: &[usize]) -> Result<Self> {
        let r = arr.dim();
        if span.iter().any(|&i| i >= arr.num_lines()) {
            return Err(Error::IndexOutOfRange(*span.iter().max().unwrap()));
        }
        if r == 0 || rank(&arr.vectors_of(span)) + 1 != r {
            return Err(Error::NotAWall);
        }
        let (frame, pivots) = rref(&arr.vectors_of(span));
        let z0 = primitive(&kernel(&frame, r)[0]).unwrap().0;
        let mut m = frame.clone();
        m.push(z0.clone());
        let d = det(&m);
        let orientation = dot(&z0, &z0) / &d;
        let positive_normal = if sign(&d) > 0 { z0.clone() } else { z0.iter().map(|x| -x).collect() };
        let (delta0, delta1): (Vec<usize>, Vec<usize>) =
            (0..arr.num_lines()).partition(|&i| dot(arr.line(i), &z0).is_zero());
        let induced = Arrangement::from_lines(r - 1, delta0.iter().map(|&i| pivots.iter().map(|&p| arr.line(i)[p].clone()).collect()).collect());
        let minv = inverse(&m).unwrap();
        let section = minv.iter().map(|row| row[..r - 1].to_vec()).collect();
        Ok(WallData { span: span.to_vec(), frame, pivots, z0, positive_normal, delta0, delta1, induced, orientation, section })
    }

    /// All walls of the arrangement.
    pub fn all(arr: &Arrangement) -> Vec<WallData> {
        arr.walls()
            .iter()
            .map(|f| {
                let span = crate::arrangement::independent_subset(arr, &f.lines);
                WallData::new(arr, &span).unwrap()
            })
            .collect()
    }

    /// Frame coordinates of a vector lying in the wall.
    pub fn coords(&self, v: &[Q]) -> Vec<Q> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// The vector `sum x_i w_i`.
    pub fn embed(&self, x: &[Q]) -> Vec<Q> {
        let r = self.z0.len();
        (0..r).map(|j| x.iter().zip(&self.frame).fold(Q::zero(), |a, (xi, w)| a + xi * &w[j])).collect()
    }

    /// Lifts an element over the wall arrangement to the ambient arrangement,
    /// through the restriction `z -> (w_i(z))_i`.
    pub fn lift(&self, psi: &RationalElement) -> RationalElement {
        let r = self.z0.len();
        let images: Vec<Polynomial> = self.frame.iter().map(|w| Polynomial::linear(w)).collect();
        let terms = psi
            .terms()
            .iter()
            .map(|t| {
                let num = if images.is_empty() { Polynomial::constant(r, t.numerator.constant_term()) } else { t.numerator.compose(&images) };
                let d: Denom = t.denominator.iter().map(|(&i, &e)| (self.delta0[i], e)).collect();
                crate::element::FractionTerm::new(num, d)
            })
            .collect();
        RationalElement::from_terms(r, terms)
    }
}

/// Residue at infinity along the fibres over the wall, as an element over the
/// wall arrangement in frame coordinates (not normalized).
pub fn wall_residue_raw(arr: &Arrangement, phi: &RationalElement, w: &WallData) -> RationalElement {
    let r = arr.dim();
    let mut out = RationalElement::zero(r - 1);
    let shift: Vec<Polynomial> = (0..r)
        .map(|j| {
            let mut p = Polynomial::var(r + 1, j);
            p.add_term(&unit(r + 1, r), w.z0[j].clone());
            p
        })
        .collect();
    let section: Vec<Polynomial> = w.section.iter().map(|row| Polynomial::linear(row)).collect();
    for t in phi.terms() {
        let off: Vec<(usize, u32)> = t.denominator.iter().filter(|(i, _)| w.delta1.contains(i)).map(|(&i, &e)| (i, e)).collect();
        let n1: u32 = off.iter().map(|x| x.1).sum();
        if n1 == 0 {
            continue;
        }
        let shifted = t.numerator.compose(&shift);
        let mut by_t: Vec<Polynomial> = Vec::new();
        for (e, c) in shifted.terms() {
            let j = e[r] as usize;
            while by_t.len() <= j {
                by_t.push(Polynomial::zero(r));
            }
            by_t[j].add_term(&e[..r], c.clone());
        }
        if by_t.len() < n1 as usize {
            continue;
        }
        let kmax = by_t.len() - n1 as usize;
        // prod (a + c t)^(-n) = t^(-N1) prod c^(-n) sum_K E_K t^(-K)
        let mut series = vec![Polynomial::zero(r); kmax + 1];
        series[0] = Polynomial::one(r);
        let mut scale = Q::one();
        for &(i, n) in &off {
            let c = dot(arr.line(i), &w.z0);
            scale /= num_traits::pow(c.clone(), n as usize);
            let ratio = Polynomial::linear(arr.line(i)).scale(&c.recip());
            let mut s = vec![Polynomial::zero(r); kmax + 1];
            let mut pw = Polynomial::one(r);
            for (k, sk) in s.iter_mut().enumerate() {
                *sk = pw.scale(&binom_neg(n, k as u32));
                pw = &pw * &ratio;
            }
            let mut next = vec![Polynomial::zero(r); kmax + 1];
            for a in 0..=kmax {
                for b in 0..=kmax - a {
                    if !series[a].is_zero() && !s[b].is_zero() {
                        next[a + b].add_assign_ref(&(&series[a] * &s[b]));
                    }
                }
            }
            series = next;
        }
        let mut num = Polynomial::zero(r);
        for (j, pj) in by_t.iter().enumerate() {
            if j + 1 < n1 as usize {
                continue;
            }
            let k = j + 1 - n1 as usize;
            num.add_assign_ref(&(pj * &series[k]));
        }
        if num.is_zero() {
            continue;
        }
        let num = if r == 1 { Polynomial::constant(0, num.constant_term()) } else { num.compose(&section) };
        let num = num.scale(&(&scale * &w.orientation));
        let d: Vec<(usize, u32)> = t
            .denominator
            .iter()
            .filter(|(i, _)| !w.delta1.contains(i))
            .map(|(&i, &e)| (w.delta0.iter().position(|&x| x == i).unwrap(), e))
            .collect();
        out = out.add(&RationalElement::fraction(num, &d));
    }
    out
}

/// Wall residue in canonical form over the wall arrangement.
pub fn wall_residue(arr: &Arrangement, phi: &RationalElement, w: &WallData) -> RationalElement {
    Normalizer::new(&w.induced).normalize(&wall_residue_raw(arr, phi, w))
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// `(b, D_b)` with `phi = sum_b D_b(d/dz) phi_b` on the generating part.
pub fn separate_variables(arr: &Arrangement, phi: &RationalElement) -> Vec<(Vec<usize>, Polynomial)> {
    let mut s = Session::new(arr);
    let d = s.jk_residue_exp(phi, -1);
    s.nbc().iter().cloned().zip(d).filter(|(_, p)| !p.is_zero()).collect()
}

/// Value at `y` of the generating part, computed through the separated form.
pub fn cauchy_trace(arr: &Arrangement, phi: &RationalElement, y: &[Q]) -> Result<Q> {
    if !arr.is_regular_dual(y) {
        return Err(Error::SingularPoint);
    }
    let r = arr.dim();
    let mut total = Q::zero();
    for (b, p) in separate_variables(arr, phi) {
        total += RationalElement::phi(r, &b).apply_operator(arr, &p).evaluate(arr, y)?;
    }
    Ok(total)
}
