//! Jeffrey-Kirwan residue, its exponential variant and decay at infinity.

use crate::arrangement::Arrangement;
use crate::element::RationalElement;
use crate::linalg::{dot, kernel, sign};
use crate::normalize::{monomials, Normalizer, SplitForm};
use crate::oslomon::{iterated_residue_vectors, nbc_basis_unchecked};
use crate::poly::Polynomial;
use crate::Q;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Shared caches for repeated residue computations over one arrangement.
pub struct Session<'a> {
    arr: &'a Arrangement,
    norm: Normalizer<'a>,
    nbc: Vec<Vec<usize>>,
    pairing: HashMap<Vec<usize>, Vec<Q>>,
}

impl<'a> Session<'a> {
    pub fn new(arr: &'a Arrangement) -> Self {
        Session { arr, norm: Normalizer::new(arr), nbc: nbc_basis_unchecked(arr), pairing: HashMap::new() }
    }

    pub fn arrangement(&self) -> &'a Arrangement {
        self.arr
    }

    pub fn nbc(&self) -> &[Vec<usize>] {
        &self.nbc
    }

    pub fn normalizer(&mut self) -> &mut Normalizer<'a> {
        &mut self.norm
    }

    pub fn normalize(&mut self, phi: &RationalElement) -> RationalElement {
        self.norm.normalize(phi)
    }

    pub fn split(&mut self, phi: &RationalElement) -> SplitForm {
        self.norm.split(phi)
    }

    /// `(IR(b, sigma))_b` over the nbc basis.
    pub fn pairing(&mut self, sigma: &[usize]) -> Vec<Q> {
        if let Some(v) = self.pairing.get(sigma) {
            return v.clone();
        }
        let s = self.arr.vectors_of(sigma);
        let v: Vec<Q> = self.nbc.iter().map(|b| iterated_residue_vectors(&self.arr.vectors_of(b), &s)).collect();
        self.pairing.insert(sigma.to_vec(), v.clone());
        v
    }

    /// Coordinates over the nbc basis of the residue of `phi`.
    pub fn jk_residue(&mut self, phi: &RationalElement) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.nbc.len()];
        for (sigma, c) in self.norm.simple_part(phi) {
            for (o, p) in out.iter_mut().zip(self.pairing(&sigma)) {
                *o += &c * p;
            }
        }
        out
    }

    /// Value of the iterated residue along an arbitrary ordered basis `b`.
    pub fn iterated_residue(&mut self, b: &[usize], phi: &RationalElement) -> Q {
        let bv = self.arr.vectors_of(b);
        let mut s = Q::zero();
        for (sigma, c) in self.norm.simple_part(phi) {
            s += c * iterated_residue_vectors(&bv, &self.arr.vectors_of(&sigma));
        }
        s
    }

    /// Coordinates `c_b(h)` of the residue of `exp(sign <h,z>) phi`.
    pub fn jk_residue_exp(&mut self, phi: &RationalElement, sgn: i32) -> Vec<Polynomial> {
        let r = self.arr.dim();
        let mut out = vec![Polynomial::zero(r); self.nbc.len()];
        for d in phi.degrees() {
            if d > -(r as i64) {
                continue;
            }
            let k = (-(r as i64) - d) as u32;
            let comp = phi.graded_component(d);
            if comp.has_no_terms() {
                continue;
            }
            let s = if sgn < 0 && k % 2 == 1 { -Q::one() } else { Q::one() };
            for mu in monomials(r, k) {
                let zmu = Polynomial::monomial(mu.clone(), Q::one());
                let c = self.jk_residue(&comp.mul_poly(&zmu));
                let f = &s / Polynomial::multi_factorial(&mu);
                for (o, cb) in out.iter_mut().zip(c) {
                    o.add_term(&mu, cb * &f);
                }
            }
        }
        out
    }

    /// `sum_b c_b(h) phi_b` for polynomial coordinates: applies `c_b(d/dz)` to `phi_b`.
    pub fn apply_coordinates(&mut self, coords: &[Polynomial]) -> RationalElement {
        let r = self.arr.dim();
        let mut out = RationalElement::zero(r);
        for (b, p) in self.nbc.clone().iter().zip(coords) {
            if p.is_zero() {
                continue;
            }
            out = out.add(&RationalElement::phi(r, b).apply_operator(self.arr, p));
        }
        out
    }
}

pub fn jk_residue(arr: &Arrangement, phi: &RationalElement) -> Vec<Q> {
    Session::new(arr).jk_residue(phi)
}

pub fn jk_residue_exp(arr: &Arrangement, phi: &RationalElement, sgn: i32) -> Vec<Polynomial> {
    Session::new(arr).jk_residue_exp(phi, sgn)
}

/// Degree in `t` of the univariate rational function `phi(y + t z)`; `None` if it is zero.
fn t_degree(arr: &Arrangement, phi: &RationalElement, y: &[Q], z: &[Q]) -> Option<i64> {
    let r = arr.dim();
    let images: Vec<Polynomial> = (0..r)
        .map(|j| {
            let mut p = Polynomial::constant(1, y[j].clone());
            p.add_term(&[1], z[j].clone());
            p
        })
        .collect();
    let mut total: HashMap<usize, u32> = HashMap::new();
    for t in phi.terms() {
        for (&i, &e) in &t.denominator {
            let m = total.entry(i).or_insert(0);
            *m = (*m).max(e);
        }
    }
    let lin = |i: usize| {
        let mut p = Polynomial::constant(1, dot(arr.line(i), y));
        p.add_term(&[1], dot(arr.line(i), z));
        p
    };
    let mut num = Polynomial::zero(1);
    for t in phi.terms() {
        let mut p = if r == 0 { t.numerator.remap(1, &[]) } else { t.numerator.compose(&images) };
        for (&i, &m) in &total {
            let e = m - t.denominator.get(&i).copied().unwrap_or(0);
            if e > 0 {
                p = &p * &lin(i).pow(e);
            }
        }
        num.add_assign_ref(&p);
    }
    let nd = num.total_degree()? as i64;
    let dd: i64 = total.iter().filter(|(&i, _)| !dot(arr.line(i), z).is_zero()).map(|(_, &m)| m as i64).sum();
    Some(nd - dd)
}

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    Q::new(rng.gen_range(-1000i64..=1000).into(), rng.gen_range(1i64..=97).into())
}

/// Largest `n` such that `t^(n-1) phi(y + t z)` vanishes at infinity for all `z`;
/// `None` for the zero function.
pub fn vanish_order_at_infinity(arr: &Arrangement, phi: &RationalElement) -> Option<u32> {
    let r = arr.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut dirs: Vec<Vec<Q>> = (0..r)
        .map(|i| {
            let mut e = vec![Q::zero(); r];
            e[i] = Q::one();
            e
        })
        .collect();
    for f in arr.flats() {
        if f.rank() == r {
            continue;
        }
        let perp = kernel(&f.basis, r);
        loop {
            let coeffs: Vec<Q> = perp.iter().map(|_| random_q(&mut rng)).collect();
            let z: Vec<Q> = (0..r).map(|j| perp.iter().zip(&coeffs).fold(Q::zero(), |a, (v, c)| a + &v[j] * c)).collect();
            let ok = (0..arr.num_lines()).all(|i| f.lines.contains(&i) || sign(&dot(arr.line(i), &z)) != 0);
            if ok {
                dirs.push(z);
                break;
            }
        }
    }
    let mut ys = Vec::new();
    while ys.len() < 3 {
        let y: Vec<Q> = (0..r).map(|_| random_q(&mut rng)).collect();
        if arr.is_regular_dual(&y) {
            ys.push(y);
        }
    }
    let mut worst: Option<i64> = None;
    for z in &dirs {
        let mut deg: Option<i64> = None;
        for y in &ys {
            if let Some(d) = t_degree(arr, phi, y, z) {
                deg = Some(deg.map_or(d, |x| x.max(d)));
            }
        }
        if let Some(d) = deg {
            worst = Some(worst.map_or(d, |x| x.max(d)));
        }
    }
    let d = worst?;
    Some(if d >= 0 { 0 } else { (-d) as u32 })
}

/// `k` such that the inverse Laplace transform is of class `C^k`
/// (`-1`: discontinuous). `None` when the generating part is zero.
pub fn smoothness_class(arr: &Arrangement, phi: &RationalElement) -> Option<i64> {
    let g = Normalizer::new(arr).split(phi).g_element();
    vanish_order_at_infinity(arr, &g).map(|n| n as i64 - 2)
}
