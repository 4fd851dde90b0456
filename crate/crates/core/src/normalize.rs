//! Partial fraction reduction and the canonical form of elements.
//!
//! Canonical form: the ring decomposes over flats `W` of the arrangement as a
//! sum of (polynomials in coordinates complementary to `W`) times (the
//! generating fractions of the sub-arrangement in `W`). Within each flat the
//! fractions are written as `1/prod b^m` over nbc bases `b` of that flat.

use crate::arrangement::{independent_subset, Arrangement, Flat};
use crate::element::{Denom, FractionTerm, RationalElement};
use crate::linalg::{inverse, solve};
use crate::oslomon::{iterated_residue_vectors, nbc_of_vectors};
use crate::poly::Polynomial;
use crate::Q;
use num_traits::{One, Zero};
use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

fn merge(m: &mut BTreeMap<Denom, Polynomial>, d: Denom, p: Polynomial) {
    if p.is_zero() {
        return;
    }
    match m.get_mut(&d) {
        Some(q) => {
            q.add_assign_ref(&p);
            if q.is_zero() {
                m.remove(&d);
            }
        }
        None => {
            m.insert(d, p);
        }
    }
}

/// Rewrites every term so that its denominator support is linearly independent.
pub fn reduce_dependent(
    arr: &Arrangement,
    items: impl IntoIterator<Item = (Denom, Polynomial)>,
) -> BTreeMap<Denom, Polynomial> {
    let mut pending = BTreeMap::new();
    for (d, p) in items {
        merge(&mut pending, d, p);
    }
    let mut done = BTreeMap::new();
    while let Some((d, num)) = pending.pop_last() {
        let supp: Vec<usize> = d.keys().copied().collect();
        if arr.is_independent(&supp) {
            merge(&mut done, d, num);
            continue;
        }
        let in_circuit = |a: usize| {
            let others: Vec<usize> = supp.iter().copied().filter(|&x| x != a).collect();
            let b = independent_subset(arr, &others);
            let mut t = b.clone();
            t.push(a);
            !arr.is_independent(&t)
        };
        let alpha = *supp.iter().rev().find(|&&a| in_circuit(a)).expect("dependent support has a circuit");
        let others: Vec<usize> = supp.iter().copied().filter(|&x| x != alpha).collect();
        let basis = independent_subset(arr, &others);
        let c = solve(&arr.vectors_of(&basis), arr.line(alpha)).expect("alpha in span");
        for (beta, cb) in basis.iter().zip(c) {
            if cb.is_zero() {
                continue;
            }
            let mut d2 = d.clone();
            *d2.get_mut(&alpha).unwrap() += 1;
            let e = d2.get_mut(beta).unwrap();
            *e -= 1;
            if *e == 0 {
                d2.remove(beta);
            }
            merge(&mut pending, d2, num.scale(&cb));
        }
    }
    done
}

struct FlatData {
    flat: Flat,
    complement: Vec<usize>,
    /// Lines of the flat in flat coordinates, in inherited order.
    sub_vectors: Vec<Vec<Q>>,
    /// nbc bases of the sub-arrangement, as positions into `flat.lines`.
    nbc: Vec<Vec<usize>>,
}

struct KappaData {
    flat: Rc<FlatData>,
    /// Inverse of the matrix with rows (kappa vectors, complementary unit vectors).
    tinv: Vec<Vec<Q>>,
    forms: Vec<Polynomial>,
}

/// Canonicalizer with per-instance caches; create one per batch of calls.
pub struct Normalizer<'a> {
    arr: &'a Arrangement,
    flats: HashMap<Vec<usize>, Rc<FlatData>>,
    kappas: HashMap<Vec<usize>, Rc<KappaData>>,
    gcache: HashMap<(Vec<usize>, Vec<u32>), Rc<Vec<(Denom, Q)>>>,
}

impl<'a> Normalizer<'a> {
    pub fn new(arr: &'a Arrangement) -> Self {
        Normalizer { arr, flats: HashMap::new(), kappas: HashMap::new(), gcache: HashMap::new() }
    }

    pub fn arrangement(&self) -> &'a Arrangement {
        self.arr
    }

    fn kappa(&mut self, kappa: &[usize]) -> Rc<KappaData> {
        if let Some(k) = self.kappas.get(kappa) {
            return k.clone();
        }
        let arr = self.arr;
        let r = arr.dim();
        let flat = arr.flat(kappa);
        let fd = match self.flats.get(&flat.lines) {
            Some(f) => f.clone(),
            None => {
                let sub_vectors: Vec<Vec<Q>> = flat.lines.iter().map(|&i| flat.coords(arr.line(i))).collect();
                let nbc = nbc_of_vectors(&sub_vectors, flat.rank());
                let complement = flat.complement(r);
                let f = Rc::new(FlatData { flat, complement, sub_vectors, nbc });
                self.flats.insert(f.flat.lines.clone(), f.clone());
                f
            }
        };
        let mut t = arr.vectors_of(kappa);
        for &j in &fd.complement {
            let mut e = vec![Q::zero(); r];
            e[j] = Q::one();
            t.push(e);
        }
        let tinv = inverse(&t).expect("kappa plus complement is a basis");
        let forms = kappa.iter().map(|&i| Polynomial::linear(arr.line(i))).collect();
        let k = Rc::new(KappaData { flat: fd, tinv, forms });
        self.kappas.insert(kappa.to_vec(), k.clone());
        k
    }

    /// Canonical nbc expansion of `1/prod kappa^n` inside the flat spanned by `kappa`.
    fn canonical_g(&mut self, kappa: &[usize], n: &[u32]) -> Rc<Vec<(Denom, Q)>> {
        let key = (kappa.to_vec(), n.to_vec());
        if let Some(v) = self.gcache.get(&key) {
            return v.clone();
        }
        let kd = self.kappa(kappa);
        let fd = &kd.flat;
        let k = kappa.len();
        let pos: Vec<usize> = kappa.iter().map(|i| fd.flat.lines.iter().position(|x| x == i).unwrap()).collect();
        let kvecs: Vec<Vec<Q>> = pos.iter().map(|&p| fd.sub_vectors[p].clone()).collect();
        let kinv = inverse(&kvecs).expect("kappa is a basis of its flat");
        let order: u32 = n.iter().sum::<u32>() - k as u32;
        let target: Vec<u32> = n.iter().map(|x| x - 1).collect();
        let sign = if order % 2 == 1 { -Q::one() } else { Q::one() };
        let mut out: BTreeMap<Denom, Q> = BTreeMap::new();
        // D_b(h) = sum_mu (-1)^order / mu! * a_mu * IR(b, kappa) * h^mu
        let mut amu: Vec<(Vec<u32>, Q)> = Vec::new();
        for mu in monomials(k, order) {
            let m = Polynomial::monomial(mu.clone(), Q::one()).linear_substitute(&kinv);
            let a = m.coeff(&target);
            if !a.is_zero() {
                amu.push((mu, a));
            }
        }
        for b in &fd.nbc {
            let bvecs: Vec<Vec<Q>> = b.iter().map(|&p| fd.sub_vectors[p].clone()).collect();
            let ir = iterated_residue_vectors(&bvecs, &kvecs);
            if ir.is_zero() {
                continue;
            }
            let mut db = Polynomial::zero(k);
            for (mu, a) in &amu {
                db.add_term(mu, &sign * a * &ir / Polynomial::multi_factorial(mu));
            }
            if db.is_zero() {
                continue;
            }
            // h_j = sum_i b_i[j] w_i, then w^m acts on 1/prod b as prod (-1)^m m! / b^(m+1).
            let subst: Vec<Vec<Q>> = (0..k).map(|j| (0..k).map(|i| bvecs[i][j].clone()).collect()).collect();
            let dw = db.linear_substitute(&subst);
            for (m, c) in dw.terms() {
                let mut coef = c.clone();
                let mut den = Denom::new();
                for (i, &mi) in m.iter().enumerate() {
                    coef *= crate::linalg::factorial(mi);
                    if mi % 2 == 1 {
                        coef = -coef;
                    }
                    den.insert(fd.flat.lines[b[i]], mi + 1);
                }
                *out.entry(den).or_insert_with(Q::zero) += coef;
            }
        }
        let v: Vec<(Denom, Q)> = out.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let v = Rc::new(v);
        self.gcache.insert(key, v.clone());
        v
    }

    /// Canonical form as a map from denominators to numerators.
    pub fn canonical_map(&mut self, phi: &RationalElement) -> BTreeMap<Denom, Polynomial> {
        let arr = self.arr;
        let r = arr.dim();
        let reduced = reduce_dependent(arr, phi.terms().iter().map(|t| (t.denominator.clone(), t.numerator.clone())));
        let mut work: BTreeMap<(Reverse<usize>, Denom), Polynomial> = BTreeMap::new();
        let push = |work: &mut BTreeMap<(Reverse<usize>, Denom), Polynomial>, d: Denom, p: Polynomial| {
            if p.is_zero() {
                return;
            }
            let key = (Reverse(d.len()), d);
            match work.get_mut(&key) {
                Some(q) => q.add_assign_ref(&p),
                None => {
                    work.insert(key, p);
                }
            }
        };
        for (d, p) in reduced {
            push(&mut work, d, p);
        }
        let mut out: BTreeMap<Denom, Polynomial> = BTreeMap::new();
        while let Some(((_, d), psi)) = work.pop_first() {
            if psi.is_zero() {
                continue;
            }
            if d.is_empty() {
                merge(&mut out, d, psi);
                continue;
            }
            let kappa: Vec<usize> = d.keys().copied().collect();
            let n: Vec<u32> = d.values().copied().collect();
            let k = kappa.len();
            let kd = self.kappa(&kappa);
            let psi2 = psi.linear_substitute(&kd.tinv);
            let mut pure: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
            for (e, c) in psi2.terms() {
                let mut z = vec![0u32; r];
                for (b, &j) in kd.flat.complement.iter().enumerate() {
                    z[j] = e[k + b];
                }
                if (0..k).all(|a| e[a] < n[a]) {
                    let n2: Vec<u32> = (0..k).map(|a| n[a] - e[a]).collect();
                    pure.entry(n2).or_insert_with(|| Polynomial::zero(r)).add_term(&z, c.clone());
                } else {
                    let mut num = Polynomial::monomial(z, c.clone());
                    let mut d2 = Denom::new();
                    for a in 0..k {
                        if e[a] < n[a] {
                            d2.insert(kappa[a], n[a] - e[a]);
                        } else if e[a] > n[a] {
                            num = &num * &kd.forms[a].pow(e[a] - n[a]);
                        }
                    }
                    push(&mut work, d2, num);
                }
            }
            for (n2, poly) in pure {
                let g = self.canonical_g(&kappa, &n2);
                for (den, coef) in g.iter() {
                    merge(&mut out, den.clone(), poly.scale(coef));
                }
            }
        }
        out
    }

    pub fn normalize(&mut self, phi: &RationalElement) -> RationalElement {
        RationalElement::from_map(self.arr.dim(), self.canonical_map(phi))
    }

    pub fn split(&mut self, phi: &RationalElement) -> SplitForm {
        let r = self.arr.dim();
        let mut g_part = Vec::new();
        let mut ng_part = Vec::new();
        for (d, p) in self.canonical_map(phi) {
            if d.len() == r && r > 0 {
                debug_assert!(p.is_constant());
                g_part.push(GTerm { coeff: p.constant_term(), basis: d.keys().copied().collect(), exponents: d.values().copied().collect() });
            } else {
                ng_part.push(FractionTerm::new(p, d));
            }
        }
        SplitForm { nvars: r, g_part, ng_part }
    }

    /// Coefficients `c_sigma` with `sum c_sigma phi_sigma` equal to the degree `-r`
    /// generating component of `phi` (sigma ranges over bases, not necessarily nbc).
    pub fn simple_part(&mut self, phi: &RationalElement) -> Vec<(Vec<usize>, Q)> {
        let arr = self.arr;
        let r = arr.dim() as i64;
        let comp = phi.graded_component(-r);
        let reduced = reduce_dependent(arr, comp.terms().iter().map(|t| (t.denominator.clone(), t.numerator.clone())));
        let mut out = Vec::new();
        for (d, psi) in reduced {
            if d.len() as i64 != r {
                continue;
            }
            let kappa: Vec<usize> = d.keys().copied().collect();
            let target: Vec<u32> = d.values().map(|x| x - 1).collect();
            let kd = self.kappa(&kappa);
            let c = psi.linear_substitute(&kd.tinv).coeff(&target);
            if !c.is_zero() {
                out.push((kappa, c));
            }
        }
        out
    }
}

/// All exponent vectors in `k` variables of total degree `d`.
pub fn monomials(k: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == k {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in (0..=left).rev() {
            cur.push(x);
            rec(i + 1, k, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, k, d, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GTerm {
    pub coeff: Q,
    pub basis: Vec<usize>,
    pub exponents: Vec<u32>,
}

/// Decomposition into the generating part and the non-generating part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitForm {
    pub nvars: usize,
    pub g_part: Vec<GTerm>,
    pub ng_part: Vec<FractionTerm>,
}

impl SplitForm {
    pub fn g_element(&self) -> RationalElement {
        let terms = self
            .g_part
            .iter()
            .map(|g| {
                let d: Denom = g.basis.iter().copied().zip(g.exponents.iter().copied()).collect();
                FractionTerm::new(Polynomial::constant(self.nvars, g.coeff.clone()), d)
            })
            .collect();
        RationalElement::from_terms(self.nvars, terms)
    }

    pub fn ng_element(&self) -> RationalElement {
        RationalElement::from_terms(self.nvars, self.ng_part.clone())
    }
}

pub fn normalize(arr: &Arrangement, phi: &RationalElement) -> RationalElement {
    Normalizer::new(arr).normalize(phi)
}

pub fn split(arr: &Arrangement, phi: &RationalElement) -> SplitForm {
    Normalizer::new(arr).split(phi)
}

/// Exact equality of two elements as rational functions.
pub fn equal(arr: &Arrangement, a: &RationalElement, b: &RationalElement) -> bool {
    normalize(arr, &a.sub(b)).has_no_terms()
}
