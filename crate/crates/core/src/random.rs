//! Seeded random generators for randomized checks.

use crate::arrangement::Arrangement;
use crate::element::RationalElement;
use crate::poly::Polynomial;
use crate::Q;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn small_q<R: Rng>(rng: &mut R) -> Q {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-6i64..=6);
    }
    Q::new(n.into(), rng.gen_range(1i64..=4).into())
}

/// Random rational point with `alpha(y) != 0` for every line.
pub fn regular_dual_point<R: Rng>(arr: &Arrangement, rng: &mut R) -> Vec<Q> {
    loop {
        let y: Vec<Q> = (0..arr.dim()).map(|_| Q::new(rng.gen_range(-40i64..=40).into(), rng.gen_range(1i64..=9).into())).collect();
        if arr.is_regular_dual(&y) {
            return y;
        }
    }
}

/// Random rational point off every wall.
pub fn regular_primal_point<R: Rng>(arr: &Arrangement, rng: &mut R) -> Vec<Q> {
    let normals = arr.wall_normals();
    loop {
        let y: Vec<Q> = (0..arr.dim()).map(|_| Q::new(rng.gen_range(-40i64..=40).into(), rng.gen_range(1i64..=9).into())).collect();
        if normals.iter().all(|n| crate::linalg::sign(&crate::linalg::dot(n, &y)) != 0) {
            return y;
        }
    }
}

pub fn polynomial<R: Rng>(rng: &mut R, nvars: usize, max_deg: u32, nterms: usize) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for _ in 0..nterms {
        let mut e = vec![0u32; nvars];
        let d = rng.gen_range(0..=max_deg);
        for _ in 0..d {
            if nvars > 0 {
                e[rng.gen_range(0..nvars)] += 1;
            }
        }
        p.add_term(&e, small_q(rng));
    }
    p
}

/// Random element: a few terms with random supports (dependent ones included),
/// exponents and polynomial numerators.
pub fn element<R: Rng>(arr: &Arrangement, rng: &mut R) -> RationalElement {
    let r = arr.dim();
    let n = arr.num_lines();
    let mut out = RationalElement::zero(r);
    for _ in 0..rng.gen_range(1..=3) {
        let k = rng.gen_range(1..=(r + 1).min(n));
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        let d: Vec<(usize, u32)> = idx[..k].iter().map(|&i| (i, rng.gen_range(1..=2))).collect();
        let nt = rng.gen_range(1..=2);
        let num = polynomial(rng, r, 2, nt);
        out = out.add(&RationalElement::fraction(num, &d));
    }
    out
}

/// Random generating element: sums of `c / prod sigma^n` over random bases
/// with total exponent at most `r + 3`.
pub fn g_element<R: Rng>(arr: &Arrangement, rng: &mut R) -> RationalElement {
    let r = arr.dim();
    let bases = arr.bases();
    let mut out = RationalElement::zero(r);
    for _ in 0..rng.gen_range(1..=2) {
        let b = bases.choose(rng).unwrap();
        let mut e = vec![1u32; r];
        let extra = rng.gen_range(0..=3);
        for _ in 0..extra {
            e[rng.gen_range(0..r)] += 1;
        }
        let d: Vec<(usize, u32)> = b.iter().copied().zip(e).collect();
        out = out.add(&RationalElement::pure(r, small_q(rng), &d));
    }
    out
}

/// Deterministic generator for randomized checks.
pub fn seeded(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}
