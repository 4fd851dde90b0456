#![allow(dead_code)]

use jkres_core::linalg::{q, qv};
use jkres_core::{Arrangement, Polynomial, RationalElement, Q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn a2() -> Arrangement {
    Arrangement::new(vec![qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 1])]).unwrap()
}

pub fn a3() -> Arrangement {
    Arrangement::new(vec![qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1]), qv(&[1, 1, 0]), qv(&[0, 1, 1]), qv(&[1, 1, 1])]).unwrap()
}

/// Four pairwise independent lines in the plane.
pub fn generic4() -> Arrangement {
    Arrangement::new(vec![qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 2]), qv(&[3, -1])]).unwrap()
}

pub fn corpus() -> Vec<(&'static str, Arrangement)> {
    vec![("A2", a2()), ("A3", a3()), ("generic4", generic4())]
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    let seed = std::env::var("JKRES_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20240611u64);
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

pub fn frac(r: usize, c: i64, d: &[(usize, u32)]) -> RationalElement {
    RationalElement::pure(r, q(c), d)
}

pub fn phi(r: usize, s: &[usize]) -> RationalElement {
    RationalElement::phi(r, s)
}

pub fn poly(s: &str, prefix: &str, n: usize) -> Polynomial {
    Polynomial::parse(s, prefix, n).unwrap()
}

pub fn half() -> Q {
    Q::new(1.into(), 2.into())
}
