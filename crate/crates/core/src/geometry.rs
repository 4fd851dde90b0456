//! Chambers, simplicial cones and volumes.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::linalg::{det, dot, q, sign, solve};
use crate::Q;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// V, cut by hyperplanes spanned by lines.
    Primal,
    /// V*, cut by the kernels of the lines.
    Dual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub space: Space,
    /// Signs of the cutting forms, in the order of [`cutting_normals`].
    pub signs: Vec<i8>,
    pub witness: Vec<Q>,
}

pub fn cutting_normals(arr: &Arrangement, space: Space) -> Vec<Vec<Q>> {
    match space {
        Space::Primal => arr.wall_normals(),
        Space::Dual => arr.lines().to_vec(),
    }
}

/// Linear inequality `a . x >= b`.
#[derive(Clone, Debug)]
struct Ineq {
    a: Vec<Q>,
    b: Q,
}

/// Fourier-Motzkin: returns a point satisfying all inequalities, if any.
fn fm_solve(dim: usize, cons: Vec<Ineq>) -> Option<Vec<Q>> {
    let mut levels: Vec<Vec<Ineq>> = vec![cons];
    for k in (0..dim).rev() {
        let cur = levels.last().unwrap();
        let (mut pos, mut neg, mut rest) = (vec![], vec![], vec![]);
        for c in cur {
            match sign(&c.a[k]) {
                1 => pos.push(c.clone()),
                -1 => neg.push(c.clone()),
                _ => rest.push(c.clone()),
            }
        }
        for p in &pos {
            for n in &neg {
                // p: a_k x_k >= b - ..., n: a_k x_k >= ...; combine to eliminate x_k.
                let fp = -n.a[k].clone();
                let fnn = p.a[k].clone();
                let a: Vec<Q> = p.a.iter().zip(&n.a).map(|(x, y)| x * &fp + y * &fnn).collect();
                let b = &p.b * &fp + &n.b * &fnn;
                rest.push(Ineq { a, b });
            }
        }
        levels.push(rest);
    }
    if levels.last().unwrap().iter().any(|c| c.b.is_positive()) {
        return None;
    }
    let mut x: Vec<Q> = vec![Q::zero(); dim];
    for k in 0..dim {
        let cons = &levels[dim - 1 - k];
        let (mut lo, mut hi): (Option<Q>, Option<Q>) = (None, None);
        for c in cons {
            if c.a[k].is_zero() {
                continue;
            }
            let partial: Q = (0..k).fold(Q::zero(), |s, j| s + &c.a[j] * &x[j]);
            let bound = (&c.b - partial) / &c.a[k];
            if c.a[k].is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l: Q| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h: Q| h.min(bound)));
            }
        }
        x[k] = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / q(2),
            (Some(l), None) => l + Q::one(),
            (None, Some(h)) => h - Q::one(),
            (None, None) => Q::zero(),
        };
    }
    Some(x)
}

fn strict_cons(normals: &[Vec<Q>], signs: &[i8]) -> Vec<Ineq> {
    signs
        .iter()
        .zip(normals)
        .map(|(&s, n)| Ineq { a: n.iter().map(|x| x * q(s as i64)).collect(), b: Q::one() })
        .collect()
}

fn realizes(normals: &[Vec<Q>], signs: &[i8], x: &[Q]) -> bool {
    normals.iter().zip(signs).all(|(n, &s)| sign(&dot(n, x)) == s)
}

/// Small integer point realizing the sign vector, searching boxes of growing radius.
fn small_witness(dim: usize, normals: &[Vec<Q>], signs: &[i8]) -> Option<Vec<Q>> {
    for r in 1..=6i64 {
        let side = (2 * r + 1) as usize;
        let total = side.pow(dim as u32);
        for idx in 0..total {
            let mut x = Vec::with_capacity(dim);
            let mut t = idx;
            let mut on_shell = false;
            for _ in 0..dim {
                let v = (t % side) as i64 - r;
                on_shell |= v.abs() == r;
                x.push(v);
                t /= side;
            }
            if !on_shell {
                continue;
            }
            x.reverse();
            let xq: Vec<Q> = x.iter().map(|&v| q(v)).collect();
            if realizes(normals, signs, &xq) {
                return Some(xq);
            }
        }
    }
    None
}

/// Deterministic interior point of the open region with the given signs.
pub fn witness_for(dim: usize, normals: &[Vec<Q>], signs: &[i8]) -> Option<Vec<Q>> {
    let x = fm_solve(dim, strict_cons(normals, signs))?;
    Some(small_witness(dim, normals, signs).unwrap_or(x))
}

/// All nonempty open regions cut out by the hyperplanes `n . x = 0`.
pub fn regions(dim: usize, normals: &[Vec<Q>]) -> Vec<(Vec<i8>, Vec<Q>)> {
    let mut partial: Vec<Vec<i8>> = vec![vec![]];
    for i in 0..normals.len() {
        let mut next = Vec::new();
        for p in &partial {
            for s in [1i8, -1] {
                let mut t = p.clone();
                t.push(s);
                if fm_solve(dim, strict_cons(&normals[..=i], &t)).is_some() {
                    next.push(t);
                }
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|s| {
            let w = witness_for(dim, normals, &s).expect("feasible region");
            (s, w)
        })
        .collect()
}

pub fn chambers(arr: &Arrangement, space: Space) -> Result<Vec<Chamber>> {
    if arr.dim() > 3 {
        return Err(Error::RankTooLarge(arr.dim()));
    }
    let cached = arr.chamber_cache(space).get_or_init(|| {
        let normals = cutting_normals(arr, space);
        regions(arr.dim(), &normals).into_iter().map(|(signs, witness)| Chamber { space, signs, witness }).collect()
    });
    Ok(cached.clone())
}

pub fn find_chamber(arr: &Arrangement, x: &[Q], space: Space) -> Result<Chamber> {
    if x.len() != arr.dim() {
        return Err(Error::DimensionMismatch { expected: arr.dim(), got: x.len() });
    }
    let normals = cutting_normals(arr, space);
    let signs: Vec<i8> = normals.iter().map(|n| sign(&dot(n, x))).collect();
    if signs.contains(&0) {
        return Err(Error::OnWall);
    }
    let witness = witness_for(arr.dim(), &normals, &signs).ok_or(Error::ChamberNotFound)?;
    Ok(Chamber { space, signs, witness })
}

/// Flips generators to be positive on the dual chamber's witness; returns the
/// flipped vectors and `(-1)^flips`.
pub fn sigma_delta(sigma: &[Vec<Q>], delta: &Chamber) -> (Vec<Vec<Q>>, i8) {
    let mut eps = 1i8;
    let out = sigma
        .iter()
        .map(|a| {
            if dot(a, &delta.witness).is_negative() {
                eps = -eps;
                a.iter().map(|x| -x).collect()
            } else {
                a.clone()
            }
        })
        .collect();
    (out, eps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialCone {
    pub generators: Vec<Vec<Q>>,
    /// Per generator: coefficient must be strictly positive.
    pub strict: Vec<bool>,
}

impl SimplicialCone {
    pub fn closed(generators: Vec<Vec<Q>>) -> Self {
        let n = generators.len();
        SimplicialCone { generators, strict: vec![false; n] }
    }
}

pub fn cone_contains(c: &SimplicialCone, h: &[Q]) -> bool {
    match solve(&c.generators, h) {
        None => false,
        Some(x) => x.iter().zip(&c.strict).all(|(xi, &s)| if s { xi.is_positive() } else { !xi.is_negative() }),
    }
}

pub fn volume(sigma: &[Vec<Q>]) -> Result<Q> {
    let d = det(sigma);
    if d.is_zero() {
        return Err(Error::Degenerate);
    }
    Ok(d.abs())
}

/// Semi-open cone: generators with negative coordinate of the chamber witness are strict.
pub fn cprime(sigma: &[Vec<Q>], gamma: &Chamber) -> SimplicialCone {
    let p = solve(sigma, &gamma.witness).expect("sigma is a basis");
    SimplicialCone { generators: sigma.to_vec(), strict: p.iter().map(|x| x.is_negative()).collect() }
}
