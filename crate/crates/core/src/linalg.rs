//! Dense exact linear algebra over the rationals.

use crate::error::{Error, Result};
use crate::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qv(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// Parses `p`, `p/q` or a finite decimal such as `-1.25`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    if let Some((a, b)) = s.split_once('/') {
        let n: BigInt = a.trim().parse().map_err(|_| bad())?;
        let d: BigInt = b.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((a, b)) = s.split_once('.') {
        if b.is_empty() || !b.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = a.trim_start().starts_with('-');
        let ip: BigInt = if a == "-" || a.is_empty() { BigInt::zero() } else { a.parse().map_err(|_| bad())? };
        let fp: BigInt = b.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), b.len());
        let frac = Q::new(fp, den);
        let ip = Q::from_integer(ip);
        return Ok(if neg { ip - frac } else { ip + frac });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

/// Parses a comma separated vector such as `1,0,-1/2`.
pub fn parse_vector(s: &str) -> Result<Vec<Q>> {
    let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(parse_q).collect()
}

pub fn format_vector(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sign(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Q>]) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..ncols {
                    let d = &f * &m[row][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    rref(rows).1.len()
}

pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Q::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d *= &piv;
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &piv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let (r, piv) = rref(&aug);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Coordinates `x` with `sum x_i gens_i = target`, if `target` is in the span.
/// The generators are assumed linearly independent.
pub fn solve(gens: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let k = gens.len();
    let n = target.len();
    let aug: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut r: Vec<Q> = gens.iter().map(|g| g[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let (r, piv) = rref(&aug);
    if piv.contains(&k) {
        return None;
    }
    let mut x = vec![Q::zero(); k];
    for (row, &p) in r.iter().zip(&piv) {
        x[p] = row[k].clone();
    }
    Some(x)
}

/// Basis of `{x : rows . x = 0}`.
pub fn kernel(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let (r, piv) = rref(rows);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !piv.contains(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (row, &p) in r.iter().zip(&piv) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// Integer primitive representative with first nonzero entry positive, and the
/// scalar `s` with `v = s * primitive`. Returns `None` for the zero vector.
pub fn primitive(v: &[Q]) -> Option<(Vec<Q>, Q)> {
    let first = v.iter().find(|x| !x.is_zero())?;
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if first.is_negative() {
        g = -g;
    }
    let p: Vec<Q> = ints.iter().map(|x| Q::from_integer(x / &g)).collect();
    let s = Q::new(g, l);
    Some((p, s))
}

pub fn factorial(n: u32) -> Q {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= i;
    }
    Q::from_integer(f)
}

/// `binom(-n, k) = (-1)^k C(n+k-1, k)`.
pub fn binom_neg(n: u32, k: u32) -> Q {
    let mut c = Q::one();
    for i in 0..k {
        c = c * q((n + i) as i64) / q((i + 1) as i64);
    }
    if k % 2 == 1 {
        -c
    } else {
        c
    }
}
