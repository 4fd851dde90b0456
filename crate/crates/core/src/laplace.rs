//! Inverse and forward Laplace transforms, jumps across walls.

use crate::arrangement::Arrangement;
use crate::element::RationalElement;
use crate::error::{Error, Result};
use crate::geometry::{chambers, cone_contains, find_chamber, regions, sigma_delta, volume, Chamber, SimplicialCone, Space};
use crate::linalg::{dot, primitive, sign};
use crate::oslomon::{nbc_basis_for_order, wall_residue, WallData};
use crate::poly::Polynomial;
use crate::residue::Session;
use crate::Q;
use num_traits::{One, Zero};

/// Polynomial pieces on the primal chambers, for a fixed dual chamber `delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePoly {
    pub delta: Chamber,
    pub chambers: Vec<Chamber>,
    pub pieces: Vec<Polynomial>,
}

impl PiecewisePoly {
    pub fn piece_for_signs(&self, signs: &[i8]) -> Option<&Polynomial> {
        self.chambers.iter().position(|c| c.signs == signs).map(|i| &self.pieces[i])
    }

    /// Piece of the chamber containing the regular point `h`.
    pub fn piece_at(&self, arr: &Arrangement, h: &[Q]) -> Result<&Polynomial> {
        let c = find_chamber(arr, h, Space::Primal)?;
        self.piece_for_signs(&c.signs).ok_or(Error::ChamberNotFound)
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| p.is_zero())
    }
}

fn check_delta(arr: &Arrangement, delta: &Chamber) -> Result<()> {
    if delta.space != Space::Dual || delta.witness.len() != arr.dim() {
        return Err(Error::ChamberNotFound);
    }
    if !arr.is_regular_dual(&delta.witness) {
        return Err(Error::OnWall);
    }
    Ok(())
}

/// Assembles the pieces from residue coordinates `c_b(h)` (sign `+1`).
pub fn assemble(arr: &Arrangement, nbc: &[Vec<usize>], coeffs: &[Polynomial], delta: &Chamber, chs: Vec<Chamber>) -> PiecewisePoly {
    let r = arr.dim();
    let cones: Vec<(SimplicialCone, i8, Q)> = nbc
        .iter()
        .map(|b| {
            let v = arr.vectors_of(b);
            let (flipped, eps) = sigma_delta(&v, delta);
            let vol = volume(&v).expect("basis");
            (SimplicialCone::closed(flipped), eps, vol)
        })
        .collect();
    let pieces = chs
        .iter()
        .map(|g| {
            let mut p = Polynomial::zero(r);
            for ((cone, eps, vol), c) in cones.iter().zip(coeffs) {
                if !c.is_zero() && cone_contains(cone, &g.witness) {
                    p.add_scaled(c, &(Q::from_integer((*eps as i64).into()) / vol));
                }
            }
            p
        })
        .collect();
    PiecewisePoly { delta: delta.clone(), chambers: chs, pieces }
}

pub fn inverse_laplace(arr: &Arrangement, phi: &RationalElement, delta: &Chamber) -> Result<PiecewisePoly> {
    inverse_laplace_in(&mut Session::new(arr), phi, delta)
}

/// [`inverse_laplace`] reusing the caches of a session.
pub fn inverse_laplace_in(s: &mut Session<'_>, phi: &RationalElement, delta: &Chamber) -> Result<PiecewisePoly> {
    let arr = s.arrangement();
    check_delta(arr, delta)?;
    let chs = chambers(arr, Space::Primal)?;
    let c = s.jk_residue_exp(phi, 1);
    Ok(assemble(arr, s.nbc(), &c, delta, chs))
}

/// Exact Laplace transform of a piecewise polynomial in the image of the inverse
/// transform: the pieces are written over the simplicial cones of the nbc basis
/// for the reversed line order, then `P(h)[C(s)] -> P(-d/dz)(vol(s) phi_s)`.
pub fn forward_laplace(arr: &Arrangement, pp: &PiecewisePoly) -> Result<RationalElement> {
    forward_laplace_in(&mut Session::new(arr), pp)
}

/// [`forward_laplace`] reusing the caches of a session.
pub fn forward_laplace_in(s: &mut Session<'_>, pp: &PiecewisePoly) -> Result<RationalElement> {
    let arr = s.arrangement();
    check_delta(arr, &pp.delta)?;
    let r = arr.dim();
    let order: Vec<usize> = (0..arr.num_lines()).rev().collect();
    let basis = nbc_basis_for_order(arr, &order);
    let cones: Vec<(SimplicialCone, i8, Q)> = basis
        .iter()
        .map(|b| {
            let v = arr.vectors_of(b);
            let (flipped, eps) = sigma_delta(&v, &pp.delta);
            (SimplicialCone::closed(flipped), eps, volume(&v).expect("basis"))
        })
        .collect();
    let ncols = basis.len();
    let mut rows: Vec<(Vec<Q>, Polynomial)> = pp
        .chambers
        .iter()
        .zip(&pp.pieces)
        .map(|(g, p)| {
            let row = cones.iter().map(|(c, _, _)| if cone_contains(c, &g.witness) { Q::one() } else { Q::zero() }).collect();
            (row, p.clone())
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank].0[col].recip();
        let (pr, pp_) = rows[rank].clone();
        let pr: Vec<Q> = pr.iter().map(|x| x * &inv).collect();
        let pp_ = pp_.scale(&inv);
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row.0[col].is_zero() {
                let f = row.0[col].clone();
                for (x, y) in row.0.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
                row.1.add_scaled(&pp_, &-f);
            }
        }
        rows[rank] = (pr, pp_);
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|(_, p)| !p.is_zero()) {
        return Err(Error::NotRepresentable);
    }
    let mut out = RationalElement::zero(r);
    for (i, &col) in pivots.iter().enumerate() {
        let p = &rows[i].1;
        if p.is_zero() {
            continue;
        }
        let (_, eps, vol) = &cones[col];
        // P(-d/dz) applied to eps * vol * phi_b.
        let mut neg = Polynomial::zero(r);
        for (e, c) in p.terms() {
            let d: u32 = e.iter().sum();
            neg.add_term(e, if d % 2 == 1 { -c.clone() } else { c.clone() });
        }
        let f = RationalElement::phi(r, &basis[col]).scale(&(Q::from_integer((*eps as i64).into()) * vol));
        out = out.add(&f.apply_operator(arr, &neg));
    }
    Ok(s.normalize(&out))
}

/// Piecewise polynomial on a wall, indexed by the regions of the wall cut by
/// the traces of all other walls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallPiecewise {
    /// Witnesses in wall frame coordinates.
    pub witnesses: Vec<Vec<Q>>,
    pub pieces: Vec<Polynomial>,
}

impl WallPiecewise {
    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| p.is_zero())
    }
}

/// Regions of the wall cut by traces of the other walls, with witnesses in frame coordinates.
pub fn wall_components(arr: &Arrangement, w: &WallData) -> Vec<Vec<Q>> {
    let mut traces: Vec<Vec<Q>> = Vec::new();
    for n in arr.wall_normals() {
        let t: Vec<Q> = w.frame.iter().map(|wi| dot(&n, wi)).collect();
        if let Some((p, _)) = primitive(&t) {
            if !traces.contains(&p) {
                traces.push(p);
            }
        }
    }
    regions(w.frame.len(), &traces).into_iter().map(|(_, x)| x).collect()
}

/// `f+ - f-` across the wall, restricted to wall coordinates.
pub fn jump(arr: &Arrangement, pp: &PiecewisePoly, w: &WallData) -> Result<WallPiecewise> {
    let r = arr.dim();
    let normals = arr.wall_normals();
    let up: Vec<Q> = w.positive_normal.clone();
    let images: Vec<Polynomial> = (0..r).map(|j| Polynomial::linear(&w.frame.iter().map(|wi| wi[j].clone()).collect::<Vec<_>>())).collect();
    let witnesses = wall_components(arr, w);
    let mut pieces = Vec::new();
    for u in &witnesses {
        let x = w.embed(u);
        let side = |s: i8| -> Vec<i8> {
            normals
                .iter()
                .map(|n| {
                    let v = sign(&dot(n, &x));
                    if v != 0 {
                        v
                    } else {
                        s * sign(&dot(n, &up))
                    }
                })
                .collect()
        };
        let fp = pp.piece_for_signs(&side(1)).ok_or(Error::ChamberNotFound)?;
        let fm = pp.piece_for_signs(&side(-1)).ok_or(Error::ChamberNotFound)?;
        let d = fp - fm;
        let restricted = if r == 1 { Polynomial::constant(0, d.eval(&[Q::zero()])) } else { d.compose(&images) };
        pieces.push(restricted);
    }
    Ok(WallPiecewise { witnesses, pieces })
}

/// Dual chamber of the wall arrangement containing the projection of `delta`'s witness.
pub fn default_delta0(w: &WallData, delta: &Chamber) -> Result<Chamber> {
    let zeta: Vec<Q> = w.frame.iter().map(|wi| dot(wi, &delta.witness)).collect();
    find_chamber(&w.induced, &zeta, Space::Dual)
}

/// Compares the jump of the inverse transform with the inverse transform on the
/// wall of the wall residue.
pub fn check_jump_formula(
    arr: &Arrangement,
    phi: &RationalElement,
    w: &WallData,
    delta: &Chamber,
    delta0: Option<&Chamber>,
) -> Result<bool> {
    let pp = inverse_laplace(arr, phi, delta)?;
    check_jump_with(arr, &pp, phi, w, delta0)
}

/// As [`check_jump_formula`], reusing an already computed inverse transform.
pub fn check_jump_with(
    arr: &Arrangement,
    pp: &PiecewisePoly,
    phi: &RationalElement,
    w: &WallData,
    delta0: Option<&Chamber>,
) -> Result<bool> {
    let delta = &pp.delta;
    let d0 = match delta0 {
        Some(c) => c.clone(),
        None => default_delta0(w, delta)?,
    };
    for (k, &i) in w.delta0.iter().enumerate() {
        if sign(&dot(w.induced.line(k), &d0.witness)) != sign(&dot(arr.line(i), &delta.witness)) {
            return Err(Error::ChamberMismatch);
        }
    }
    let lhs = jump(arr, pp, w)?;
    let res = wall_residue(arr, phi, w);
    let rhs = inverse_laplace(&w.induced, &res, &d0)?;
    for (u, p) in lhs.witnesses.iter().zip(&lhs.pieces) {
        if rhs.piece_at(&w.induced, u)? != p {
            return Ok(false);
        }
    }
    Ok(true)
}
