mod common;

use common::*;
use jkres_core::arrangement::subsets;
use jkres_core::linalg::{det, dot, q, qv, rank};
use jkres_core::normalize::{equal, Normalizer};
use jkres_core::oslomon::{
    cauchy_trace, iterated_residue_vectors, nbc_basis, os_relation, quotient, separate_variables, wall_residue, WallData,
};
use jkres_core::residue::Session;
use jkres_core::{random, Arrangement, Error, Polynomial, RationalElement, Q};
use num_traits::{One, Zero};
use std::collections::BTreeSet;

#[test]
fn nbc_examples() {
    assert_eq!(nbc_basis(&a2()).unwrap(), vec![vec![0, 1], vec![0, 2]]);
    let got: BTreeSet<Vec<usize>> = nbc_basis(&a3()).unwrap().into_iter().collect();
    let expect: BTreeSet<Vec<usize>> =
        [vec![0, 1, 2], vec![0, 2, 3], vec![0, 1, 4], vec![0, 3, 4], vec![0, 1, 5], vec![0, 2, 5]].into_iter().collect();
    assert_eq!(got, expect);
    let b = Arrangement::new(vec![qv(&[1, 0]), qv(&[0, 1])]).unwrap();
    assert_eq!(nbc_basis(&b).unwrap(), vec![vec![0, 1]]);
    let bad = Arrangement::new_any(vec![qv(&[1, 0])]).unwrap();
    assert!(matches!(nbc_basis(&bad), Err(Error::NotSpanning { .. })));
}

#[test]
fn nbc_size_matches_dimension() {
    // Rank of the evaluation matrix of all phi_sigma at random points.
    for (_, a) in corpus() {
        let mut g = rng(3);
        let bases = a.bases();
        let pts: Vec<Vec<Q>> = (0..bases.len() + 4).map(|_| random::regular_dual_point(&a, &mut g)).collect();
        let rows: Vec<Vec<Q>> = bases.iter().map(|b| pts.iter().map(|y| phi(a.dim(), b).evaluate(&a, y).unwrap()).collect()).collect();
        assert_eq!(rank(&rows), nbc_basis(&a).unwrap().len());
    }
}

#[test]
fn dual_basis_identity() {
    for (_, a) in corpus() {
        let b = nbc_basis(&a).unwrap();
        for (i, x) in b.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let v = iterated_residue_vectors(&a.vectors_of(x), &a.vectors_of(y));
                assert_eq!(v, if i == j { q(1) } else { q(0) });
            }
        }
    }
}

#[test]
fn triangularity_witness() {
    // b' = (e2, e1+e2), b = (e1, e1+e2): e1+e2 = 1*(e1+e2), e1 = -1*e2 + (e1+e2), so t1*t2 = -1.
    let a = a2();
    assert_eq!(iterated_residue_vectors(&a.vectors_of(&[0, 2]), &a.vectors_of(&[1, 2])), q(-1));
}

#[test]
fn os_relations_vanish() {
    let a = a2();
    let r = os_relation(&a, &[1, 2], 0).unwrap();
    let expect = phi(2, &[1, 2]).sub(&phi(2, &[0, 1])).add(&phi(2, &[0, 2]));
    assert!(equal(&a, &r, &expect));
    assert!(Normalizer::new(&a).normalize(&r).has_no_terms());
    let r2 = os_relation(&a, &[0, 1], 2).unwrap();
    let mut g = rng(4);
    for _ in 0..10 {
        let y = random::regular_dual_point(&a, &mut g);
        assert_eq!(r2.evaluate(&a, &y).unwrap(), q(0));
    }
    assert_eq!(os_relation(&a, &[0, 1], 1), Err(Error::AlphaInSigma));
    for (_, a) in corpus() {
        let mut norm = Normalizer::new(&a);
        for s in a.bases() {
            for al in 0..a.num_lines() {
                if !s.contains(&al) {
                    assert!(norm.normalize(&os_relation(&a, &s, al).unwrap()).has_no_terms());
                }
            }
        }
    }
}

#[test]
fn express_in_basis() {
    let a = a2();
    let mut s = Session::new(&a);
    assert_eq!(s.jk_residue(&phi(2, &[1, 2])), vec![q(1), q(-1)]);
    assert_eq!(s.jk_residue(&phi(2, &[0, 2])), vec![q(0), q(1)]);
    let a = a3();
    let mut s = Session::new(&a);
    let f = phi(3, &[1, 2, 3]);
    let c = s.jk_residue(&f);
    let mut rec = RationalElement::zero(3);
    for (b, cb) in s.nbc().to_vec().iter().zip(&c) {
        rec = rec.add(&phi(3, b).scale(cb));
    }
    let mut g = rng(5);
    for _ in 0..50 {
        let y = random::regular_dual_point(&a, &mut g);
        assert_eq!(rec.evaluate(&a, &y).unwrap(), f.evaluate(&a, &y).unwrap());
    }
    // Descent cross-check: the iterated residue along each basis equals the coordinate.
    for (b, cb) in s.nbc().to_vec().iter().zip(&c) {
        assert_eq!(s.iterated_residue(b, &f), *cb);
    }
}

#[test]
fn wall_residue_examples() {
    let a = a2();
    let w = WallData::new(&a, &[0]).unwrap();
    assert_eq!(w.z0, qv(&[0, 1]));
    let res = wall_residue(&a, &phi(2, &[0, 1]), &w);
    assert_eq!(res, RationalElement::phi(1, &[0]));
    for wd in WallData::all(&a) {
        let r = wall_residue(&a, &phi(2, &[0, 1, 2]), &wd);
        assert!(r.degrees().iter().all(|&d| d == -2));
    }
    let w1 = WallData::new(&a, &[0]).unwrap();
    // Both factors z2 and z1+z2 are off the wall span(e1) for 1/(z2 (z1+z2)).
    assert!(wall_residue(&a, &phi(2, &[1, 2]), &w1).has_no_terms());
    assert_eq!(WallData::new(&a, &[0, 1]).unwrap_err(), Error::NotAWall);
}

#[test]
fn wall_residue_characterization() {
    for (_, a) in corpus() {
        let r = a.dim();
        let mut g = rng(6);
        for w in WallData::all(&a) {
            let mut nw = Normalizer::new(&w.induced);
            // (1) constant proportional to 1 / beta(z0)
            let mut consts = Vec::new();
            for &b in &w.delta1 {
                let res = nw.normalize(&wall_residue_raw_helper(&a, &phi(r, &[b]), &w));
                assert!(res.terms().len() == 1 && res.terms()[0].denominator.is_empty());
                let c = res.terms()[0].numerator.constant_term();
                consts.push(c * dot(a.line(b), &w.z0));
            }
            assert!(consts.windows(2).all(|p| p[0] == p[1]));
            // (2) polynomials
            let p = random::polynomial(&mut g, r, 3, 3);
            assert!(wall_residue(&a, &RationalElement::polynomial(p), &w).has_no_terms());
            // (3) products of at least two off-wall factors
            for x in &w.delta1 {
                for y in &w.delta1 {
                    let f = RationalElement::pure(r, q(1), &[(*x, 1), (*y, 1)]);
                    assert!(wall_residue(&a, &f, &w).has_no_terms());
                }
            }
            // linearity over the wall ring
            for _ in 0..3 {
                let f = random::element(&a, &mut g);
                let psi = if w.induced.num_lines() > 0 && w.induced.dim() > 0 {
                    random::element(&w.induced, &mut g)
                } else {
                    RationalElement::polynomial(Polynomial::constant(w.induced.dim(), random::small_q(&mut g)))
                };
                let lhs = wall_residue(&a, &w.lift(&psi).mul(&f), &w);
                let rhs = psi.mul(&wall_residue(&a, &f, &w));
                assert!(equal(&w.induced, &lhs, &rhs));
            }
        }
    }
}

fn wall_residue_raw_helper(a: &Arrangement, f: &RationalElement, w: &WallData) -> RationalElement {
    jkres_core::oslomon::wall_residue_raw(a, f, w)
}

#[test]
fn residue_compatibility() {
    for (_, a) in corpus() {
        let r = a.dim();
        let mut g = rng(7);
        let mut s = Session::new(&a);
        for w in WallData::all(&a) {
            let mut s0 = Session::new(&w.induced);
            for _ in 0..4 {
                let f = random::element(&a, &mut g).add(&random::g_element(&a, &mut g));
                let c = s.jk_residue(&f);
                let mut lifted = RationalElement::zero(r);
                for (b, cb) in s.nbc().to_vec().iter().zip(&c) {
                    lifted = lifted.add(&phi(r, b).scale(cb));
                }
                let lhs = wall_residue(&a, &lifted, &w);
                let c0 = s0.jk_residue(&wall_residue(&a, &f, &w));
                let mut rhs = RationalElement::zero(r - 1);
                for (b, cb) in s0.nbc().to_vec().iter().zip(&c0) {
                    rhs = rhs.add(&RationalElement::phi(r - 1, b).scale(cb));
                }
                assert!(equal(&w.induced, &lhs, &rhs));
            }
        }
    }
}

#[test]
fn flag_equivalence() {
    for (_, a) in corpus() {
        let r = a.dim();
        let sign = if (r * (r - 1) / 2) % 2 == 1 { -Q::one() } else { Q::one() };
        for b in a.bases() {
            for perm in permutations(&b) {
                for sigma in a.bases() {
                    let ir = iterated_residue_vectors(&a.vectors_of(&perm), &a.vectors_of(&sigma));
                    // Compose wall residues along the flag spanned by tail segments of `perm`.
                    let mut arr = a.clone();
                    let mut f = phi(r, &sigma);
                    let mut idx: Vec<usize> = perm.clone();
                    while arr.dim() > 0 {
                        let w = WallData::new(&arr, &idx[1..]).unwrap();
                        f = wall_residue(&arr, &f, &w);
                        idx = idx[1..].iter().map(|i| w.delta0.iter().position(|x| x == i).unwrap()).collect();
                        arr = w.induced.clone();
                    }
                    let val = f.terms().first().map_or(Q::zero(), |t| t.numerator.constant_term());
                    let d = det(&a.vectors_of(&perm));
                    assert_eq!(val, &sign * ir / d, "perm {perm:?} sigma {sigma:?}");
                }
            }
        }
    }
}

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

#[test]
fn exact_sequence_counts() {
    for (_, a) in corpus() {
        let r = a.dim();
        let total = nbc_basis(&a).unwrap().len();
        for al in 0..a.num_lines() {
            let rest: Vec<Vec<Q>> = (0..a.num_lines()).filter(|&i| i != al).map(|i| a.line(i).to_vec()).collect();
            let del = Arrangement::with_dim(r, rest.clone()).unwrap();
            let n_del = if del.spans() { nbc_basis(&del).unwrap().len() } else { 0 };
            let quo: Vec<Vec<Q>> = rest.iter().map(|v| quotient(a.line(al), v)).collect();
            let con = Arrangement::with_dim(r - 1, quo).unwrap();
            let n_con = nbc_basis(&con).unwrap().len();
            assert_eq!(total, n_del + n_con);
        }
    }
}

#[test]
fn nbc_minimality() {
    for a in [a2(), a3()] {
        let mut s = Session::new(&a);
        let bases = a.bases();
        let coords: Vec<Vec<Q>> = bases.iter().map(|b| s.pairing(b)).collect();
        let n = s.nbc().len();
        let weight = |fam: &[usize]| -> usize { fam.iter().map(|&i| bases[i].iter().sum::<usize>()).sum() };
        let mut best: Option<(usize, Vec<Vec<Vec<usize>>>)> = None;
        for fam in subsets(bases.len(), n) {
            let m: Vec<Vec<Q>> = fam.iter().map(|&i| coords[i].clone()).collect();
            if det(&m).is_zero() {
                continue;
            }
            let wgt = weight(&fam);
            let fb: Vec<Vec<usize>> = fam.iter().map(|&i| bases[i].clone()).collect();
            match &mut best {
                Some((bw, list)) if *bw == wgt => list.push(fb),
                Some((bw, _)) if *bw < wgt => {}
                _ => best = Some((wgt, vec![fb])),
            }
        }
        let (_, winners) = best.unwrap();
        assert_eq!(winners.len(), 1);
        assert_eq!(winners[0], s.nbc().to_vec());
    }
}

#[test]
fn separation_examples() {
    let a = a2();
    let sep = separate_variables(&a, &phi(2, &[0, 1, 2]));
    assert_eq!(sep, vec![(vec![0, 1], poly("-h1", "h", 2)), (vec![0, 2], poly("h1 - h2", "h", 2))]);
    assert_eq!(separate_variables(&a, &phi(2, &[0, 1])), vec![(vec![0, 1], poly("1", "h", 2))]);
    assert_eq!(separate_variables(&a, &frac(2, 1, &[(0, 2), (1, 1)])), vec![(vec![0, 1], poly("-h1", "h", 2))]);
    for (_, a) in corpus() {
        let mut g = rng(8);
        let mut s = Session::new(&a);
        for _ in 0..10 {
            let f = random::element(&a, &mut g).add(&random::g_element(&a, &mut g));
            let d = s.jk_residue_exp(&f, -1);
            let rec = s.apply_coordinates(&d);
            let gpart = s.split(&f).g_element();
            assert!(equal(&a, &rec, &gpart));
        }
    }
}

#[test]
fn cauchy_examples() {
    let a = a2();
    assert_eq!(cauchy_trace(&a, &phi(2, &[0, 1]), &qv(&[1, 2])).unwrap(), half());
    assert_eq!(cauchy_trace(&a, &phi(2, &[0, 1, 2]), &qv(&[1, 2])).unwrap(), Q::new(1.into(), 6.into()));
    assert_eq!(cauchy_trace(&a, &phi(2, &[0]), &qv(&[1, 2])).unwrap(), q(0));
    assert_eq!(cauchy_trace(&a, &phi(2, &[0]), &qv(&[0, 2])), Err(Error::SingularPoint));
    let mut g = rng(9);
    let mut n = Normalizer::new(&a);
    for _ in 0..10 {
        let f = random::element(&a, &mut g);
        let y = random::regular_dual_point(&a, &mut g);
        assert_eq!(cauchy_trace(&a, &f, &y).unwrap(), n.split(&f).g_element().evaluate(&a, &y).unwrap());
    }
}
