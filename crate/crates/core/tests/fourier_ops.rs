mod common;

use common::*;
use jkres_core::fourier::*;
use jkres_core::geometry::{chambers, find_chamber, SimplicialCone, Space};
use jkres_core::laplace::inverse_laplace;
use jkres_core::linalg::{det, q, qv};
use jkres_core::oslomon::os_relation;
use jkres_core::residue::smoothness_class;
use jkres_core::{random, Arrangement, Polynomial, Q};
use rand::Rng;

fn primal(a: &Arrangement, x: &[i64]) -> jkres_core::geometry::Chamber {
    find_chamber(a, &qv(x), Space::Primal).unwrap()
}

fn dual(a: &Arrangement, x: &[i64]) -> jkres_core::geometry::Chamber {
    find_chamber(a, &qv(x), Space::Dual).unwrap()
}

/// Random rational points, a share of them forced onto walls, plus the box and the origin.
fn test_points<R: Rng>(a: &Arrangement, rng: &mut R, n: usize) -> Vec<Vec<Q>> {
    let r = a.dim();
    let mut pts = box_points(r, 2);
    let normals = a.wall_normals();
    while pts.len() < n {
        let mut h: Vec<Q> = (0..r).map(|_| Q::new(rng.gen_range(-30i64..=30).into(), rng.gen_range(1i64..=5).into())).collect();
        if rng.gen_bool(0.4) {
            // project along a coordinate onto a random wall
            let nrm = &normals[rng.gen_range(0..normals.len())];
            if let Some(j) = (0..r).find(|&j| nrm[j] != q(0)) {
                let rest: Q = (0..r).filter(|&k| k != j).map(|k| &nrm[k] * &h[k]).sum();
                h[j] = -rest / &nrm[j];
            }
        }
        pts.push(h);
    }
    pts
}

#[test]
fn a_gamma_examples() {
    let a = a2();
    let s = vec![qv(&[1, 0]), qv(&[0, 1])];
    let f = a_gamma(&s, &primal(&a, &[2, 1]));
    assert_eq!(f, ConeFunction::indicator(SimplicialCone::closed(s.clone())));
    let f = a_gamma(&s, &primal(&a, &[-1, 2]));
    assert_eq!(f.terms[0].1.strict, vec![true, false]);
    assert_eq!(f.evaluate(&qv(&[0, 0])), q(0));
    assert_eq!(f.evaluate(&qv(&[0, 1])), q(0));
    assert_eq!(f.evaluate(&qv(&[1, 0])), q(1));
    assert_eq!(evaluate_total(&ConeFunction::indicator(SimplicialCone::closed(s.clone())), &qv(&[0, 0])), q(1));
    let g = ConeFunction::indicator(SimplicialCone { generators: s.clone(), strict: vec![true, false] }).scale(&q(-1));
    assert_eq!(evaluate_total(&g, &qv(&[0, 1])), q(0));
}

#[test]
fn representative_examples() {
    let a = a2();
    let delta = dual(&a, &[2, 1]);
    let f = ConeFunction::indicator(SimplicialCone::closed(vec![qv(&[-1, 0]), qv(&[0, 1])]));
    let rep = representative_in_dual_cone(&f, &delta);
    let want = ConeFunction::indicator(SimplicialCone { generators: vec![qv(&[1, 0]), qv(&[0, 1])], strict: vec![true, false] }).scale(&q(-1));
    assert_eq!(rep, want);
    let f = ConeFunction::indicator(SimplicialCone::closed(vec![qv(&[1, 0]), qv(&[0, -1])]));
    let rep = representative_in_dual_cone(&f, &delta);
    let want = ConeFunction::indicator(SimplicialCone { generators: vec![qv(&[1, 0]), qv(&[0, 1])], strict: vec![false, true] }).scale(&q(-1));
    assert_eq!(rep, want);
    let pts: Vec<Vec<Q>> = test_points(&a, &mut rng(21), 200).into_iter().filter(|h| h[0] >= q(0) && h[1] >= q(0)).collect();
    assert!(first_difference(&rep, &want, &pts).is_none());
    let inside = ConeFunction::indicator(SimplicialCone::closed(vec![qv(&[1, 0]), qv(&[1, 1])]));
    assert_eq!(representative_in_dual_cone(&inside, &delta), inside);
}

#[test]
fn representative_uniqueness() {
    // Two presentations of the same function give the same representative on delta^v.
    let a = a2();
    let pts = test_points(&a, &mut rng(22), 300);
    for delta in chambers(&a, Space::Dual).unwrap() {
        let half_plane_a = ConeFunction::indicator(SimplicialCone::closed(vec![qv(&[1, 0]), qv(&[0, 1])]))
            .add(&ConeFunction::indicator(SimplicialCone { generators: vec![qv(&[-1, 0]), qv(&[0, 1])], strict: vec![true, false] }));
        let half_plane_b = ConeFunction::indicator(SimplicialCone::closed(vec![qv(&[1, 1]), qv(&[0, 1])]))
            .add(&ConeFunction::indicator(SimplicialCone { generators: vec![qv(&[1, 0]), qv(&[1, 1])], strict: vec![true, false] }))
            .add(&ConeFunction::indicator(SimplicialCone { generators: vec![qv(&[-1, 0]), qv(&[0, 1])], strict: vec![true, false] }));
        assert!(first_difference(&half_plane_a, &half_plane_b, &pts).is_none());
        let ra = representative_in_dual_cone(&half_plane_a, &delta);
        let rb = representative_in_dual_cone(&half_plane_b, &delta);
        assert!(first_difference(&ra, &rb, &pts).is_none());
        // a half plane contains a line, so its representative vanishes
        assert!(first_difference(&ra, &ConeFunction::zero(2), &pts).is_none());
    }
}

#[test]
fn os_relations_all_chambers() {
    let a = a2();
    let pts = test_points(&a, &mut rng(23), 500);
    let rel = os_relation(&a, &[0, 1], 2).unwrap();
    for gamma in chambers(&a, Space::Primal).unwrap() {
        for delta in chambers(&a, Space::Dual).unwrap() {
            let f = simple_fourier(&a, &rel, &gamma, &delta).unwrap();
            assert_eq!(f.terms.len(), 3);
            assert!(first_difference(&f, &ConeFunction::zero(2), &pts).is_none());
        }
    }
    for (_, a) in corpus() {
        let pts = test_points(&a, &mut rng(24), 150);
        let gammas = chambers(&a, Space::Primal).unwrap();
        let deltas = chambers(&a, Space::Dual).unwrap();
        for b in a.bases() {
            for al in 0..a.num_lines() {
                if b.contains(&al) {
                    continue;
                }
                let rel = os_relation(&a, &b, al).unwrap();
                let f = simple_fourier(&a, &rel, &gammas[al % gammas.len()], &deltas[b[0] % deltas.len()]).unwrap();
                assert!(first_difference(&f, &ConeFunction::zero(a.dim()), &pts).is_none());
            }
        }
    }
}

#[test]
fn subdivision_lemma() {
    let mut g = rng(25);
    let e = |i: usize| {
        let mut v = vec![q(0); 3];
        v[i] = q(1);
        v
    };
    let sigma = vec![e(0), e(1), e(2)];
    let alpha = qv(&[1, 1, 1]);
    let pieces: Vec<Vec<Vec<Q>>> = (0..3)
        .map(|j| {
            let mut s = sigma.clone();
            s[j] = alpha.clone();
            s
        })
        .collect();
    let all = [sigma.clone(), pieces[0].clone(), pieces[1].clone(), pieces[2].clone()].concat();
    let mut pts = box_points(3, 2);
    for _ in 0..200 {
        pts.push((0..3).map(|_| Q::new(g.gen_range(-9i64..=9).into(), g.gen_range(1i64..=3).into())).collect());
    }
    let mut tried = 0;
    while tried < 25 {
        let p: Vec<Q> = (0..3).map(|_| Q::new(g.gen_range(-20i64..=20).into(), g.gen_range(1i64..=4).into())).collect();
        // p must avoid every facet hyperplane
        let mut ok = true;
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                if det(&[all[i].clone(), all[j].clone(), p.clone()]) == q(0) && all[i] != all[j] {
                    ok = false;
                }
            }
        }
        if !ok {
            continue;
        }
        tried += 1;
        let arr = Arrangement::new(vec![e(0), e(1), e(2), alpha.clone()]).unwrap();
        let gamma = find_chamber(&arr, &p, Space::Primal).unwrap();
        let whole = a_gamma(&sigma, &gamma);
        let parts = pieces.iter().fold(ConeFunction::zero(3), |acc, s| acc.add(&a_gamma(s, &gamma)));
        assert!(first_difference(&whole, &parts, &pts).is_none());
    }
}

#[test]
fn stratified_examples() {
    let a = a2();
    let delta = dual(&a, &[2, 1]);
    let gamma = primal(&a, &[2, 1]);
    let f = stratified_fourier(&a, &phi(2, &[0, 1]), &gamma, &delta).unwrap();
    let quad = ConeFunction::indicator(SimplicialCone::closed(vec![qv(&[1, 0]), qv(&[0, 1])]));
    let pts = box_points(2, 3);
    assert!(first_difference(&f, &quad, &pts).is_none());
    let g = stratified_fourier(&a, &phi(2, &[0, 1, 2]), &gamma, &delta).unwrap();
    assert_eq!(evaluate_total(&g, &qv(&[1, 1])), q(1));
    assert!(stratified_fourier(&a, &frac(2, 1, &[(0, 1)]), &gamma, &delta).unwrap().is_empty());
}

#[test]
fn limit_consistency_and_extension() {
    for (name, a) in corpus() {
        let mut g = rng(26);
        let gammas = chambers(&a, Space::Primal).unwrap();
        let deltas = chambers(&a, Space::Dual).unwrap();
        let n = if name == "A3" { 2 } else { 4 };
        for _ in 0..n {
            let f = random::g_element(&a, &mut g).add(&random::element(&a, &mut g));
            for (di, delta) in deltas.iter().enumerate() {
                if name == "A3" && di % 4 != 0 {
                    continue;
                }
                let pp = inverse_laplace(&a, &f, delta).unwrap();
                let pts = test_points(&a, &mut g, 100);
                let sfs = stratified_fourier_all(&a, &f, &gammas, delta).unwrap();
                for (gamma, sf) in gammas.iter().zip(&sfs) {
                    for h in &pts {
                        let lim = one_sided_limit(&a, &pp, h, &gamma.witness).unwrap();
                        assert_eq!(evaluate_total(sf, h), lim, "{name} at {h:?}");
                        if a.is_regular_primal(h) {
                            assert_eq!(evaluate_total(sf, h), pp.piece_at(&a, h).unwrap().eval(h));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn continuous_case_independent_of_gamma() {
    let a = a2();
    let f = phi(2, &[0, 1, 2]);
    assert_eq!(smoothness_class(&a, &f), Some(0));
    let pts = test_points(&a, &mut rng(27), 150);
    for delta in chambers(&a, Space::Dual).unwrap() {
        let gammas = chambers(&a, Space::Primal).unwrap();
        let base = stratified_fourier(&a, &f, &gammas[0], &delta).unwrap();
        for gamma in &gammas[1..] {
            let other = stratified_fourier(&a, &f, gamma, &delta).unwrap();
            assert!(first_difference(&base, &other, &pts).is_none());
        }
    }
    let _ = Polynomial::zero(2);
}
