mod common;

use common::*;
use jkres_core::linalg::{q, qv};
use jkres_core::normalize::{equal, normalize, split, Normalizer};
use jkres_core::residue::{jk_residue, jk_residue_exp, smoothness_class, vanish_order_at_infinity, Session};
use jkres_core::{random, Error, RationalElement, Q};

#[test]
fn evaluate_examples() {
    let a = a2();
    assert_eq!(phi(2, &[0, 1]).evaluate(&a, &qv(&[1, 2])).unwrap(), half());
    let s = phi(2, &[1, 2]);
    let t = phi(2, &[0, 1]).sub(&phi(2, &[0, 2]));
    assert_eq!(s.evaluate(&a, &qv(&[1, 1])).unwrap(), half());
    assert_eq!(t.evaluate(&a, &qv(&[1, 1])).unwrap(), half());
    assert_eq!(phi(2, &[0]).evaluate(&a, &qv(&[0, 1])), Err(Error::SingularPoint));
}

#[test]
fn normalize_examples() {
    let a = a2();
    let f = phi(2, &[0, 1, 2]);
    let n = normalize(&a, &f);
    for t in n.terms() {
        assert!(a.is_independent(&t.support()));
    }
    for y in [qv(&[1, 2]), qv(&[3, 5]), qv(&[-1, 7])] {
        assert_eq!(n.evaluate(&a, &y).unwrap(), f.evaluate(&a, &y).unwrap());
    }
    let g = RationalElement::fraction(poly("z2", "z", 2), &[(0, 1), (2, 1)]);
    let expect = phi(2, &[0]).sub(&phi(2, &[2]));
    assert_eq!(normalize(&a, &g), normalize(&a, &expect));
    assert_eq!(normalize(&a, &expect), expect);
    assert_eq!(normalize(&a, &phi(2, &[0, 1])), phi(2, &[0, 1]));
}

#[test]
fn split_examples() {
    let a = a2();
    let s = split(&a, &phi(2, &[0]));
    assert!(s.g_part.is_empty());
    assert_eq!(s.ng_element(), phi(2, &[0]));
    let s = split(&a, &phi(2, &[0, 1, 2]));
    assert!(s.ng_part.is_empty());
    assert!(!s.g_part.is_empty());
    let g = RationalElement::fraction(poly("z2", "z", 2), &[(0, 1), (2, 1)]);
    let s = split(&a, &g);
    assert!(s.g_part.is_empty());
    assert!(equal(&a, &s.ng_element(), &phi(2, &[0]).sub(&phi(2, &[2]))));
}

#[test]
fn graded_examples() {
    let f = phi(2, &[0, 1]);
    assert_eq!(f.graded_component(-2), f);
    assert!(f.graded_component(-3).has_no_terms());
    let g = RationalElement::fraction(poly("1 + z1", "z", 2), &[(0, 1), (1, 1)]);
    let a = a2();
    assert!(equal(&a, &g.graded_component(-1), &phi(2, &[1])));
}

#[test]
fn jk_residue_examples() {
    let a = a2();
    assert_eq!(jk_residue(&a, &phi(2, &[0, 1])), vec![q(1), q(0)]);
    assert_eq!(jk_residue(&a, &phi(2, &[1, 2])), vec![q(1), q(-1)]);
    assert_eq!(jk_residue(&a, &frac(2, 1, &[(0, 2), (1, 1)])), vec![q(0), q(0)]);
}

#[test]
fn jk_residue_exp_examples() {
    let a = a2();
    let f = phi(2, &[0, 1, 2]);
    assert_eq!(jk_residue_exp(&a, &f, -1), vec![poly("-h1", "h", 2), poly("h1 - h2", "h", 2)]);
    assert_eq!(jk_residue_exp(&a, &f, 1), vec![poly("h1", "h", 2), poly("h2 - h1", "h", 2)]);
    assert_eq!(jk_residue_exp(&a, &phi(2, &[0, 1]), 1), vec![poly("1", "h", 2), poly("0", "h", 2)]);
}

#[test]
fn derivative_examples() {
    let a = a2();
    let d = phi(2, &[1, 2]).derivative(&a, &qv(&[1, 0]));
    assert_eq!(jk_residue(&a, &d), vec![q(0), q(0)]);
    let lhs = phi(2, &[0, 1])
        .derivative(&a, &qv(&[1, 0]))
        .scale(&q(-1))
        .add(&phi(2, &[0, 2]).derivative(&a, &qv(&[1, -1])));
    assert!(equal(&a, &lhs, &phi(2, &[0, 1, 2])));
}

#[test]
fn vanish_order_examples() {
    let a = a2();
    assert_eq!(vanish_order_at_infinity(&a, &phi(2, &[0, 1])), Some(1));
    assert_eq!(vanish_order_at_infinity(&a, &phi(2, &[0, 1, 2])), Some(2));
    assert_eq!(vanish_order_at_infinity(&a, &RationalElement::polynomial(poly("z1", "z", 2))), Some(0));
    assert_eq!(vanish_order_at_infinity(&a, &RationalElement::zero(2)), None);
    assert_eq!(smoothness_class(&a, &phi(2, &[0, 1, 2])), Some(0));
    assert_eq!(smoothness_class(&a, &phi(2, &[0, 1])), Some(-1));
    assert_eq!(smoothness_class(&a, &frac(2, 1, &[(0, 2), (1, 2), (2, 1)])), Some(1));
}

#[test]
fn representation_soundness() {
    for (name, a) in corpus() {
        let mut g = rng(1);
        let mut norm = Normalizer::new(&a);
        for _ in 0..25 {
            let f = random::element(&a, &mut g);
            let n = norm.normalize(&f);
            let s = norm.split(&f);
            let ys: Vec<Vec<Q>> = (0..100).map(|_| random::regular_dual_point(&a, &mut g)).collect();
            for y in &ys {
                let v = f.evaluate(&a, y).unwrap();
                assert_eq!(n.evaluate(&a, y).unwrap(), v, "{name}");
                let w = s.g_element().evaluate(&a, y).unwrap() + s.ng_element().evaluate(&a, y).unwrap();
                assert_eq!(w, v, "{name}");
            }
            let g_el = s.g_element();
            let again = norm.split(&g_el);
            assert!(again.ng_part.is_empty());
            assert_eq!(again.g_part, s.g_part);
            let again = norm.split(&s.ng_element());
            assert!(again.g_part.is_empty());
            if !s.g_part.is_empty() {
                assert!(vanish_order_at_infinity(&a, &g_el).unwrap() >= 1, "{name}");
            }
            let mut total = RationalElement::zero(a.dim());
            for d in f.degrees() {
                total = total.add(&f.graded_component(d));
            }
            assert!(equal(&a, &total, &f));
        }
    }
}

#[test]
fn residue_projection_properties() {
    for (_, a) in corpus() {
        let mut g = rng(2);
        let mut s = Session::new(&a);
        let r = a.dim();
        let nb = s.nbc().to_vec();
        for (i, b) in nb.iter().enumerate() {
            let c = s.jk_residue(&phi(r, b));
            for (j, x) in c.iter().enumerate() {
                assert_eq!(*x, if i == j { q(1) } else { q(0) });
            }
        }
        for _ in 0..20 {
            let f = random::element(&a, &mut g);
            for j in 0..r {
                let mut v = vec![q(0); r];
                v[j] = q(1);
                assert!(s.jk_residue(&f.derivative(&a, &v)).iter().all(|x| *x == q(0)));
            }
            let sp = s.split(&f);
            assert!(s.jk_residue(&sp.ng_element()).iter().all(|x| *x == q(0)));
            for d in f.degrees() {
                if d != -(r as i64) {
                    assert!(s.jk_residue(&f.graded_component(d)).iter().all(|x| *x == q(0)));
                }
            }
        }
    }
}
