use proptest::prelude::*;
use qcartan::torus::{check_nnkr, check_ya, n_via_roots, wt_q, Exps};
use qcartan::*;

fn b3() -> (DynkinQuiver, Torus) {
    let q = DynkinQuiver::new(build_datum("B3".parse().unwrap()), vec![3, 2, 1]).unwrap();
    let t = Torus::for_quiver(&q);
    (q, t)
}

fn v(i: usize, p: i64) -> RepVertex {
    RepVertex::new(i - 1, p)
}

fn x(i: usize, p: i64) -> TorusElement {
    TorusElement::from_monomial(TorusMonomial::var(i - 1, p))
}

const SEVEN: &str = "q*X[1,1] + q*X[2,2]*X[1,3]^-1 + q^2*X[3,3]^2*X[2,4]^-1 \
    + q^-1*X[3,3]*X[3,5]^-1 + q*X[3,3]*X[3,5]^-1 + q^2*X[2,4]*X[3,5]^-2 \
    + q*X[1,5]*X[2,6]^-1 + q^-1*X[1,7]^-1";

#[test]
fn pairing_examples() {
    let (q, t) = b3();
    assert_eq!(t.n_pairing(v(1, 3), v(2, 2)).unwrap(), -2);
    assert_eq!(t.n_pairing(v(2, 2), v(1, 3)).unwrap(), 2);
    assert_eq!(t.n_pairing(v(2, 2), v(2, 2)).unwrap(), 0);
    assert_eq!(n_via_roots(&q, v(1, 3), v(2, 2)).unwrap(), -2);
    assert_eq!(n_via_roots(&q, v(1, 1), v(3, 1)).unwrap(), 0);
    assert_eq!(t.n_pairing(v(1, 1), v(3, 1)).unwrap(), 0);
}

#[test]
fn commutation_and_inverse() {
    let (_, t) = b3();
    let lhs = t.multiply(&x(1, 3), &x(2, 2));
    let mut rhs = t.multiply(&x(2, 2), &x(1, 3)).terms();
    assert_eq!(rhs.len(), 1);
    let (c, mut m) = rhs.pop().unwrap();
    m.qpow2 -= 4;
    assert_eq!(lhs, {
        let mut e = TorusElement::zero();
        e.add_monomial(c, m);
        e
    });
    let a = TorusMonomial::var(0, 3).with_qpow2(3);
    assert_eq!(t.multiply_monomials(&a, &t.inverse(&a)), TorusMonomial::one());
    assert_eq!(t.multiply_monomials(&t.inverse(&a), &a), TorusMonomial::one());
}

#[test]
fn bar_examples() {
    let (_, t) = b3();
    let half = TorusMonomial::one().with_qpow2(1);
    assert_eq!(t.bar_monomial(&half), TorusMonomial::one().with_qpow2(-1));
    for i in 0..3 {
        let p = [3, 2, 1][i];
        let m = t.bar_normalize(&TorusMonomial::var(i, p));
        assert_eq!(m.qpow2, t.table.d[i]);
        assert_eq!(t.bar_monomial(&m), m);
    }
}

#[test]
fn interval_monomials() {
    let (q, t) = b3();
    let m = t.interval_monomial(0, 1, 3).unwrap();
    assert_eq!(m.exps, Exps::from([(v(1, 1), 1), (v(1, 3), 1)]));
    assert_eq!(t.bar_monomial(&m), m);
    assert_eq!(
        t.interval_monomial(1, 2, 2).unwrap(),
        t.bar_normalize(&TorusMonomial::var(1, 2))
    );
    assert!(check_nnkr(&q, &t, 0, 1, 3, 1, 2, 2).unwrap());
    assert!(check_nnkr(&q, &t, 0, 1, 1, 1, 4, 4).is_err());
}

#[test]
fn b_monomials() {
    let (q, t) = b3();
    let b = t.b_monomial(&q, 1, 1).unwrap();
    assert_eq!(
        b.exps,
        Exps::from([(v(2, 0), 1), (v(2, 2), 1), (v(1, 1), -1), (v(3, 1), -2)])
    );
    assert_eq!(t.bar_monomial(&b), b);
    assert!(wt_q(&q, &b.exps).is_zero());
    for i in 0..3 {
        for p in -12..12 {
            if q.valid(i, p + 1) {
                let b = t.b_monomial(&q, i, p).unwrap();
                assert!(wt_q(&q, &b.exps).is_zero(), "B({},{})", i + 1, p);
            }
        }
    }
    assert!(t.b_monomial(&q, 0, 3).is_err());

    let a1 = DynkinQuiver::new(build_datum("A1".parse().unwrap()), vec![0]).unwrap();
    let ta = Torus::for_quiver(&a1);
    let b = ta.b_monomial(&a1, 0, 1).unwrap();
    assert_eq!(b.exps, Exps::from([(v(1, 0), 1), (v(1, 2), 1)]));
}

#[test]
fn q_weights() {
    let (q, _) = b3();
    let wt = |i, p| wt_q(&q, &Exps::from([(v(i, p), 1)])).coords;
    assert_eq!(wt(1, 1), vec![0, 1, 0]);
    assert_eq!(wt(2, 2), vec![1, 1, 0]);
    assert_eq!(wt(2, 0), vec![1, 2, 2]);
    assert_eq!(wt(3, 1), vec![1, 1, 1]);
}

#[test]
fn seven_term_element() {
    let (q, t) = b3();
    let e = t.parse_element(SEVEN).unwrap();
    assert_eq!(e.supports().len(), 7);
    assert_eq!(e.terms().len(), 8);
    assert_eq!(t.bar(&t.bar(&e)), e);
    assert_eq!(t.bar(&e), e);
    for m in e.supports() {
        assert_eq!(wt_q(&q, &m).coords, vec![0, 1, 0]);
    }
    assert_eq!(t.parse_element(&e.to_string()).unwrap(), e);
}

#[test]
fn ya_window() {
    let (q, t) = b3();
    assert_eq!(check_ya(&q, &t, -12, 12), None);
    assert_eq!(qcartan::torus::ya_beta(&q, 0, 3, 0, 2), -4);
    assert_eq!(qcartan::torus::ya_alpha(&q, 0, 3, 2, 2), 0);
}

#[test]
fn kq_generator() {
    let (q, t) = b3();
    let g = t.kq_generator(&q, 0, 1).unwrap();
    let terms = g.terms();
    assert_eq!(terms.len(), 2);
    let lead = terms.iter().find(|(_, m)| m.exps.len() == 1).unwrap();
    assert_eq!(lead.1.exps, Exps::from([(v(1, 1), 1)]));
    let w: Vec<_> = terms.iter().map(|(_, m)| wt_q(&q, &m.exps)).collect();
    assert_eq!(w[0], w[1]);
    let b = t.b_monomial(&q, 0, 2).unwrap();
    let other = terms.iter().find(|(_, m)| m.exps.len() > 1).unwrap();
    let mut want = Exps::from([(v(1, 1), 1)]);
    for (k, e) in &b.exps {
        *want.entry(*k).or_insert(0) -= e;
    }
    want.retain(|_, e| *e != 0);
    assert_eq!(other.1.exps, want);
    assert!(t.kq_generator(&q, 0, 2).is_err());
}

#[test]
fn parse_errors() {
    let (_, t) = b3();
    assert!(t.parse_element("q^(1/2)*X[1,1]").is_ok());
    assert!(t.parse_element("q^(1/3)*X[1,1]").is_err());
    assert!(t.parse_element("X[0,1]").is_err());
    assert!(t.parse_element("X[1,1] +").is_err());
    assert!(t.parse_element("2*X[1,1]^-2 - X[3,1]").is_ok());
}

fn monomial_strategy() -> impl Strategy<Value = TorusMonomial> {
    // B3 with heights (3,2,1): p is odd on nodes 1, 3 and even on node 2
    (
        -3i64..4,
        prop::collection::vec((0usize..3, -4i64..4, -2i64..3), 0..4),
    )
        .prop_map(|(q, vs)| {
            TorusMonomial::from_exps(vs.into_iter().map(|(i, k, e)| {
                (RepVertex::new(i, 2 * k + (3 - i as i64) % 2), e)
            }))
            .with_qpow2(q)
        })
}

proptest! {
    #[test]
    fn associative(a in monomial_strategy(), b in monomial_strategy(), c in monomial_strategy()) {
        let (_, t) = b3();
        let l = t.multiply_monomials(&t.multiply_monomials(&a, &b), &c);
        let r = t.multiply_monomials(&a, &t.multiply_monomials(&b, &c));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn bar_anti_involution(a in monomial_strategy(), b in monomial_strategy()) {
        let (_, t) = b3();
        prop_assert_eq!(t.bar_monomial(&t.bar_monomial(&a)), a.clone());
        let ab = t.multiply_monomials(&a, &b);
        let rhs = t.multiply_monomials(&t.bar_monomial(&b), &t.bar_monomial(&a));
        prop_assert_eq!(t.bar_monomial(&ab), rhs);
        let n = t.bar_normalize(&a);
        prop_assert_eq!(t.bar_monomial(&n), n);
    }

    #[test]
    fn defining_relation(a in monomial_strategy(), b in monomial_strategy()) {
        let (q, t) = b3();
        let ab = t.multiply_monomials(&a, &b);
        let mut ba = t.multiply_monomials(&b, &a);
        ba.qpow2 += 2 * t.n_monomials(&a.exps, &b.exps);
        prop_assert_eq!(ab.clone(), ba);
        let mut sum = wt_q(&q, &a.exps).add(&wt_q(&q, &b.exps));
        sum.basis = Basis::Root;
        prop_assert_eq!(wt_q(&q, &ab.exps), sum);
    }
}
