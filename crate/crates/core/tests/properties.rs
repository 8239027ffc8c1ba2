use proptest::prelude::*;

use fdb_operad::algebra::{rational, Monomial, Rational, Series};
use fdb_operad::bialgebra::Bialgebra;
use fdb_operad::library::{binary_tree_operad, comm_plus, multivariate};
use fdb_operad::operad::{Classifier, Operad};
use fdb_operad::perm::Perm;

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

/// A word of generator indices, truncated to the window.
fn word(b: &Bialgebra<'_>, picks: &[usize]) -> Monomial {
    let classes = b.classes();
    let mut syms = Vec::new();
    let mut arity = 0;
    for &i in picks {
        let c = &classes[i % classes.len()];
        if arity + c.arity > b.operad().cap() {
            continue;
        }
        arity += c.arity;
        syms.push(b.symbol(c));
    }
    Monomial::from_factors(b.mode(), syms).unwrap()
}

fn series(b: &Bialgebra<'_>, terms: &[(Vec<usize>, i64, i64)]) -> Series {
    let mut s = Series::zero(b.mode(), b.window());
    for (picks, n, d) in terms {
        s.add_term(word(b, picks), rational(*n, *d));
    }
    s
}

fn terms() -> impl Strategy<Value = Vec<(Vec<usize>, i64, i64)>> {
    prop::collection::vec(
        (prop::collection::vec(0usize..40, 0..4), -5i64..6, 1i64..5),
        0..4,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn perm_laws(p in perm(5), q in perm(5), r in perm(5)) {
        prop_assert_eq!(p.then(&q).then(&r), p.then(&q.then(&r)));
        prop_assert!(p.then(&p.inverse()).is_identity());
    }

    #[test]
    fn right_action_law(i in 0usize..14, p in perm(4), q in perm(4)) {
        let d = binary_tree_operad(4);
        let ops = d.operations(4);
        let op = &ops[i % ops.len()];
        prop_assert_eq!(d.act(&d.act(op, &p), &q), d.act(op, &p.then(&q)));
        let cl = Classifier::new(&d);
        prop_assert_eq!(&cl.classify(&d.act(op, &p)).class_id, &cl.classify(op).class_id);
    }

    #[test]
    fn series_product_is_associative(a in terms(), b in terms(), c in terms()) {
        let d = comm_plus(5);
        let bi = Bialgebra::new(&d).unwrap();
        let (a, b, c) = (series(&bi, &a), series(&bi, &b), series(&bi, &c));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn delta_is_multiplicative(picks in prop::collection::vec(0usize..40, 0..4)) {
        let d = multivariate(&["x", "y"], 4).unwrap();
        let b = Bialgebra::new(&d).unwrap();
        let m = word(&b, &picks);
        prop_assert_eq!(b.delta_word(&m).unwrap(), b.delta_word_direct(&m).unwrap());
    }

    #[test]
    fn delta_is_an_algebra_map(s in terms(), t in terms()) {
        let d = comm_plus(5);
        let b = Bialgebra::new(&d).unwrap();
        let (s, t) = (series(&b, &s), series(&b, &t));
        let lhs = b.delta(&s.mul(&t).unwrap()).unwrap();
        let rhs = b.delta(&s).unwrap().mul(&b.delta(&t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn counit_recovers_the_series(s in terms()) {
        let d = multivariate(&["x", "y"], 3).unwrap();
        let b = Bialgebra::new(&d).unwrap();
        let s = series(&b, &s);
        let delta = b.delta(&s).unwrap();
        let mut back = Series::zero(b.mode(), b.window());
        for ((x, y), q) in delta.terms() {
            back.add_term(x.clone(), b.counit(y) * q);
        }
        prop_assert_eq!(back, s.clone());
        let total: Rational = s.terms().map(|(m, q)| b.counit(m) * q).sum();
        prop_assert_eq!(b.counit_series(&s).unwrap(), total);
    }
}
