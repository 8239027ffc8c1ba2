use fdb_operad::algebra::{integer, rational};
use fdb_operad::error::GroupoidError;
use fdb_operad::groupoid::{
    action_groupoid, fiber_cardinality_vector, homotopy_fiber, pullback, split_check, FinGroupoid,
    GroupoidBuilder, GroupoidFunctor,
};
use fdb_operad::perm::Perm;
use fdb_operad::testing::groupoid_suite;

fn classifying(n: usize) -> FinGroupoid {
    let g = Perm::all(n);
    FinGroupoid::from_labelled(
        &[()],
        |_| "*".into(),
        |_| g.clone(),
        |_, _| (),
        |_, p, q| p.then(q),
        |_| Perm::identity(n),
    )
    .unwrap()
}

#[test]
fn cardinality_of_classifying_groupoids() {
    assert_eq!(classifying(3).cardinality(), rational(1, 6));
    assert_eq!(
        classifying(3).coproduct(&classifying(2)).cardinality(),
        rational(2, 3)
    );
    assert_eq!(
        FinGroupoid::discrete(&["a".into(), "b".into()]).cardinality(),
        integer(2)
    );
}

#[test]
fn builder_rejects_missing_inverse() {
    let mut b = GroupoidBuilder::new();
    let x = b.add_object("x");
    let id = b.add_morphism(x, x);
    let f = b.add_morphism(x, x);
    b.set_identity(x, id);
    b.set_compose(id, id, id);
    b.set_compose(id, f, f);
    b.set_compose(f, id, f);
    b.set_compose(f, f, f);
    assert!(matches!(b.build(), Err(GroupoidError::Invalid(_))));
}

#[test]
fn orbit_stabilizer_on_pairs() {
    // S_3 on ordered pairs of distinct points
    let pairs: Vec<(usize, usize)> = (0..3)
        .flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let act = action_groupoid(
        pairs.len(),
        3,
        &[Perm::transposition(3, 0), Perm::transposition(3, 1)],
        |x, p| {
            let inv = p.inverse();
            let (i, j) = pairs[x];
            pairs
                .iter()
                .position(|&q| q == (inv.apply(i), inv.apply(j)))
                .unwrap()
        },
    )
    .unwrap();
    assert_eq!(act.groupoid.components().len(), 1);
    assert_eq!(act.groupoid.aut_order(0).unwrap(), 1);
    assert_eq!(act.groupoid.cardinality(), integer(1));
}

#[test]
fn fibres_of_a_double_cover() {
    // the fibre of BZ/2 → pt is BZ/2 itself
    let e = classifying(2);
    let pt = classifying(1);
    let f = GroupoidFunctor::new(&e, &pt, vec![0], vec![0, 0]).unwrap();
    let (fib, src) = homotopy_fiber(&f, 0).unwrap();
    assert_eq!(src.len(), 1);
    assert_eq!(fib.cardinality(), rational(1, 2));
    let v = fiber_cardinality_vector(&f).unwrap();
    assert_eq!(v[&0], rational(1, 2));

    // pt → BZ/2 has fibre the two-point discrete groupoid
    let g = GroupoidFunctor::name(&pt, &e, 0).unwrap();
    let (fib, _) = homotopy_fiber(&g, 0).unwrap();
    assert_eq!(fib.cardinality(), integer(2));
}

#[test]
fn pullback_splits_as_homotopy_sum() {
    let b = classifying(2);
    let pt = classifying(1);
    let f = GroupoidFunctor::name(&pt, &b, 0).unwrap();
    let (p, _) = pullback(&f, &f).unwrap();
    assert_eq!(p.cardinality(), integer(2));
    assert!(split_check(&f, &f).unwrap());
}

#[test]
fn functor_must_preserve_composition() {
    let e = classifying(2);
    // sends the swap to itself but claims the identity maps to the swap
    assert!(GroupoidFunctor::new(&e, &e, vec![0], vec![1, 1]).is_err());
}

#[test]
fn random_suite_is_seeded() {
    let a = groupoid_suite(1, 40).unwrap();
    let b = groupoid_suite(1, 40).unwrap();
    assert!(a.verdict);
    assert_eq!(a.entries.len(), 120);
    assert_eq!(
        serde_json::to_value(&a).unwrap(),
        serde_json::to_value(&b).unwrap()
    );
}
