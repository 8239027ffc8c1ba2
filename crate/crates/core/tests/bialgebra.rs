use fdb_operad::algebra::{integer, rational, Colour, Monomial};
use fdb_operad::bialgebra::Bialgebra;
use fdb_operad::fdb::{c2_equivalence_check, check_g_parts, fdb_check, g_part, g_part_by_fibre};
use fdb_operad::library::{
    binary_nullary_operad, binary_tree_operad, multivariate, nat_monoid, pointed_example,
};
use fdb_operad::operad::Operad;

fn rows(b: &Bialgebra<'_>, id: &str) -> Vec<(String, String, String)> {
    let c = b.class(id).unwrap().clone();
    b.delta_gen(&c).unwrap().rows()
}

#[test]
fn left_comb_tree() {
    let d = binary_tree_operad(4);
    let b = Bialgebra::new(&d).unwrap();
    let r = rows(&b, "m(m(|,|),|)");
    // the root edge, the leaf edges, and the inner edge with the right leaf
    assert_eq!(r.len(), 3, "{r:?}");
    assert!(r.iter().all(|(_, _, q)| q == "1"));
    assert!(
        r.contains(&("| m(|,|)".into(), "m(|,|)".into(), "1".into())),
        "{r:?}"
    );
}

#[test]
fn nullary_generator_terms() {
    let d = binary_nullary_operad(3);
    let b = Bialgebra::new(&d).unwrap();
    let r = rows(&b, "m(e,|)");
    assert!(
        r.contains(&("e |".into(), "m(|,|)".into(), "1".into())),
        "{r:?}"
    );
    assert!(
        r.contains(&("|".into(), "m(e,|)".into(), "1".into())),
        "{r:?}"
    );
}

#[test]
fn nat_monoid_is_group_like_on_generators() {
    let d = nat_monoid(5);
    let b = Bialgebra::new(&d).unwrap();
    let r = rows(&b, "n3");
    let expect: Vec<(String, String, String)> = (0..=3)
        .map(|i| (format!("n{i}"), format!("n{}", 3 - i), "1".to_string()))
        .collect();
    let mut got = r.clone();
    got.sort();
    let mut expect_sorted = expect;
    expect_sorted.sort();
    assert_eq!(got, expect_sorted);
}

#[test]
fn pointed_module_factorizations() {
    let d = pointed_example();
    let b = Bialgebra::new(&d).unwrap();
    // p itself, id·p, a·p and a·q
    let r = rows(&b, "p");
    assert_eq!(
        r,
        vec![
            ("1".into(), "p".into(), "1".into()),
            ("p".into(), "a".into(), "1".into()),
            ("p".into(), "id".into(), "1".into()),
            ("q".into(), "a".into(), "1".into()),
        ]
    );
    assert_eq!(
        b.delta_gen(b.class("p").unwrap()).unwrap().evidence.len(),
        4
    );
}

#[test]
fn coloured_divisors() {
    let d = multivariate(&["x", "y", "z"], 3).unwrap();
    let b = Bialgebra::new(&d).unwrap();
    let report = check_g_parts(&b, 3).unwrap();
    assert!(report.verdict);
    let w: Vec<Colour> = vec![0, 0, 1];
    let g = g_part(&b, &w);
    assert_eq!(g, g_part_by_fibre(&b, &w).unwrap());
    // A_{xxy,k} has two automorphisms, for each of three outputs
    assert_eq!(g.len(), 3);
    assert!(g.terms().all(|(_, q)| *q == rational(1, 2)));
}

#[test]
fn three_colours_at_cap_4() {
    let d = multivariate(&["x", "y", "z"], 4).unwrap();
    let b = Bialgebra::new(&d).unwrap();
    assert!(fdb_check(&b).unwrap().verdict);
    let d = multivariate(&["x", "y"], 3).unwrap();
    assert!(
        c2_equivalence_check(&Bialgebra::new(&d).unwrap())
            .unwrap()
            .verdict
    );
}

#[test]
fn word_delta_counts_products() {
    let d = multivariate(&["x", "y"], 4).unwrap();
    let b = Bialgebra::new(&d).unwrap();
    let xy = b.class("A_{xy,x}").unwrap();
    let m = Monomial::from_factors(b.mode(), vec![b.symbol(xy), b.symbol(xy)]).unwrap();
    let delta = b.delta_word(&m).unwrap();
    assert_eq!(delta, b.delta_word_direct(&m).unwrap());
    let single = b.delta_gen(xy).unwrap().value.len();
    assert!(delta.len() <= single * single);
    assert_eq!(b.counit(&m), integer(0));
    assert_eq!(d.cap(), 4);
}
