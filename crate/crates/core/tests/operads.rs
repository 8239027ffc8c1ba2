use fdb_operad::algebra::{AmbientMode, Colour};
use fdb_operad::error::OperadError;
use fdb_operad::factorization::local_finiteness_report;
use fdb_operad::library::{
    binary_nullary_operad, binary_tree_operad, builtin, comm_plus, free_operad, multivariate,
    nat_monoid, PTreeGenerator, BUILTINS,
};
use fdb_operad::operad::{
    check_profile, enumerate_classes, validate_operad, Classifier, Operad, Operation,
};
use fdb_operad::perm::Perm;

/// Unital commutative operad: one operation per arity including 0.
struct CommUnital(usize);

impl Operad for CommUnital {
    fn name(&self) -> String {
        "comm".into()
    }
    fn mode(&self) -> AmbientMode {
        AmbientMode::Symmetric
    }
    fn colours(&self) -> Vec<Colour> {
        vec![0]
    }
    fn cap(&self) -> usize {
        self.0
    }
    fn operations(&self, arity: usize) -> Vec<Operation> {
        if arity <= self.0 {
            vec![Operation::plain(vec![0; arity], 0)]
        } else {
            Vec::new()
        }
    }
    fn act(&self, op: &Operation, _p: &Perm) -> Operation {
        op.clone()
    }
    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Result<Operation, OperadError> {
        check_profile(outer, inner)?;
        let n = inner.iter().map(|a| a.arity()).sum();
        if n > self.0 {
            return Err(OperadError::WindowExceeded(format!("arity {n}")));
        }
        Ok(Operation::plain(vec![0; n], 0))
    }
    fn unit(&self, _c: Colour) -> Operation {
        Operation::plain(vec![0], 0)
    }
    fn label(&self, rep: &Operation) -> String {
        format!("C_{}", rep.arity())
    }
}

#[test]
fn every_builtin_validates_at_cap_4() {
    for name in BUILTINS {
        let d = builtin(name, 4, &[]).unwrap();
        let r = validate_operad(d.as_ref());
        assert!(r.is_clean(), "{name}: {:?}", r.violations);
        assert!(r.checked.values().sum::<u64>() > 0, "{name}");
    }
}

#[test]
fn unknown_builtin_is_an_error() {
    assert!(matches!(
        builtin("lie", 3, &[]),
        Err(OperadError::UnknownBuiltin(_))
    ));
}

#[test]
fn aut_orders_and_orbits() {
    let d = comm_plus(5);
    let cl = Classifier::new(&d);
    for c in enumerate_classes(&cl) {
        assert_eq!(c.aut_order, (1..=c.arity as u64).product::<u64>());
        assert_eq!(c.orbit_size, 1);
    }
    let m = multivariate(&["x", "y"], 3).unwrap();
    let cl = Classifier::new(&m);
    let xxy = cl.classify(&Operation::plain(vec![0, 1, 0], 1));
    assert_eq!(xxy.class_id, "A_{xxy,y}");
    assert_eq!((xxy.aut_order, xxy.orbit_size), (2, 3));
}

/// Planar trees with binary nodes `m` and nullary nodes `e`, counted by
/// (leaves, nodes) without reference to the operad code.
fn tree_counts(max_nodes: usize, nullary: bool) -> Vec<Vec<u64>> {
    let n = max_nodes;
    // t[l][k]: trees with l leaves and k nodes
    let mut t = vec![vec![0u64; n + 1]; n + 2];
    t[1][0] = 1;
    if nullary {
        t[0][1] = 1;
    }
    for k in 1..=n {
        for l in 0..=n + 1 {
            let mut s = if nullary && l == 0 && k == 1 { 1 } else { 0 };
            for k1 in 0..k {
                let k2 = k - 1 - k1;
                for l1 in 0..=l {
                    s += t[l1][k1] * t[l - l1][k2];
                }
            }
            t[l][k] = s;
        }
    }
    t
}

#[test]
fn free_class_counts_match_tree_enumeration() {
    for (d, nullary) in [
        (binary_tree_operad(5), false),
        (binary_nullary_operad(4), true),
    ] {
        let counts = tree_counts(d.weight_cap().unwrap(), nullary);
        for arity in 0..=d.cap() {
            let expect: u64 = (0..=d.weight_cap().unwrap())
                .map(|k| counts[arity][k])
                .sum();
            let got = d.representatives(arity).len() as u64;
            assert_eq!(got, expect, "arity {arity}, nullary {nullary}");
        }
    }
}

#[test]
fn free_operad_on_two_colours() {
    let gens = vec![
        PTreeGenerator::new("f", vec![0, 1], 0),
        PTreeGenerator::new("g", vec![0], 1),
    ];
    let d = free_operad(gens, 3, None).unwrap();
    assert!(validate_operad(&d).is_clean());
    let cl = Classifier::new(&d);
    assert!(enumerate_classes(&cl)
        .iter()
        .any(|c| c.class_id == "f(|,g(|))"));
}

#[test]
fn local_finiteness_warnings() {
    let d = comm_plus(4);
    let r = local_finiteness_report(&Classifier::new(&d)).unwrap();
    assert!(r.warnings.is_empty());
    assert!(r.entries.iter().all(|e| e.components > 0));

    let d = binary_nullary_operad(4);
    let r = local_finiteness_report(&Classifier::new(&d)).unwrap();
    assert!(r.warnings.is_empty());

    let d = CommUnital(3);
    let r = local_finiteness_report(&Classifier::new(&d)).unwrap();
    assert!(!r.warnings.is_empty());
    assert!(r.warnings[0].contains("C_0"), "{:?}", r.warnings);
}

#[test]
fn nat_monoid_rejects_weightless_elements() {
    use fdb_operad::library::{monoid_operad, MonoidTable};
    let table = MonoidTable {
        names: vec!["0".into(), "z".into()],
        unit: 0,
        product: vec![vec![Some(0), Some(1)], vec![Some(1), Some(1)]],
        weights: vec![0, 0],
    };
    assert!(matches!(
        monoid_operad(table, 3),
        Err(OperadError::NotFiniteDecomposition(_))
    ));
    assert_eq!(nat_monoid(3).operations(1).len(), 4);
}
