//! One line per acceptance criterion; exits non-zero if any fails.

use fdb_operad::algebra::{integer, Monomial, Rational, Series, Tensor2};
use fdb_operad::bialgebra::Bialgebra;
use fdb_operad::fdb::{c2_equivalence_check, delta_of_green, fdb_check, green, right_window};
use fdb_operad::library::{
    binary_nullary_operad, binary_tree_operad, builtin, comm_plus, multivariate, nat_monoid,
    nonsym_semimonoid, pointed_example, BUILTINS,
};
use fdb_operad::operad::Operad;
use fdb_operad::oracles::{classical_crosscheck, cut_crosscheck};
use fdb_operad::testing::groupoid_suite;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn class_named<'b>(
    b: &'b Bialgebra<'_>,
    id: &str,
) -> Result<&'b std::sync::Arc<fdb_operad::operad::IsoClass>, String> {
    b.class(id).ok_or_else(|| format!("no class {id}"))
}

fn coefficient(
    b: &Bialgebra<'_>,
    of: &str,
    inner: &[&str],
    outer: &str,
) -> Result<Rational, String> {
    let c = class_named(b, of)?;
    let delta = b.delta_gen(c).map_err(|e| e.to_string())?;
    let x = word(b, inner)?;
    let y = word(b, &[outer])?;
    Ok(delta.value.coefficient(&x, &y))
}

fn word(b: &Bialgebra<'_>, ids: &[&str]) -> Result<Monomial, String> {
    let mut syms = Vec::new();
    for id in ids {
        syms.push(b.symbol(class_named(b, id)?));
    }
    Monomial::from_factors(b.mode(), syms).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let r = classical_crosscheck(7).map_err(|e| e.to_string())?;
    ensure(r.verdict, "Δ(A_n) differs from partition counts")?;
    let d = comm_plus(7);
    let b = Bialgebra::new(&d).map_err(|e| e.to_string())?;
    let c3 = coefficient(&b, "A_3", &["A_1", "A_2"], "A_2")?;
    let c4 = coefficient(&b, "A_4", &["A_1", "A_1", "A_2"], "A_3")?;
    ensure(
        c3 == integer(3) && c4 == integer(6),
        format!("spot values {c3}, {c4}"),
    )?;
    let bells: Vec<String> = r.bell.iter().map(|(_, s, _)| s.clone()).collect();
    Ok(format!(
        "{} coefficients, row sums {}",
        r.entries.len(),
        bells.join(",")
    ))
}

fn criterion_2() -> Outcome {
    let operads: Vec<Box<dyn Operad>> = vec![
        Box::new(comm_plus(6)),
        Box::new(multivariate(&["x", "y"], 6).unwrap()),
        Box::new(binary_tree_operad(6)),
        Box::new(binary_nullary_operad(6)),
        Box::new(nonsym_semimonoid(6)),
    ];
    let mut parts = Vec::new();
    for d in &operads {
        let b = Bialgebra::new(d.as_ref()).map_err(|e| e.to_string())?;
        let r = fdb_check(&b).map_err(|e| e.to_string())?;
        ensure(r.verdict, format!("{} mismatches", d.name()))?;
        parts.push(format!("{} {}", d.name(), r.entries.len()));
    }
    Ok(parts.join("; "))
}

fn criterion_3() -> Outcome {
    let d = comm_plus(6);
    let b = Bialgebra::new(&d).map_err(|e| e.to_string())?;
    let window = b.window();
    let a = green(&b).series;
    let mut rhs = Tensor2::zero(b.mode(), window);
    let mut power = Series::unit(b.mode(), window);
    let mut shown = Vec::new();
    for k in 1..=6u64 {
        power = power.mul(&a).map_err(|e| e.to_string())?;
        let ak = class_named(&b, &format!("A_{k}"))?;
        let mut right = Series::zero(b.mode(), right_window(&d));
        let q = Rational::from_integer(1.into()) / integer((1..=k).product());
        right.add_term(b.generator(ak), q.clone());
        rhs = rhs
            .add(&Tensor2::tensor(&power, &right, window).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        shown.push(format!("A^{k}⊗A_{k}/{k}!"));
    }
    let lhs = delta_of_green(&b).map_err(|e| e.to_string())?;
    ensure(lhs == rhs, "Δ(A) differs from Σ A^k ⊗ A_k/k!")?;
    Ok(format!(
        "Δ(A) = {} ({} terms)",
        shown.join(" + "),
        lhs.len()
    ))
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let d = nonsym_semimonoid(6);
    let b = Bialgebra::new(&d).map_err(|e| e.to_string())?;
    let mut total = 0;
    for n in 1..=6 {
        let c = class_named(&b, &format!("A_{n}"))?;
        let delta = b.delta_gen(c).map_err(|e| e.to_string())?;
        let mut expect = Tensor2::zero(b.mode(), b.window());
        for comp in compositions(n) {
            let ids: Vec<String> = comp.iter().map(|k| format!("A_{k}")).collect();
            let refs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
            expect.add_term(
                word(&b, &refs)?,
                word(&b, &[&format!("A_{}", comp.len())])?,
                integer(1),
            );
        }
        ensure(
            delta.value == expect,
            format!("Δ(A_{n}) differs from compositions"),
        )?;
        total += expect.len();
    }
    Ok(format!(
        "{total} compositions of n ≤ 6, each with coefficient 1"
    ))
}

fn criterion_5() -> Outcome {
    let mut parts = Vec::new();
    for names in [vec!["x", "y"], vec!["x", "y", "z"]] {
        let d = multivariate(&names, 4).map_err(|e| e.to_string())?;
        let b = Bialgebra::new(&d).map_err(|e| e.to_string())?;
        for i in &names {
            let c = class_named(&b, &format!("A_{{{i},{i}}}"))?;
            let delta = b.delta_gen(c).map_err(|e| e.to_string())?;
            let mut expect = Tensor2::zero(b.mode(), b.window());
            for j in &names {
                expect.add_term(
                    word(&b, &[&format!("A_{{{i},{j}}}")])?,
                    word(&b, &[&format!("A_{{{j},{i}}}")])?,
                    integer(1),
                );
            }
            ensure(
                delta.value == expect,
                format!("Δ(A_{{{i},{i}}}) = {}", delta.value),
            )?;
        }
        parts.push(format!("|I| = {}", names.len()));
    }
    Ok(parts.join(", "))
}

fn criterion_6() -> Outcome {
    let d = binary_tree_operad(6);
    let r = cut_crosscheck(&d).map_err(|e| e.to_string())?;
    ensure(r.verdict, format!("{} trees differ", r.failures().count()))?;
    ensure(r.entries.len() >= 20, "too few trees")?;
    Ok(format!(
        "{} tree classes with at most 5 nodes",
        r.entries.len()
    ))
}

fn criterion_7() -> Outcome {
    let d = nat_monoid(6);
    let b = Bialgebra::new(&d).map_err(|e| e.to_string())?;
    let g = green(&b).series;
    let mut right = Series::zero(b.mode(), right_window(&d));
    for (m, q) in g.terms() {
        right.add_term(m.clone(), q.clone());
    }
    let gg = Tensor2::tensor(&g, &right, b.window()).map_err(|e| e.to_string())?;
    ensure(
        delta_of_green(&b).map_err(|e| e.to_string())? == gg,
        "Δ(G) ≠ G⊗G for (ℕ,+)",
    )?;

    let p = pointed_example();
    let bp = Bialgebra::new(&p).map_err(|e| e.to_string())?;
    let gp = green(&bp).series;
    let (mut e, mut m) = (
        Series::zero(bp.mode(), right_window(&p)),
        Series::zero(bp.mode(), right_window(&p)),
    );
    for (w, q) in gp.terms() {
        if w.total_arity() == 0 {
            e.add_term(w.clone(), q.clone())
        } else {
            m.add_term(w.clone(), q.clone())
        }
    }
    let one = Series::unit(bp.mode(), bp.window());
    let expect = Tensor2::tensor(&one, &e, bp.window())
        .and_then(|t| t.add(&Tensor2::tensor(&gp, &m, bp.window())?))
        .map_err(|e| e.to_string())?;
    let got = delta_of_green(&bp).map_err(|e| e.to_string())?;
    ensure(got == expect, format!("pointed Δ(G) = {got}"))?;
    Ok(format!(
        "G⊗G with {} terms; 1⊗E + G⊗M with {} terms",
        gg.len(),
        got.len()
    ))
}

fn criterion_8() -> Outcome {
    let mut parts = Vec::new();
    for d in [&comm_plus(4) as &dyn Operad, &binary_tree_operad(4)] {
        let b = Bialgebra::new(d).map_err(|e| e.to_string())?;
        let r = c2_equivalence_check(&b).map_err(|e| e.to_string())?;
        ensure(
            r.verdict,
            format!("{} cardinality vectors differ", d.name()),
        )?;
        parts.push(format!(
            "{} ({} objects, {} classes)",
            d.name(),
            r.objects,
            r.entries.len()
        ));
    }
    Ok(parts.join("; "))
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    for name in BUILTINS {
        let d = builtin(name, 5, &[]).map_err(|e| e.to_string())?;
        let b = Bialgebra::new(d.as_ref()).map_err(|e| e.to_string())?;
        for r in [
            b.check_coassoc(),
            b.check_counit_laws(),
            b.segal_check(),
            b.check_multiplicativity(),
        ] {
            let r = r.map_err(|e| e.to_string())?;
            ensure(r.verdict, format!("{name} {} fails", r.check))?;
            checked += r.entries.len();
        }
    }
    let suite = groupoid_suite(20240601, 200).map_err(|e| e.to_string())?;
    ensure(
        suite.verdict,
        format!("{} random groupoid checks fail", suite.failures().count()),
    )?;
    Ok(format!(
        "{checked} structural entries over {} built-ins; {} random groupoid checks",
        BUILTINS.len(),
        suite.entries.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        (
            "classical Faa di Bruno against set partitions, cap 7",
            criterion_1,
        ),
        ("fdb_check at cap 6", criterion_2),
        ("Δ(A) = Σ A^k ⊗ A_k/k! for comm_plus", criterion_3),
        ("noncommutative compositions, n ≤ 6", criterion_4),
        ("multivariate Δ(A_{i,i})", criterion_5),
        ("free binary operad against admissible cuts", criterion_6),
        ("degenerate ambients", criterion_7),
        ("C₂ equivalence at cap 4", criterion_8),
        (
            "structural suites at cap 5 and random groupoids",
            criterion_9,
        ),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
