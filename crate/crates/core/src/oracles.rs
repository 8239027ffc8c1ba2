//! Brute-force oracles: set partitions and admissible cuts.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{fraction, integer, Monomial, Rational, Tensor2};
use crate::bialgebra::{Bialgebra, CheckReport};
use crate::error::{CheckError, OperadError};
use crate::library::{comm_plus, FreeOperad};
use crate::tree::Tree;

pub const BELL_ORACLE_MAX: usize = 10;

/// Set partitions of `{1..n}` counted by block type (sorted block sizes).
pub fn bell_oracle(n: usize) -> Result<BTreeMap<Vec<usize>, u64>, CheckError> {
    if n > BELL_ORACLE_MAX {
        return Err(CheckError::OracleScaleExceeded(format!(
            "set partitions of {n} points (limit {BELL_ORACLE_MAX})"
        )));
    }
    let mut out = BTreeMap::new();
    if n == 0 {
        out.insert(Vec::new(), 1);
        return Ok(out);
    }
    // restricted growth strings
    let mut rgs = vec![0usize; n];
    loop {
        let blocks = rgs.iter().max().unwrap() + 1;
        let mut sizes = vec![0usize; blocks];
        for &b in &rgs {
            sizes[b] += 1;
        }
        sizes.sort();
        *out.entry(sizes).or_insert(0) += 1;
        let mut i = n - 1;
        loop {
            if i == 0 {
                return Ok(out);
            }
            let bound = rgs[..i].iter().max().unwrap() + 1;
            if rgs[i] < bound {
                rgs[i] += 1;
                rgs[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
            i -= 1;
        }
    }
}

/// `S(n, k)` summed from the oracle.
pub fn stirling2(n: usize, k: usize) -> Result<u64, CheckError> {
    Ok(bell_oracle(n)?
        .iter()
        .filter(|(t, _)| t.len() == k)
        .map(|(_, c)| c)
        .sum())
}

pub fn bell_number(n: usize) -> Result<u64, CheckError> {
    Ok(bell_oracle(n)?.values().sum())
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalEntry {
    pub n: usize,
    pub inner: String,
    pub outer: String,
    pub coefficient: String,
    pub partitions: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalReport {
    pub verdict: bool,
    pub cap: usize,
    /// `(n, Σ coefficients of Δ(A_n), B_n)`.
    pub bell: Vec<(usize, String, u64)>,
    pub entries: Vec<ClassicalEntry>,
}

/// `Δ(A_n)` in the commutative operad against partition counts: the
/// coefficient of `Π A_{λ_i} ⊗ A_k` is the number of partitions into `k`
/// blocks of sizes `λ`.
pub fn classical_crosscheck(cap: usize) -> Result<ClassicalReport, CheckError> {
    let d = comm_plus(cap);
    let b = Bialgebra::new(&d)?;
    let mut entries = Vec::new();
    let mut bell = Vec::new();
    let mut verdict = true;
    for c in b.classes() {
        let n = c.arity;
        let oracle = bell_oracle(n)?;
        let delta = b.delta_gen(c)?;
        let mut seen = 0usize;
        let mut total = Rational::from_integer(0.into());
        for ((x, y), q) in delta.value.terms() {
            let mut sizes: Vec<usize> = x.factors().iter().map(|g| g.arity()).collect();
            sizes.sort();
            let expect = if y.len() == 1 && y.total_arity() == sizes.len() {
                oracle.get(&sizes).copied().unwrap_or(0)
            } else {
                0
            };
            let ok = *q == integer(expect);
            verdict &= ok;
            seen += 1;
            total += q;
            entries.push(ClassicalEntry {
                n,
                inner: x.to_string(),
                outer: y.to_string(),
                coefficient: fraction(q),
                partitions: expect,
                matches: ok,
            });
        }
        verdict &= seen == oracle.len();
        let bn = oracle.values().sum();
        verdict &= total == integer(bn);
        bell.push((n, fraction(&total), bn));
    }
    Ok(ClassicalReport {
        verdict,
        cap,
        bell,
        entries,
    })
}

/// Admissible cuts of a tree: every leaf-to-root path crosses exactly one
/// cut edge. Returns `(crowns, trunk)` per cut, crowns in planar order.
pub fn admissible_cuts(t: &Arc<Tree>) -> Vec<(Vec<Arc<Tree>>, Arc<Tree>)> {
    let mut out = Vec::new();
    if let Tree::Node { gen, children } = &**t {
        let mut partial: Vec<(Vec<Arc<Tree>>, Vec<Arc<Tree>>)> = vec![(Vec::new(), Vec::new())];
        for child in children {
            let cuts = admissible_cuts(child);
            let mut next = Vec::new();
            for (crowns, trunks) in &partial {
                for (c, tr) in &cuts {
                    let mut crowns = crowns.clone();
                    crowns.extend(c.iter().cloned());
                    let mut trunks = trunks.clone();
                    trunks.push(tr.clone());
                    next.push((crowns, trunks));
                }
            }
            partial = next;
        }
        for (crowns, trunks) in partial {
            out.push((crowns, Tree::node(*gen, trunks)));
        }
    }
    // cutting the edge above t
    let colour = match &**t {
        Tree::Leaf(c) => *c,
        Tree::Node { .. } => t.leaf_colours().first().copied().unwrap_or(0),
    };
    out.push((vec![t.clone()], Tree::leaf(colour)));
    out
}

/// `Σ_cuts δ_crowns ⊗ δ_trunk`, assembled without the factorization code.
pub fn cut_oracle(
    b: &Bialgebra<'_>,
    free: &FreeOperad,
    t: &Arc<Tree>,
) -> Result<Tensor2, OperadError> {
    let cl = b.classifier();
    let mut out = Tensor2::zero(b.mode(), b.window());
    for (crowns, trunk) in admissible_cuts(t) {
        let inner: Vec<_> = crowns
            .iter()
            .map(|c| cl.symbol(&free.tree_operation(c)))
            .collect();
        let x = Monomial::from_factors(b.mode(), inner)?;
        let y = Monomial::generator(b.mode(), cl.symbol(&free.tree_operation(&trunk)));
        out.add_term(x, y, Rational::from_integer(1.into()));
    }
    Ok(out)
}

/// Compares `Δ` with the cut oracle on every tree of the window.
pub fn cut_crosscheck(free: &FreeOperad) -> Result<CheckReport, OperadError> {
    let b = Bialgebra::new(free)?;
    let mut report = CheckReport::new("admissible_cuts");
    let mut trees: Vec<&Arc<Tree>> = free.trees().collect();
    trees.sort_by_key(|t| (t.node_count(), free.render(t)));
    for t in trees {
        let op = free.tree_operation(t);
        if !crate::operad::in_window(free, &op) {
            continue;
        }
        let class = b.classifier().classify(&op);
        let delta = b.delta_gen(&class)?;
        let oracle = cut_oracle(&b, free, t)?;
        report.record(
            &free.render(t),
            delta.value == oracle,
            format!("{} terms", oracle.len()),
        );
    }
    Ok(report)
}
