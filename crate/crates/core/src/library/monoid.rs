//! Degenerate ambients: a monoid as a one-object category of unary
//! operations, and a monoid with a left module as unary and nullary
//! operations.

use crate::algebra::{AmbientMode, Colour};
use crate::error::OperadError;
use crate::operad::{check_profile, Operad, Operation, Payload};
use crate::perm::Perm;

/// A finite monoid table. `product[a][b]` is `a·b`; `None` marks products
/// falling outside the window.
#[derive(Clone, Debug)]
pub struct MonoidTable {
    pub names: Vec<String>,
    pub unit: usize,
    pub product: Vec<Vec<Option<usize>>>,
    pub weights: Vec<usize>,
}

impl MonoidTable {
    fn check_shape(&self) -> Result<(), OperadError> {
        let n = self.names.len();
        if self.unit >= n || self.product.len() != n || self.weights.len() != n {
            return Err(OperadError::Invalid(
                "monoid table has the wrong shape".into(),
            ));
        }
        for row in &self.product {
            if row.len() != n || row.iter().flatten().any(|&x| x >= n) {
                return Err(OperadError::Invalid(
                    "monoid table has the wrong shape".into(),
                ));
            }
        }
        for a in 0..n {
            if self.product[self.unit][a] != Some(a) || self.product[a][self.unit] != Some(a) {
                return Err(OperadError::Invalid(format!(
                    "{} breaks the unit law",
                    self.names[a]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = self.product[a][b].and_then(|ab| self.product[ab][c]);
                    let right = self.product[b][c].and_then(|bc| self.product[a][bc]);
                    if left != right {
                        return Err(OperadError::Invalid(format!(
                            "associativity fails on ({}, {}, {})",
                            self.names[a], self.names[b], self.names[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Identity-mode operad of a monoid truncated by weight.
#[derive(Clone, Debug)]
pub struct MonoidOperad {
    table: MonoidTable,
    weight_cap: usize,
}

/// Weights certify the finite-decomposition property: they must be
/// additive, positive off the identity, and a product must be missing
/// exactly when its weight leaves the window.
pub fn monoid_operad(table: MonoidTable, weight_cap: usize) -> Result<MonoidOperad, OperadError> {
    table.check_shape()?;
    let n = table.names.len();
    let name = |i: usize| table.names[i].clone();
    for a in 0..n {
        if a != table.unit && table.weights[a] == 0 {
            return Err(OperadError::NotFiniteDecomposition(format!(
                "{} has weight 0, so it factors through itself indefinitely",
                name(a)
            )));
        }
        if table.weights[a] > weight_cap {
            return Err(OperadError::WindowExceeded(name(a)));
        }
        for b in 0..n {
            let w = table.weights[a] + table.weights[b];
            match table.product[a][b] {
                Some(ab) if table.weights[ab] != w => {
                    return Err(OperadError::NotFiniteDecomposition(format!(
                        "weight of {}·{} is not additive",
                        name(a),
                        name(b)
                    )))
                }
                Some(_) if w > weight_cap => {
                    return Err(OperadError::Invalid(format!(
                        "{}·{} escapes the window",
                        name(a),
                        name(b)
                    )))
                }
                None if w <= weight_cap => {
                    return Err(OperadError::NotFiniteDecomposition(format!(
                        "product {}·{} missing inside the window",
                        name(a),
                        name(b)
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(MonoidOperad { table, weight_cap })
}

/// `(ℕ, +)` truncated at `cap`; the element `n` has weight `n`.
pub fn nat_monoid(cap: usize) -> MonoidOperad {
    let n = cap + 1;
    let table = MonoidTable {
        names: (0..n).map(|i| format!("n{i}")).collect(),
        unit: 0,
        product: (0..n)
            .map(|a| (0..n).map(|b| (a + b < n).then_some(a + b)).collect())
            .collect(),
        weights: (0..n).collect(),
    };
    monoid_operad(table, cap).expect("truncated naturals are a valid window")
}

fn element(e: usize, arity: usize) -> Operation {
    Operation::new(vec![0; arity], 0, Payload::Token(e as u32))
}

fn token(op: &Operation) -> usize {
    match op.payload {
        Payload::Token(t) => t as usize,
        _ => usize::MAX,
    }
}

impl Operad for MonoidOperad {
    fn name(&self) -> String {
        "monoid".into()
    }
    fn mode(&self) -> AmbientMode {
        AmbientMode::Identity
    }
    fn colours(&self) -> Vec<Colour> {
        vec![0]
    }
    fn cap(&self) -> usize {
        1
    }
    fn weight_cap(&self) -> Option<usize> {
        Some(self.weight_cap)
    }
    fn operations(&self, arity: usize) -> Vec<Operation> {
        if arity != 1 {
            return Vec::new();
        }
        (0..self.table.names.len()).map(|e| element(e, 1)).collect()
    }
    fn act(&self, op: &Operation, _p: &Perm) -> Operation {
        op.clone()
    }
    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Result<Operation, OperadError> {
        check_profile(outer, inner)?;
        let (b, a) = (token(outer), token(&inner[0]));
        match self
            .table
            .product
            .get(b)
            .and_then(|row| row.get(a))
            .copied()
            .flatten()
        {
            Some(ba) => Ok(element(ba, 1)),
            None => Err(OperadError::WindowExceeded(format!(
                "{}·{}",
                self.table.names.get(b).map_or("?", |s| s),
                self.table.names.get(a).map_or("?", |s| s)
            ))),
        }
    }
    fn unit(&self, _c: Colour) -> Operation {
        element(self.table.unit, 1)
    }
    fn weight(&self, op: &Operation) -> usize {
        self.table.weights[token(op)]
    }
    fn label(&self, rep: &Operation) -> String {
        self.table.names[token(rep)].clone()
    }
    fn validate_on_representatives(&self) -> bool {
        true
    }
}

/// Pointed-mode operad: unary operations `M`, nullary operations `E`,
/// `compose(m; [x]) = m·x` for `x` in `M` or in `E`.
#[derive(Clone, Debug)]
pub struct PointedModule {
    monoid: MonoidTable,
    module: Vec<String>,
    action: Vec<Vec<usize>>,
}

pub fn pointed_module(
    monoid: MonoidTable,
    module: Vec<String>,
    action: Vec<Vec<usize>>,
) -> Result<PointedModule, OperadError> {
    monoid.check_shape()?;
    let (n, k) = (monoid.names.len(), module.len());
    if monoid.product.iter().flatten().any(|x| x.is_none()) {
        return Err(OperadError::Invalid(
            "the monoid of a pointed module must be total".into(),
        ));
    }
    if action.len() != n
        || action
            .iter()
            .any(|row| row.len() != k || row.iter().any(|&e| e >= k))
    {
        return Err(OperadError::Invalid(
            "module action has the wrong shape".into(),
        ));
    }
    for e in 0..k {
        if action[monoid.unit][e] != e {
            return Err(OperadError::Invalid(format!(
                "identity moves {}",
                module[e]
            )));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = monoid.product[a][b].expect("total");
                if action[ab][e] != action[a][action[b][e]] {
                    return Err(OperadError::Invalid(format!(
                        "({}{})·{} ≠ {}·({}·{})",
                        monoid.names[a],
                        monoid.names[b],
                        module[e],
                        monoid.names[a],
                        monoid.names[b],
                        module[e]
                    )));
                }
            }
        }
    }
    Ok(PointedModule {
        monoid,
        module,
        action,
    })
}

/// The monoid `{id, a, b}` with `xy = x` for `x, y ∈ {a, b}`, acting on
/// `{p, q}` by `a·e = p`, `b·e = q`.
pub fn pointed_example() -> PointedModule {
    let names = ["id", "a", "b"].map(String::from).to_vec();
    let product = vec![
        vec![Some(0), Some(1), Some(2)],
        vec![Some(1), Some(1), Some(1)],
        vec![Some(2), Some(2), Some(2)],
    ];
    let monoid = MonoidTable {
        names,
        unit: 0,
        product,
        weights: vec![0; 3],
    };
    let module = vec!["p".to_string(), "q".to_string()];
    let action = vec![vec![0, 1], vec![0, 0], vec![1, 1]];
    pointed_module(monoid, module, action).expect("valid module")
}

impl PointedModule {
    pub fn monoid_elements(&self) -> Vec<Operation> {
        (0..self.monoid.names.len())
            .map(|m| element(m, 1))
            .collect()
    }
    pub fn module_elements(&self) -> Vec<Operation> {
        (0..self.module.len()).map(|e| element(e, 0)).collect()
    }
}

impl Operad for PointedModule {
    fn name(&self) -> String {
        "pointed_module".into()
    }
    fn mode(&self) -> AmbientMode {
        AmbientMode::Pointed
    }
    fn colours(&self) -> Vec<Colour> {
        vec![0]
    }
    fn cap(&self) -> usize {
        1
    }
    fn operations(&self, arity: usize) -> Vec<Operation> {
        match arity {
            0 => self.module_elements(),
            1 => self.monoid_elements(),
            _ => Vec::new(),
        }
    }
    fn act(&self, op: &Operation, _p: &Perm) -> Operation {
        op.clone()
    }
    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Result<Operation, OperadError> {
        check_profile(outer, inner)?;
        if outer.arity() == 0 {
            return Ok(outer.clone());
        }
        let (m, x) = (token(outer), token(&inner[0]));
        let bad = || OperadError::UnknownOperation(format!("{outer:?}"));
        match inner[0].arity() {
            0 => Ok(element(
                *self.action.get(m).and_then(|r| r.get(x)).ok_or_else(bad)?,
                0,
            )),
            _ => Ok(element(
                self.monoid
                    .product
                    .get(m)
                    .and_then(|r| r.get(x))
                    .copied()
                    .flatten()
                    .ok_or_else(bad)?,
                1,
            )),
        }
    }
    fn unit(&self, _c: Colour) -> Operation {
        element(self.monoid.unit, 1)
    }
    fn label(&self, rep: &Operation) -> String {
        match rep.arity() {
            0 => self.module[token(rep)].clone(),
            _ => self.monoid.names[token(rep)].clone(),
        }
    }
    fn validate_on_representatives(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{validate_operad, Classifier, OpIndex};

    #[test]
    fn naturals_factor_in_n_plus_one_ways() {
        let d = nat_monoid(5);
        let cl = Classifier::new(&d);
        let reps = OpIndex::representatives(&cl);
        for n in 0..=5 {
            let r = element(n, 1);
            let comps = crate::factorization::factorization_components(&cl, &reps, &r).unwrap();
            assert_eq!(comps.len(), n + 1);
        }
    }

    #[test]
    fn weight_zero_element_is_rejected() {
        let table = MonoidTable {
            names: vec!["1".into(), "z".into()],
            unit: 0,
            product: vec![vec![Some(0), Some(1)], vec![Some(1), Some(1)]],
            weights: vec![0, 0],
        };
        assert!(matches!(
            monoid_operad(table, 3),
            Err(OperadError::NotFiniteDecomposition(_))
        ));
    }

    #[test]
    fn pointed_factorizations() {
        let d = pointed_example();
        let cl = Classifier::new(&d);
        let reps = OpIndex::representatives(&cl);
        let p = element(0, 0);
        let comps = crate::factorization::factorization_components(&cl, &reps, &p).unwrap();
        // 1 ⊗ p, and (x, m) with m·x = p: (p, id), (p, a), (q, a)
        assert_eq!(comps.len(), 4);
    }

    #[test]
    fn validate_degenerate() {
        assert!(validate_operad(&nat_monoid(6)).is_clean());
        assert!(validate_operad(&pointed_example()).is_clean());
    }

    #[test]
    fn bad_module_action_is_rejected() {
        let d = pointed_example();
        let mut action = d.action.clone();
        action[1] = vec![1, 0];
        assert!(pointed_module(d.monoid.clone(), d.module.clone(), action).is_err());
    }
}
