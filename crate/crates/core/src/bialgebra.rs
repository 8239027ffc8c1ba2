//! The incidence bialgebra of an operad: comultiplication on generators
//! from factorization groupoids, its multiplicative extension to words and
//! series, the counit, and the structural checks.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{
    fraction, integer, AmbientMode, Colour, GeneratorSymbol, Monomial, Rational, Series, Tensor2,
    Tensor3, Window,
};
use crate::error::{CheckError, OperadError};
use crate::factorization::{pair_orbits, PairOrbit};
use crate::operad::{
    aut_order_word, enumerate_classes, enumerate_classes_upto, window_of, Classifier, IsoClass,
    OpIndex, Operad, Operation,
};
use crate::perm::factorial;

#[derive(Clone, Debug, Serialize)]
pub struct Evidence {
    pub component: String,
    pub aut_order: u64,
    pub inner: String,
    pub outer: String,
}

/// `Δ(δ_c)` together with the components producing it.
#[derive(Clone, Debug)]
pub struct DeltaResult {
    pub class_id: String,
    pub value: Tensor2,
    pub evidence: Vec<Evidence>,
}

impl DeltaResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "class": self.class_id,
            "value": self.value.to_json(),
            "evidence": self.evidence,
        })
    }

    /// Rows `(inner, outer, coefficient)` in term order.
    pub fn rows(&self) -> Vec<(String, String, String)> {
        self.value
            .terms()
            .map(|((x, y), c)| (x.to_string(), y.to_string(), fraction(c)))
            .collect()
    }
}

/// An operad together with its classified generators and cached Δ.
pub struct Bialgebra<'a> {
    cl: Classifier<'a>,
    reps: OpIndex,
    classes: Vec<Arc<IsoClass>>,
    all_classes: HashMap<String, Arc<IsoClass>>,
    orbits: BTreeMap<String, Vec<PairOrbit>>,
    cache: RefCell<HashMap<String, Arc<DeltaResult>>>,
}

impl<'a> Bialgebra<'a> {
    pub fn new(d: &'a dyn Operad) -> Result<Self, OperadError> {
        let cl = Classifier::new(d);
        let reps = OpIndex::representatives(&cl);
        let classes = enumerate_classes(&cl);
        let all_classes = enumerate_classes_upto(&cl, d.max_arity())
            .into_iter()
            .map(|c| (c.class_id.clone(), c))
            .collect();
        let orbits = pair_orbits(&cl, &reps, d.cap())?;
        Ok(Bialgebra {
            cl,
            reps,
            classes,
            all_classes,
            orbits,
            cache: RefCell::new(HashMap::new()),
        })
    }

    pub fn operad(&self) -> &'a dyn Operad {
        self.cl.operad()
    }
    pub fn classifier(&self) -> &Classifier<'a> {
        &self.cl
    }
    pub fn representatives(&self) -> &OpIndex {
        &self.reps
    }
    pub fn mode(&self) -> AmbientMode {
        self.operad().mode()
    }
    pub fn window(&self) -> Window {
        window_of(self.operad())
    }

    /// Generators within the window, sorted by arity and class id.
    pub fn classes(&self) -> &[Arc<IsoClass>] {
        &self.classes
    }

    pub fn class(&self, id: &str) -> Option<&Arc<IsoClass>> {
        self.all_classes.get(id)
    }

    pub fn symbol(&self, c: &IsoClass) -> GeneratorSymbol {
        self.cl.symbol(&c.representative)
    }

    pub fn generator(&self, c: &IsoClass) -> Monomial {
        Monomial::generator(self.mode(), self.symbol(c))
    }

    /// `Δ(δ_c) = Σ_components (1/|Aut|) δ_inner ⊗ δ_outer`.
    pub fn delta_gen(&self, c: &IsoClass) -> Result<Arc<DeltaResult>, OperadError> {
        if let Some(hit) = self.cache.borrow().get(&c.class_id) {
            return Ok(hit.clone());
        }
        let d = self.operad();
        if !crate::operad::in_window(d, &c.representative) {
            return Err(OperadError::WindowExceeded(c.class_id.clone()));
        }
        let mut value = Tensor2::zero(d.mode(), self.window());
        let mut evidence = Vec::new();
        let empty = Vec::new();
        for (p, orbit) in self
            .orbits
            .get(&c.class_id)
            .unwrap_or(&empty)
            .iter()
            .enumerate()
        {
            let total = c.aut_order * orbit.kernel;
            if total % orbit.stabilizer != 0 {
                return Err(OperadError::Invalid(format!(
                    "pair stabilizer {} does not divide {total}",
                    orbit.stabilizer
                )));
            }
            let inner = self.cl.word(&orbit.inner)?;
            let outer = self.cl.symbol(&orbit.outer);
            let count = total / orbit.stabilizer;
            for j in 0..count {
                evidence.push(Evidence {
                    component: format!("{p}.{j}"),
                    aut_order: orbit.kernel,
                    inner: inner.to_string(),
                    outer: outer.class_id().to_string(),
                });
            }
            value.add_term(
                inner,
                Monomial::generator(d.mode(), outer),
                Rational::new((count as i64).into(), (orbit.kernel as i64).into()),
            );
        }
        let out = Arc::new(DeltaResult {
            class_id: c.class_id.clone(),
            value,
            evidence,
        });
        self.cache
            .borrow_mut()
            .insert(c.class_id.clone(), out.clone());
        Ok(out)
    }

    pub fn delta_symbol(&self, g: &GeneratorSymbol) -> Result<Arc<DeltaResult>, OperadError> {
        let c = self
            .class(g.class_id())
            .ok_or_else(|| OperadError::UnknownOperation(g.class_id().to_string()))?
            .clone();
        self.delta_gen(&c)
    }

    /// `Δ` of a word as the product of `Δ` of its factors.
    pub fn delta_word(&self, m: &Monomial) -> Result<Tensor2, OperadError> {
        let mut out = Tensor2::unit(self.mode(), self.window());
        for g in m.factors() {
            out = out.mul(&self.delta_symbol(g)?.value)?;
        }
        Ok(out)
    }

    /// `Δ` of a word from the factorizations of the whole word: one
    /// component of the word's fibre per tuple of components of its
    /// factors, its inner and outer words assembled from the operations.
    pub fn delta_word_direct(&self, m: &Monomial) -> Result<Tensor2, OperadError> {
        let d = self.operad();
        let mut per_factor = Vec::new();
        for g in m.factors() {
            let c = self
                .class(g.class_id())
                .ok_or_else(|| OperadError::UnknownOperation(g.class_id().to_string()))?;
            let comps = crate::factorization::factorization_components(
                &self.cl,
                &self.reps,
                &c.representative,
            )?;
            per_factor.push(comps);
        }
        let mut out = Tensor2::zero(d.mode(), self.window());
        let mut choice = vec![0usize; per_factor.len()];
        if per_factor.iter().any(|v| v.is_empty()) {
            return Ok(out);
        }
        loop {
            let mut inner: Vec<Operation> = Vec::new();
            let mut outer: Vec<Operation> = Vec::new();
            let mut aut = 1u64;
            for (j, &i) in choice.iter().enumerate() {
                let comp = &per_factor[j][i];
                inner.extend(comp.inner_ops.iter().cloned());
                outer.push(comp.outer_op.clone());
                aut *= comp.aut_order;
            }
            if let (Ok(x), Ok(y)) = (self.cl.word(&inner), self.cl.word(&outer)) {
                out.add_term(x, y, Rational::new(1.into(), (aut as i64).into()));
            }
            // odometer
            let mut j = 0;
            loop {
                if j == choice.len() {
                    return Ok(out);
                }
                choice[j] += 1;
                if choice[j] < per_factor[j].len() {
                    break;
                }
                choice[j] = 0;
                j += 1;
            }
        }
    }

    /// `Δ` extended linearly; each coefficient of the result only involves
    /// generators of the matching arity, so truncated series are exact.
    pub fn delta(&self, s: &Series) -> Result<Tensor2, OperadError> {
        let mut out = Tensor2::zero(self.mode(), self.window());
        for (m, c) in s.terms() {
            out.add_scaled(&self.delta_word(m)?, c)?;
        }
        Ok(out)
    }

    pub fn is_unit_class(&self, g: &GeneratorSymbol) -> bool {
        let d = self.operad();
        g.arity() == 1
            && d.colours()
                .iter()
                .any(|&c| self.cl.classify(&d.unit(c)).class_id == g.class_id())
    }

    /// `ε(m) = 1` when every factor is an identity, else `0`.
    pub fn counit(&self, m: &Monomial) -> Rational {
        if m.factors().iter().all(|g| self.is_unit_class(g)) {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    pub fn counit_series(&self, s: &Series) -> Result<Rational, CheckError> {
        if s.is_completed() {
            return Err(CheckError::CompletedSeriesCounit);
        }
        Ok(s.terms().map(|(m, c)| self.counit(m) * c).sum())
    }

    /// `(Δ⊗id)Δ = (id⊗Δ)Δ` on every generator of the window.
    pub fn check_coassoc(&self) -> Result<CheckReport, OperadError> {
        let mut report = CheckReport::new("coassociativity");
        for c in &self.classes {
            let dc = self.delta_gen(c)?;
            let mut left = Tensor3::default();
            let mut right = Tensor3::default();
            for ((x, y), q) in dc.value.terms() {
                for ((x1, x2), q1) in self.delta_word(x)?.terms() {
                    left.add_term(x1.clone(), x2.clone(), y.clone(), q * q1);
                }
                for ((y1, y2), q2) in self.delta_word(y)?.terms() {
                    right.add_term(x.clone(), y1.clone(), y2.clone(), q * q2);
                }
            }
            let ok = left == right;
            report.record(
                &c.class_id,
                ok,
                format!("{} vs {} terms", left.len(), right.len()),
            );
        }
        Ok(report)
    }

    /// `(ε⊗id)Δ = id = (id⊗ε)Δ` on every generator of the window.
    pub fn check_counit_laws(&self) -> Result<CheckReport, OperadError> {
        let mut report = CheckReport::new("counit");
        let window = Window::with_weight(self.operad().max_arity(), self.operad().weight_cap());
        for c in &self.classes {
            let dc = self.delta_gen(c)?;
            let mut left = Series::zero(self.mode(), window);
            let mut right = Series::zero(self.mode(), window);
            for ((x, y), q) in dc.value.terms() {
                left.add_term(y.clone(), self.counit(x) * q);
                right.add_term(x.clone(), self.counit(y) * q);
            }
            let expect = Series::monomial(self.generator(c), window);
            let ok = left == expect && right.terms().eq(expect.terms());
            report.record(&c.class_id, ok, String::new());
        }
        Ok(report)
    }

    /// `Δ(xy) = Δ(x)Δ(y)` against the direct word computation, for every
    /// two-factor word inside the window.
    pub fn check_multiplicativity(&self) -> Result<CheckReport, OperadError> {
        let mut report = CheckReport::new("multiplicativity");
        let window = self.window();
        let mut words: Vec<Monomial> = Vec::new();
        for c in &self.classes {
            words.push(self.generator(c));
        }
        if !matches!(self.mode(), AmbientMode::Identity | AmbientMode::Pointed) {
            for (i, x) in self.classes.iter().enumerate() {
                for y in &self.classes[i..] {
                    let m =
                        Monomial::from_factors(self.mode(), vec![self.symbol(x), self.symbol(y)])?;
                    if window.admits(&m) {
                        words.push(m.clone());
                        if !self.mode().is_symmetric() && x.class_id != y.class_id {
                            words.push(Monomial::from_factors(
                                self.mode(),
                                vec![self.symbol(y), self.symbol(x)],
                            )?);
                        }
                    }
                }
            }
        }
        for m in words {
            let direct = self.delta_word_direct(&m)?;
            let product = self.delta_word(&m)?;
            report.record(&m.to_string(), direct == product, String::new());
        }
        Ok(report)
    }

    /// Cardinality-level Segal check: over each pair of classes `(x, y)` of
    /// words with matching interface, the groupoid of two-level words and
    /// the iso-comma groupoid of pairs of words have equal cardinality.
    pub fn segal_check(&self) -> Result<CheckReport, OperadError> {
        let mut report = CheckReport::new("segal");
        let lhs = self.two_level_word_cardinalities()?;
        let rhs = self.matched_pair_cardinalities()?;
        let mut keys: Vec<&(Monomial, Monomial)> = lhs.keys().chain(rhs.keys()).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            let a = lhs.get(k).cloned().unwrap_or_else(Rational::zero);
            let b = rhs.get(k).cloned().unwrap_or_else(Rational::zero);
            report.record(
                &format!("{} | {}", k.0, k.1),
                a == b,
                format!("{} vs {}", fraction(&a), fraction(&b)),
            );
        }
        Ok(report)
    }

    /// `‖D₂‖` split by (inner word, outer word): sums over multisets (or
    /// sequences) of two-level trees.
    fn two_level_word_cardinalities(
        &self,
    ) -> Result<BTreeMap<(Monomial, Monomial), Rational>, OperadError> {
        let d = self.operad();
        let mut trees: Vec<(Vec<Operation>, Operation, Rational, usize, usize)> = Vec::new();
        for orbits in self.orbits.values() {
            for o in orbits {
                let arity: usize = o.inner.iter().map(|a| a.arity()).sum();
                let weight =
                    d.weight(&o.outer) + o.inner.iter().map(|a| d.weight(a)).sum::<usize>();
                trees.push((
                    o.inner.clone(),
                    o.outer.clone(),
                    Rational::new(1.into(), (o.stabilizer as i64).into()),
                    arity,
                    weight,
                ));
            }
        }
        let limits = self.word_limits()?;
        let mut out = BTreeMap::new();
        let sizes: Vec<(usize, usize)> = trees.iter().map(|t| (t.3, t.4)).collect();
        for_each_word(&sizes, limits, !self.mode().is_symmetric(), &mut |choice| {
            let mut inner = Vec::new();
            let mut outer = Vec::new();
            let mut q = Rational::one();
            let mut run = 1u64;
            for (i, &t) in choice.iter().enumerate() {
                inner.extend(trees[t].0.iter().cloned());
                outer.push(trees[t].1.clone());
                q *= &trees[t].2;
                if self.mode().is_symmetric() {
                    run = if i > 0 && choice[i - 1] == t {
                        run + 1
                    } else {
                        1
                    };
                    q /= integer(run);
                }
            }
            if let (Ok(x), Ok(y)) = (self.cl.word(&inner), self.cl.word(&outer)) {
                *out.entry((x, y)).or_insert_with(Rational::zero) += q;
            }
        });
        Ok(out)
    }

    /// `‖D₁ ×_{D₀} D₁‖` split by (x, y): `|Hom_{D₀}(out x, in y)| / (|Aut x|·|Aut y|)`.
    fn matched_pair_cardinalities(
        &self,
    ) -> Result<BTreeMap<(Monomial, Monomial), Rational>, OperadError> {
        let d = self.operad();
        let limits = self.word_limits()?;
        let all: Vec<Arc<IsoClass>> = {
            let mut v: Vec<_> = self.all_classes.values().cloned().collect();
            v.sort_by(|a, b| (a.arity, &a.class_id).cmp(&(b.arity, &b.class_id)));
            v
        };
        let inner_sizes: Vec<(usize, usize)> =
            self.classes.iter().map(|c| (c.arity, c.weight)).collect();
        let mut xs: Vec<Monomial> = Vec::new();
        for_each_word(
            &inner_sizes,
            limits,
            !self.mode().is_symmetric(),
            &mut |choice| {
                if let Ok(m) = Monomial::from_factors(
                    d.mode(),
                    choice
                        .iter()
                        .map(|&i| self.symbol(&self.classes[i]))
                        .collect(),
                ) {
                    xs.push(m);
                }
            },
        );
        let mut out = BTreeMap::new();
        let mut by_interface: HashMap<Vec<Colour>, Vec<Monomial>> = HashMap::new();
        for x in &xs {
            by_interface
                .entry(self.interface(&x.out_colours()))
                .or_default();
        }
        let max_outer_len = xs.iter().map(|x| x.len()).max().unwrap_or(0);
        let outer_limits = WordLimits {
            arity: max_outer_len,
            weight: limits.weight,
            length: limits.length,
        };
        let outer_sizes: Vec<(usize, usize)> = all.iter().map(|c| (c.arity, c.weight)).collect();
        for_each_word(
            &outer_sizes,
            outer_limits,
            !self.mode().is_symmetric(),
            &mut |choice| {
                let ins: Vec<Colour> = choice
                    .iter()
                    .flat_map(|&i| all[i].representative.inputs.clone())
                    .collect();
                if let Some(v) = by_interface.get_mut(&self.interface(&ins)) {
                    if let Ok(m) = Monomial::from_factors(
                        d.mode(),
                        choice.iter().map(|&i| self.symbol(&all[i])).collect(),
                    ) {
                        v.push(m);
                    }
                }
            },
        );
        for x in &xs {
            let key = self.interface(&x.out_colours());
            let hom = self.interface_automorphisms(&x.out_colours());
            for y in &by_interface[&key] {
                if !self
                    .window()
                    .admits_weight(x.total_weight() + y.total_weight())
                {
                    continue;
                }
                let q = Rational::new(
                    (hom as i64).into(),
                    ((aut_order_word(d, x)? * aut_order_word(d, y)?) as i64).into(),
                );
                out.insert((x.clone(), y.clone()), q);
            }
        }
        Ok(out)
    }

    /// Colour words up to the ambient's isomorphism.
    fn interface(&self, w: &[Colour]) -> Vec<Colour> {
        let mut v = w.to_vec();
        if self.mode().is_symmetric() {
            v.sort();
        }
        v
    }

    fn interface_automorphisms(&self, w: &[Colour]) -> u64 {
        if !self.mode().is_symmetric() {
            return 1;
        }
        let mut counts: BTreeMap<Colour, usize> = BTreeMap::new();
        for &c in w {
            *counts.entry(c).or_default() += 1;
        }
        counts.values().map(|&k| factorial(k)).product()
    }

    fn word_limits(&self) -> Result<WordLimits, OperadError> {
        let d = self.operad();
        let length = match d.mode() {
            AmbientMode::Identity | AmbientMode::Pointed => Some(1),
            _ => None,
        };
        if length.is_none() && d.weight_cap().is_none() {
            let free_nullary = self
                .all_classes
                .values()
                .any(|c| c.arity == 0 && c.weight == 0);
            if free_nullary {
                return Err(OperadError::Invalid(
                    "nullary operations of weight 0 make the word window infinite".into(),
                ));
            }
        }
        Ok(WordLimits {
            arity: d.cap(),
            weight: d.weight_cap(),
            length,
        })
    }
}

#[derive(Clone, Copy, Debug)]
struct WordLimits {
    arity: usize,
    weight: Option<usize>,
    length: Option<usize>,
}

/// Calls `f` on every word over items `0..sizes.len()` (as a nondecreasing
/// index sequence, or any sequence when `ordered`) whose total size and
/// weight stay within the limits. Items of size and weight 0 may appear
/// only when the length is bounded.
fn for_each_word(
    sizes: &[(usize, usize)],
    limits: WordLimits,
    ordered: bool,
    f: &mut dyn FnMut(&[usize]),
) {
    fn go(
        sizes: &[(usize, usize)],
        limits: WordLimits,
        ordered: bool,
        start: usize,
        arity: usize,
        weight: usize,
        acc: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        f(acc);
        if limits.length.is_some_and(|l| acc.len() >= l) {
            return;
        }
        for i in (if ordered { 0 } else { start })..sizes.len() {
            let (a, w) = sizes[i];
            if a == 0 && w == 0 && limits.length.is_none() {
                continue;
            }
            if arity + a > limits.arity || limits.weight.is_some_and(|c| weight + w > c) {
                continue;
            }
            acc.push(i);
            go(sizes, limits, ordered, i, arity + a, weight + w, acc, f);
            acc.pop();
        }
    }
    go(sizes, limits, ordered, 0, 0, 0, &mut Vec::new(), f);
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub key: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: bool,
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new(check: &str) -> Self {
        CheckReport {
            check: check.into(),
            verdict: true,
            entries: Vec::new(),
        }
    }

    pub fn record(&mut self, key: &str, ok: bool, detail: String) {
        self.verdict &= ok;
        self.entries.push(CheckEntry {
            key: key.into(),
            ok,
            detail,
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.ok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::{
        binary_nullary_operad, comm_plus, multivariate, nat_monoid, nonsym_semimonoid,
        pointed_example,
    };

    fn all_checks(d: &dyn Operad) {
        let b = Bialgebra::new(d).unwrap();
        for r in [
            b.check_coassoc().unwrap(),
            b.check_counit_laws().unwrap(),
            b.check_multiplicativity().unwrap(),
            b.segal_check().unwrap(),
        ] {
            let bad: Vec<_> = r.failures().collect();
            assert!(r.verdict, "{} {}: {:?}", d.name(), r.check, bad);
            assert!(!r.entries.is_empty(), "{} {}", d.name(), r.check);
        }
    }

    #[test]
    fn comm_delta_a3() {
        let d = comm_plus(4);
        let b = Bialgebra::new(&d).unwrap();
        let c = b.classes().iter().find(|c| c.arity == 3).unwrap().clone();
        let v = &b.delta_gen(&c).unwrap().value;
        let rows: Vec<String> = v
            .terms()
            .map(|((x, y), q)| format!("{x}|{y}|{}", fraction(q)))
            .collect();
        assert_eq!(rows.len(), 3);
        assert!(rows.contains(&"A_1 A_2|A_2|3".to_string()), "{rows:?}");
    }

    #[test]
    fn structural_checks() {
        all_checks(&comm_plus(4));
        all_checks(&nonsym_semimonoid(4));
        all_checks(&multivariate(&["x", "y"], 3).unwrap());
        all_checks(&binary_nullary_operad(3));
        all_checks(&nat_monoid(4));
        all_checks(&pointed_example());
    }

    #[test]
    fn completed_counit_is_an_error() {
        let d = comm_plus(3);
        let b = Bialgebra::new(&d).unwrap();
        let s = Series::unit(d.mode(), b.window()).mark_completed();
        assert!(matches!(
            b.counit_series(&s),
            Err(CheckError::CompletedSeriesCounit)
        ));
    }
}
