//! Factorization groupoids: all ways of writing an operation as a
//! two-level composite, with their symmetries.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::{integer, GeneratorSymbol, Monomial, Rational, Tensor2};
use crate::error::{GroupoidError, OperadError};
use crate::groupoid::{orbit_components, FinGroupoid, GroupoidPresentation};
use crate::operad::{
    block_perm_for, enumerate_classes, for_each_tuple_exact, in_window, window_of, Classifier,
    OpIndex, Operad, Operation,
};
use crate::perm::{factorial, Perm};

/// An object `(b, a, g)` with `compose(b; a)·g = r`. In modes without
/// symmetric actions `g` is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FactorObject {
    pub outer: Operation,
    pub inner: Vec<Operation>,
    pub g: Perm,
}

/// A morphism label `(σ, h)`: `b ↦ b·σ`, `a_i ↦ a_{σ(i)}·h_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FactorLabel {
    pub sigma: Perm,
    pub h: Vec<Perm>,
}

impl FactorLabel {
    pub fn identity(x: &FactorObject) -> Self {
        FactorLabel {
            sigma: Perm::identity(x.outer.arity()),
            h: x.inner.iter().map(|a| Perm::identity(a.arity())).collect(),
        }
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &FactorLabel) -> FactorLabel {
        FactorLabel {
            sigma: self.sigma.then(&other.sigma),
            h: other
                .h
                .iter()
                .enumerate()
                .map(|(i, hi)| self.h[other.sigma.apply(i)].then(hi))
                .collect(),
        }
    }

    /// Every label out of `x`.
    pub fn all(x: &FactorObject) -> Vec<FactorLabel> {
        let k = x.outer.arity();
        let mut out = Vec::new();
        for sigma in Perm::all(k) {
            let degrees: Vec<usize> = (0..k).map(|i| x.inner[sigma.apply(i)].arity()).collect();
            let mut hs: Vec<Vec<Perm>> = vec![Vec::new()];
            for n in degrees {
                let all = Perm::all(n);
                hs = hs
                    .into_iter()
                    .flat_map(|prefix| {
                        all.iter().map(move |p| {
                            let mut v = prefix.clone();
                            v.push(p.clone());
                            v
                        })
                    })
                    .collect();
            }
            out.extend(hs.into_iter().map(|h| FactorLabel {
                sigma: sigma.clone(),
                h,
            }));
        }
        out
    }
}

/// Number of labels out of any object with these arities.
pub fn label_count(outer: &Operation, inner: &[Operation]) -> u64 {
    factorial(outer.arity()) * inner.iter().map(|a| factorial(a.arity())).product::<u64>()
}

pub fn act_on_object(d: &dyn Operad, x: &FactorObject, l: &FactorLabel) -> FactorObject {
    let k = x.outer.arity();
    let inner: Vec<Operation> = (0..k)
        .map(|i| d.act(&x.inner[l.sigma.apply(i)], &l.h[i]))
        .collect();
    let p = block_perm_for(&x.inner, &l.sigma, &l.h);
    FactorObject {
        outer: d.act(&x.outer, &l.sigma),
        inner,
        g: p.inverse().then(&x.g),
    }
}

struct Presentation<'a> {
    d: &'a dyn Operad,
}

impl GroupoidPresentation for Presentation<'_> {
    type Object = FactorObject;

    fn neighbours(&self, x: &FactorObject) -> Vec<FactorObject> {
        let k = x.outer.arity();
        let id = FactorLabel::identity(x);
        let mut out = Vec::new();
        for j in 0..k.saturating_sub(1) {
            let sigma = Perm::transposition(k, j);
            let h = (0..k)
                .map(|i| Perm::identity(x.inner[sigma.apply(i)].arity()))
                .collect();
            out.push(act_on_object(self.d, x, &FactorLabel { sigma, h }));
        }
        for (i, a) in x.inner.iter().enumerate() {
            for t in 0..a.arity().saturating_sub(1) {
                let mut l = id.clone();
                l.h[i] = Perm::transposition(a.arity(), t);
                out.push(act_on_object(self.d, x, &l));
            }
        }
        out
    }

    fn out_degree(&self, x: &FactorObject) -> u64 {
        label_count(&x.outer, &x.inner)
    }
}

/// A component of a factorization groupoid: its automorphism order, the
/// class word of the inner operations and the class of the outer one.
#[derive(Clone, Debug)]
pub struct FactorComponent {
    pub id: String,
    pub outer_op: Operation,
    pub inner_ops: Vec<Operation>,
    pub aut_order: u64,
    pub inner_word: Monomial,
    pub outer: GeneratorSymbol,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentSummary {
    pub id: String,
    pub inner: String,
    pub outer: String,
    pub aut_order: u64,
}

impl FactorComponent {
    pub fn summary(&self) -> ComponentSummary {
        ComponentSummary {
            id: self.id.clone(),
            inner: self.inner_word.to_string(),
            outer: self.outer.class_id().to_string(),
            aut_order: self.aut_order,
        }
    }
}

/// An orbit of pairs `(b, a)` under relabelling, given by its least
/// normalized member: `outer` and every `inner[i]` canonical, and `inner`
/// least among its permutations by automorphisms of `outer`.
#[derive(Clone, Debug)]
pub struct PairOrbit {
    pub outer: Operation,
    pub inner: Vec<Operation>,
    /// Order of the stabilizer `L` of the pair in `S_k ⋉ Π S_{n_i}`.
    pub stabilizer: u64,
    /// Order of the subgroup of `L` acting trivially on composite inputs.
    pub kernel: u64,
}

fn pair_orbit(cl: &Classifier<'_>, outer: &Operation, inner: &[Operation]) -> Option<PairOrbit> {
    let auts = cl.automorphisms(outer);
    let mut fix = 0u64;
    let mut kernel = 0u64;
    for sigma in auts.iter() {
        let moved: Vec<&Operation> = (0..inner.len()).map(|i| &inner[sigma.apply(i)]).collect();
        match moved.iter().copied().cmp(inner.iter()) {
            std::cmp::Ordering::Less => return None,
            std::cmp::Ordering::Equal => {
                fix += 1;
                let ids: Vec<Perm> = inner.iter().map(|a| Perm::identity(a.arity())).collect();
                if block_perm_for(inner, sigma, &ids).is_identity() {
                    kernel += 1;
                }
            }
            std::cmp::Ordering::Greater => {}
        }
    }
    let inner_auts: u64 = inner
        .iter()
        .map(|a| cl.automorphisms(a).len() as u64)
        .product();
    Some(PairOrbit {
        outer: outer.clone(),
        inner: inner.to_vec(),
        stabilizer: fix * inner_auts,
        kernel,
    })
}

/// Pair orbits of every composite with inner arity at most `max_inner`,
/// grouped by the class id of the composite. `reps` must index one
/// representative per class.
pub fn pair_orbits(
    cl: &Classifier<'_>,
    reps: &OpIndex,
    max_inner: usize,
) -> Result<BTreeMap<String, Vec<PairOrbit>>, OperadError> {
    let d = cl.operad();
    let wcap = d.weight_cap();
    let mut out: BTreeMap<String, Vec<PairOrbit>> = BTreeMap::new();
    let mut err = None;
    for k in 0..=reps.max_arity() {
        for b in reps.of_arity(k) {
            let wb = d.weight(b);
            if wcap.is_some_and(|w| wb > w) {
                continue;
            }
            crate::operad::for_each_tuple(
                d,
                reps,
                &b.inputs,
                max_inner,
                wcap.map(|w| w - wb),
                &mut |a| {
                    if err.is_some() {
                        return;
                    }
                    let Some(orbit) = pair_orbit(cl, b, a) else {
                        return;
                    };
                    match d.compose(b, a) {
                        Ok(c) => out
                            .entry(cl.classify(&c).class_id.clone())
                            .or_default()
                            .push(orbit),
                        Err(e) => err = Some(e),
                    }
                },
            );
        }
    }
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Pair orbits whose composite is isomorphic to `r`.
pub fn pair_orbits_of(
    cl: &Classifier<'_>,
    reps: &OpIndex,
    r: &Operation,
) -> Result<Vec<PairOrbit>, OperadError> {
    let d = cl.operad();
    let target = cl.classify(r);
    let w = d.weight(r);
    let mut out = Vec::new();
    let mut err = None;
    for k in 0..=reps.max_arity() {
        for b in reps.of_arity(k) {
            let wb = d.weight(b);
            if wb > w {
                continue;
            }
            for_each_tuple_exact(d, reps, &b.inputs, r.arity(), Some(w - wb), &mut |a| {
                if err.is_some() {
                    return;
                }
                let Some(orbit) = pair_orbit(cl, b, a) else {
                    return;
                };
                match d.compose(b, a) {
                    Ok(c) => {
                        if c.output == r.output && cl.classify(&c).class_id == target.class_id {
                            out.push(orbit);
                        }
                    }
                    Err(e) => err = Some(e),
                }
            });
        }
    }
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Components of the factorization groupoid of `r`. Over the pair orbit
/// with stabilizer `L` and kernel `K` there are `|Aut r|·|K|/|L|`
/// components, each with automorphism group `K`.
pub fn factorization_components(
    cl: &Classifier<'_>,
    reps: &OpIndex,
    r: &Operation,
) -> Result<Vec<FactorComponent>, OperadError> {
    let d = cl.operad();
    if !in_window(d, r) {
        return Err(OperadError::WindowExceeded(format!("{r:?}")));
    }
    let aut_r = cl.classify(r).aut_order;
    let mut out = Vec::new();
    for (p, orbit) in pair_orbits_of(cl, reps, r)?.into_iter().enumerate() {
        let total = aut_r * orbit.kernel;
        if total % orbit.stabilizer != 0 {
            return Err(OperadError::Invalid(format!(
                "pair stabilizer {} does not divide {}",
                orbit.stabilizer, total
            )));
        }
        let inner_word = cl.word(&orbit.inner)?;
        let outer = cl.symbol(&orbit.outer);
        for j in 0..total / orbit.stabilizer {
            out.push(FactorComponent {
                id: format!("{p}.{j}"),
                outer_op: orbit.outer.clone(),
                inner_ops: orbit.inner.clone(),
                aut_order: orbit.kernel,
                inner_word: inner_word.clone(),
                outer: outer.clone(),
            });
        }
    }
    Ok(out)
}

/// Pairs `(b, a)` over all operations whose composite lies in the orbit
/// of `r`.
pub fn factor_pairs(
    cl: &Classifier<'_>,
    index: &OpIndex,
    r: &Operation,
) -> Result<Vec<(Operation, Vec<Operation>)>, OperadError> {
    let d = cl.operad();
    let target = cl.classify(r).class_id.clone();
    let symmetric = d.mode().is_symmetric();
    let w = d.weight(r);
    let mut out = Vec::new();
    let mut err = None;
    for k in 0..=index.max_arity() {
        for b in index.of_arity(k) {
            let wb = d.weight(b);
            if wb > w {
                continue;
            }
            for_each_tuple_exact(d, index, &b.inputs, r.arity(), Some(w - wb), &mut |a| {
                if err.is_some() {
                    return;
                }
                match d.compose(b, a) {
                    Ok(c) => {
                        let hit = if symmetric {
                            c.output == r.output && cl.classify(&c).class_id == target
                        } else {
                            &c == r
                        };
                        if hit {
                            out.push((b.clone(), a.to_vec()));
                        }
                    }
                    Err(e) => err = Some(e),
                }
            });
        }
    }
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Every object of the factorization groupoid of `r`.
pub fn factor_objects(
    cl: &Classifier<'_>,
    index: &OpIndex,
    r: &Operation,
) -> Result<Vec<FactorObject>, OperadError> {
    let d = cl.operad();
    let pairs = factor_pairs(cl, index, r)?;
    let n = r.arity();
    if !d.mode().is_symmetric() {
        return Ok(pairs
            .into_iter()
            .map(|(outer, inner)| FactorObject {
                outer,
                inner,
                g: Perm::identity(n),
            })
            .collect());
    }
    let stab = cl.automorphisms(r);
    let (_, p_r) = cl.classify_with_perm(r);
    let mut out = Vec::new();
    for (outer, inner) in pairs {
        let c = d.compose(&outer, &inner)?;
        let (_, p_c) = cl.classify_with_perm(&c);
        let g0 = p_c.then(&p_r.inverse());
        debug_assert_eq!(&d.act(&c, &g0), r);
        for t in stab.iter() {
            out.push(FactorObject {
                outer: outer.clone(),
                inner: inner.clone(),
                g: g0.then(t),
            });
        }
    }
    Ok(out)
}

/// Components found by breadth-first search over every object `(b, a, g)`,
/// with `|Aut| = out-degree / component size`. `index` must contain every
/// operation, not just representatives.
pub fn factorization_components_bfs(
    cl: &Classifier<'_>,
    index: &OpIndex,
    r: &Operation,
) -> Result<Vec<FactorComponent>, OperadError> {
    let d = cl.operad();
    if !in_window(d, r) {
        return Err(OperadError::WindowExceeded(format!("{r:?}")));
    }
    let objects = factor_objects(cl, index, r)?;
    let comps = if d.mode().is_symmetric() {
        orbit_components(&Presentation { d }, objects)?
    } else {
        objects
            .into_iter()
            .map(|o| crate::groupoid::OrbitComponent {
                representative: o,
                size: 1,
                aut_order: 1,
            })
            .collect()
    };
    comps
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let x = c.representative;
            Ok(FactorComponent {
                id: i.to_string(),
                inner_word: cl.word(&x.inner)?,
                outer: cl.symbol(&x.outer),
                aut_order: c.aut_order,
                outer_op: x.outer,
                inner_ops: x.inner,
            })
        })
        .collect()
}

/// The factorization groupoid of `r` as an explicit finite groupoid.
/// Intended for small arities: every label `(σ, h)` becomes a morphism.
pub fn factorization_groupoid(
    cl: &Classifier<'_>,
    index: &OpIndex,
    r: &Operation,
) -> Result<(FinGroupoid, Vec<FactorObject>), OperadError> {
    let d = cl.operad();
    let objects = factor_objects(cl, index, r)?;
    let symmetric = d.mode().is_symmetric();
    let g = FinGroupoid::from_labelled(
        &objects,
        |x| format!("{:?}∘{:?}", x.outer, x.inner),
        |x| {
            if symmetric {
                FactorLabel::all(x)
            } else {
                vec![FactorLabel::identity(x)]
            }
        },
        |x, l| act_on_object(d, x, l),
        |_, l1, l2| l1.then(l2),
        FactorLabel::identity,
    )
    .map_err(OperadError::from)?;
    Ok((g, objects))
}

/// `Σ_components (1/|Aut|) δ_inner ⊗ δ_outer`.
pub fn components_to_tensor(d: &dyn Operad, comps: &[FactorComponent]) -> Tensor2 {
    let mut t = Tensor2::zero(d.mode(), window_for_delta(d));
    for c in comps {
        t.add_term(
            c.inner_word.clone(),
            Monomial::generator(d.mode(), c.outer.clone()),
            Rational::new(1.into(), (c.aut_order as i64).into()),
        );
    }
    t
}

/// Window for tensors produced by Δ: the left slot is bounded by the cap;
/// the right slot carries one operation whose arity may exceed it when
/// nullary operations are present.
pub fn window_for_delta(d: &dyn Operad) -> crate::algebra::Window {
    window_of(d)
}

/// Δ of every generator in the window by counting pairs:
/// `Δ(δ_r) = Σ_{(b,a): b∘a ≅ r} |Aut r| / (k!·Π n_i!) · δ_[a] ⊗ δ_[b]`.
pub fn delta_by_pairs(cl: &Classifier<'_>) -> Result<BTreeMap<String, Tensor2>, OperadError> {
    let d = cl.operad();
    let index = OpIndex::new(d);
    let window = window_for_delta(d);
    let symmetric = d.mode().is_symmetric();
    let mut out: BTreeMap<String, Tensor2> = BTreeMap::new();
    for c in enumerate_classes(cl) {
        out.insert(c.class_id.clone(), Tensor2::zero(d.mode(), window));
    }
    let wcap = d.weight_cap();
    let mut err = None;
    for k in 0..=index.max_arity() {
        for b in index.of_arity(k) {
            let wb = d.weight(b);
            if wcap.is_some_and(|w| wb > w) {
                continue;
            }
            let outer = Monomial::generator(d.mode(), cl.symbol(b));
            for n in 0..=d.cap() {
                for_each_tuple_exact(d, &index, &b.inputs, n, wcap.map(|w| w - wb), &mut |a| {
                    if err.is_some() {
                        return;
                    }
                    let c = match d.compose(b, a) {
                        Ok(c) => c,
                        Err(e) => {
                            err = Some(e);
                            return;
                        }
                    };
                    let class = cl.classify(&c);
                    let coeff = if symmetric {
                        Rational::new(
                            (class.aut_order as i64).into(),
                            (label_count(b, a) as i64).into(),
                        )
                    } else {
                        integer(1)
                    };
                    let inner = cl.word(a).expect("inner word in mode");
                    if let Some(t) = out.get_mut(&class.class_id) {
                        t.add_term(inner, outer.clone(), coeff);
                    }
                });
            }
        }
    }
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FinitenessEntry {
    pub class_id: String,
    pub components: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FinitenessReport {
    pub entries: Vec<FinitenessEntry>,
    pub warnings: Vec<String>,
}

/// Component counts of every factorization groupoid in the window, and a
/// warning when a nullary operation absorbs a non-identity composite,
/// which produces unboundedly many factorizations beyond the window.
pub fn local_finiteness_report(cl: &Classifier<'_>) -> Result<FinitenessReport, OperadError> {
    let d = cl.operad();
    let index = OpIndex::new(d);
    let reps = OpIndex::representatives(cl);
    let mut entries = Vec::new();
    for c in enumerate_classes(cl) {
        let comps = factorization_components(cl, &reps, &c.representative)?;
        entries.push(FinitenessEntry {
            class_id: c.class_id.clone(),
            components: comps.len(),
        });
    }
    let mut warnings = Vec::new();
    if !d.is_free() && d.mode() != crate::algebra::AmbientMode::Pointed {
        let nullary = index.of_arity(0);
        let units: Vec<Operation> = d.colours().iter().map(|&c| d.unit(c)).collect();
        for k in 1..=index.max_arity() {
            for b in index.of_arity(k) {
                if units.contains(b) {
                    continue;
                }
                for_each_tuple_exact(d, &index, &b.inputs, 0, None, &mut |a| {
                    if let Ok(z) = d.compose(b, a) {
                        if a.contains(&z) && nullary.contains(&z) {
                            warnings.push(format!(
                                "nullary {} absorbs {}: local finiteness beyond the window is not certified",
                                cl.classify(&z).class_id,
                                cl.classify(b).class_id
                            ));
                        }
                    }
                });
            }
        }
        warnings.sort();
        warnings.dedup();
    }
    Ok(FinitenessReport { entries, warnings })
}

/// Groupoid cardinality of each `(inner word, outer class)` in the explicit
/// factorization groupoid; the independent check of [`factorization_components`].
pub fn explicit_cardinalities(
    cl: &Classifier<'_>,
    index: &OpIndex,
    r: &Operation,
) -> Result<BTreeMap<(Monomial, GeneratorSymbol), Rational>, OperadError> {
    let (g, objects) = factorization_groupoid(cl, index, r)?;
    let keys: Vec<(Monomial, GeneratorSymbol)> = objects
        .iter()
        .map(|x| Ok((cl.word(&x.inner)?, cl.symbol(&x.outer))))
        .collect::<Result<_, OperadError>>()?;
    g.cardinality_by_label(|o| keys[o].clone())
        .map_err(|e: GroupoidError| e.into())
}

/// Keys `(inner word, outer class)` of the components, with multiplicity.
pub fn component_histogram(comps: &[FactorComponent]) -> HashMap<(String, String), usize> {
    let mut out = HashMap::new();
    for c in comps {
        *out.entry((c.inner_word.to_string(), c.outer.class_id().to_string()))
            .or_default() += 1;
    }
    out
}
