//! Green functions and the Faà di Bruno comparison.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{
    fraction, integer, AmbientMode, Colour, Monomial, Rational, Series, Tensor2, Window,
};
use crate::bialgebra::{Bialgebra, CheckReport};
use crate::error::OperadError;
use crate::factorization::FactorLabel;
use crate::groupoid::{action_groupoid, homotopy_fiber, FinGroupoid, GroupoidFunctor};
use crate::operad::{enumerate_classes_upto, for_each_tuple, IsoClass, OpIndex, Operad, Operation};
use crate::perm::Perm;

/// `G = Σ_c δ_c / |Aut c|`, also split by output colour.
#[derive(Clone, Debug)]
pub struct GreenFunction {
    pub series: Series,
    pub colour_parts: BTreeMap<Colour, Series>,
}

impl GreenFunction {
    pub fn to_json(&self) -> serde_json::Value {
        let parts: BTreeMap<String, serde_json::Value> = self
            .colour_parts
            .iter()
            .map(|(c, s)| (c.to_string(), s.to_json()))
            .collect();
        serde_json::json!({ "series": self.series.to_json(), "colour_parts": parts })
    }
}

fn inverse(n: u64) -> Rational {
    Rational::one() / integer(n)
}

pub fn green(b: &Bialgebra<'_>) -> GreenFunction {
    let d = b.operad();
    let mut series = Series::zero(d.mode(), b.window());
    let mut colour_parts: BTreeMap<Colour, Series> = d
        .colours()
        .into_iter()
        .map(|c| (c, Series::zero(d.mode(), b.window())))
        .collect();
    for c in b.classes() {
        let q = inverse(c.aut_order);
        series.add_term(b.generator(c), q.clone());
        colour_parts
            .entry(c.representative.output)
            .or_insert_with(|| Series::zero(d.mode(), b.window()))
            .add_term(b.generator(c), q);
    }
    GreenFunction {
        series: series.mark_completed(),
        colour_parts: colour_parts
            .into_iter()
            .map(|(c, s)| (c, s.mark_completed()))
            .collect(),
    }
}

/// The window for right tensor factors: any arity, the operad's weight cap.
pub fn right_window(d: &dyn Operad) -> Window {
    Window::with_weight(d.max_arity(), d.weight_cap())
}

/// Interface words up to the ambient's isomorphism: sorted colour
/// multisets in symmetric modes, all colour words otherwise.
pub fn interface_words(d: &dyn Operad, max_len: usize) -> Vec<Vec<Colour>> {
    let max_len = match d.mode() {
        AmbientMode::Identity | AmbientMode::Pointed => max_len.min(1),
        _ => max_len,
    };
    let colours = d.colours();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &c in &colours {
                if d.mode().is_symmetric() && w.last().is_some_and(|&l: &Colour| l > c) {
                    continue;
                }
                let mut v: Vec<Colour> = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn normal_interface(mode: AmbientMode, w: &[Colour]) -> Vec<Colour> {
    let mut v = w.to_vec();
    if mode.is_symmetric() {
        v.sort();
    }
    v
}

fn classes_with_interface<'b>(b: &'b Bialgebra<'_>, w: &[Colour]) -> Vec<std::sync::Arc<IsoClass>> {
    let d = b.operad();
    let key = normal_interface(d.mode(), w);
    enumerate_classes_upto(b.classifier(), d.max_arity())
        .into_iter()
        .filter(|c| normal_interface(d.mode(), &c.representative.inputs) == key)
        .collect()
}

/// `g_w = Σ_{c : in(c) ≅ w} δ_c / |Aut c|`.
pub fn g_part(b: &Bialgebra<'_>, w: &[Colour]) -> Series {
    let d = b.operad();
    let mut s = Series::zero(d.mode(), right_window(d));
    for c in classes_with_interface(b, w) {
        s.add_term(b.generator(&c), inverse(c.aut_order));
    }
    s
}

/// `g_w` from groupoids: the homotopy fibre over `w` of the input-colour
/// functor from operations of arity `|w|` to colour words, split by class
/// and divided by `|Aut w|`.
pub fn g_part_by_fibre(b: &Bialgebra<'_>, w: &[Colour]) -> Result<Series, OperadError> {
    let d = b.operad();
    let n = w.len();
    let ops = d.operations(n);
    let op_index: HashMap<_, usize> = ops
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, o)| (o, i))
        .collect();
    let colours = d.colours();
    let words: Vec<Vec<Colour>> = (0..colours.len().pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let c = colours[k % colours.len()];
                    k /= colours.len();
                    c
                })
                .collect()
        })
        .collect();
    let word_index: HashMap<Vec<Colour>, usize> = words
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let gens: Vec<Perm> = if d.mode().is_symmetric() {
        (0..n.saturating_sub(1))
            .map(|i| Perm::transposition(n, i))
            .collect()
    } else {
        Vec::new()
    };
    let on_words = |x: usize, p: &Perm| word_index[&p.permute(&words[x])];
    let x_grp = action_groupoid(ops.len(), n, &gens, |x, p| op_index[&d.act(&ops[x], p)])?;
    let y_grp = action_groupoid(words.len(), n, &gens, on_words)?;
    let obj_map: Vec<usize> = ops.iter().map(|o| word_index[&o.inputs]).collect();
    let mut mor_map = vec![0; x_grp.groupoid.morphism_count()];
    for x in 0..ops.len() {
        for g in &x_grp.group {
            mor_map[x_grp.morphism(x, g)] = y_grp.morphism(obj_map[x], g);
        }
    }
    let f = GroupoidFunctor::new(&x_grp.groupoid, &y_grp.groupoid, obj_map, mor_map)?;
    let target = word_index[w];
    let (fib, src) = homotopy_fiber(&f, target)?;
    let split =
        fib.cardinality_by_label(|i| b.classifier().classify(&ops[src[i]]).class_id.clone())?;
    let aut_w = inverse(y_grp.groupoid.aut_order(target)?);
    let mut s = Series::zero(d.mode(), right_window(d));
    for (id, q) in split {
        let c = b
            .class(&id)
            .ok_or(OperadError::UnknownOperation(id))?
            .clone();
        s.add_term(b.generator(&c), q * &aut_w);
    }
    Ok(s)
}

/// Compares the closed form of `g_w` with the fibre computation for every
/// interface word of length at most `max_len`.
pub fn check_g_parts(b: &Bialgebra<'_>, max_len: usize) -> Result<CheckReport, OperadError> {
    let mut report = CheckReport::new("g_part");
    let d = b.operad();
    for w in interface_words(d, max_len.min(d.max_arity())) {
        let closed = g_part(b, &w);
        let fibre = g_part_by_fibre(b, &w)?;
        report.record(&format!("{w:?}"), closed == fibre, format!("{closed}"));
    }
    Ok(report)
}

/// `Π_i G_{w_i}` in word order.
pub fn green_power(
    g: &GreenFunction,
    d: &dyn Operad,
    window: Window,
    w: &[Colour],
) -> Result<Series, OperadError> {
    let mut out = Series::unit(d.mode(), window);
    for c in w {
        match g.colour_parts.get(c) {
            Some(part) => out = out.mul(part)?,
            None => return Ok(Series::zero(d.mode(), window)),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct FdbEntry {
    pub inner: String,
    pub outer: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FdbReport {
    pub operad: String,
    pub mode: String,
    pub verdict: bool,
    pub cap: usize,
    pub weight_cap: Option<usize>,
    pub entries: Vec<FdbEntry>,
}

/// `Δ(G)` summed over generators.
pub fn delta_of_green(b: &Bialgebra<'_>) -> Result<Tensor2, OperadError> {
    let mut lhs = Tensor2::zero(b.mode(), b.window());
    for c in b.classes() {
        lhs.add_scaled(&b.delta_gen(c)?.value, &inverse(c.aut_order))?;
    }
    Ok(lhs)
}

/// `Σ_w G^w ⊗ g_w` over interface words.
pub fn fdb_right_side(b: &Bialgebra<'_>, g: &GreenFunction) -> Result<Tensor2, OperadError> {
    let d = b.operad();
    let mut rhs = Tensor2::zero(d.mode(), b.window());
    for w in interface_words(d, d.max_arity()) {
        let gw = g_part(b, &w);
        if gw.is_empty() {
            continue;
        }
        let power = green_power(g, d, b.window(), &w)?;
        rhs = rhs.add(&Tensor2::tensor(&power, &gw, b.window())?)?;
    }
    Ok(rhs)
}

/// `Δ(G) = Σ_w G^w ⊗ g_w`, compared coefficientwise.
pub fn fdb_check(b: &Bialgebra<'_>) -> Result<FdbReport, OperadError> {
    let d = b.operad();
    let g = green(b);
    let lhs = delta_of_green(b)?;
    let rhs = fdb_right_side(b, &g)?;
    let mut keys: Vec<&(Monomial, Monomial)> =
        lhs.terms().chain(rhs.terms()).map(|(k, _)| k).collect();
    keys.sort();
    keys.dedup();
    let mut entries = Vec::new();
    for (x, y) in keys {
        let (l, r) = (lhs.coefficient(x, y), rhs.coefficient(x, y));
        entries.push(FdbEntry {
            inner: x.to_string(),
            outer: y.to_string(),
            lhs: fraction(&l),
            rhs: fraction(&r),
            matches: l == r,
        });
    }
    Ok(FdbReport {
        operad: d.name(),
        mode: d.mode().as_str().into(),
        verdict: !entries.is_empty() && entries.iter().all(|e| e.matches),
        cap: d.cap(),
        weight_cap: d.weight_cap(),
        entries,
    })
}

type TwoLevel = (Operation, Vec<Operation>);

fn labels_for(inner: &[Operation], sigmas: &[Perm], symmetric: bool) -> Vec<FactorLabel> {
    let mut out = Vec::new();
    for sigma in sigmas {
        let mut hs: Vec<Vec<Perm>> = vec![Vec::new()];
        for i in 0..inner.len() {
            let n = inner[sigma.apply(i)].arity();
            let choices = if symmetric {
                Perm::all(n)
            } else {
                vec![Perm::identity(n)]
            };
            hs = hs
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |p| {
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

fn act_two_level(d: &dyn Operad, (b, a): &TwoLevel, l: &FactorLabel) -> TwoLevel {
    let inner = (0..a.len())
        .map(|i| d.act(&a[l.sigma.apply(i)], &l.h[i]))
        .collect();
    (d.act(b, &l.sigma), inner)
}

fn two_level_groupoid(
    b: &Bialgebra<'_>,
    objects: &[TwoLevel],
    sigmas: impl Fn(&TwoLevel) -> Vec<Perm>,
) -> Result<BTreeMap<(String, String), Rational>, OperadError> {
    let d = b.operad();
    let symmetric = d.mode().is_symmetric();
    let g = FinGroupoid::from_labelled(
        objects,
        |(outer, _)| outer.arity().to_string(),
        |x| labels_for(&x.1, &sigmas(x), symmetric),
        |x, l| act_two_level(d, x, l),
        |_, l1, l2| l1.then(l2),
        |x| FactorLabel {
            sigma: Perm::identity(x.0.arity()),
            h: x.1.iter().map(|a| Perm::identity(a.arity())).collect(),
        },
    )?;
    let cl = b.classifier();
    let keys: Vec<(String, String)> = objects
        .iter()
        .map(|(outer, inner)| {
            let x = cl.word(inner).map(|m| m.to_string()).unwrap_or_default();
            (x, cl.classify(outer).class_id.clone())
        })
        .collect();
    Ok(g.cardinality_by_label(|i| keys[i].clone())?)
}

fn window_tuples(
    b: &Bialgebra<'_>,
    index: &OpIndex,
    outer: &Operation,
    f: &mut dyn FnMut(&[Operation]),
) {
    let d = b.operad();
    let budget = d.weight_cap().map(|c| c.saturating_sub(d.weight(outer)));
    if d.weight_cap().is_some_and(|c| d.weight(outer) > c) {
        return;
    }
    for_each_tuple(d, index, &outer.inputs, d.cap(), budget, f);
}

#[derive(Clone, Debug, Serialize)]
pub struct C2Entry {
    pub inner: String,
    pub outer: String,
    pub explicit: String,
    pub homotopy_sum: String,
    pub delta_green: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct C2Report {
    pub operad: String,
    pub verdict: bool,
    pub objects: usize,
    pub entries: Vec<C2Entry>,
}

/// Builds the groupoid of two-level trees explicitly and as the homotopy
/// sum over interface words `w` of `(D₁)_w × _w(C₁)` modulo `Aut w`, and
/// compares both cardinality vectors with the coefficients of `Δ(G)`.
pub fn c2_equivalence_check(b: &Bialgebra<'_>) -> Result<C2Report, OperadError> {
    let d = b.operad();
    let index = OpIndex::new(d);
    let symmetric = d.mode().is_symmetric();
    let mut explicit_objects: Vec<TwoLevel> = Vec::new();
    for k in 0..=d.max_arity() {
        for outer in index.of_arity(k) {
            window_tuples(b, &index, outer, &mut |a| {
                explicit_objects.push((outer.clone(), a.to_vec()))
            });
        }
    }
    let explicit = two_level_groupoid(b, &explicit_objects, |x| {
        let k = x.0.arity();
        if symmetric {
            Perm::all(k)
        } else {
            vec![Perm::identity(k)]
        }
    })?;

    let mut summed: BTreeMap<(String, String), Rational> = BTreeMap::new();
    for w in interface_words(d, d.max_arity()) {
        let k = w.len();
        let words: Vec<Vec<Colour>> = interface_orbit(&w, symmetric);
        let word_index: HashMap<Vec<Colour>, usize> = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let gens: Vec<Perm> = if symmetric {
            (0..k.saturating_sub(1))
                .map(|i| Perm::transposition(k, i))
                .collect()
        } else {
            Vec::new()
        };
        let words_grp = action_groupoid(words.len(), k, &gens, |x, p| {
            word_index[&p.permute(&words[x])]
        })?;
        let at = word_index[&w];
        let aut_w: Vec<Perm> = words_grp
            .group
            .iter()
            .filter(|g| words_grp.groupoid.dst(words_grp.morphism(at, g)) == at)
            .cloned()
            .collect();
        let mut objects: Vec<TwoLevel> = Vec::new();
        for outer in index.of_arity(k).iter().filter(|o| o.inputs == w) {
            window_tuples(b, &index, outer, &mut |a| {
                objects.push((outer.clone(), a.to_vec()))
            });
        }
        if objects.is_empty() {
            continue;
        }
        for (key, q) in two_level_groupoid(b, &objects, |_| aut_w.clone())? {
            *summed.entry(key).or_insert_with(Rational::zero) += q;
        }
    }

    let mut from_delta: BTreeMap<(String, String), Rational> = BTreeMap::new();
    for ((x, y), q) in delta_of_green(b)?.terms() {
        from_delta.insert((x.to_string(), y.to_string()), q.clone());
    }
    let mut keys: Vec<&(String, String)> = explicit
        .keys()
        .chain(summed.keys())
        .chain(from_delta.keys())
        .collect();
    keys.sort();
    keys.dedup();
    let mut entries = Vec::new();
    for k in keys {
        let (e, s, g) = (
            zero_if_missing(&explicit, k),
            zero_if_missing(&summed, k),
            zero_if_missing(&from_delta, k),
        );
        entries.push(C2Entry {
            inner: k.0.clone(),
            outer: k.1.clone(),
            explicit: fraction(&e),
            homotopy_sum: fraction(&s),
            delta_green: fraction(&g),
            matches: e == s && s == g,
        });
    }
    Ok(C2Report {
        operad: d.name(),
        verdict: !entries.is_empty() && entries.iter().all(|e| e.matches),
        objects: explicit_objects.len(),
        entries,
    })
}

/// All rearrangements of `w` (just `w` without symmetries).
fn interface_orbit(w: &[Colour], symmetric: bool) -> Vec<Vec<Colour>> {
    if !symmetric {
        return vec![w.to_vec()];
    }
    let mut out: Vec<Vec<Colour>> = Perm::all(w.len()).iter().map(|p| p.permute(w)).collect();
    out.sort();
    out.dedup();
    out
}

fn zero_if_missing(m: &BTreeMap<(String, String), Rational>, k: &(String, String)) -> Rational {
    m.get(k).cloned().unwrap_or_else(Rational::zero)
}
