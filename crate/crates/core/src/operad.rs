//! The operad data model: operations, the operad interface, iso-classes,
//! symmetry factors and axiom validation inside an arity window.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{AmbientMode, Colour, GeneratorSymbol, Monomial, SymbolData, Window};
use crate::error::{AlgebraError, OperadError};
use crate::perm::{block_permutation, factorial, Perm};
use crate::tree::Tree;

/// Structure distinguishing operations with the same profile.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Payload {
    Plain,
    Token(u32),
    /// A planar tree together with the input slot of each leaf.
    Tree {
        shape: Arc<Tree>,
        leaf_slot: Vec<usize>,
    },
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Operation {
    pub inputs: Vec<Colour>,
    pub output: Colour,
    pub payload: Payload,
}

impl Operation {
    pub fn new(inputs: Vec<Colour>, output: Colour, payload: Payload) -> Self {
        Operation {
            inputs,
            output,
            payload,
        }
    }

    pub fn plain(inputs: Vec<Colour>, output: Colour) -> Self {
        Operation::new(inputs, output, Payload::Plain)
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }
}

impl fmt::Debug for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->{}", self.inputs, self.output)?;
        match &self.payload {
            Payload::Plain => Ok(()),
            Payload::Token(t) => write!(f, "#{t}"),
            Payload::Tree { shape, leaf_slot } => write!(f, " {shape} {leaf_slot:?}"),
        }
    }
}

/// A coloured operad restricted to an arity window.
///
/// Permutations act on the right: `act(r, p).inputs[i] = r.inputs[p[i]]`,
/// and `act(act(r, p), q) = act(r, p.then(q))`.
pub trait Operad: Send + Sync {
    fn name(&self) -> String;
    fn mode(&self) -> AmbientMode;
    fn colours(&self) -> Vec<Colour>;

    fn colour_name(&self, c: Colour) -> String {
        c.to_string()
    }

    fn cap(&self) -> usize;

    fn weight_cap(&self) -> Option<usize> {
        None
    }

    /// Largest arity enumerated by `operations`; exceeds `cap` only when
    /// nullary operations let outer operations grow past the window.
    fn max_arity(&self) -> usize {
        self.cap()
    }

    /// Every operation of the given arity inside the weight window.
    fn operations(&self, arity: usize) -> Vec<Operation>;

    /// One canonical representative per iso-class of the given arity.
    fn representatives(&self, arity: usize) -> Vec<Operation> {
        let mut reps: Vec<Operation> = self
            .operations(arity)
            .iter()
            .map(|o| self.canonical(o).0)
            .collect();
        reps.sort();
        reps.dedup();
        reps
    }

    fn contains(&self, op: &Operation) -> bool {
        op.arity() <= self.max_arity() && self.operations(op.arity()).contains(op)
    }

    fn act(&self, op: &Operation, p: &Perm) -> Operation;

    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Result<Operation, OperadError>;

    fn unit(&self, c: Colour) -> Operation;

    fn weight(&self, _op: &Operation) -> usize {
        0
    }

    /// Display name of the class of a canonical representative.
    fn label(&self, rep: &Operation) -> String;

    /// Least element of the orbit and a permutation `p` with `op·p = rep`.
    fn canonical(&self, op: &Operation) -> (Operation, Perm) {
        let n = op.arity();
        if !self.mode().is_symmetric() {
            return (op.clone(), Perm::identity(n));
        }
        Perm::all(n)
            .into_iter()
            .map(|p| (self.act(op, &p), p))
            .min()
            .expect("S_n is nonempty")
    }

    /// The stabilizer of `rep`.
    fn automorphisms(&self, rep: &Operation) -> Vec<Perm> {
        if !self.mode().is_symmetric() {
            return vec![Perm::identity(rep.arity())];
        }
        Perm::all(rep.arity())
            .into_iter()
            .filter(|p| &self.act(rep, p) == rep)
            .collect()
    }

    /// Order of the stabilizer of `rep`.
    fn aut_order(&self, rep: &Operation) -> u64 {
        self.automorphisms(rep).len() as u64
    }

    /// Free operads are locally finite whatever their nullary operations.
    fn is_free(&self) -> bool {
        false
    }

    /// Builtins validate associativity and equivariance on class
    /// representatives of the outer operation; tables are checked on
    /// every operation.
    fn validate_on_representatives(&self) -> bool {
        false
    }
}

/// Checks that `inner` fits the input profile of `outer`.
pub fn check_profile(outer: &Operation, inner: &[Operation]) -> Result<(), OperadError> {
    if outer.arity() != inner.len() {
        return Err(OperadError::NotComposable(format!(
            "{} inputs, {} inner operations",
            outer.arity(),
            inner.len()
        )));
    }
    for (i, (c, a)) in outer.inputs.iter().zip(inner).enumerate() {
        if *c != a.output {
            return Err(OperadError::NotComposable(format!(
                "slot {i} expects colour {c}, got {}",
                a.output
            )));
        }
    }
    Ok(())
}

pub fn window_of(d: &dyn Operad) -> Window {
    Window::with_weight(d.cap(), d.weight_cap())
}

/// Whether an operation is a generator of the bialgebra within the window.
pub fn in_window(d: &dyn Operad, op: &Operation) -> bool {
    op.arity() <= d.cap() && d.weight_cap().is_none_or(|c| d.weight(op) <= c)
}

/// An isomorphism class of operations.
#[derive(Clone, Debug, Serialize)]
pub struct IsoClass {
    #[serde(skip)]
    pub representative: Operation,
    pub class_id: String,
    pub arity: usize,
    pub orbit_size: u64,
    pub aut_order: u64,
    pub weight: usize,
}

impl IsoClass {
    pub fn symbol(&self) -> GeneratorSymbol {
        GeneratorSymbol::new(SymbolData {
            class_id: self.class_id.clone(),
            arity: self.arity,
            in_colours: self.representative.inputs.clone(),
            out_colour: self.representative.output,
            aut_order: self.aut_order,
            weight: self.weight,
        })
    }
}

/// Memoizing classification of operations into iso-classes.
pub struct Classifier<'a> {
    operad: &'a dyn Operad,
    cache: RefCell<HashMap<Operation, (Arc<IsoClass>, Perm)>>,
    symbols: RefCell<HashMap<String, GeneratorSymbol>>,
    auts: RefCell<HashMap<Operation, Arc<Vec<Perm>>>>,
}

impl<'a> Classifier<'a> {
    pub fn new(operad: &'a dyn Operad) -> Self {
        Classifier {
            operad,
            cache: RefCell::new(HashMap::new()),
            symbols: RefCell::new(HashMap::new()),
            auts: RefCell::new(HashMap::new()),
        }
    }

    /// Cached stabilizer of an operation.
    pub fn automorphisms(&self, op: &Operation) -> Arc<Vec<Perm>> {
        if let Some(a) = self.auts.borrow().get(op) {
            return a.clone();
        }
        let a = Arc::new(self.operad.automorphisms(op));
        self.auts.borrow_mut().insert(op.clone(), a.clone());
        a
    }

    pub fn operad(&self) -> &'a dyn Operad {
        self.operad
    }

    /// The class of `op` together with `p` such that `op·p` is the representative.
    pub fn classify_with_perm(&self, op: &Operation) -> (Arc<IsoClass>, Perm) {
        if let Some(hit) = self.cache.borrow().get(op) {
            return hit.clone();
        }
        let (rep, p) = self.operad.canonical(op);
        let rep_hit = self.cache.borrow().get(&rep).map(|(c, _)| c.clone());
        let class = match rep_hit {
            Some(c) => c,
            None => {
                let aut = self.operad.aut_order(&rep);
                let n = rep.arity();
                let class = Arc::new(IsoClass {
                    class_id: self.operad.label(&rep),
                    arity: n,
                    orbit_size: if self.operad.mode().is_symmetric() {
                        factorial(n) / aut
                    } else {
                        1
                    },
                    aut_order: aut,
                    weight: self.operad.weight(&rep),
                    representative: rep.clone(),
                });
                self.cache
                    .borrow_mut()
                    .insert(rep.clone(), (class.clone(), Perm::identity(n)));
                class
            }
        };
        self.cache
            .borrow_mut()
            .insert(op.clone(), (class.clone(), p.clone()));
        (class, p)
    }

    pub fn classify(&self, op: &Operation) -> Arc<IsoClass> {
        self.classify_with_perm(op).0
    }

    /// Checked classification of an operation supplied from outside.
    pub fn iso_classify(&self, op: &Operation) -> Result<Arc<IsoClass>, OperadError> {
        if !self.operad.contains(op) {
            return Err(OperadError::UnknownOperation(format!("{op:?}")));
        }
        Ok(self.classify(op))
    }

    pub fn symbol(&self, op: &Operation) -> GeneratorSymbol {
        let class = self.classify(op);
        if let Some(s) = self.symbols.borrow().get(&class.class_id) {
            return s.clone();
        }
        let s = class.symbol();
        self.symbols
            .borrow_mut()
            .insert(class.class_id.clone(), s.clone());
        s
    }

    /// The word of classes of a tuple of operations.
    pub fn word(&self, ops: &[Operation]) -> Result<Monomial, AlgebraError> {
        Monomial::from_factors(
            self.operad.mode(),
            ops.iter().map(|o| self.symbol(o)).collect(),
        )
    }
}

/// All iso-classes of arity at most `max_arity` inside the weight window,
/// sorted by arity and class id.
pub fn enumerate_classes_upto(cl: &Classifier<'_>, max_arity: usize) -> Vec<Arc<IsoClass>> {
    let d = cl.operad();
    let mut seen = BTreeMap::new();
    for n in 0..=max_arity.min(d.max_arity()) {
        for op in d.representatives(n) {
            let c = cl.classify(&op);
            seen.entry((n, c.class_id.clone())).or_insert(c);
        }
    }
    seen.into_values().collect()
}

/// Iso-classes of generators within the window.
pub fn enumerate_classes(cl: &Classifier<'_>) -> Vec<Arc<IsoClass>> {
    enumerate_classes_upto(cl, cl.operad().cap())
}

/// `|Aut|` of a word: the product of the factors' automorphism orders and,
/// in symmetric mode, the factorials of the multiplicities.
pub fn aut_order_word(d: &dyn Operad, m: &Monomial) -> Result<u64, AlgebraError> {
    if m.mode() != d.mode() {
        return Err(AlgebraError::ModeMismatch(d.mode(), m.mode()));
    }
    if !d.mode().is_symmetric() {
        return Ok(1);
    }
    let mut out = 1u64;
    for (g, k) in m.multiplicities() {
        out *= g.aut_order().pow(k as u32) * factorial(k);
    }
    Ok(out)
}

/// Operations grouped by arity and output colour.
pub struct OpIndex {
    by_out: HashMap<(usize, Colour), Vec<Operation>>,
    by_arity: BTreeMap<usize, Vec<Operation>>,
}

impl OpIndex {
    /// Every operation up to `max_arity`.
    pub fn new(d: &dyn Operad) -> Self {
        OpIndex::from_ops((0..=d.max_arity()).flat_map(|n| d.operations(n)))
    }

    /// One canonical representative per iso-class.
    pub fn representatives(cl: &Classifier<'_>) -> Self {
        let reps = enumerate_classes_upto(cl, cl.operad().max_arity());
        OpIndex::from_ops(reps.iter().map(|c| c.representative.clone()))
    }

    pub fn from_ops(ops: impl IntoIterator<Item = Operation>) -> Self {
        let mut by_out: HashMap<(usize, Colour), Vec<Operation>> = HashMap::new();
        let mut by_arity: BTreeMap<usize, Vec<Operation>> = BTreeMap::new();
        for op in ops {
            by_out
                .entry((op.arity(), op.output))
                .or_default()
                .push(op.clone());
            by_arity.entry(op.arity()).or_default().push(op);
        }
        OpIndex { by_out, by_arity }
    }

    pub fn of_arity(&self, n: usize) -> &[Operation] {
        self.by_arity.get(&n).map_or(&[], |v| v.as_slice())
    }

    pub fn with_output(&self, n: usize, c: Colour) -> &[Operation] {
        self.by_out.get(&(n, c)).map_or(&[], |v| v.as_slice())
    }

    pub fn max_arity(&self) -> usize {
        self.by_arity.keys().next_back().copied().unwrap_or(0)
    }
}

/// Calls `f` on every tuple `(a_1, …, a_k)` with `a_i.output = outs[i]`,
/// total arity at most `max_arity` and total weight at most `max_weight`.
pub fn for_each_tuple(
    d: &dyn Operad,
    index: &OpIndex,
    outs: &[Colour],
    max_arity: usize,
    max_weight: Option<usize>,
    f: &mut dyn FnMut(&[Operation]),
) {
    tuples(d, index, outs, max_arity, false, max_weight, f)
}

/// As [`for_each_tuple`] but with total arity exactly `arity`.
pub fn for_each_tuple_exact(
    d: &dyn Operad,
    index: &OpIndex,
    outs: &[Colour],
    arity: usize,
    max_weight: Option<usize>,
    f: &mut dyn FnMut(&[Operation]),
) {
    tuples(d, index, outs, arity, true, max_weight, f)
}

fn tuples(
    d: &dyn Operad,
    index: &OpIndex,
    outs: &[Colour],
    max_arity: usize,
    exact: bool,
    max_weight: Option<usize>,
    f: &mut dyn FnMut(&[Operation]),
) {
    #[allow(clippy::too_many_arguments)]
    fn go(
        d: &dyn Operad,
        index: &OpIndex,
        outs: &[Colour],
        arity_left: usize,
        exact: bool,
        weight_left: Option<usize>,
        acc: &mut Vec<Operation>,
        f: &mut dyn FnMut(&[Operation]),
    ) {
        let Some((&c, rest)) = outs.split_first() else {
            if !exact || arity_left == 0 {
                f(acc);
            }
            return;
        };
        for n in 0..=arity_left.min(index.max_arity()) {
            for op in index.with_output(n, c) {
                let w = d.weight(op);
                if weight_left.is_some_and(|l| w > l) {
                    continue;
                }
                acc.push(op.clone());
                go(
                    d,
                    index,
                    rest,
                    arity_left - n,
                    exact,
                    weight_left.map(|l| l - w),
                    acc,
                    f,
                );
                acc.pop();
            }
        }
    }
    go(
        d,
        index,
        outs,
        max_arity,
        exact,
        max_weight,
        &mut Vec::new(),
        f,
    );
}

/// Block permutation `⟨σ; h⟩` for inner operations of the given arities.
pub fn block_perm_for(inner: &[Operation], sigma: &Perm, h: &[Perm]) -> Perm {
    let lengths: Vec<usize> = inner.iter().map(|a| a.arity()).collect();
    block_permutation(&lengths, sigma, h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Closure,
    Unit,
    Action,
    Associativity,
    Equivariance,
}

/// A composable triple `(c; b; a)`.
pub type Triple = (Operation, Vec<Operation>, Vec<Operation>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
    #[serde(skip)]
    pub triple: Option<Triple>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub checked: BTreeMap<String, u64>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: ViolationKind, detail: String) {
        self.violations.push(Violation {
            kind,
            detail,
            triple: None,
        });
    }

    fn tick(&mut self, what: &str) {
        *self.checked.entry(what.to_string()).or_default() += 1;
    }
}

/// Class label of an operation, with the permutation when it is not canonical.
fn show(d: &dyn Operad, op: &Operation) -> String {
    if !d.contains(op) {
        return format!("{op:?}");
    }
    let (rep, p) = d.canonical(op);
    let label = d.label(&rep);
    if p.is_identity() {
        label
    } else {
        format!("{label}·{:?}", p.inverse())
    }
}

fn show_all(d: &dyn Operad, ops: &[Operation]) -> String {
    let parts: Vec<String> = ops.iter().map(|o| show(d, o)).collect();
    format!("[{}]", parts.join(", "))
}

fn compose_in(
    d: &dyn Operad,
    report: &mut ValidationReport,
    outer: &Operation,
    inner: &[Operation],
) -> Option<Operation> {
    match d.compose(outer, inner) {
        Ok(r) => Some(r),
        Err(e) => {
            report.push(
                ViolationKind::Closure,
                format!(
                    "compose({outer}; {inner}) failed: {e}",
                    outer = show(d, outer),
                    inner = show_all(d, inner)
                ),
            );
            None
        }
    }
}

/// Checks unit laws, the right action, associativity and equivariance of
/// composition on everything whose total arity is within the cap.
pub fn validate_operad(d: &dyn Operad) -> ValidationReport {
    let mut report = ValidationReport::default();
    let cap = d.cap();
    let wcap = d.weight_cap();
    let index = OpIndex::new(d);
    let cl = Classifier::new(d);
    let symmetric = d.mode().is_symmetric();

    // unit laws
    for n in 0..=cap {
        for r in index.of_arity(n) {
            report.tick("unit");
            let left = compose_in(d, &mut report, &d.unit(r.output), std::slice::from_ref(r));
            if left.as_ref().is_some_and(|x| x != r) {
                report.push(
                    ViolationKind::Unit,
                    format!("unit ∘ {r} ≠ {r}", r = show(d, r)),
                );
            }
            let units: Vec<_> = r.inputs.iter().map(|&c| d.unit(c)).collect();
            let right = compose_in(d, &mut report, r, &units);
            if right.as_ref().is_some_and(|x| x != r) {
                report.push(
                    ViolationKind::Unit,
                    format!("{r} ∘ units ≠ {r}", r = show(d, r)),
                );
            }
        }
    }

    // right action
    if symmetric {
        for n in 2..=cap {
            let all = Perm::all(n);
            let gens: Vec<_> = (0..n - 1).map(|i| Perm::transposition(n, i)).collect();
            for r in index.of_arity(n) {
                if &d.act(r, &Perm::identity(n)) != r {
                    report.push(
                        ViolationKind::Action,
                        format!("{r}·id ≠ {r}", r = show(d, r)),
                    );
                }
                for p in &all {
                    let rp = d.act(r, p);
                    if !d.contains(&rp) {
                        report.push(
                            ViolationKind::Action,
                            format!("{r}·{p:?} not an operation", r = show(d, r)),
                        );
                        continue;
                    }
                    if rp.inputs != p.permute(&r.inputs) || rp.output != r.output {
                        report.push(
                            ViolationKind::Action,
                            format!("{r}·{p:?} has the wrong profile", r = show(d, r)),
                        );
                    }
                    for q in &gens {
                        report.tick("action");
                        if d.act(&rp, q) != d.act(r, &p.then(q)) {
                            report.push(
                                ViolationKind::Action,
                                format!("({r}·{p:?})·{q:?} ≠ {r}·({p:?}{q:?})", r = show(d, r)),
                            );
                        }
                    }
                }
            }
        }
    }

    let outers = |k: usize| -> Vec<Operation> {
        if d.validate_on_representatives() {
            let mut reps: Vec<Operation> = index
                .of_arity(k)
                .iter()
                .map(|o| cl.classify(o).representative.clone())
                .collect();
            reps.sort();
            reps.dedup();
            reps
        } else {
            index.of_arity(k).to_vec()
        }
    };

    for k in 0..=cap.max(d.max_arity()) {
        for c in outers(k) {
            let wc = d.weight(&c);
            if wcap.is_some_and(|w| wc > w) {
                continue;
            }
            let inner_w = wcap.map(|w| w - wc);
            for_each_tuple(d, &index, &c.inputs, cap, inner_w, &mut |b| {
                let Some(cb) = compose_in(d, &mut report, &c, b) else {
                    return;
                };
                if !d.contains(&cb) {
                    report.push(
                        ViolationKind::Closure,
                        format!(
                            "compose({c}; {b}) not an operation",
                            c = show(d, &c),
                            b = show_all(d, b)
                        ),
                    );
                    return;
                }
                check_equivariance(d, &mut report, &c, b, &cb);
                // associativity with a third level under b
                let outs: Vec<Colour> = b.iter().flat_map(|x| x.inputs.iter().copied()).collect();
                let wb = d.weight(&cb);
                let lengths: Vec<usize> = b.iter().map(|x| x.arity()).collect();
                for_each_tuple(
                    d,
                    &index,
                    &outs,
                    cap,
                    wcap.map(|w| w - wb.min(w)),
                    &mut |a| {
                        report.tick("associativity");
                        let Some(lhs) = compose_in(d, &mut report, &cb, a) else {
                            return;
                        };
                        let mut inner = Vec::with_capacity(b.len());
                        let mut start = 0;
                        for (bi, &len) in b.iter().zip(&lengths) {
                            let Some(x) = compose_in(d, &mut report, bi, &a[start..start + len])
                            else {
                                return;
                            };
                            inner.push(x);
                            start += len;
                        }
                        let Some(rhs) = compose_in(d, &mut report, &c, &inner) else {
                            return;
                        };
                        if lhs != rhs {
                            report.violations.push(Violation {
                                kind: ViolationKind::Associativity,
                                detail: format!(
                                    "({c}; {b}); {a}: {lhs} ≠ {rhs}",
                                    c = show(d, &c),
                                    b = show_all(d, b),
                                    a = show_all(d, a),
                                    lhs = show(d, &lhs),
                                    rhs = show(d, &rhs)
                                ),
                                triple: Some((c.clone(), b.to_vec(), a.to_vec())),
                            });
                        }
                    },
                );
            });
        }
    }
    report
}

/// `compose(c·σ; b_{σ(i)}·h_i) = compose(c; b)·⟨σ; h⟩`, for all σ and
/// for h running over adjacent transpositions in one block at a time.
fn check_equivariance(
    d: &dyn Operad,
    report: &mut ValidationReport,
    c: &Operation,
    b: &[Operation],
    cb: &Operation,
) {
    if !d.mode().is_symmetric() {
        return;
    }
    let k = c.arity();
    let ids: Vec<Perm> = b.iter().map(|x| Perm::identity(x.arity())).collect();
    let mut labels: Vec<(Perm, Vec<Perm>)> = Perm::all(k)
        .into_iter()
        .map(|s| {
            let h = (0..k)
                .map(|i| Perm::identity(b[s.apply(i)].arity()))
                .collect();
            (s, h)
        })
        .collect();
    for (i, x) in b.iter().enumerate() {
        for t in 0..x.arity().saturating_sub(1) {
            let mut h = ids.clone();
            h[i] = Perm::transposition(x.arity(), t);
            labels.push((Perm::identity(k), h));
        }
    }
    for (sigma, h) in labels {
        report.tick("equivariance");
        let c2 = d.act(c, &sigma);
        let b2: Vec<Operation> = (0..k).map(|i| d.act(&b[sigma.apply(i)], &h[i])).collect();
        let lhs = match d.compose(&c2, &b2) {
            Ok(x) => x,
            Err(e) => {
                report.push(
                    ViolationKind::Closure,
                    format!(
                        "compose({c2}; {b2}) failed: {e}",
                        c2 = show(d, &c2),
                        b2 = show_all(d, &b2)
                    ),
                );
                continue;
            }
        };
        let rhs = d.act(cb, &block_perm_for(b, &sigma, &h));
        if lhs != rhs {
            report.push(
                ViolationKind::Equivariance,
                format!(
                    "{c} with {b} under ({sigma:?}, {h:?})",
                    c = show(d, c),
                    b = show_all(d, b)
                ),
            );
        }
    }
}
