//! Explicit finite groupoids and the constructions used to compute
//! symmetry factors: components, automorphism orders, homotopy
//! cardinality, homotopy fibres, iso-comma pullbacks and action groupoids.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::hash::Hash;

use num_traits::Zero;
use serde_json::json;

use crate::algebra::{integer, Rational};
use crate::error::GroupoidError;
use crate::perm::{group_closure, Perm};

pub type MorId = usize;

/// A finite groupoid with explicit morphism sets and composition table.
/// `compose(f, g)` is "f then g" for `f: x → y`, `g: y → z`.
#[derive(Clone, Debug)]
pub struct FinGroupoid {
    labels: Vec<String>,
    src: Vec<usize>,
    dst: Vec<usize>,
    identity: Vec<MorId>,
    inverse: Vec<MorId>,
    compose: HashMap<(MorId, MorId), MorId>,
    out: Vec<Vec<MorId>>,
    component: Vec<usize>,
}

#[derive(Default)]
pub struct GroupoidBuilder {
    labels: Vec<String>,
    src: Vec<usize>,
    dst: Vec<usize>,
    identity: Vec<Option<MorId>>,
    compose: HashMap<(MorId, MorId), MorId>,
}

impl GroupoidBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, label: impl Into<String>) -> usize {
        self.labels.push(label.into());
        self.identity.push(None);
        self.labels.len() - 1
    }

    pub fn add_morphism(&mut self, src: usize, dst: usize) -> MorId {
        self.src.push(src);
        self.dst.push(dst);
        self.src.len() - 1
    }

    pub fn set_identity(&mut self, object: usize, m: MorId) {
        self.identity[object] = Some(m);
    }

    pub fn set_compose(&mut self, f: MorId, g: MorId, fg: MorId) {
        self.compose.insert((f, g), fg);
    }

    /// Validates every groupoid axiom and freezes the table.
    pub fn build(self) -> Result<FinGroupoid, GroupoidError> {
        let n = self.labels.len();
        let m = self.src.len();
        let invalid = |s: String| Err(GroupoidError::Invalid(s));
        for i in 0..m {
            if self.src[i] >= n || self.dst[i] >= n {
                return Err(GroupoidError::UnknownObject(self.src[i].max(self.dst[i])));
            }
        }
        let mut identity = Vec::with_capacity(n);
        for (x, id) in self.identity.iter().enumerate() {
            match id {
                Some(i) if self.src[*i] == x && self.dst[*i] == x => identity.push(*i),
                _ => return invalid(format!("object {x} lacks an identity")),
            }
        }
        let mut out = vec![Vec::new(); n];
        let mut into = vec![Vec::new(); n];
        for i in 0..m {
            out[self.src[i]].push(i);
            into[self.dst[i]].push(i);
        }
        // closure and typing
        for y in 0..n {
            for &f in &into[y] {
                for &g in &out[y] {
                    match self.compose.get(&(f, g)) {
                        Some(&h) if self.src[h] == self.src[f] && self.dst[h] == self.dst[g] => {}
                        Some(_) => return invalid(format!("composite of {f},{g} mistyped")),
                        None => return invalid(format!("composite of {f},{g} missing")),
                    }
                }
            }
        }
        let c = |f: MorId, g: MorId| self.compose[&(f, g)];
        for x in 0..n {
            let id = identity[x];
            for &f in &out[x] {
                if c(id, f) != f {
                    return invalid(format!("left identity fails on {f}"));
                }
            }
            for &f in &into[x] {
                if c(f, id) != f {
                    return invalid(format!("right identity fails on {f}"));
                }
            }
        }
        // associativity on all composable triples
        for f in 0..m {
            for &g in &out[self.dst[f]] {
                let fg = c(f, g);
                for &h in &out[self.dst[g]] {
                    if c(fg, h) != c(f, c(g, h)) {
                        return invalid(format!("associativity fails on ({f},{g},{h})"));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; m];
        for f in 0..m {
            let (x, y) = (self.src[f], self.dst[f]);
            let inv = out[y]
                .iter()
                .copied()
                .find(|&g| self.dst[g] == x && c(f, g) == identity[x] && c(g, f) == identity[y]);
            match inv {
                Some(g) => inverse[f] = g,
                None => return invalid(format!("morphism {f} is not invertible")),
            }
        }
        let component = union_find_components(n, (0..m).map(|i| (self.src[i], self.dst[i])));
        Ok(FinGroupoid {
            labels: self.labels,
            src: self.src,
            dst: self.dst,
            identity,
            inverse,
            compose: self.compose,
            out,
            component,
        })
    }
}

/// Component index per object; components are numbered in order of their
/// least object, which is the representative.
fn union_find_components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            // keep the smaller index as root
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    }
    let mut index = HashMap::new();
    let mut out = vec![0; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        let next = index.len();
        out[x] = *index.entry(r).or_insert(next);
    }
    out
}

impl FinGroupoid {
    /// Builds the groupoid whose morphisms out of each object `o` are the
    /// pairs `(o, l)` for `l` in `labels(o)`, with target `target(o, l)`.
    /// Composition is `compose(l1, l2)` (first `l1`, then `l2`), and must
    /// land in the label set of the source.
    pub fn from_labelled<O, L>(
        objects: &[O],
        label_of: impl Fn(&O) -> String,
        labels: impl Fn(&O) -> Vec<L>,
        target: impl Fn(&O, &L) -> O,
        compose: impl Fn(&O, &L, &L) -> L,
        identity: impl Fn(&O) -> L,
    ) -> Result<FinGroupoid, GroupoidError>
    where
        O: Clone + Eq + Hash,
        L: Clone + Eq + Hash,
    {
        let index: HashMap<O, usize> = objects
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, o)| (o, i))
            .collect();
        let mut b = GroupoidBuilder::new();
        for o in objects {
            b.add_object(label_of(o));
        }
        let mut mor: HashMap<(usize, L), MorId> = HashMap::new();
        let mut mor_label: Vec<L> = Vec::new();
        let mut per_object: Vec<Vec<MorId>> = vec![Vec::new(); objects.len()];
        for (x, o) in objects.iter().enumerate() {
            for l in labels(o) {
                let t = target(o, &l);
                let Some(&y) = index.get(&t) else {
                    return Err(GroupoidError::Invalid(
                        "target outside the object set".into(),
                    ));
                };
                let id = b.add_morphism(x, y);
                mor.insert((x, l.clone()), id);
                mor_label.push(l);
                per_object[x].push(id);
            }
        }
        for (x, o) in objects.iter().enumerate() {
            let id = identity(o);
            let Some(&m) = mor.get(&(x, id)) else {
                return Err(GroupoidError::Invalid("identity label missing".into()));
            };
            b.set_identity(x, m);
        }
        for x in 0..objects.len() {
            for &f in &per_object[x] {
                let y = b.dst[f];
                for &g in &per_object[y] {
                    let l = compose(&objects[x], &mor_label[f], &mor_label[g]);
                    let Some(&h) = mor.get(&(x, l)) else {
                        return Err(GroupoidError::Invalid("composite label missing".into()));
                    };
                    b.set_compose(f, g, h);
                }
            }
        }
        b.build()
    }

    /// One object per element, identities only.
    pub fn discrete(labels: &[String]) -> FinGroupoid {
        let mut b = GroupoidBuilder::new();
        for l in labels {
            let x = b.add_object(l.clone());
            let id = b.add_morphism(x, x);
            b.set_identity(x, id);
            b.set_compose(id, id, id);
        }
        b.build().expect("discrete groupoid is valid")
    }

    /// Disjoint union.
    pub fn coproduct(&self, other: &FinGroupoid) -> FinGroupoid {
        let mut b = GroupoidBuilder::new();
        let (n, m) = (self.object_count(), self.morphism_count());
        for g in [self, other] {
            for l in &g.labels {
                b.add_object(l.clone());
            }
        }
        for (off_o, off_m, g) in [(0, 0, self), (n, m, other)] {
            for f in 0..g.morphism_count() {
                b.add_morphism(g.src[f] + off_o, g.dst[f] + off_o);
            }
            for x in 0..g.object_count() {
                b.set_identity(x + off_o, g.identity[x] + off_m);
            }
            for (&(f, h), &fh) in &g.compose {
                b.set_compose(f + off_m, h + off_m, fh + off_m);
            }
        }
        b.build().expect("coproduct of valid groupoids is valid")
    }

    pub fn object_count(&self) -> usize {
        self.labels.len()
    }
    pub fn morphism_count(&self) -> usize {
        self.src.len()
    }
    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }
    pub fn src(&self, f: MorId) -> usize {
        self.src[f]
    }
    pub fn dst(&self, f: MorId) -> usize {
        self.dst[f]
    }
    pub fn identity(&self, x: usize) -> MorId {
        self.identity[x]
    }
    pub fn inverse(&self, f: MorId) -> MorId {
        self.inverse[f]
    }
    /// `f` then `g`; `None` if not composable.
    pub fn compose(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.compose.get(&(f, g)).copied()
    }
    pub fn out_morphisms(&self, x: usize) -> &[MorId] {
        &self.out[x]
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<MorId> {
        self.out[x]
            .iter()
            .copied()
            .filter(|&f| self.dst[f] == y)
            .collect()
    }

    /// Components as object lists, each sorted; ordered by representative.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let k = self.component.iter().copied().max().map_or(0, |c| c + 1);
        let mut out = vec![Vec::new(); k];
        for (x, &c) in self.component.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    pub fn component_of(&self, x: usize) -> usize {
        self.component[x]
    }

    /// Least object of each component.
    pub fn representatives(&self) -> Vec<usize> {
        self.components().into_iter().map(|c| c[0]).collect()
    }

    pub fn aut_order(&self, x: usize) -> Result<u64, GroupoidError> {
        if x >= self.object_count() {
            return Err(GroupoidError::UnknownObject(x));
        }
        Ok(self.out[x].iter().filter(|&&f| self.dst[f] == x).count() as u64)
    }

    /// Homotopy cardinality: sum over components of `1/|Aut|`.
    pub fn cardinality(&self) -> Rational {
        self.representatives()
            .into_iter()
            .map(|x| Rational::new(1.into(), (self.aut_order(x).unwrap() as i64).into()))
            .sum()
    }

    /// Homotopy cardinality split by a labelling that is constant on
    /// components (checked).
    pub fn cardinality_by_label<K: Ord + Clone>(
        &self,
        label: impl Fn(usize) -> K,
    ) -> Result<BTreeMap<K, Rational>, GroupoidError> {
        let mut out = BTreeMap::new();
        for comp in self.components() {
            let k = label(comp[0]);
            if comp.iter().any(|&x| label(x) != k) {
                return Err(GroupoidError::Invalid(
                    "labelling is not constant on a component".into(),
                ));
            }
            let aut = self.aut_order(comp[0])?;
            *out.entry(k).or_insert_with(Rational::zero) +=
                Rational::new(1.into(), (aut as i64).into());
        }
        Ok(out)
    }

    pub fn debug_json(&self) -> serde_json::Value {
        let mut hom = Vec::new();
        for x in 0..self.object_count() {
            for y in 0..self.object_count() {
                let n = self.hom(x, y).len();
                if n > 0 {
                    hom.push(json!({"src": x, "dst": y, "size": n}));
                }
            }
        }
        let comps: Vec<_> = self
            .components()
            .into_iter()
            .map(|c| json!({"representative": c[0], "objects": c, "aut_order": self.aut_order(c[0]).unwrap()}))
            .collect();
        json!({"objects": self.labels, "hom": hom, "components": comps})
    }
}

/// A functor between finite groupoids, validated on construction.
pub struct GroupoidFunctor<'a> {
    source: &'a FinGroupoid,
    target: &'a FinGroupoid,
    obj_map: Vec<usize>,
    mor_map: Vec<MorId>,
}

impl<'a> GroupoidFunctor<'a> {
    pub fn new(
        source: &'a FinGroupoid,
        target: &'a FinGroupoid,
        obj_map: Vec<usize>,
        mor_map: Vec<MorId>,
    ) -> Result<Self, GroupoidError> {
        let bad = |s: &str| Err(GroupoidError::InvalidFunctor(s.into()));
        if obj_map.len() != source.object_count() || mor_map.len() != source.morphism_count() {
            return bad("map sizes do not match the source");
        }
        if obj_map.iter().any(|&y| y >= target.object_count())
            || mor_map.iter().any(|&g| g >= target.morphism_count())
        {
            return bad("map lands outside the target");
        }
        for f in 0..source.morphism_count() {
            let g = mor_map[f];
            if target.src(g) != obj_map[source.src(f)] || target.dst(g) != obj_map[source.dst(f)] {
                return bad("morphism map does not respect endpoints");
            }
        }
        for x in 0..source.object_count() {
            if mor_map[source.identity(x)] != target.identity(obj_map[x]) {
                return bad("identity not preserved");
            }
        }
        for (&(f, g), &fg) in &source.compose {
            if target.compose(mor_map[f], mor_map[g]) != Some(mor_map[fg]) {
                return bad("composition not preserved");
            }
        }
        Ok(GroupoidFunctor {
            source,
            target,
            obj_map,
            mor_map,
        })
    }

    /// The identity functor.
    pub fn identity(g: &'a FinGroupoid) -> Self {
        GroupoidFunctor {
            source: g,
            target: g,
            obj_map: (0..g.object_count()).collect(),
            mor_map: (0..g.morphism_count()).collect(),
        }
    }

    /// The functor from the one-object trivial groupoid naming object `b`.
    pub fn name(
        point: &'a FinGroupoid,
        target: &'a FinGroupoid,
        b: usize,
    ) -> Result<Self, GroupoidError> {
        GroupoidFunctor::new(point, target, vec![b], vec![target.identity(b)])
    }

    pub fn source(&self) -> &'a FinGroupoid {
        self.source
    }
    pub fn target(&self) -> &'a FinGroupoid {
        self.target
    }
    pub fn on_object(&self, x: usize) -> usize {
        self.obj_map[x]
    }
    pub fn on_morphism(&self, f: MorId) -> MorId {
        self.mor_map[f]
    }
}

/// Homotopy fibre of `f` over `b`, with the source object of each fibre
/// object. Objects are pairs `(e, β: F e → b)`; a morphism
/// `(e, β) → (e', β')` is `φ: e → e'` with `F φ ; β' = β`.
pub fn homotopy_fiber(
    f: &GroupoidFunctor<'_>,
    b: usize,
) -> Result<(FinGroupoid, Vec<usize>), GroupoidError> {
    let (e_grp, b_grp) = (f.source(), f.target());
    if b >= b_grp.object_count() {
        return Err(GroupoidError::UnknownObject(b));
    }
    let mut objects = Vec::new();
    for e in 0..e_grp.object_count() {
        for beta in b_grp.hom(f.on_object(e), b) {
            objects.push((e, beta));
        }
    }
    let g = FinGroupoid::from_labelled(
        &objects,
        |&(e, beta)| format!("({},{})", e_grp.label(e), beta),
        |&(e, _)| e_grp.out_morphisms(e).to_vec(),
        |&(_, beta), &phi| {
            let back = b_grp.inverse(f.on_morphism(phi));
            (e_grp.dst(phi), b_grp.compose(back, beta).unwrap())
        },
        |_, &p, &q| e_grp.compose(p, q).unwrap(),
        |&(e, _)| e_grp.identity(e),
    )?;
    Ok((g, objects.into_iter().map(|(e, _)| e).collect()))
}

/// `‖E_b‖ / |Aut b|` for each component representative `b` of the base.
pub fn fiber_cardinality_vector(
    f: &GroupoidFunctor<'_>,
) -> Result<BTreeMap<usize, Rational>, GroupoidError> {
    let mut out = BTreeMap::new();
    for b in f.target().representatives() {
        let (fib, _) = homotopy_fiber(f, b)?;
        let aut = f.target().aut_order(b)?;
        let v = fib.cardinality() / integer(aut);
        if !v.is_zero() {
            out.insert(b, v);
        }
    }
    Ok(out)
}

/// Iso-comma object of `F: X → S` and `G: Y → S`: objects `(x, y, σ: F x → G y)`.
/// Returns the groupoid and the `(x, y)` of each object.
pub fn pullback(
    f: &GroupoidFunctor<'_>,
    g: &GroupoidFunctor<'_>,
) -> Result<(FinGroupoid, Vec<(usize, usize)>), GroupoidError> {
    if !std::ptr::eq(f.target(), g.target()) {
        return Err(GroupoidError::InvalidFunctor(
            "functors have different targets".into(),
        ));
    }
    let (xg, yg, sg) = (f.source(), g.source(), f.target());
    let mut objects = Vec::new();
    for x in 0..xg.object_count() {
        for y in 0..yg.object_count() {
            for s in sg.hom(f.on_object(x), g.on_object(y)) {
                objects.push((x, y, s));
            }
        }
    }
    let p = FinGroupoid::from_labelled(
        &objects,
        |&(x, y, s)| format!("({},{},{})", xg.label(x), yg.label(y), s),
        |&(x, y, _)| {
            let mut v = Vec::new();
            for &phi in xg.out_morphisms(x) {
                for &psi in yg.out_morphisms(y) {
                    v.push((phi, psi));
                }
            }
            v
        },
        |&(_, _, s), &(phi, psi)| {
            let back = sg.inverse(f.on_morphism(phi));
            let s2 = sg
                .compose(sg.compose(back, s).unwrap(), g.on_morphism(psi))
                .unwrap();
            (xg.dst(phi), yg.dst(psi), s2)
        },
        |_, &(p1, q1), &(p2, q2)| (xg.compose(p1, p2).unwrap(), yg.compose(q1, q2).unwrap()),
        |&(x, y, _)| (xg.identity(x), yg.identity(y)),
    )?;
    Ok((p, objects.into_iter().map(|(x, y, _)| (x, y)).collect()))
}

/// Checks `P ≃ ∫^s X_s × Y_s` at the level of cardinality vectors over
/// `π₀X × π₀Y`.
pub fn split_check(
    f: &GroupoidFunctor<'_>,
    g: &GroupoidFunctor<'_>,
) -> Result<bool, GroupoidError> {
    let (xg, yg) = (f.source(), g.source());
    let (p, coords) = pullback(f, g)?;
    let lhs = p.cardinality_by_label(|o| {
        let (x, y) = coords[o];
        (xg.component_of(x), yg.component_of(y))
    })?;
    let mut rhs: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for s in f.target().representatives() {
        let (fx, ex) = homotopy_fiber(f, s)?;
        let (fy, ey) = homotopy_fiber(g, s)?;
        let vx = fx.cardinality_by_label(|o| xg.component_of(ex[o]))?;
        let vy = fy.cardinality_by_label(|o| yg.component_of(ey[o]))?;
        let aut = integer(f.target().aut_order(s)?);
        for (cx, a) in &vx {
            for (cy, b) in &vy {
                *rhs.entry((*cx, *cy)).or_insert_with(Rational::zero) += a * b / &aut;
            }
        }
    }
    rhs.retain(|_, v| !v.is_zero());
    Ok(lhs == rhs)
}

/// Action groupoid of a permutation group acting from the right on a
/// finite set, together with the enumerated group.
pub struct ActionGroupoid {
    pub groupoid: FinGroupoid,
    pub group: Vec<Perm>,
    index: HashMap<Perm, usize>,
    points: usize,
}

impl ActionGroupoid {
    /// Morphism `x → x·g`.
    pub fn morphism(&self, x: usize, g: &Perm) -> MorId {
        x * self.group.len() + self.index[g]
    }
    pub fn points(&self) -> usize {
        self.points
    }
}

/// Builds the action groupoid of the group generated by `generators`
/// (all of degree `degree`) acting on `0..points` by `act`. Morphisms
/// `x → x·g` are labelled by group elements.
pub fn action_groupoid(
    points: usize,
    degree: usize,
    generators: &[Perm],
    act: impl Fn(usize, &Perm) -> usize,
) -> Result<ActionGroupoid, GroupoidError> {
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(GroupoidError::NotAnAction(
            "generator degree mismatch".into(),
        ));
    }
    let group = group_closure(degree, generators);
    let id = Perm::identity(degree);
    for x in 0..points {
        if act(x, &id) != x {
            return Err(GroupoidError::NotAnAction(format!("identity moves {x}")));
        }
        for g in &group {
            let xg = act(x, g);
            if xg >= points {
                return Err(GroupoidError::NotAnAction(format!("{x}·g leaves the set")));
            }
            for h in generators {
                if act(xg, h) != act(x, &g.then(h)) {
                    return Err(GroupoidError::NotAnAction(format!(
                        "(x·g)·h ≠ x·(gh) at x = {x}"
                    )));
                }
            }
        }
    }
    let index: HashMap<Perm, usize> = group
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, g)| (g, i))
        .collect();
    let n = group.len();
    let mut b = GroupoidBuilder::new();
    for x in 0..points {
        b.add_object(x.to_string());
    }
    for x in 0..points {
        for g in &group {
            b.add_morphism(x, act(x, g));
        }
        b.set_identity(x, x * n + index[&id]);
    }
    for x in 0..points {
        for (i, g) in group.iter().enumerate() {
            let y = act(x, g);
            for (j, h) in group.iter().enumerate() {
                b.set_compose(x * n + i, y * n + j, x * n + index[&g.then(h)]);
            }
        }
    }
    Ok(ActionGroupoid {
        groupoid: b.build()?,
        group,
        index,
        points,
    })
}

/// Groupoid given implicitly by objects, a generating set of morphisms,
/// and the number of morphisms out of each object.
pub trait GroupoidPresentation {
    type Object: Clone + Eq + Hash;

    /// Targets of the generating morphisms out of `o`.
    fn neighbours(&self, o: &Self::Object) -> Vec<Self::Object>;

    /// Total number of morphisms out of `o`; constant on components.
    fn out_degree(&self, o: &Self::Object) -> u64;
}

#[derive(Clone, Debug)]
pub struct OrbitComponent<O> {
    pub representative: O,
    pub size: usize,
    pub aut_order: u64,
}

/// Components of a presented groupoid restricted to `objects` (which must
/// be closed under the generating morphisms). Uses
/// `|Aut x| = out_degree(x) / |component|`, valid because every hom-set in
/// a component is a torsor for the automorphism group.
pub fn orbit_components<P: GroupoidPresentation>(
    pres: &P,
    objects: impl IntoIterator<Item = P::Object>,
) -> Result<Vec<OrbitComponent<P::Object>>, GroupoidError> {
    let mut seen: HashSet<P::Object> = HashSet::new();
    let mut out = Vec::new();
    for start in objects {
        if seen.contains(&start) {
            continue;
        }
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start.clone()]);
        let mut size = 0usize;
        while let Some(o) = queue.pop_front() {
            size += 1;
            for n in pres.neighbours(&o) {
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        let deg = pres.out_degree(&start);
        if deg % size as u64 != 0 {
            return Err(GroupoidError::Invalid(format!(
                "component of size {size} does not divide out-degree {deg}"
            )));
        }
        out.push(OrbitComponent {
            representative: start,
            size,
            aut_order: deg / size as u64,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;

    fn point() -> FinGroupoid {
        FinGroupoid::discrete(&["*".into()])
    }

    /// One object with the symmetric group of degree n as automorphisms.
    pub(crate) fn classifying(n: usize) -> FinGroupoid {
        let gens: Vec<_> = (0..n.saturating_sub(1))
            .map(|i| Perm::transposition(n, i))
            .collect();
        action_groupoid(1, n, &gens, |x, _| x).unwrap().groupoid
    }

    #[test]
    fn discrete_components() {
        let g = FinGroupoid::discrete(&["a".into(), "b".into(), "c".into()]);
        assert_eq!(g.components().len(), 3);
        for x in 0..3 {
            assert_eq!(g.aut_order(x).unwrap(), 1);
        }
        assert_eq!(g.cardinality(), integer(3));
    }

    #[test]
    fn classifying_groupoid_of_s3() {
        let g = classifying(3);
        assert_eq!(g.components().len(), 1);
        assert_eq!(g.aut_order(0).unwrap(), 6);
        assert_eq!(g.cardinality(), rational(1, 6));
    }

    #[test]
    fn point_plus_bs2() {
        assert_eq!(
            point().coproduct(&classifying(2)).cardinality(),
            rational(3, 2)
        );
    }

    #[test]
    fn free_s2_orbit() {
        let swap = Perm::transposition(2, 0);
        let a = action_groupoid(2, 2, &[swap], |x, g| g.apply(x)).unwrap();
        assert_eq!(a.groupoid.components().len(), 1);
        assert_eq!(a.groupoid.aut_order(0).unwrap(), 1);
        assert_eq!(a.groupoid.cardinality(), integer(1));
    }

    #[test]
    fn trivial_action_on_a_point() {
        let swap = Perm::transposition(2, 0);
        let a = action_groupoid(1, 2, &[swap], |x, _| x).unwrap();
        assert_eq!(a.groupoid.cardinality(), rational(1, 2));
    }

    #[test]
    fn s3_on_three_points() {
        let gens = [Perm::transposition(3, 0), Perm::transposition(3, 1)];
        // right action x·g = g^{-1}(x)
        let a = action_groupoid(3, 3, &gens, |x, g| g.inverse().apply(x)).unwrap();
        assert_eq!(a.groupoid.components().len(), 1);
        assert_eq!(a.groupoid.aut_order(0).unwrap(), 2);
        assert_eq!(a.groupoid.cardinality(), rational(3, 6));
    }

    #[test]
    fn left_action_is_rejected() {
        let gens = [Perm::transposition(3, 0), Perm::transposition(3, 1)];
        let r = action_groupoid(3, 3, &gens, |x, g| g.apply(x));
        assert!(matches!(r, Err(GroupoidError::NotAnAction(_))));
    }

    #[test]
    fn comm_layer_aut_is_factorial() {
        for n in 1..=4 {
            assert_eq!(
                classifying(n).aut_order(0).unwrap(),
                crate::perm::factorial(n)
            );
        }
    }

    #[test]
    fn fiber_of_equivalence_is_contractible() {
        let g = classifying(2);
        let f = GroupoidFunctor::identity(&g);
        let (fib, _) = homotopy_fiber(&f, 0).unwrap();
        assert_eq!(fib.cardinality(), integer(1));
    }

    #[test]
    fn fiber_of_bs2_over_point() {
        let b = classifying(2);
        let p = point();
        let f = GroupoidFunctor::new(&b, &p, vec![0], vec![0, 0]).unwrap();
        let (fib, _) = homotopy_fiber(&f, 0).unwrap();
        assert_eq!(fib.cardinality(), rational(1, 2));
    }

    #[test]
    fn fiber_of_discrete_cover() {
        let e = FinGroupoid::discrete(&["a".into(), "b".into(), "c".into(), "d".into()]);
        let base = FinGroupoid::discrete(&["0".into(), "1".into()]);
        let f = GroupoidFunctor::new(&e, &base, vec![0, 0, 1, 1], vec![0, 0, 1, 1]).unwrap();
        for b in 0..2 {
            let (fib, _) = homotopy_fiber(&f, b).unwrap();
            assert_eq!(fib.object_count(), 2);
            assert_eq!(fib.components().len(), 2);
        }
    }

    #[test]
    fn name_of_object_has_unit_coefficient() {
        let b = classifying(3).coproduct(&point());
        let p = point();
        let x = 1;
        let f = GroupoidFunctor::name(&p, &b, x).unwrap();
        let v = fiber_cardinality_vector(&f).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[&x], integer(1));
        let f0 = GroupoidFunctor::name(&p, &b, 0).unwrap();
        let v0 = fiber_cardinality_vector(&f0).unwrap();
        assert_eq!(v0[&0], integer(1));
    }

    #[test]
    fn identity_functor_vector() {
        let g = classifying(2).coproduct(&point());
        let v = fiber_cardinality_vector(&GroupoidFunctor::identity(&g)).unwrap();
        assert_eq!(v[&0], rational(1, 2));
        assert_eq!(v[&1], integer(1));
    }

    #[test]
    fn pullback_over_point_is_product() {
        let x = classifying(2);
        let y = FinGroupoid::discrete(&["a".into(), "b".into()]);
        let s = point();
        let f = GroupoidFunctor::new(&x, &s, vec![0], vec![0, 0]).unwrap();
        let g = GroupoidFunctor::new(&y, &s, vec![0, 0], vec![0, 0]).unwrap();
        let (p, _) = pullback(&f, &g).unwrap();
        assert_eq!(p.cardinality(), x.cardinality() * y.cardinality());
        assert!(split_check(&f, &g).unwrap());
    }

    #[test]
    fn pullback_of_two_points_in_bs2() {
        let s = classifying(2);
        let p1 = point();
        let p2 = point();
        let f = GroupoidFunctor::name(&p1, &s, 0).unwrap();
        let g = GroupoidFunctor::name(&p2, &s, 0).unwrap();
        let (p, _) = pullback(&f, &g).unwrap();
        assert_eq!(p.cardinality(), integer(2));
        assert!(split_check(&f, &g).unwrap());
    }

    #[test]
    fn invalid_composition_is_rejected() {
        let mut b = GroupoidBuilder::new();
        let x = b.add_object("x");
        let id = b.add_morphism(x, x);
        let f = b.add_morphism(x, x);
        b.set_identity(x, id);
        b.set_compose(id, id, id);
        b.set_compose(id, f, f);
        b.set_compose(f, id, f);
        b.set_compose(f, f, f); // f idempotent: not invertible
        assert!(b.build().is_err());
    }

    #[test]
    fn functor_must_preserve_composition() {
        let b2 = classifying(2);
        let p = point();
        // sending the swap to nothing valid: mor_map out of range
        assert!(GroupoidFunctor::new(&p, &b2, vec![0], vec![1]).is_err());
    }
}
