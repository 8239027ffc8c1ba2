//! Free operads on finitely many generators. Operations are planar trees
//! of generators with a bijection from leaves to input slots; composition
//! is grafting.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{AmbientMode, Colour};
use crate::error::OperadError;
use crate::operad::{check_profile, Operad, Operation, Payload};
use crate::perm::Perm;
use crate::tree::Tree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTreeGenerator {
    pub name: String,
    pub inputs: Vec<Colour>,
    pub output: Colour,
}

impl PTreeGenerator {
    pub fn new(name: impl Into<String>, inputs: Vec<Colour>, output: Colour) -> Self {
        PTreeGenerator {
            name: name.into(),
            inputs,
            output,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FreeOperad {
    gens: Vec<PTreeGenerator>,
    colours: Vec<Colour>,
    cap: usize,
    weight_cap: usize,
    /// Trees by (output colour, leaf count), canonical leaf order.
    trees: BTreeMap<(Colour, usize), Vec<Arc<Tree>>>,
    max_arity: usize,
}

/// The free operad on `gens`, truncated to at most `cap` inputs and at most
/// `weight_cap` nodes (`cap` when not given).
pub fn free_operad(
    gens: Vec<PTreeGenerator>,
    cap: usize,
    weight_cap: Option<usize>,
) -> Result<FreeOperad, OperadError> {
    let mut colours: Vec<Colour> = gens
        .iter()
        .flat_map(|g| g.inputs.iter().copied().chain([g.output]))
        .collect();
    colours.sort();
    colours.dedup();
    if colours.is_empty() {
        return Err(OperadError::EmptyColourSet);
    }
    let weight_cap = weight_cap.unwrap_or(cap);
    // trees with exactly m nodes, by output colour
    let mut by_nodes: Vec<Vec<(Colour, Arc<Tree>)>> =
        vec![colours.iter().map(|&c| (c, Tree::leaf(c))).collect()];
    for m in 1..=weight_cap {
        let mut level = Vec::new();
        for (gi, g) in gens.iter().enumerate() {
            let mut partial: Vec<(usize, Vec<Arc<Tree>>)> = vec![(0, Vec::new())];
            for &c in &g.inputs {
                let mut next = Vec::new();
                for (used, kids) in &partial {
                    for (j, layer) in by_nodes.iter().enumerate() {
                        if used + j > m - 1 {
                            break;
                        }
                        for (col, t) in layer {
                            if *col == c {
                                let mut k = kids.clone();
                                k.push(t.clone());
                                next.push((used + j, k));
                            }
                        }
                    }
                }
                partial = next;
            }
            for (used, kids) in partial {
                if used == m - 1 {
                    level.push((g.output, Tree::node(gi as u32, kids)));
                }
            }
        }
        by_nodes.push(level);
    }
    let mut trees: BTreeMap<(Colour, usize), Vec<Arc<Tree>>> = BTreeMap::new();
    let mut max_arity = 0;
    for layer in &by_nodes {
        for (c, t) in layer {
            let n = t.leaf_count();
            max_arity = max_arity.max(n);
            trees.entry((*c, n)).or_default().push(t.clone());
        }
    }
    for v in trees.values_mut() {
        v.sort();
    }
    Ok(FreeOperad {
        gens,
        colours,
        cap,
        weight_cap,
        trees,
        max_arity,
    })
}

/// One binary generator `m` on a single colour.
pub fn binary_tree_operad(cap: usize) -> FreeOperad {
    free_operad(vec![PTreeGenerator::new("m", vec![0, 0], 0)], cap, None).expect("one colour")
}

/// One binary generator `m` and one nullary generator `e`.
pub fn binary_nullary_operad(cap: usize) -> FreeOperad {
    free_operad(
        vec![
            PTreeGenerator::new("m", vec![0, 0], 0),
            PTreeGenerator::new("e", vec![], 0),
        ],
        cap,
        None,
    )
    .expect("one colour")
}

impl FreeOperad {
    pub fn generators(&self) -> &[PTreeGenerator] {
        &self.gens
    }

    /// Every tree in the window, by output colour and leaf count.
    pub fn trees(&self) -> impl Iterator<Item = &Arc<Tree>> {
        self.trees.values().flatten()
    }

    /// The operation of a tree with leaves in slot order.
    pub fn tree_operation(&self, t: &Arc<Tree>) -> Operation {
        let inputs = t.leaf_colours();
        let output = match &**t {
            Tree::Leaf(c) => *c,
            Tree::Node { gen, .. } => self.gens[*gen as usize].output,
        };
        let n = inputs.len();
        Operation::new(
            inputs,
            output,
            Payload::Tree {
                shape: t.clone(),
                leaf_slot: (0..n).collect(),
            },
        )
    }

    /// The tree and leaf-to-slot map of an operation.
    pub fn tree_of<'o>(&self, op: &'o Operation) -> Option<(&'o Arc<Tree>, &'o [usize])> {
        match &op.payload {
            Payload::Tree { shape, leaf_slot } => Some((shape, leaf_slot)),
            _ => None,
        }
    }

    pub fn render(&self, t: &Tree) -> String {
        match t {
            Tree::Leaf(_) => "|".into(),
            Tree::Node { gen, children } => {
                let name = &self.gens[*gen as usize].name;
                if children.is_empty() {
                    name.clone()
                } else {
                    let kids: Vec<String> = children.iter().map(|c| self.render(c)).collect();
                    format!("{name}({})", kids.join(","))
                }
            }
        }
    }

    fn well_formed(&self, t: &Tree) -> bool {
        match t {
            Tree::Leaf(c) => self.colours.contains(c),
            Tree::Node { gen, children } => {
                let Some(g) = self.gens.get(*gen as usize) else {
                    return false;
                };
                g.inputs.len() == children.len()
                    && children.iter().zip(&g.inputs).all(|(k, &c)| {
                        self.well_formed(k)
                            && match &**k {
                                Tree::Leaf(x) => *x == c,
                                Tree::Node { gen, .. } => self.gens[*gen as usize].output == c,
                            }
                    })
            }
        }
    }
}

impl Operad for FreeOperad {
    fn name(&self) -> String {
        "free_operad".into()
    }
    fn mode(&self) -> AmbientMode {
        AmbientMode::Symmetric
    }
    fn colours(&self) -> Vec<Colour> {
        self.colours.clone()
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn weight_cap(&self) -> Option<usize> {
        Some(self.weight_cap)
    }
    fn max_arity(&self) -> usize {
        self.max_arity
    }
    fn operations(&self, arity: usize) -> Vec<Operation> {
        let perms = Perm::all(arity);
        let mut out = Vec::new();
        for rep in self.representatives(arity) {
            for p in &perms {
                out.push(self.act(&rep, p));
            }
        }
        out
    }
    fn representatives(&self, arity: usize) -> Vec<Operation> {
        let mut out: Vec<Operation> = self
            .trees
            .iter()
            .filter(|((_, n), _)| *n == arity)
            .flat_map(|(_, ts)| ts.iter().map(|t| self.tree_operation(t)))
            .collect();
        out.sort();
        out
    }
    fn contains(&self, op: &Operation) -> bool {
        let Some((t, slots)) = self.tree_of(op) else {
            return false;
        };
        let n = op.arity();
        if slots.len() != n || Perm::from_images(slots.to_vec()).is_none() {
            return false;
        }
        let leaves = t.leaf_colours();
        self.well_formed(t)
            && t.node_count() <= self.weight_cap
            && leaves.len() == n
            && (0..n).all(|l| op.inputs[slots[l]] == leaves[l])
            && self.tree_operation(t).output == op.output
    }
    fn act(&self, op: &Operation, p: &Perm) -> Operation {
        let (t, slots) = self.tree_of(op).expect("tree payload");
        let inv = p.inverse();
        Operation::new(
            p.permute(&op.inputs),
            op.output,
            Payload::Tree {
                shape: t.clone(),
                leaf_slot: slots.iter().map(|&s| inv.apply(s)).collect(),
            },
        )
    }
    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Result<Operation, OperadError> {
        check_profile(outer, inner)?;
        let (t, slots) = self
            .tree_of(outer)
            .ok_or_else(|| OperadError::NotComposable("outer is not a tree".into()))?;
        let mut starts = Vec::with_capacity(inner.len());
        let mut acc = 0;
        for a in inner {
            starts.push(acc);
            acc += a.arity();
        }
        let mut grafts = Vec::new();
        let mut leaf_slot = Vec::new();
        for &s in slots {
            let (ti, si) = self
                .tree_of(&inner[s])
                .ok_or_else(|| OperadError::NotComposable("inner is not a tree".into()))?;
            grafts.push(ti.clone());
            leaf_slot.extend(si.iter().map(|&x| starts[s] + x));
        }
        let shape = t.graft(&mut grafts.into_iter());
        let inputs = inner
            .iter()
            .flat_map(|a| a.inputs.iter().copied())
            .collect();
        Ok(Operation::new(
            inputs,
            outer.output,
            Payload::Tree { shape, leaf_slot },
        ))
    }
    fn unit(&self, c: Colour) -> Operation {
        self.tree_operation(&Tree::leaf(c))
    }
    fn weight(&self, op: &Operation) -> usize {
        self.tree_of(op).map_or(0, |(t, _)| t.node_count())
    }
    fn label(&self, rep: &Operation) -> String {
        let (t, _) = self.tree_of(rep).expect("tree payload");
        self.render(t)
    }
    fn canonical(&self, op: &Operation) -> (Operation, Perm) {
        let (t, slots) = self.tree_of(op).expect("tree payload");
        let p = Perm::from_images(slots.to_vec()).expect("leaf slots form a bijection");
        (self.tree_operation(t), p)
    }
    fn automorphisms(&self, rep: &Operation) -> Vec<Perm> {
        vec![Perm::identity(rep.arity())]
    }
    fn aut_order(&self, _rep: &Operation) -> u64 {
        1
    }
    fn is_free(&self) -> bool {
        true
    }
    fn validate_on_representatives(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{enumerate_classes, validate_operad, Classifier};

    #[test]
    fn binary_trees_of_three_leaves() {
        let d = binary_tree_operad(5);
        let cl = Classifier::new(&d);
        let classes: Vec<_> = enumerate_classes(&cl)
            .into_iter()
            .filter(|c| c.arity == 3)
            .collect();
        assert_eq!(classes.len(), 2);
        assert!(classes
            .iter()
            .all(|c| c.aut_order == 1 && c.orbit_size == 6));
        let ids: Vec<&str> = classes.iter().map(|c| c.class_id.as_str()).collect();
        assert!(ids.contains(&"m(m(|,|),|)") && ids.contains(&"m(|,m(|,|))"));
    }

    #[test]
    fn catalan_counts() {
        let d = binary_tree_operad(6);
        let counts: Vec<usize> = (1..=6).map(|n| d.representatives(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn bare_edge_is_the_unit() {
        let d = binary_tree_operad(3);
        let cl = Classifier::new(&d);
        let u = d.unit(0);
        assert_eq!(d.weight(&u), 0);
        assert_eq!(cl.classify(&u).class_id, "|");
        let m = d.representatives(2)[0].clone();
        assert_eq!(d.compose(&u, std::slice::from_ref(&m)).unwrap(), m);
    }

    #[test]
    fn grafting_tracks_slots() {
        let d = binary_tree_operad(4);
        let m = d.representatives(2)[0].clone();
        let swapped = d.act(&m, &Perm::transposition(2, 0));
        let u = d.unit(0);
        // m(m(1,0), 2) with slot order (1, 0, 2)
        let c = d.compose(&m, &[swapped, u]).unwrap();
        assert!(d.contains(&c));
        let (rep, p) = d.canonical(&c);
        assert_eq!(d.act(&c, &p), rep);
        assert_eq!(d.label(&rep), "m(m(|,|),|)");
    }

    #[test]
    fn nullary_generator_trees() {
        let d = binary_nullary_operad(3);
        // arity 0 trees with at most 3 nodes: e, m(e,e)
        let mut zero: Vec<String> = d.representatives(0).iter().map(|o| d.label(o)).collect();
        zero.sort();
        assert_eq!(zero, vec!["e", "m(e,e)"]);
        assert!(d.max_arity() >= 3);
    }

    #[test]
    fn validates() {
        assert!(validate_operad(&binary_tree_operad(4)).is_clean());
        assert!(validate_operad(&binary_nullary_operad(3)).is_clean());
    }
}
