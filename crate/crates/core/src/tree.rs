//! Planar trees decorated by generators; the operations of a free operad.

use std::fmt;
use std::sync::Arc;

use crate::algebra::Colour;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    Leaf(Colour),
    Node { gen: u32, children: Vec<Arc<Tree>> },
}

impl Tree {
    pub fn leaf(c: Colour) -> Arc<Tree> {
        Arc::new(Tree::Leaf(c))
    }

    pub fn node(gen: u32, children: Vec<Arc<Tree>>) -> Arc<Tree> {
        Arc::new(Tree::Node { gen, children })
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node { children, .. } => children.iter().map(|c| c.leaf_count()).sum(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node { children, .. } => {
                1 + children.iter().map(|c| c.node_count()).sum::<usize>()
            }
        }
    }

    /// Leaf colours from left to right.
    pub fn leaf_colours(&self) -> Vec<Colour> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Colour>) {
        match self {
            Tree::Leaf(c) => out.push(*c),
            Tree::Node { children, .. } => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    /// Replaces the leaves, left to right, by the given trees.
    pub fn graft(self: &Arc<Tree>, grafts: &mut impl Iterator<Item = Arc<Tree>>) -> Arc<Tree> {
        match &**self {
            Tree::Leaf(_) => grafts.next().expect("one graft per leaf"),
            Tree::Node { gen, children } => {
                let children = children.iter().map(|c| c.graft(grafts)).collect();
                Tree::node(*gen, children)
            }
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(_) => f.write_str("|"),
            Tree::Node { gen, children } => {
                write!(f, "g{gen}")?;
                if !children.is_empty() {
                    f.write_str("(")?;
                    for (i, c) in children.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{c}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graft_counts() {
        let b = Tree::node(0, vec![Tree::leaf(0), Tree::leaf(0)]);
        let t = b.graft(&mut vec![b.clone(), Tree::leaf(0)].into_iter());
        assert_eq!(t.leaf_count(), 3);
        assert_eq!(t.node_count(), 2);
        assert_eq!(t.to_string(), "g0(g0(|,|),|)");
    }
}
