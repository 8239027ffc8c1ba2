//! Permutations of `{0, .., n-1}` stored as image arrays.
//!
//! Operations are acted on from the right: `(r·p).inputs[i] = r.inputs[p[i]]`.
//! With that convention `(r·p)·q = r·(p.then(q))` where
//! `p.then(q)[i] = p[q[i]]`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Builds a permutation from its image array, returning `None` if the
    /// array is not a bijection of `0..len`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm(images))
    }

    /// Adjacent transposition swapping `i` and `i + 1`.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i, i + 1);
        Perm(v)
    }

    /// Transposition of `i` and `j`.
    pub fn swap(n: usize, i: usize, j: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i, j);
        Perm(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` followed by `other` under the right-action convention.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// Permutes a word from the right: `result[i] = word[self[i]]`.
    pub fn permute<T: Clone>(&self, word: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| word[i].clone()).collect()
    }

    /// Direct sum: `self` on the first block, `other` shifted onto the second.
    pub fn direct_sum(&self, other: &Perm) -> Perm {
        let n = self.degree();
        let mut v = self.0.clone();
        v.extend(other.0.iter().map(|&i| i + n));
        Perm(v)
    }

    /// All permutations of degree `n` in lexicographic order of image arrays.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(current.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }

    /// The stable permutation sorting `keys`: `keys[p[0]] <= keys[p[1]] <= ..`.
    pub fn sorting<T: Ord>(keys: &[T]) -> Perm {
        let mut idx: Vec<usize> = (0..keys.len()).collect();
        idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        Perm(idx)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Closes a set of generators under composition. Every generator must have
/// degree `degree`; the result contains the identity and is sorted.
pub fn group_closure(degree: usize, generators: &[Perm]) -> Vec<Perm> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort();
    out
}

/// Block permutation of a two-level composite.
///
/// Inner block `j` of the source has length `lengths[j]`. The result places
/// source block `sigma[i]`, permuted internally by `h[i]`, at block position
/// `i`; that is `compose(b·σ; a_{σ(0)}·h_0, ..) = compose(b; a)·block(σ, h)`.
pub fn block_permutation(lengths: &[usize], sigma: &Perm, h: &[Perm]) -> Perm {
    let mut starts = Vec::with_capacity(lengths.len());
    let mut acc = 0;
    for &l in lengths {
        starts.push(acc);
        acc += l;
    }
    let mut images = Vec::with_capacity(acc);
    for (i, hi) in h.iter().enumerate() {
        let src = sigma.apply(i);
        debug_assert_eq!(hi.degree(), lengths[src]);
        for t in 0..lengths[src] {
            images.push(starts[src] + hi.apply(t));
        }
    }
    Perm(images)
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}
