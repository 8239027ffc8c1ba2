//! The one-coloured operads with one operation per arity, and the
//! multivariate operad of colour tuples.

use crate::algebra::{AmbientMode, Colour};
use crate::error::OperadError;
use crate::operad::{check_profile, Operad, Operation};
use crate::perm::{group_closure, Perm};

/// The terminal reduced operad: one `n`-ary operation `A_n` for every
/// `1 ≤ n ≤ cap`, with trivial symmetric actions.
#[derive(Clone, Debug)]
pub struct CommPlus {
    cap: usize,
}

pub fn comm_plus(cap: usize) -> CommPlus {
    CommPlus { cap }
}

/// One `n`-ary operation per arity with no symmetries: the operad of
/// finite ordinals and monotone surjections.
#[derive(Clone, Debug)]
pub struct NonsymSemimonoid {
    cap: usize,
}

pub fn nonsym_semimonoid(cap: usize) -> NonsymSemimonoid {
    NonsymSemimonoid { cap }
}

fn corolla(n: usize) -> Operation {
    Operation::plain(vec![0; n], 0)
}

fn collapse(outer: &Operation, inner: &[Operation]) -> Result<Operation, OperadError> {
    check_profile(outer, inner)?;
    Ok(corolla(inner.iter().map(|a| a.arity()).sum()))
}

macro_rules! one_per_arity {
    ($ty:ty, $name:literal, $mode:expr) => {
        impl Operad for $ty {
            fn name(&self) -> String {
                $name.into()
            }
            fn mode(&self) -> AmbientMode {
                $mode
            }
            fn colours(&self) -> Vec<Colour> {
                vec![0]
            }
            fn cap(&self) -> usize {
                self.cap
            }
            fn operations(&self, arity: usize) -> Vec<Operation> {
                if (1..=self.cap).contains(&arity) {
                    vec![corolla(arity)]
                } else {
                    Vec::new()
                }
            }
            fn contains(&self, op: &Operation) -> bool {
                (1..=self.cap).contains(&op.arity()) && *op == corolla(op.arity())
            }
            fn act(&self, op: &Operation, p: &Perm) -> Operation {
                Operation::new(p.permute(&op.inputs), op.output, op.payload.clone())
            }
            fn compose(
                &self,
                outer: &Operation,
                inner: &[Operation],
            ) -> Result<Operation, OperadError> {
                collapse(outer, inner)
            }
            fn unit(&self, _c: Colour) -> Operation {
                corolla(1)
            }
            fn label(&self, rep: &Operation) -> String {
                format!("A_{}", rep.arity())
            }
            fn canonical(&self, op: &Operation) -> (Operation, Perm) {
                (op.clone(), Perm::identity(op.arity()))
            }
            fn automorphisms(&self, rep: &Operation) -> Vec<Perm> {
                if $mode.is_symmetric() {
                    Perm::all(rep.arity())
                } else {
                    vec![Perm::identity(rep.arity())]
                }
            }
            fn aut_order(&self, rep: &Operation) -> u64 {
                if $mode.is_symmetric() {
                    crate::perm::factorial(rep.arity())
                } else {
                    1
                }
            }
            fn validate_on_representatives(&self) -> bool {
                true
            }
        }
    };
}

one_per_arity!(CommPlus, "comm_plus", AmbientMode::Symmetric);
one_per_arity!(
    NonsymSemimonoid,
    "nonsym_semimonoid",
    AmbientMode::Nonsymmetric
);

/// Operations are tuples of colours (inputs, output); composition forgets
/// the colours of inner edges.
#[derive(Clone, Debug)]
pub struct Multivariate {
    names: Vec<String>,
    cap: usize,
}

pub fn multivariate<S: AsRef<str>>(colours: &[S], cap: usize) -> Result<Multivariate, OperadError> {
    if colours.is_empty() {
        return Err(OperadError::EmptyColourSet);
    }
    Ok(Multivariate {
        names: colours.iter().map(|c| c.as_ref().to_string()).collect(),
        cap,
    })
}

impl Multivariate {
    fn words(&self, n: usize) -> Vec<Vec<Colour>> {
        let m = self.names.len() as Colour;
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..m).map(move |c| {
                        let mut v = w.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

impl Operad for Multivariate {
    fn name(&self) -> String {
        "multivariate".into()
    }
    fn mode(&self) -> AmbientMode {
        AmbientMode::Symmetric
    }
    fn colours(&self) -> Vec<Colour> {
        (0..self.names.len() as Colour).collect()
    }
    fn colour_name(&self, c: Colour) -> String {
        self.names[c as usize].clone()
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn operations(&self, arity: usize) -> Vec<Operation> {
        if !(1..=self.cap).contains(&arity) {
            return Vec::new();
        }
        let mut out = Vec::new();
        for w in self.words(arity) {
            for c in self.colours() {
                out.push(Operation::plain(w.clone(), c));
            }
        }
        out
    }
    fn representatives(&self, arity: usize) -> Vec<Operation> {
        let mut out: Vec<Operation> = self
            .operations(arity)
            .into_iter()
            .filter(|o| o.inputs.windows(2).all(|p| p[0] <= p[1]))
            .collect();
        out.sort();
        out
    }
    fn contains(&self, op: &Operation) -> bool {
        let m = self.names.len() as Colour;
        (1..=self.cap).contains(&op.arity())
            && op.output < m
            && op.inputs.iter().all(|&c| c < m)
            && op.payload == crate::operad::Payload::Plain
    }
    fn act(&self, op: &Operation, p: &Perm) -> Operation {
        Operation::new(p.permute(&op.inputs), op.output, op.payload.clone())
    }
    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Result<Operation, OperadError> {
        check_profile(outer, inner)?;
        let inputs = inner
            .iter()
            .flat_map(|a| a.inputs.iter().copied())
            .collect();
        Ok(Operation::plain(inputs, outer.output))
    }
    fn unit(&self, c: Colour) -> Operation {
        Operation::plain(vec![c], c)
    }
    fn label(&self, rep: &Operation) -> String {
        let sep = if self.names.iter().all(|n| n.chars().count() == 1) {
            ""
        } else {
            " "
        };
        let ins: Vec<&str> = rep
            .inputs
            .iter()
            .map(|&c| self.names[c as usize].as_str())
            .collect();
        format!(
            "A_{{{},{}}}",
            ins.join(sep),
            self.names[rep.output as usize]
        )
    }
    fn canonical(&self, op: &Operation) -> (Operation, Perm) {
        let p = Perm::sorting(&op.inputs);
        (self.act(op, &p), p)
    }
    fn automorphisms(&self, rep: &Operation) -> Vec<Perm> {
        let n = rep.arity();
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rep.inputs[i] == rep.inputs[j] {
                    gens.push(Perm::swap(n, i, j));
                }
            }
        }
        group_closure(n, &gens)
    }
    fn validate_on_representatives(&self) -> bool {
        true
    }
}
