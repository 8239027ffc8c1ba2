//! Seeded random finite groupoids and functors for property suites.

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::algebra::{integer, Rational};
use crate::bialgebra::CheckReport;
use crate::error::GroupoidError;
use crate::groupoid::{
    action_groupoid, fiber_cardinality_vector, split_check, FinGroupoid, GroupoidFunctor,
};
use crate::perm::{group_closure, Perm};

const DEGREE: usize = 3;

/// A groupoid presented as a disjoint union of connected pieces, each a
/// cyclic group `G ≤ S_3` times the codiscrete groupoid on one or two objects.
#[derive(Clone, Debug)]
pub struct RandomGroupoid {
    pub groups: Vec<Vec<Perm>>,
    pub sizes: Vec<usize>,
    pub groupoid: FinGroupoid,
    objects: Vec<(usize, usize)>,
}

impl RandomGroupoid {
    fn build(groups: Vec<Vec<Perm>>, sizes: Vec<usize>) -> Result<Self, GroupoidError> {
        let objects: Vec<(usize, usize)> = sizes
            .iter()
            .enumerate()
            .flat_map(|(c, &n)| (0..n).map(move |i| (c, i)))
            .collect();
        let groupoid = FinGroupoid::from_labelled(
            &objects,
            |&(c, i)| format!("{c}.{i}"),
            |&(c, _)| {
                groups[c]
                    .iter()
                    .flat_map(|g| (0..sizes[c]).map(move |j| (g.clone(), j)))
                    .collect()
            },
            |&(c, _), (_, j)| (c, *j),
            |_, (g, _), (h, k)| (g.then(h), *k),
            |&(_, i)| (Perm::identity(DEGREE), i),
        )?;
        Ok(RandomGroupoid {
            groups,
            sizes,
            groupoid,
            objects,
        })
    }

    fn object(&self, c: usize, i: usize) -> usize {
        self.objects.iter().position(|&o| o == (c, i)).unwrap()
    }

    fn morphism(&self, x: usize, g: &Perm, y: usize) -> usize {
        let (c, _) = self.objects[x];
        let j = self.objects[y].1;
        let out = self.groupoid.out_morphisms(x);
        let k = self.groups[c].iter().position(|h| h == g).unwrap() * self.sizes[c] + j;
        out[k]
    }
}

fn random_subgroup(rng: &mut StdRng, ambient: &[Perm]) -> Vec<Perm> {
    let gens: Vec<Perm> = (0..rng.gen_range(0..=1))
        .map(|_| ambient.choose(rng).unwrap().clone())
        .collect();
    group_closure(DEGREE, &gens)
}

/// A random groupoid with at most `max_objects` objects.
pub fn random_groupoid(
    rng: &mut StdRng,
    max_objects: usize,
) -> Result<RandomGroupoid, GroupoidError> {
    let all = Perm::all(DEGREE);
    let mut sizes = Vec::new();
    let mut left = max_objects.max(1);
    while left > 0 && (sizes.is_empty() || rng.gen_bool(0.5)) {
        let n = rng.gen_range(1..=left.min(2));
        sizes.push(n);
        left -= n;
    }
    let groups = sizes.iter().map(|_| random_subgroup(rng, &all)).collect();
    RandomGroupoid::build(groups, sizes)
}

/// A random groupoid over `base` with its functor data: each piece maps
/// into one piece of the base through a subgroup inclusion or the trivial
/// homomorphism.
pub fn random_over(
    rng: &mut StdRng,
    base: &RandomGroupoid,
    max_objects: usize,
) -> Result<(RandomGroupoid, Vec<usize>, Vec<usize>), GroupoidError> {
    let mut sizes = Vec::new();
    let mut groups = Vec::new();
    let mut image = Vec::new();
    let mut left = max_objects.max(1);
    while left > 0 && (sizes.is_empty() || rng.gen_bool(0.5)) {
        let n = rng.gen_range(1..=left.min(2));
        let c = rng.gen_range(0..base.sizes.len());
        let trivial = rng.gen_bool(0.25);
        sizes.push(n);
        groups.push(if trivial {
            group_closure(DEGREE, &[Perm::transposition(DEGREE, 0)])
        } else {
            random_subgroup(rng, &base.groups[c])
        });
        image.push((
            c,
            trivial,
            (0..n)
                .map(|_| rng.gen_range(0..base.sizes[c]))
                .collect::<Vec<_>>(),
        ));
        left -= n;
    }
    let e = RandomGroupoid::build(groups, sizes)?;
    let id = Perm::identity(DEGREE);
    let obj_map: Vec<usize> = e
        .objects
        .iter()
        .map(|&(p, i)| base.object(image[p].0, image[p].2[i]))
        .collect();
    let mut mor_map = vec![0; e.groupoid.morphism_count()];
    for f in 0..e.groupoid.morphism_count() {
        let (x, y) = (e.groupoid.src(f), e.groupoid.dst(f));
        let p = e.objects[x].0;
        let k = e
            .groupoid
            .out_morphisms(x)
            .iter()
            .position(|&m| m == f)
            .unwrap();
        let g = &e.groups[p][k / e.sizes[p]];
        let g = if image[p].1 { &id } else { g };
        mor_map[f] = base.morphism(obj_map[x], g, obj_map[y]);
    }
    Ok((e, obj_map, mor_map))
}

/// Runs the groupoid property suite on `count` seeded instances: fibre
/// sums recover the total cardinality, pullbacks split as homotopy sums,
/// and action groupoids satisfy orbit–stabilizer.
pub fn groupoid_suite(seed: u64, count: usize) -> Result<CheckReport, GroupoidError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = CheckReport::new("random_groupoids");
    let words: Vec<Vec<usize>> = (0..1usize << DEGREE)
        .map(|k| (0..DEGREE).map(|i| (k >> i) & 1).collect())
        .collect();
    let all = Perm::all(DEGREE);
    for t in 0..count {
        let base = random_groupoid(&mut rng, 4)?;
        let (e, eo, em) = random_over(&mut rng, &base, 4)?;
        let (y, yo, ym) = random_over(&mut rng, &base, 4)?;
        let f = GroupoidFunctor::new(&e.groupoid, &base.groupoid, eo, em)?;
        let g = GroupoidFunctor::new(&y.groupoid, &base.groupoid, yo, ym)?;
        let fibres: Rational = fiber_cardinality_vector(&f)?.values().sum();
        report.record(
            &format!("{t}/sum"),
            fibres == e.groupoid.cardinality(),
            String::new(),
        );
        report.record(&format!("{t}/split"), split_check(&f, &g)?, String::new());

        let grp: Vec<Perm> = (0..2)
            .map(|_| all.choose(&mut rng).unwrap().clone())
            .collect();
        let act = action_groupoid(words.len(), DEGREE, &grp, |x, p| {
            let w = p.permute(&words[x]);
            words.iter().position(|v| *v == w).unwrap()
        })?;
        let order = act.group.len() as u64;
        let mut ok = act.groupoid.cardinality() == integer(words.len() as u64) / integer(order);
        for comp in act.groupoid.components() {
            ok &= comp.len() as u64 * act.groupoid.aut_order(comp[0])? == order;
        }
        report.record(
            &format!("{t}/orbit"),
            ok && !fibres.is_zero(),
            String::new(),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_clean_and_reproducible() {
        let a = groupoid_suite(7, 30).unwrap();
        assert!(a.verdict, "{:?}", a.failures().collect::<Vec<_>>());
        let b = groupoid_suite(7, 30).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
