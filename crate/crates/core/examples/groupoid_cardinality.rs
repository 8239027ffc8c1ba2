//! Finite groupoids: action groupoids, homotopy fibres and their
//! cardinalities, and the factorization groupoid of an operation.

use fdb_operad::factorization::factorization_groupoid;
use fdb_operad::groupoid::{action_groupoid, fiber_cardinality_vector, GroupoidFunctor};
use fdb_operad::library::comm_plus;
use fdb_operad::operad::{Classifier, OpIndex, Operad};
use fdb_operad::perm::Perm;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // S_3 acting on 2-colourings of three points
    let words: Vec<Vec<usize>> = (0..8)
        .map(|k| (0..3).map(|i| (k >> i) & 1).collect())
        .collect();
    let gens = [Perm::transposition(3, 0), Perm::transposition(3, 1)];
    let act = action_groupoid(words.len(), 3, &gens, |x, p| {
        words
            .iter()
            .position(|w| *w == p.permute(&words[x]))
            .unwrap()
    })?;
    println!("‖X//S_3‖ = {} = 8/6", act.groupoid.cardinality());
    for comp in act.groupoid.components() {
        println!(
            "    orbit of {:?}: size {}, stabilizer {}",
            words[comp[0]],
            comp.len(),
            act.groupoid.aut_order(comp[0])?
        );
    }

    // the number of ones, as a functor to the discrete groupoid on {0,..,3}
    let counts = fdb_operad::groupoid::FinGroupoid::discrete(&[
        "0".into(),
        "1".into(),
        "2".into(),
        "3".into(),
    ]);
    let obj: Vec<usize> = words.iter().map(|w| w.iter().sum()).collect();
    let mor: Vec<usize> = (0..act.groupoid.morphism_count())
        .map(|f| obj[act.groupoid.src(f)])
        .collect();
    let f = GroupoidFunctor::new(&act.groupoid, &counts, obj, mor)?;
    println!(
        "fibre cardinalities: {:?}",
        fiber_cardinality_vector(&f)?
            .values()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
    );

    let d = comm_plus(4);
    let cl = Classifier::new(&d);
    let a3 = d.operations(3).remove(0);
    let (g, _) = factorization_groupoid(&cl, &OpIndex::new(&d), &a3)?;
    println!(
        "factorizations of A_3: {} objects, {} components, cardinality {}",
        g.object_count(),
        g.components().len(),
        g.cardinality()
    );
    Ok(())
}
