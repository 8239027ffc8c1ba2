//! The free operad on one binary generator: comultiplication by admissible
//! cuts, compared with a direct enumeration of cuts.

use fdb_operad::bialgebra::Bialgebra;
use fdb_operad::library::binary_tree_operad;
use fdb_operad::oracles::{cut_crosscheck, cut_oracle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = binary_tree_operad(4);
    let b = Bialgebra::new(&d)?;
    let tree = d
        .trees()
        .find(|t| d.render(t) == "m(m(|,|),m(|,|))")
        .expect("in window");
    let class = b.classifier().classify(&d.tree_operation(tree));
    println!("Δ({}) =", class.class_id);
    for (x, y, q) in b.delta_gen(&class)?.rows() {
        println!("    {q}  {x} ⊗ {y}");
    }
    println!(
        "cut enumeration agrees: {}",
        cut_oracle(&b, &d, tree)? == b.delta_gen(&class)?.value
    );
    let report = cut_crosscheck(&d)?;
    println!(
        "{} trees compared, all equal: {}",
        report.entries.len(),
        report.verdict
    );
    Ok(())
}
