//! Colour tuples: Δ(A_{i,i}) = Σ_j A_{i,j} ⊗ A_{j,i}, coloured Green
//! functions, and the coefficient division by |Aut w|.

use fdb_operad::bialgebra::Bialgebra;
use fdb_operad::fdb::{fdb_check, g_part, g_part_by_fibre, green};
use fdb_operad::library::multivariate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = multivariate(&["x", "y", "z"], 3)?;
    let b = Bialgebra::new(&d)?;
    let c = b.class("A_{x,x}").expect("unary class").clone();
    println!("Δ(A_{{x,x}}) = {}", b.delta_gen(&c)?.value);
    for (colour, part) in &green(&b).colour_parts {
        println!(
            "G_{} has {} terms",
            fdb_operad::operad::Operad::colour_name(&d, *colour),
            part.len()
        );
    }
    let w = [0, 0, 1];
    println!("g_(x,x,y) = {}", g_part(&b, &w));
    println!("from the fibre: {}", g_part_by_fibre(&b, &w)?);
    println!("fdb verdict: {}", fdb_check(&b)?.verdict);
    Ok(())
}
