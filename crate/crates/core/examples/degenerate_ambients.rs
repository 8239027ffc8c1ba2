//! Monoids as one-coloured unary operads: (ℕ,+) gives a group-like Green
//! function, and a monoid acting on a pointed set gives Δ(G) = 1⊗E + G⊗M.

use fdb_operad::bialgebra::Bialgebra;
use fdb_operad::fdb::{delta_of_green, green};
use fdb_operad::library::{nat_monoid, pointed_example};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = nat_monoid(4);
    let b = Bialgebra::new(&n)?;
    println!("G = {}", green(&b).series);
    println!("Δ(G) = {}", delta_of_green(&b)?);

    let p = pointed_example();
    let b = Bialgebra::new(&p)?;
    println!("G = {}", green(&b).series);
    println!("Δ(G) = {}", delta_of_green(&b)?);
    Ok(())
}
