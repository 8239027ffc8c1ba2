//! The nonsymmetric operad with one operation per arity: Δ(A_n) is a sum
//! over compositions of n, every coefficient 1.

use fdb_operad::bialgebra::Bialgebra;
use fdb_operad::fdb::{fdb_check, green};
use fdb_operad::library::nonsym_semimonoid;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = nonsym_semimonoid(4);
    let b = Bialgebra::new(&d)?;
    let a4 = b.class("A_4").expect("in window").clone();
    for (x, y, q) in b.delta_gen(&a4)?.rows() {
        println!("{q}  {x} ⊗ {y}");
    }
    println!("G = {}", green(&b).series);
    println!("fdb verdict: {}", fdb_check(&b)?.verdict);
    Ok(())
}
