//! Δ(A_n) in the commutative operad, next to the partition counts it
//! reproduces, and the Faà di Bruno check on the window.

use fdb_operad::bialgebra::Bialgebra;
use fdb_operad::fdb::fdb_check;
use fdb_operad::library::comm_plus;
use fdb_operad::oracles::bell_oracle;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = comm_plus(5);
    let b = Bialgebra::new(&d)?;
    for c in b.classes() {
        println!("Δ({}) =", c.class_id);
        for (x, y, q) in b.delta_gen(c)?.rows() {
            println!("    {q:>3}  {x} ⊗ {y}");
        }
        let partitions: u64 = bell_oracle(c.arity)?.values().sum();
        println!("    ({partitions} set partitions of {} points)", c.arity);
    }
    let report = fdb_check(&b)?;
    println!("Δ(A) = Σ A^k ⊗ A_k/k! on the window: {}", report.verdict);
    for e in report.entries.iter().take(6) {
        println!("    {} ⊗ {}: {} = {}", e.inner, e.outer, e.lhs, e.rhs);
    }
    Ok(())
}
