//! Partition function of the domain-wall grid, by both engines.
//!
//! Usage: `cargo run --release --example dwbc_partition [n]`

use square_ice::ice::dwbc;
use square_ice::partition::{partition_function, transfer_matrix_partition, transfer_matrix_value, Convention};
use square_ice::{CycNum, EvalPoint, GenericCoeff};
use std::time::Instant;

fn main() -> square_ice::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let g = dwbc(n)?;

    let t = Instant::now();
    let enumerated = partition_function::<GenericCoeff>(&g, Convention::Standard);
    println!("enumeration: {} states, {} monomials, {:?}", enumerated.state_count, enumerated.value.num_monomials(), t.elapsed());

    let t = Instant::now();
    let swept = transfer_matrix_partition::<GenericCoeff>(&g, Convention::Standard)?;
    println!("transfer:    {} monomials, {:?}", swept.num_monomials(), t.elapsed());
    println!("engines agree: {}", enumerated.value == swept);

    if n <= 2 {
        println!("Z({n}) = {swept}");
    }

    // homogeneous point at a = omega6: (2a - 1)^(n^2) times the state count
    let pt = EvalPoint::all(CycNum::one())?;
    println!("Z(all ones, omega6) = {}", transfer_matrix_value(&g, Convention::Standard, &pt, &CycNum::a())?);
    Ok(())
}
