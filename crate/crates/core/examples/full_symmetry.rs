//! At a = ω6 the domain-wall partition function is symmetric in all of its
//! 2n variables; for generic a only the partial symmetry survives.

use square_ice::verifier::{check_partial_symmetry, check_specialization_dwbc, check_theorem_main, Strategy};
use square_ice::CoeffMode;

fn main() -> square_ice::Result<()> {
    for n in 2..=3 {
        println!("{}", check_partial_symmetry(n, CoeffMode::GenericA)?);
        println!("{}", check_specialization_dwbc(n)?);
    }
    for n in 1..=3 {
        println!("{}", check_theorem_main(n, CoeffMode::Omega6, Strategy::Symbolic)?);
    }
    let random = Strategy::Random { trials: 20, seed: 2024 };
    println!("{}", check_theorem_main(4, CoeffMode::Omega6, random)?);
    println!("{}", check_theorem_main(5, CoeffMode::Omega6, random)?);

    println!("\ngeneric a:");
    println!("{}", check_theorem_main(3, CoeffMode::GenericA, Strategy::Symbolic)?);
    Ok(())
}
