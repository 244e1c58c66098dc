//! Yang-Baxter, the loop identity and the row-exchange identities.

use square_ice::verifier::{
    check_exchange_loop, check_loop_identity, check_loop_identity_with, check_yang_baxter, check_yang_baxter_with,
    LoopFactor, Strategy, YbeConstraint,
};
use square_ice::CoeffMode;

fn main() -> square_ice::Result<()> {
    println!("{}", check_yang_baxter(CoeffMode::GenericA, Strategy::Symbolic)?);
    println!("{}", check_yang_baxter(CoeffMode::Omega6, Strategy::Random { trials: 20, seed: 1 })?);
    println!("{}", check_loop_identity(Strategy::Symbolic)?);
    for w in 1..=3 {
        println!("{}", check_exchange_loop(w)?);
    }

    println!("\nwith a hypothesis removed:");
    println!("{}", check_yang_baxter_with(CoeffMode::GenericA, Strategy::Symbolic, YbeConstraint::Dropped)?);
    println!("{}", check_loop_identity_with(Strategy::Symbolic, LoopFactor::CrossingOnly)?);
    Ok(())
}
