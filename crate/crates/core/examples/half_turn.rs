//! Half-turn quotient graphs: split partition functions, the specialization
//! identities and the symmetry at a = ω6.

use square_ice::ice::{ht_even, ht_odd};
use square_ice::partition::{partition_function, Convention};
use square_ice::verifier::{
    check_calibration, check_half_width_ht, check_pseudo_sym, check_specialization_ht, check_theorem_ht,
    check_theorem_ht_with, HtModel, Strategy,
};
use square_ice::{CoeffMode, GenericCoeff};

fn main() -> square_ice::Result<()> {
    for n in 1..=2 {
        for g in [ht_even(n)?, ht_odd(n)?] {
            let z = partition_function::<GenericCoeff>(&g, Convention::Standard);
            let labels = z.split_labels.clone().unwrap();
            let [p, q] = z.split.as_ref().unwrap();
            println!(
                "{}({n}): {} vertices, {} states, Z{} has {} monomials, Z{} has {}",
                g.kind.name(),
                g.num_vertices(),
                z.state_count,
                labels[0],
                p.num_monomials(),
                labels[1],
                q.num_monomials()
            );
        }
    }
    println!();
    for n in 1..=2 {
        println!("{}", check_half_width_ht(HtModel::Even, n)?);
        println!("{}", check_half_width_ht(HtModel::Odd, n)?);
        println!("{}", check_pseudo_sym(n)?);
        println!("{}", check_specialization_ht(n)?);
    }
    println!("{}", check_calibration()?);
    for model in [HtModel::Even, HtModel::Odd] {
        println!("{}", check_theorem_ht(model, 1, CoeffMode::Omega6, Strategy::Symbolic)?);
        println!("{}", check_theorem_ht(model, 2, CoeffMode::Omega6, Strategy::Random { trials: 20, seed: 5 })?);
    }
    println!("\ncentral rows left distinct:");
    println!("{}", check_theorem_ht_with(HtModel::Even, 2, CoeffMode::Omega6, Strategy::Symbolic, false)?);
    Ok(())
}
