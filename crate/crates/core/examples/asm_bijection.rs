//! Ice states with domain-wall boundary are alternating sign matrices.

use square_ice::ice::{all_asms, asm_count_oracle, asm_to_state, dwbc, enumerate_states, ht_asm_count_oracle, state_to_asm};

fn main() -> square_ice::Result<()> {
    let g = dwbc(3)?;
    for s in enumerate_states(&g) {
        let m = state_to_asm(&g, &s)?;
        assert_eq!(asm_to_state(&g, &m)?, s);
        println!("{m}");
    }

    println!(" n  states  monotone triangles  ASMs");
    for n in 1..=6 {
        let states = enumerate_states(&dwbc(n)?).len();
        let asms = if n <= 5 { all_asms(n).len().to_string() } else { "-".into() };
        println!("{n:>2}  {states:>6}  {:>18}  {asms:>4}", asm_count_oracle(n));
    }

    println!("\nhalf-turn symmetric ASMs by order:");
    for order in 1..=6 {
        println!("  {order}: {}", ht_asm_count_oracle(order));
    }
    Ok(())
}
