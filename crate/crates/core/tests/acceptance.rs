//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails or exceeds its time budget.

use std::time::{Duration, Instant};

use square_ice::ice::{asm_count_oracle, count_states, dwbc, ht_asm_count_oracle, ht_even, ht_odd, ybe_tangles};
use square_ice::partition::{partition_function, transfer_matrix_partition, transfer_matrix_value, Convention};
use square_ice::verifier::*;
use square_ice::{CoeffMode, CycNum, EvalPoint, GenericCoeff};

type Outcome = Result<(), String>;
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

const SEED: u64 = 20240229;

fn random(trials: usize) -> Strategy {
    Strategy::Random { trials, seed: SEED }
}

fn require(r: square_ice::Result<CheckReport>) -> Outcome {
    match r {
        Ok(r) if r.passed() => Ok(()),
        Ok(r) => Err(r.to_string()),
        Err(e) => Err(e.to_string()),
    }
}

fn c1_yang_baxter() -> Outcome {
    let (left, _) = ybe_tangles();
    if left.external_assignments().len() != 64 {
        return Err("expected 64 external assignments".into());
    }
    require(check_yang_baxter(CoeffMode::GenericA, Strategy::Symbolic))
}

fn c2_laurent_structure() -> Outcome {
    (1..=5).try_for_each(|n| require(check_half_width(n, CoeffMode::GenericA)))
}

fn c3_partial_symmetry() -> Outcome {
    (2..=3).try_for_each(|n| require(check_partial_symmetry(n, CoeffMode::GenericA)))
}

fn c4_specialization() -> Outcome {
    (2..=4).try_for_each(|n| require(check_specialization_dwbc(n)))
}

fn c5_theorem_main() -> Outcome {
    for n in 1..=3 {
        require(check_theorem_main(n, CoeffMode::Omega6, Strategy::Symbolic))?;
    }
    for n in 4..=5 {
        require(check_theorem_main(n, CoeffMode::Omega6, random(20)))?;
    }
    Ok(())
}

fn c6_counting() -> Outcome {
    let expected: [u128; 6] = [1, 2, 7, 42, 429, 7436];
    for (i, &want) in expected.iter().enumerate() {
        let n = i + 1;
        let states = count_states(&dwbc(n).map_err(|e| e.to_string())?) as u128;
        let oracle = asm_count_oracle(n);
        if states != want || oracle != want {
            return Err(format!("n = {n}: states {states}, oracle {oracle}, expected {want}"));
        }
    }
    let pt = EvalPoint::all(CycNum::one()).map_err(|e| e.to_string())?;
    let base = CycNum::from_ints(-1, 2);
    for n in 1..=5 {
        let g = dwbc(n).map_err(|e| e.to_string())?;
        let z = transfer_matrix_value(&g, Convention::Standard, &pt, &CycNum::a()).map_err(|e| e.to_string())?;
        let want = &base.pow((n * n) as i64).unwrap() * &CycNum::from_int(expected[n - 1] as i64);
        if z != want {
            return Err(format!("n = {n}: Z(all ones) = {z}, expected {want}"));
        }
    }
    Ok(())
}

fn c7_ht_structure() -> Outcome {
    for model in [HtModel::Even, HtModel::Odd] {
        for n in 1..=2 {
            require(check_half_width_ht(model, n))?;
        }
    }
    Ok(())
}

fn c8_loop_and_exchange() -> Outcome {
    require(check_loop_identity(Strategy::Symbolic))?;
    (1..=2).try_for_each(|w| require(check_exchange_loop(w)))
}

fn c9_pseudo_symmetry() -> Outcome {
    (1..=2).try_for_each(|n| require(check_pseudo_sym(n)))
}

fn c10_ht_specializations() -> Outcome {
    (1..=2).try_for_each(|n| require(check_specialization_ht(n)))
}

fn c11_theorem_ht() -> Outcome {
    for model in [HtModel::Odd, HtModel::Even] {
        require(check_theorem_ht(model, 1, CoeffMode::Omega6, Strategy::Symbolic))?;
        require(check_theorem_ht(model, 2, CoeffMode::Omega6, random(20)))?;
    }
    Ok(())
}

fn c12_calibration() -> Outcome {
    let winners: Vec<Convention> =
        calibrate().map_err(|e| e.to_string())?.into_iter().filter(|e| e.passes()).map(|e| e.convention).collect();
    if winners != [Convention::Standard] || CALIBRATED != Convention::Standard {
        return Err(format!("conventions passing: {winners:?}"));
    }
    require(check_calibration())
}

fn c13_oracle_equivalence() -> Outcome {
    for n in 1..=4 {
        let g = dwbc(n).map_err(|e| e.to_string())?;
        let e = partition_function::<GenericCoeff>(&g, Convention::Standard).value;
        let t = transfer_matrix_partition::<GenericCoeff>(&g, Convention::Standard).map_err(|e| e.to_string())?;
        if e != t {
            return Err(format!("generic-a engines differ at n = {n}"));
        }
    }
    for n in 1..=5 {
        require(check_engines_agree(n, CoeffMode::Omega6, Strategy::Symbolic))?;
    }
    require(check_engines_agree(6, CoeffMode::Omega6, random(20)))?;
    let expected = [1u64, 2, 3, 10, 25, 140];
    for n in 1..=3 {
        let got = count_states(&ht_even(n).map_err(|e| e.to_string())?);
        let order = 2 * n;
        if got != ht_asm_count_oracle(order) || got != expected[order - 1] {
            return Err(format!("even order {order}: {got} states"));
        }
    }
    for n in 0..=2 {
        let got = count_states(&ht_odd(n).map_err(|e| e.to_string())?);
        let order = 2 * n + 1;
        if got != ht_asm_count_oracle(order) || got != expected[order - 1] {
            return Err(format!("odd order {order}: {got} states"));
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 13] = [
        (1, "Yang-Baxter, 64 assignments, generic a", 1, c1_yang_baxter),
        (2, "Laurent structure of Z(n), n = 1..5", 60, c2_laurent_structure),
        (3, "partial symmetry, n = 2, 3", 10, c3_partial_symmetry),
        (4, "specialization recursion, n = 2, 3, 4", 60, c4_specialization),
        (5, "full symmetry at omega6, n = 1..5", 300, c5_theorem_main),
        (6, "state counts and homogeneous values", 120, c6_counting),
        (7, "half-turn half-widths", 60, c7_ht_structure),
        (8, "loop and exchange identities, widths 1, 2", 30, c8_loop_and_exchange),
        (9, "pseudo-symmetry, orders 2, 4", 60, c9_pseudo_symmetry),
        (10, "half-turn specializations, N = 1, 2", 120, c10_ht_specializations),
        (11, "half-turn symmetry at omega6", 300, c11_theorem_ht),
        (12, "calibration selects exactly one convention", 600, c12_calibration),
        (13, "engine and count oracles", 180, c13_oracle_equivalence),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let ok = outcome.is_ok() && !over;
        println!(
            "criterion {id:>2} {}  {name}  ({:.2}s, budget {budget}s)",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        if let Err(e) = &outcome {
            println!("    {}", e.replace('\n', "\n    "));
        }
        if over {
            println!("    over time budget");
        }
        failed += usize::from(!ok);
    }
    println!("{} of 13 criteria passed", 13 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
