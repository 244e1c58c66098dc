use square_ice::ice::{dwbc, ht_even, ybe_tangles, Flow};
use square_ice::partition::Convention;
use square_ice::verifier::*;
use square_ice::{CoeffMode, GenericCoeff, VarId};

fn fails_with_monomial(r: &CheckReport) {
    assert!(!r.passed(), "{r}");
    assert!(matches!(r.witness, Some(Witness::Monomial { .. })), "{r}");
}

#[test]
fn yang_baxter_constraint_is_needed() {
    assert!(check_yang_baxter(CoeffMode::GenericA, Strategy::Symbolic).unwrap().passed());
    let r = check_yang_baxter_with(CoeffMode::GenericA, Strategy::Symbolic, YbeConstraint::Dropped).unwrap();
    fails_with_monomial(&r);
    match r.witness.unwrap() {
        Witness::Monomial { context, .. } => assert!(context.starts_with("external flows")),
        w => panic!("{w}"),
    }
}

#[test]
fn unbalanced_ybe_assignments_vanish() {
    let (left, right) = ybe_tangles();
    let mut unbalanced = 0;
    for flows in left.external_assignments() {
        let ins = flows.iter().filter(|f| **f == Flow::In).count();
        if ins != 3 {
            unbalanced += 1;
            assert!(tangle_value::<GenericCoeff>(&left, &flows, CALIBRATED).unwrap().is_zero());
            assert!(tangle_value::<GenericCoeff>(&right, &flows, CALIBRATED).unwrap().is_zero());
        }
    }
    assert_eq!(unbalanced, 64 - 20);
}

#[test]
fn cross_swap_fails_for_generic_a() {
    let g = dwbc(2).unwrap();
    let r = check_transpositions("cross", &g, CoeffMode::GenericA, &[(VarId::x(1), VarId::y(1))], Strategy::Symbolic)
        .unwrap();
    fails_with_monomial(&r);
}

#[test]
fn partial_symmetry_needs_two_rows() {
    assert!(check_partial_symmetry(1, CoeffMode::GenericA).is_err());
    assert!(check_partial_symmetry(3, CoeffMode::GenericA).unwrap().passed());
}

#[test]
fn swapped_prefactors_fail() {
    let r = check_specialization_dwbc_with(2, Convention::Standard, Prefactors::Swapped).unwrap();
    fails_with_monomial(&r);
}

#[test]
fn theorem_main_small_and_generic() {
    assert!(check_theorem_main(1, CoeffMode::Omega6, Strategy::Symbolic).unwrap().passed());
    fails_with_monomial(&check_theorem_main(3, CoeffMode::GenericA, Strategy::Symbolic).unwrap());
}

#[test]
fn random_failure_reports_a_point() {
    let r = check_theorem_main(3, CoeffMode::GenericA, Strategy::Random { trials: 20, seed: 11 }).unwrap();
    assert!(!r.passed());
    match r.witness.unwrap() {
        Witness::Point { point, .. } => assert!(point.contains_key("a") && point.contains_key("x1")),
        w => panic!("{w}"),
    }
}

#[test]
fn too_few_points_is_a_config_error() {
    assert!(check_theorem_main(5, CoeffMode::Omega6, Strategy::Random { trials: 10, seed: 1 }).is_err());
}

#[test]
fn loop_needs_both_terms() {
    assert!(check_loop_identity(Strategy::Symbolic).unwrap().passed());
    assert!(check_loop_identity(Strategy::Random { trials: 20, seed: 3 }).unwrap().passed());
    fails_with_monomial(&check_loop_identity_with(Strategy::Symbolic, LoopFactor::CrossingOnly).unwrap());
}

#[test]
fn exchange_coefficients_matter() {
    assert!(check_exchange_loop(1).unwrap().passed());
    fails_with_monomial(&check_exchange_loop_with(2, ExchangeCoefficients::SwappedInFirst).unwrap());
}

#[test]
fn wrong_ht_pairing_fails() {
    let mut pairings = HtEquation::ALL.map(HtEquation::pinned_pairing);
    pairings[0] = HtPairing::Crossed;
    let r = check_specialization_ht_with(1, Convention::Standard, pairings).unwrap();
    fails_with_monomial(&r);
}

#[test]
fn mirrored_convention_breaks_ht_identities() {
    let r = check_specialization_ht_with(1, Convention::Mirrored, HtEquation::ALL.map(HtEquation::pinned_pairing)).unwrap();
    assert!(!r.passed());
}

#[test]
fn ht_even_needs_equal_central_rows() {
    let r = check_theorem_ht_with(HtModel::Even, 2, CoeffMode::Omega6, Strategy::Symbolic, false).unwrap();
    fails_with_monomial(&r);
}

#[test]
fn ht_even_distinct_rows_still_symmetric_in_outer_variables() {
    // x1 <-> y1 does not involve the central rows and survives x != y
    let g = ht_even(2).unwrap();
    let r = check_transpositions("outer", &g, CoeffMode::Omega6, &[(VarId::x(1), VarId::y(1))], Strategy::Symbolic)
        .unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn report_json_is_deterministic() {
    let run = || {
        check_theorem_main(4, CoeffMode::Omega6, Strategy::Random { trials: 20, seed: 42 })
            .unwrap()
            .to_json(false)
            .to_string()
    };
    let a = run();
    assert_eq!(a, run());
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    for key in ["check", "params", "verdict", "witness", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!(v["elapsed_ms"].is_null());
}

#[test]
fn suite_selection_follows_mode() {
    let cfg = SuiteConfig { model: SuiteModel::Dwbc, size: 2, mode: CoeffMode::GenericA, trials: 20, seed: 0 };
    let names: Vec<String> = run_suite(&[], &cfg).unwrap().into_iter().map(|r| r.check).collect();
    assert!(names.contains(&"specialization-dwbc".to_string()));
    assert!(!names.contains(&"theorem-main".to_string()));
}
