use square_ice::ice::{
    asm_count_oracle, count_states, dwbc, enumerate_states, ht_asm_count_oracle, ht_even, ht_odd, state_json, AsmMatrix,
    Orientation, Side,
};
use square_ice::laurent::sigma_of;
use square_ice::partition::{
    partition_function, partition_value, transfer_matrix_partition, transfer_matrix_value, Convention,
};
use square_ice::verifier::degree_width_bound;
use square_ice::{CycNum, EvalPoint, GenericCoeff, GenericPoly, VarId};

#[test]
fn dwbc_state_counts_match_monotone_triangles() {
    for n in 1..=6 {
        assert_eq!(count_states(&dwbc(n).unwrap()) as u128, asm_count_oracle(n), "n = {n}");
    }
}

#[test]
fn ht_state_counts_match_filtered_asms() {
    for n in 1..=3 {
        assert_eq!(count_states(&ht_even(n).unwrap()), ht_asm_count_oracle(2 * n), "even order {}", 2 * n);
    }
    for n in 0..=2 {
        assert_eq!(count_states(&ht_odd(n).unwrap()), ht_asm_count_oracle(2 * n + 1), "odd order {}", 2 * n + 1);
    }
}

#[test]
fn ht_odd_center_is_always_a_source_or_sink_pair() {
    for n in 0..=2 {
        let g = ht_odd(n).unwrap();
        let center = g.split.as_ref().unwrap().vertex;
        assert_eq!(g.split.as_ref().unwrap().side, Side::S);
        assert!(!g.vertices[center].weighted);
        for s in enumerate_states(&g) {
            let o = g.orientation(&s, center).unwrap();
            assert!(matches!(o, Orientation::O1 | Orientation::O2), "n = {n}: {o:?}");
        }
    }
}

#[test]
fn ht_odd_zero_is_a_single_vertex() {
    let g = ht_odd(0).unwrap();
    assert_eq!(g.num_vertices(), 1);
    let z = partition_function::<GenericCoeff>(&g, Convention::Standard);
    let [nw, se] = z.split.unwrap();
    assert!(nw.is_zero());
    assert_eq!(se, GenericPoly::one());
}

#[test]
fn split_parts_sum_to_total() {
    for g in [ht_even(2).unwrap(), ht_odd(2).unwrap()] {
        let z = partition_function::<CycNum>(&g, Convention::Standard);
        let [p, q] = z.split.clone().unwrap();
        assert_eq!(&p + &q, z.value);
        assert_eq!(z.part(&z.split_labels.clone().unwrap()[0]).unwrap(), &p);
    }
}

#[test]
fn hand_computed_ht_even_one() {
    let (x, y, y1) = (VarId::aux(1), VarId::aux(2), VarId::y(1));
    let z = partition_function::<GenericCoeff>(&ht_even(1).unwrap(), Convention::Standard);
    let s2: GenericPoly = sigma_of(2, &[]);
    assert_eq!(z.part("↑").unwrap(), &(&s2 * &sigma_of(1, &[(x, 1), (y1, -1)])));
    assert_eq!(z.part("↓").unwrap(), &(&s2 * &sigma_of(1, &[(y1, 1), (y, -1)])));
}

#[test]
fn width_bound_dominates_actual_width() {
    for n in 1..=4 {
        let g = dwbc(n).unwrap();
        let z = transfer_matrix_partition::<GenericCoeff>(&g, Convention::Standard).unwrap();
        for v in g.variables() {
            let (lo, hi) = z.degree_range(v).unwrap();
            assert!((hi - lo) as usize <= degree_width_bound(&g, v));
        }
    }
}

#[test]
fn numeric_engines_agree_with_symbolic_evaluation() {
    let g = dwbc(3).unwrap();
    let pt: EvalPoint = "x1=2, x2=-1/3, x3=1+a, y1=3, y2=-2a, y3=1/2, a=5/7".parse().unwrap();
    let a = pt.a().unwrap().clone();
    let z = transfer_matrix_partition::<GenericCoeff>(&g, Convention::Standard).unwrap();
    let want = z.evaluate(&pt).unwrap();
    assert_eq!(transfer_matrix_value(&g, Convention::Standard, &pt, &a).unwrap(), want);
    assert_eq!(partition_value(&g, Convention::Standard, &pt, &a).unwrap().value, want);
}

#[test]
fn homogeneous_values_at_omega6() {
    let pt = EvalPoint::all(CycNum::one()).unwrap();
    let base = CycNum::from_ints(-1, 2);
    let z4 = transfer_matrix_value(&dwbc(4).unwrap(), Convention::Standard, &pt, &CycNum::a()).unwrap();
    assert_eq!(z4, &base.pow(16).unwrap() * &CycNum::from_int(42));
    // the centre of the odd model carries no weight
    let g = ht_odd(1).unwrap();
    assert_eq!(g.num_weighted(), 4);
    let v = partition_value(&g, Convention::Standard, &pt, &CycNum::a()).unwrap().value;
    assert_eq!(v, &base.pow(4).unwrap() * &CycNum::from_int(3));
    let v = partition_value(&ht_even(1).unwrap(), Convention::Standard, &pt, &CycNum::a()).unwrap().value;
    assert_eq!(v, &base.pow(2).unwrap() * &CycNum::from_int(2));
}

#[test]
fn state_json_shape() {
    let g = dwbc(2).unwrap();
    let s = &enumerate_states(&g)[0];
    let v = state_json(&g, s);
    assert_eq!(v["model"], "dwbc");
    assert_eq!(v["n"], 2);
    assert_eq!(v["edges"].as_array().unwrap().len(), g.edges.len());
}

#[test]
fn asm_text_round_trip() {
    let m: AsmMatrix = "0 1 0\n1 -1 1\n0 1 0".parse().unwrap();
    assert_eq!(m.count_negative(), 1);
    assert!(m.is_half_turn_symmetric());
    assert_eq!(m.to_string().parse::<AsmMatrix>().unwrap(), m);
    assert!("1 1\n0 0".parse::<AsmMatrix>().is_err());
}
