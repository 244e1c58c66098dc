use num_bigint::BigInt;
use proptest::prelude::*;
use square_ice::ice::{all_asms, asm_to_state, dwbc, state_to_asm};
use square_ice::partition::{partition_function, transfer_matrix_partition, Convention};
use square_ice::{CycNum, EvalPoint, GenericCoeff, GenericPoly, LaurentPoly, Omega6Poly, VarId};

fn cyc() -> impl Strategy<Value = CycNum> {
    (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6).prop_map(|(p, pd, q, qd)| {
        let p: CycNum = format!("{p}/{pd}+{q}/{qd}a").parse().unwrap();
        p
    })
}

fn nonzero_cyc() -> impl Strategy<Value = CycNum> {
    cyc().prop_filter("nonzero", |c| !c.is_zero())
}

const VARS: [VarId; 3] = [VarId::x(1), VarId::x(2), VarId::y(1)];

fn generic_poly() -> impl Strategy<Value = GenericPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, 3), -3i32..=3, -5i64..=5), 0..6).prop_map(|ts| {
        let terms = ts.into_iter().map(|(e, k, c)| (e, GenericCoeff::from_terms([(k, BigInt::from(c))])));
        GenericPoly::from_terms(&VARS, terms).unwrap()
    })
}

fn omega_poly() -> impl Strategy<Value = Omega6Poly> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, 3), cyc()), 0..6)
        .prop_map(|ts| Omega6Poly::from_terms(&VARS, ts).unwrap())
}

fn point() -> impl Strategy<Value = EvalPoint> {
    (nonzero_cyc(), nonzero_cyc(), nonzero_cyc(), nonzero_cyc()).prop_map(|(a, b, c, s)| {
        EvalPoint::new().with(VARS[0], a).unwrap().with(VARS[1], b).unwrap().with(VARS[2], c).unwrap().with_a(s).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyc_field_axioms(x in cyc(), y in cyc(), z in cyc()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &x, CycNum::zero());
    }

    #[test]
    fn cyc_inverse(x in nonzero_cyc()) {
        prop_assert!((&x * &x.inv().unwrap()).is_one());
        prop_assert_eq!(x.pow(-3).unwrap(), x.inv().unwrap().pow(3).unwrap());
        prop_assert_eq!(x.norm(), (&x * &x.conj()).p().clone());
    }

    #[test]
    fn cyc_text_and_json_round_trip(x in cyc()) {
        prop_assert_eq!(x.to_string().parse::<CycNum>().unwrap(), x.clone());
        let j = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<CycNum>(&j).unwrap(), x);
    }

    #[test]
    fn omega6_reduction_is_a_ring_map(p in -4i64..=4, k in -5i32..=5, q in -4i64..=4, m in -5i32..=5) {
        let u = GenericCoeff::monomial(p, k);
        let v = GenericCoeff::monomial(q, m);
        let up = GenericPoly::constant(&u);
        let vp = GenericPoly::constant(&v);
        let prod = (&up * &vp).to_omega6();
        let sum = (&up + &vp).to_omega6();
        let (ur, vr) = (u.at_omega6(), v.at_omega6());
        prop_assert_eq!(prod, Omega6Poly::constant(&(&ur * &vr)));
        prop_assert_eq!(sum, Omega6Poly::constant(&(&ur + &vr)));
    }

    #[test]
    fn generic_ring_axioms(p in generic_poly(), q in generic_poly(), r in generic_poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn omega_ring_axioms(p in omega_poly(), q in omega_poly(), r in omega_poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in generic_poly(), q in generic_poly(), pt in point()) {
        let (pv, qv) = (p.evaluate(&pt).unwrap(), q.evaluate(&pt).unwrap());
        prop_assert_eq!((&p * &q).evaluate(&pt).unwrap(), &pv * &qv);
        prop_assert_eq!((&p + &q).evaluate(&pt).unwrap(), &pv + &qv);
    }

    #[test]
    fn reduction_commutes_with_evaluation(p in generic_poly(), pt in point()) {
        let at = EvalPoint::new()
            .with(VARS[0], pt.value(VARS[0]).unwrap().clone()).unwrap()
            .with(VARS[1], pt.value(VARS[1]).unwrap().clone()).unwrap()
            .with(VARS[2], pt.value(VARS[2]).unwrap().clone()).unwrap()
            .with_a(CycNum::a()).unwrap();
        prop_assert_eq!(p.to_omega6().evaluate(&at).unwrap(), p.evaluate(&at).unwrap());
    }

    #[test]
    fn substitution_is_a_homomorphism(p in generic_poly(), q in generic_poly(), k in -2i32..=2, e in -2i32..=2) {
        let unit = &GenericPoly::a_pow(k) * &GenericPoly::monomial(&[(VARS[2], e)]);
        let s = |f: &GenericPoly| f.substitute_monomial(VARS[0], &unit).unwrap();
        prop_assert_eq!(s(&(&p * &q)), &s(&p) * &s(&q));
        prop_assert_eq!(s(&(&p + &q)), &s(&p) + &s(&q));
    }

    #[test]
    fn substitution_agrees_with_evaluation(p in generic_poly(), pt in point(), k in -2i32..=2) {
        let unit = &GenericPoly::a_pow(k) * &GenericPoly::var(VARS[2]);
        let a = pt.a().unwrap().clone();
        let moved = pt.clone().with(VARS[0], &a.pow(k as i64).unwrap() * pt.value(VARS[2]).unwrap()).unwrap();
        prop_assert_eq!(p.substitute_monomial(VARS[0], &unit).unwrap().evaluate(&pt).unwrap(), p.evaluate(&moved).unwrap());
    }

    #[test]
    fn symmetry_equivalences(p in generic_poly()) {
        let (u, v) = (VARS[0], VARS[1]);
        let s = p.swap(u, v).unwrap();
        prop_assert_eq!(s.swap(u, v).unwrap(), p.clone());
        prop_assert_eq!(p.is_symmetric(u, v).unwrap(), s == p);
        let sym = &p + &s;
        prop_assert!(sym.is_symmetric(u, v).unwrap());
    }

    #[test]
    fn poly_json_round_trip(p in generic_poly(), q in omega_poly()) {
        let j = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<GenericPoly>(&j).unwrap(), p.clone());
        prop_assert_eq!(serde_json::to_string(&serde_json::from_str::<GenericPoly>(&j).unwrap()).unwrap(), j);
        let j = serde_json::to_string(&q).unwrap();
        prop_assert_eq!(serde_json::from_str::<Omega6Poly>(&j).unwrap(), q);
    }

    #[test]
    fn unit_inverse(k in -3i32..=3, e in -3i32..=3, f in -3i32..=3) {
        let u = &GenericPoly::a_pow(k) * &GenericPoly::monomial(&[(VARS[0], e), (VARS[1], f)]);
        prop_assert_eq!(&u * &u.inverse_unit().unwrap(), GenericPoly::one());
    }

    #[test]
    fn asm_round_trip(i in 0usize..42) {
        let g = dwbc(4).unwrap();
        let m = all_asms(4)[i].clone();
        let s = asm_to_state(&g, &m).unwrap();
        prop_assert!(g.is_valid_state(&s));
        prop_assert_eq!(state_to_asm(&g, &s).unwrap(), m);
    }
}

#[test]
fn generic_partition_reduces_to_omega6_partition() {
    for n in 1..=3 {
        let g = dwbc(n).unwrap();
        let generic = transfer_matrix_partition::<GenericCoeff>(&g, Convention::Standard).unwrap();
        let omega = partition_function::<CycNum>(&g, Convention::Standard).value;
        assert_eq!(generic.to_omega6(), omega, "n = {n}");
    }
}

#[test]
fn laurent_poly_type_alias_is_generic() {
    let p: LaurentPoly<GenericCoeff> = GenericPoly::var(VARS[0]);
    assert_eq!(p.vars(), &[VARS[0]]);
}
