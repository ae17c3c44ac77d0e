//! Property tests for the invariants the engine relies on, each against an
//! oracle computed here from first principles.

use modcert::certify::{find_semistabilizing_twist, local_modularity_analysis, ExceptionalCase, LocalOutcome};
use modcert::exact::{rat_frac, slots_above, PrimeSlot, QuadElem, Rat, Val};
use modcert::galois::{
    curve_with_j_invariant, frobenius_irreducibility, isogeny_reducibility, j_map, jmap_fibre, IrreducibilityStatus,
};
use modcert::grouptheory::exceptional_threshold;
use modcert::inertia::{kraus_descriptor, matrix_order_oracle, CyclicBound, InertiaKind, WILD_TRIPLES};
use modcert::localred::{is_semistable, tate, KodairaType, PotentialGood, ReductionClass};
use modcert::model::{BaseField, Curve};
use proptest::prelude::*;

fn vp(mut n: i128, p: i128) -> Option<i64> {
    if n == 0 {
        return None;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Some(v)
}

/// Kodaira symbol of `y² = x³ + Ax + B` at `p ≥ 5` from valuations alone.
fn kodaira_oracle(a: i128, b: i128, p: i128) -> KodairaType {
    let va = vp(a, p).unwrap_or(i64::MAX);
    let vb = vp(b, p).unwrap_or(i64::MAX);
    let k = (va / 4).min(vb / 6);
    let vd = vp(4 * a * a * a + 27 * b * b, p).expect("nonsingular") - 12 * k;
    let va_min = va.saturating_sub(4 * k);
    if vd == 0 {
        return KodairaType::I(0);
    }
    if a != 0 && 3 * va_min < vd {
        let n = (vd - 3 * va_min) as u32;
        return if va_min == 0 { KodairaType::I(n) } else { KodairaType::IStar(n) };
    }
    match vd {
        2 => KodairaType::II,
        3 => KodairaType::III,
        4 => KodairaType::IV,
        6 => KodairaType::IStar(0),
        8 => KodairaType::IVStar,
        9 => KodairaType::IIIStar,
        10 => KodairaType::IIStar,
        other => panic!("v(Δ) = {other} has no potential-good type"),
    }
}

fn short(field: BaseField, a: i128, b: i128) -> Curve {
    Curve::from_ints(field, [0, 0, 0, a as i64, b as i64]).expect("nonsingular")
}

fn big_rat(n: i64, d: i64) -> Rat {
    rat_frac(n, d)
}

/// `F_5` and `F_7` written out directly, normalised so `F_5(1) = 3376³`.
fn j_oracle(p: u64, t: &Rat) -> Rat {
    let c = |n: i64| big_rat(n, 1);
    let tp = |e: i32| (0..e).fold(c(1), |acc, _| acc * t);
    match p {
        5 => {
            let q = t * t + c(250) * t + c(3125);
            &q * &q * &q / tp(5)
        }
        7 => {
            let q = t * t + c(13) * t + c(49);
            let r = t * t + c(245) * t + c(2401);
            q * &r * &r * &r / tp(7)
        }
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tate_matches_valuation_table(
        a0 in -40i128..40, b0 in -40i128..40, i in 0u32..9, k in 0u32..13, p in prop::sample::select(vec![5i128, 7, 11]),
    ) {
        let a = a0 * p.pow(i);
        let b = b0 * p.pow(k);
        prop_assume!(4 * a * a * a + 27 * b * b != 0);
        let c = short(BaseField::Rationals, a, b);
        let r = tate(&c, &PrimeSlot::rational(p as u64).unwrap()).unwrap();
        prop_assert_eq!(r.local.kodaira, kodaira_oracle(a, b, p));
        prop_assert!(r.local.v_disc < 12 || matches!(r.local.kodaira, KodairaType::I(_) | KodairaType::IStar(_)));
    }

    #[test]
    fn val_ordering(a in -1000i64..1000, b in -1000i64..1000) {
        prop_assert_eq!(Val::Finite(a) < Val::Finite(b), a < b);
        prop_assert!(Val::Finite(a) < Val::Infinite);
        prop_assert_eq!(Val::Finite(a) + Val::Finite(b), Val::Finite(a + b));
        prop_assert_eq!(Val::Finite(a) + Val::Infinite, Val::Infinite);
        prop_assert_eq!(Val::Finite(a).min(Val::Infinite), Val::Finite(a));
    }

    #[test]
    fn tame_descriptors_match_matrix_orders(p in prop::sample::select(vec![5u64, 7]), v in 1i64..12, ss in any::<bool>()) {
        let class = if ss { ReductionClass::AdditivePotGoodSupersingular } else { ReductionClass::AdditivePotGoodOrdinary };
        if let Ok(d) = kraus_descriptor(p, class, 1, v, Val::Infinite, Val::Infinite) {
            let CyclicBound::Order(n) = d.proj_cyclic_bound else { panic!("tame expected") };
            prop_assert_eq!(matrix_order_oracle(&d).unwrap(), n);
            let period = if ss { p + 1 } else { p - 1 };
            prop_assert_eq!(((period as i64) * v) % 12, 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jmap_substitution_and_fibre(n in -300i64..300, d in 1i64..300, p in prop::sample::select(vec![5u64, 7])) {
        prop_assume!(n != 0);
        let t = big_rat(n, d);
        let j = j_map(p, &QuadElem::from_rat(t.clone())).unwrap().expect("t ≠ 0");
        prop_assert_eq!(j.x(), &j_oracle(p, &t));
        prop_assert!(j.y() == &big_rat(0, 1));
        let fibre = jmap_fibre(p, &j, None).unwrap();
        prop_assert!(fibre.contains(&QuadElem::from_rat(t)));
        for s in &fibre {
            prop_assert_eq!(&j_map(p, s).unwrap().unwrap(), &j);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn frobenius_never_contradicts_isogeny(a in -30i128..30, b in -30i128..30, p in prop::sample::select(vec![5u64, 7])) {
        prop_assume!(4 * a * a * a + 27 * b * b != 0 && a != 0 && b != 0);
        let c = short(BaseField::Rationals, a, b);
        let frob = frobenius_irreducibility(&c, p, 400).unwrap();
        let iso = isogeny_reducibility(&c, p).unwrap();
        prop_assert!(!(frob.is_irreducible() && iso.is_reducible()));
        if let IrreducibilityStatus::Reducible { witness_t: Some(t), .. } = &iso {
            prop_assert_eq!(j_map(p, t).unwrap().unwrap(), c.j());
        }
    }

    #[test]
    fn twist_search_semistabilises(
        a in -20i64..20, b in -20i64..20, neg in any::<bool>(), d in prop::sample::select(vec![None, Some(2i64), Some(13)]),
    ) {
        let field = d.map_or(BaseField::Rationals, BaseField::RealQuadratic);
        prop_assume!((4 * a * a * a + 27 * b * b) % 3 != 0);
        let e = Curve::from_ints(field.clone(), [0, 0, 0, a, b]).unwrap();
        // a twist by ±3 of a curve with good reduction at 3 is additive there
        let u = QuadElem::from_int(if neg { -3 } else { 3 });
        let c = e.quadratic_twist(&u).unwrap();
        let slots = slots_above(field.radicand(), 3).unwrap();
        prop_assert!(slots.iter().all(|s| tate(&c, s).unwrap().local.kodaira == KodairaType::IStar(0)));
        let t = find_semistabilizing_twist(&c).unwrap();
        prop_assert_eq!(&c.quadratic_twist(&t.d).unwrap(), &t.twisted);
        for s in &slots {
            prop_assert!(is_semistable(&tate(&t.twisted, s).unwrap().local));
        }
    }

    #[test]
    fn exceptional_cases_match_their_congruences(
        a0 in -12i128..12, b0 in -12i128..12, i in 0u32..4, k in 0u32..6, p in prop::sample::select(vec![5u64, 7]),
    ) {
        let pi = p as i128;
        let (a, b) = (a0 * pi.pow(i), b0 * pi.pow(k));
        prop_assume!(4 * a * a * a + 27 * b * b != 0);
        let c = short(BaseField::Rationals, a, b);
        let slot = PrimeSlot::rational(p).unwrap();
        prop_assume!(tate(&c, &slot).unwrap().local.kodaira.is_additive());
        let irr = IrreducibilityStatus::Irreducible { frobenius: None, isogeny_checked: false, assumed: true };
        let an = local_modularity_analysis(&c, &slot, &irr).unwrap();
        let threshold = exceptional_threshold(p).unwrap();
        match &an.outcome {
            LocalOutcome::Exceptional(case) => {
                prop_assert!(!an.descriptor.proj_cyclic_bound.meets(threshold));
                let v_disc = an.local.v_disc.finite().unwrap();
                match case {
                    ExceptionalCase::Case1 => {
                        prop_assert_eq!(p, 5);
                        prop_assert_eq!(an.class, ReductionClass::AdditivePotGoodSupersingular);
                        prop_assert_eq!(an.v_j_mod_3(), Some(1));
                        prop_assert_eq!(v_disc.rem_euclid(3), 2);
                    }
                    ExceptionalCase::Case2 => {
                        prop_assert_eq!(p, 7);
                        prop_assert_eq!(an.class, ReductionClass::AdditivePotGoodOrdinary);
                        prop_assert_eq!(an.v_j_mod_3(), Some(2));
                        prop_assert_eq!(v_disc.rem_euclid(3), 1);
                    }
                }
            }
            LocalOutcome::Modular(steps) => {
                prop_assert!(!steps.is_empty());
                prop_assert!(an.descriptor.proj_cyclic_bound.meets(threshold) || c.j().is_zero());
            }
        }
    }
}

#[test]
fn wild_triples_exhaustive() {
    for p in [5u64, 7] {
        for v in 1..=11i64 {
            for va in 0..=6 {
                for vb in 0..=8 {
                    let triple = (v, va, vb);
                    let r = kraus_descriptor(
                        p,
                        ReductionClass::AdditivePotGoodSupersingular,
                        1,
                        v,
                        Val::Finite(va),
                        Val::Finite(vb),
                    );
                    let wild = matches!(r, Ok(ref d) if matches!(d.kind, InertiaKind::Wild { .. }));
                    assert_eq!(wild, WILD_TRIPLES.contains(&triple), "p = {p}, triple {triple:?}");
                    if wild {
                        assert_eq!(r.unwrap().proj_cyclic_bound, CyclicBound::ContainsPGroup);
                    }
                }
            }
        }
    }
}

#[test]
fn isogenous_curves_are_reducible_and_have_no_frobenius_witness() {
    let mut seen = 0;
    for p in [5u64, 7] {
        for t in [1i64, 2, 3, -2, 11] {
            let j = j_map(p, &QuadElem::from_int(t)).unwrap().unwrap();
            if j.is_zero() || j == QuadElem::from_int(1728) {
                continue;
            }
            let c = curve_with_j_invariant(BaseField::Rationals, &j).unwrap();
            let iso = isogeny_reducibility(&c, p).unwrap();
            assert!(iso.is_reducible(), "p = {p}, t = {t}");
            let frob = frobenius_irreducibility(&c, p, 300).unwrap();
            assert!(!frob.is_irreducible(), "p = {p}, t = {t}: {}", frob.to_json());
            seen += 1;
        }
    }
    assert!(seen >= 3);
}

#[test]
fn supersingular_declaration_matches_point_count() {
    // j = 0 is supersingular at 5 and ordinary at 7
    let c = Curve::from_ints(BaseField::Rationals, [0, 0, 0, 0, 1]).unwrap();
    for (p, want) in [(5, PotentialGood::Supersingular), (7, PotentialGood::Ordinary)] {
        let tw = c.quadratic_twist(&QuadElem::from_int(p)).unwrap();
        let slot = PrimeSlot::rational(p as u64).unwrap();
        let an = local_modularity_analysis(&tw, &slot, &IrreducibilityStatus::Irreducible {
            frobenius: None,
            isogeny_checked: false,
            assumed: true,
        })
        .unwrap();
        let class = match want {
            PotentialGood::Supersingular => ReductionClass::AdditivePotGoodSupersingular,
            PotentialGood::Ordinary => ReductionClass::AdditivePotGoodOrdinary,
        };
        assert_eq!(an.class, class, "p = {p}");
    }
}
