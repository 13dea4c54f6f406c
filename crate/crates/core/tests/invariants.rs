mod common;

use cfperiod_core::classifier::{classify, Verdict};
use cfperiod_core::contfrac::{complete_quotient, evaluate_with_tail, expand, period_length};
use cfperiod_core::places::height;
use cfperiod_core::polyalg::{
    circle_profile, cyclotomic, decompose_q_k, factor_k, factor_q, is_root_of_unity, minpoly_over_q, nondegeneracy,
    KPoly, Over, RatPoly,
};
use cfperiod_core::qfield::rat_int;
use cfperiod_core::recurrence::{rec_min_charpoly, split_degenerate, Annihilator, LinRec};
use cfperiod_core::{QuadElem, QuadField};
use common::{fx_quad, rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = QuadField> {
    prop::sample::select(vec![2i64, 3, 5, 6, 7, 13, 17]).prop_map(|d| QuadField::new(d).unwrap())
}

fn elem_in(f: QuadField, r: i64) -> impl Strategy<Value = QuadElem> {
    (-r..=r, 1i64..7, -r..=r, 1i64..7).prop_map(move |(a, da, b, db)| f.elem(rat(a, da), rat(b, db)))
}

fn elem() -> impl Strategy<Value = QuadElem> {
    field().prop_flat_map(|f| elem_in(f, 60))
}

fn irrational() -> impl Strategy<Value = QuadElem> {
    elem().prop_filter("irrational", |x| !x.is_rational())
}

fn kpoly() -> impl Strategy<Value = KPoly> {
    (field(), 1usize..4).prop_flat_map(|(f, deg)| {
        prop::collection::vec((-5i64..=5, -3i64..=3), deg + 1).prop_filter_map("degree", move |cs| {
            let p = KPoly::new(f, cs.iter().map(|&(a, b)| f.int(a, b)).collect());
            (p.deg() >= 1 && !p.coeff(0).is_zero()).then_some(p)
        })
    })
}

fn linrec() -> impl Strategy<Value = LinRec> {
    (field(), 1usize..4).prop_flat_map(|(f, k)| {
        (prop::collection::vec((-4i64..=4, -2i64..=2), k), prop::collection::vec((-5i64..=5, -3i64..=3), k))
            .prop_filter_map("valid", move |(cs, is)| {
                let cs = cs.iter().map(|&(a, b)| f.int(a, b)).collect();
                let is = is.iter().map(|&(a, b)| f.int(a, b)).collect();
                LinRec::new(f, cs, is).ok()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn trace_and_norm_are_rational(x in elem()) {
        prop_assert!((&x + &x.conj()).is_rational());
        prop_assert!((&x * &x.conj()).is_rational());
    }

    #[test]
    fn floor_brackets_value(x in elem()) {
        let f = x.field();
        let fl = f.rational(rat_int(x.floor()));
        prop_assert!((&x - &fl).sign() >= 0);
        prop_assert!((&(&fl + &f.one()) - &x).sign() > 0);
    }

    #[test]
    fn sign_matches_fixed_point(x in elem()) {
        let v = fx_quad(&x);
        if v.abs() > BigInt::from(1000) {
            prop_assert_eq!(x.sign(), if v.is_positive() { 1 } else { -1 });
        } else {
            prop_assert!(x.is_zero());
        }
    }

    #[test]
    fn surd_round_trip(x in irrational()) {
        prop_assert_eq!(x.to_surd().unwrap().to_quad().unwrap(), x);
    }

    #[test]
    fn period_is_shift_invariant(x in irrational(), m in -1000i64..1000) {
        let y = &x + &x.field().int(m, 0);
        prop_assert_eq!(period_length(&y).unwrap(), period_length(&x).unwrap());
    }

    #[test]
    fn conjugate_related_expansions_terminate(x in irrational()) {
        for y in [x.conj(), -&x, -&x.conj()] {
            prop_assert!(expand(&y).unwrap().period_length() > 0);
        }
    }

    #[test]
    fn complete_quotients_rebuild_input(x in irrational(), n in 1usize..20) {
        let e = expand(&x).unwrap();
        let tail = complete_quotient(&x, n).unwrap();
        prop_assert_eq!(evaluate_with_tail(&e.quotients(n - 1).unwrap(), &tail).unwrap(), x);
    }

    #[test]
    fn decompose_multiplies_back(p in kpoly()) {
        let (pq, pk) = decompose_q_k(&p).unwrap();
        prop_assert_eq!(pq.conj(), pq.clone());
        prop_assert_eq!(&pq * &pk, p);
    }

    #[test]
    fn minpolys_are_irreducible_and_divisible(p in kpoly()) {
        for (pi, _) in factor_k(&p).unwrap().factors {
            let m = minpoly_over_q(&pi).unwrap();
            prop_assert!(factor_q(&m).unwrap().is_irreducible());
            prop_assert!(pi.divides(&m.to_k(p.field())));
        }
    }

    #[test]
    fn circle_profile_of_reverse_swaps(cs in prop::collection::vec(-6i64..=6, 2..7)) {
        let p = RatPoly::ints(&cs);
        prop_assume!(p.deg() >= 1 && !p.coeff(0).is_zero());
        let a = circle_profile(&p).unwrap();
        let b = circle_profile(&p.reverse()).unwrap();
        prop_assert_eq!(a.degree(), p.deg());
        prop_assert_eq!((a.inside, a.on, a.outside), (b.outside, b.on, b.inside));
    }

    #[test]
    fn terms_satisfy_recurrence(r in linrec()) {
        let k = r.order() as i64;
        for n in -50..=50 {
            let mut rhs = r.field().zero();
            for (i, c) in r.coeffs().iter().enumerate() {
                rhs = &rhs + &(c * &r.term(n - 1 - i as i64));
            }
            prop_assert_eq!(r.term(n), rhs, "n = {} order {}", n, k);
        }
    }

    #[test]
    fn conj_rec_commutes_with_term(r in linrec(), n in -30i64..30) {
        prop_assert_eq!(r.conj_rec().term(n), r.term(n).conj());
    }

    #[test]
    fn min_charpoly_divides_charpoly(r in linrec()) {
        match rec_min_charpoly(&r).unwrap() {
            Annihilator::ZeroSequence => {}
            Annihilator::Poly(m) => prop_assert!(m.divides(&r.charpoly())),
        }
    }

    #[test]
    fn base_field_part_has_no_roots_of_unity(r in linrec()) {
        let Annihilator::Poly(m) = rec_min_charpoly(&r).unwrap() else { return Ok(()) };
        prop_assume!(m.deg() >= 1 && nondegeneracy(&m, Over::BaseK).unwrap().0);
        let (_, pk) = decompose_q_k(&m).unwrap();
        prop_assume!(pk.deg() >= 1);
        for (g, _) in factor_k(&pk).unwrap().factors {
            prop_assert!(!is_root_of_unity(&minpoly_over_q(&g).unwrap()).unwrap().0);
        }
    }

    #[test]
    fn height_is_projective(d in prop::sample::select(vec![2i64, 3, 5]),
                            exps in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 2..4),
                            e in -3i64..4, g in -3i64..4) {
        let f = QuadField::new(d).unwrap();
        let unit = match d {
            2 => f.int(1, 1),
            3 => f.int(2, 1),
            _ => f.elem(rat(1, 2), rat(1, 2)),
        };
        let gens = [f.int(2, 0), f.int(3, 0), f.int(5, 0), unit];
        let xs: Vec<QuadElem> = exps
            .iter()
            .map(|es| gens.iter().zip(es).fold(f.one(), |acc, (g, &k)| &acc * &g.pow(k).unwrap()))
            .collect();
        let c = &f.int(2, 0).pow(e).unwrap() * &f.int(3, 0).pow(g).unwrap();
        let scaled: Vec<QuadElem> = xs.iter().map(|x| x * &c).collect();
        let h0 = height(&xs, &[2, 3, 5]).unwrap();
        let h1 = height(&scaled, &[2, 3, 5]).unwrap();
        prop_assert_eq!(h0.value, h1.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classifier_respects_conjugation_and_scaling(r in linrec()) {
        let Ok(c) = classify(&r) else { return Ok(()) };
        let cc = classify(&r.conj_rec()).unwrap();
        prop_assert_eq!(cc.tag(), c.tag());
        for m in [2, 3, 6] {
            let s = classify(&r.scaled(&r.field().int(m, 0))).unwrap();
            prop_assert_eq!(s.verdict, c.verdict);
        }
        match c.verdict {
            Verdict::ClassBb => {
                let pd = c.evidence.pd.clone().unwrap();
                prop_assert_eq!(pd.deg(), 1);
                let root = -pd.coeff(0);
                prop_assert!(root.is_one() || (-&root).is_one());
            }
            Verdict::ClassCc => prop_assert!(c.evidence.conj_fixed_factors().next().is_none()),
            _ => {}
        }
    }

    #[test]
    fn split_parts_are_nondegenerate(a in -3i64..=3, b in 1i64..=2, kind in 0usize..3, f in field()) {
        let r = f.int(a, b);
        let x = KPoly::x(f);
        let p = match kind {
            0 => &KPoly::linear(&r) * &KPoly::linear(&-&r),
            1 => &KPoly::linear(&r) * &KPoly::linear(&r.conj()),
            _ => &KPoly::linear(&r) * &(&x.pow(2) + &KPoly::one(f)),
        };
        prop_assume!(!p.coeff(0).is_zero());
        let init = (0..p.deg() as i64).map(|i| f.int(1 + i, i % 2)).collect();
        let rec = LinRec::from_charpoly(&p, init).unwrap();
        let (d, parts) = split_degenerate(&rec).unwrap();
        prop_assert_eq!(parts.len() as u64, d);
        for part in parts {
            prop_assert!(cfperiod_core::recurrence::nondegenerate_rec(&part, Over::Q).unwrap().0);
        }
    }
}

#[test]
fn cyclotomics_are_recognized() {
    for n in 1..=30 {
        assert_eq!(is_root_of_unity(&cyclotomic(n)).unwrap(), (true, Some(n)));
    }
}
