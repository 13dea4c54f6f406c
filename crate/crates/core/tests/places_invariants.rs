mod common;

use cfperiod_core::numeric::digits_to_bits;
use cfperiod_core::places::{is_s_unit, places_above, product_formula, v_p, val, Place};
use cfperiod_core::{QuadElem, QuadField, Rational};
use common::rat;
use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generators of S-units for `S` above `{2, 3, 5}` together with a unit.
fn generators(f: QuadField) -> Vec<QuadElem> {
    let half = rat(1, 2);
    let mut g = vec![f.int(2, 0), f.int(3, 0), f.int(5, 0)];
    match f.d() {
        2 => g.extend([f.int(1, 1), f.int(0, 1)]),
        3 => g.extend([f.int(2, 1), f.int(1, 1), f.int(3, 1)]),
        5 => g.extend([f.elem(half.clone(), half), f.int(0, 1), f.int(3, 1)]),
        _ => g.push(f.int(1, 0)),
    }
    g
}

#[test]
fn product_formula_on_s_units() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let bits = digits_to_bits(40);
    let tol = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(30));
    for i in 0..100 {
        let f = QuadField::new([2, 3, 5][i % 3]).unwrap();
        let mut x = if rng.gen_bool(0.5) { f.one() } else { -f.one() };
        for g in generators(f) {
            x = &x * &g.pow(rng.gen_range(-4..=4)).unwrap();
        }
        assert!(is_s_unit(&x, &[2, 3, 5]), "{x}");
        let (_, enc) = product_formula(&x, &[2, 3, 5], bits).unwrap();
        assert!(enc.contains(&Rational::one()), "{x}: {enc:?}");
        assert!(enc.width() < tol, "{x}: {enc:?}");
    }
}

fn elem() -> impl Strategy<Value = QuadElem> {
    (prop::sample::select(vec![2i64, 3, 5, 7, 17]), -60i64..60, 1i64..9, -60i64..60, 1i64..9)
        .prop_filter_map("nonzero", |(d, a, da, b, db)| {
            let x = QuadField::new(d).unwrap().elem(rat(a, da), rat(b, db));
            (!x.is_zero()).then_some(x)
        })
}

proptest! {
    #[test]
    fn valuations_sum_to_norm_valuation(x in elem(), p in prop::sample::select(vec![2u64, 3, 5, 7, 13])) {
        let total: i64 = places_above(p, x.field())
            .unwrap()
            .iter()
            .map(|v| match v {
                Place::Finite(w) => w.residue_degree as i64 * val(&x, w).unwrap(),
                _ => unreachable!(),
            })
            .sum();
        prop_assert_eq!(total, v_p(&x.norm(), p));
    }

    #[test]
    fn valuation_is_additive(x in elem(), b in -40i64..40, p in prop::sample::select(vec![2u64, 3, 7, 17])) {
        let y = QuadField::new(x.d()).unwrap().int(b, 1);
        for v in places_above(p, x.field()).unwrap() {
            if let Place::Finite(w) = v {
                prop_assert_eq!(val(&(&x * &y), &w).unwrap(), val(&x, &w).unwrap() + val(&y, &w).unwrap());
            }
        }
    }
}
