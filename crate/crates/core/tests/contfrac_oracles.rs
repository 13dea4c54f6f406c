mod common;

use cfperiod_core::contfrac::{
    check_convergent_bound, check_fibonacci_bounds, complete_quotient, evaluate_with_tail, expand, expand_surd,
    is_reduced, DEFAULT_STEP_CAP,
};
use cfperiod_core::{QuadElem, QuadField, Surd};
use common::{hashmap_cf, numeric_cf, rat};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_surd(rng: &mut ChaCha8Rng) -> Surd {
    loop {
        let p = BigInt::from(rng.gen_range(-1000i64..=1000));
        let q = BigInt::from(rng.gen_range(1i64..=1000) * if rng.gen_bool(0.5) { 1 } else { -1 });
        let d = BigInt::from(rng.gen_range(2i64..=10_000));
        if let Ok(s) = Surd::normalized(p, q, d) {
            return s;
        }
    }
}

fn corpus() -> Vec<QuadElem> {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut out = Vec::new();
    for d in [2, 3, 5, 6, 7, 10, 13, 19, 94] {
        let f = QuadField::new(d).unwrap();
        out.push(f.sqrt_d());
        out.push(f.int(1, 1));
        for _ in 0..4 {
            let a = rat(rng.gen_range(-50..50), rng.gen_range(1..20));
            let b = rat(rng.gen_range(1..30), rng.gen_range(1..20));
            out.push(f.elem(a, b));
        }
    }
    out
}

#[test]
fn hashmap_oracle_agrees_with_expand() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..200 {
        let s = random_surd(&mut rng);
        let e = expand_surd(&s, DEFAULT_STEP_CAP).unwrap();
        let (pre, per) = hashmap_cf(&s);
        assert!(e.matches(&pre, &per), "{s}: {e} vs {pre:?} ({per:?})");
        assert_eq!(e.preperiod.len(), pre.len(), "{s}");
        assert_eq!(e.period.len(), per.len(), "{s}");
    }
}

#[test]
fn numeric_prefix_agrees_with_expand() {
    for x in corpus() {
        let e = expand(&x).unwrap();
        let approx = numeric_cf(&x, 40, 200);
        assert!(approx.len() >= 20, "{x}");
        // the last numeric quotient may be off by one
        let n = approx.len() - 1;
        assert_eq!(e.quotients(n - 1).unwrap(), approx[..n], "{x}");
    }
}

#[test]
fn reduced_iff_purely_periodic() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut reduced = 0;
    for _ in 0..200 {
        let s = random_surd(&mut rng);
        let x = s.to_quad().unwrap();
        let e = expand(&x).unwrap();
        let r = is_reduced(&x).unwrap();
        assert_eq!(r, e.preperiod.is_empty(), "{s}: {e}");
        reduced += usize::from(r);
    }
    // reduced surds are rare among random ones, so plant some
    for d in [2i64, 3, 7, 31, 1009] {
        let f = QuadField::new(d).unwrap();
        let x = &f.sqrt_d() + &f.rational(cfperiod_core::qfield::rat_int(f.sqrt_d().floor()));
        assert!(is_reduced(&x).unwrap());
        assert!(expand(&x).unwrap().preperiod.is_empty());
        reduced += 1;
    }
    assert!(reduced >= 5);
}

#[test]
fn fibonacci_and_convergent_bounds() {
    for x in corpus() {
        let e = expand(&x).unwrap();
        for n in 0..25 {
            assert!(check_fibonacci_bounds(&e, n).unwrap(), "{x} n={n}");
            assert!(check_convergent_bound(&x, n).unwrap(), "{x} n={n}");
        }
    }
}

#[test]
fn complete_quotient_re_evaluates() {
    for x in corpus() {
        let e = expand(&x).unwrap();
        for n in [1usize, 2, 5, 11] {
            let tail = complete_quotient(&x, n).unwrap();
            assert!(tail.cmp_value(&QuadField::new(x.d()).unwrap().one()).is_gt(), "{x} n={n}");
            let qs = e.quotients(n - 1).unwrap();
            assert_eq!(evaluate_with_tail(&qs, &tail).unwrap(), x, "{x} n={n}");
        }
    }
}
