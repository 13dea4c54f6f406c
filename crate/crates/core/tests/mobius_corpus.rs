//! Period growth under fixed integer Mobius maps, pinned against stored
//! maxima over a seeded corpus. A regression bound, nothing more.

use cfperiod_core::contfrac::{mobius_apply, period_length};
use cfperiod_core::{QuadElem, QuadField, Rational};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus() -> Vec<QuadElem> {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    (0..50)
        .map(|_| {
            let f = QuadField::new([2, 3, 5, 6, 7, 11, 13, 14, 15, 17][rng.gen_range(0..10)]).unwrap();
            let a = Rational::new(BigInt::from(rng.gen_range(-20..=20)), BigInt::from(rng.gen_range(1..=6)));
            let b = Rational::new(BigInt::from(rng.gen_range(1..=9)), BigInt::from(rng.gen_range(1..=6)));
            f.elem(a, b)
        })
        .collect()
}

/// Map and the stored worst ratio `num/den` over the corpus.
const MAPS: [([[i64; 2]; 2], (u64, u64)); 4] = [
    ([[2, 0], [0, 1]], (4, 1)),
    ([[1, 1], [0, 3]], (21, 5)),
    ([[3, 1], [1, 2]], (8, 1)),
    ([[5, -2], [2, 7]], (71, 2)),
];

/// `max(l(h x)/l(x), l(x)/l(h x))` over `xs`, as a pair `(num, den)`.
fn worst_ratio(m: [[i64; 2]; 2], xs: &[QuadElem]) -> (u64, u64) {
    let mut best = (1u64, 1u64);
    for x in xs {
        let l = period_length(x).unwrap();
        let h = period_length(&mobius_apply(m, x).unwrap()).unwrap();
        assert!(l > 0 && h > 0, "{x}");
        let r = if h >= l { (h, l) } else { (l, h) };
        if r.0 * best.1 > best.0 * r.1 {
            best = r;
        }
    }
    let g = num_integer::gcd(best.0, best.1);
    (best.0 / g, best.1 / g)
}

#[test]
fn ratios_match_stored_corpus_maxima() {
    let xs = corpus();
    for (m, stored) in MAPS {
        assert_eq!(worst_ratio(m, &xs), stored, "{m:?}");
    }
}
