mod common;

use cfperiod_core::polyalg::{circle_profile, factor_k, nondegeneracy, KPoly, Over};
use cfperiod_core::{QuadElem, QuadField};
use common::{numeric_circle_profile, numeric_degenerate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn k(d: i64) -> QuadField {
    QuadField::new(d).unwrap()
}

fn small(rng: &mut ChaCha8Rng, f: QuadField, r: i64) -> QuadElem {
    f.int(rng.gen_range(-r..=r), rng.gen_range(-r..=r))
}

fn random_poly(rng: &mut ChaCha8Rng, f: QuadField) -> KPoly {
    loop {
        let deg = rng.gen_range(1..=4);
        let mut cs: Vec<QuadElem> = (0..deg).map(|_| small(rng, f, 4)).collect();
        cs.push(f.int(rng.gen_range(1..=3), rng.gen_range(-1..=1)));
        let p = KPoly::new(f, cs);
        if p.deg() >= 1 && p.is_squarefree() {
            return p;
        }
    }
}

fn lin(r: &QuadElem) -> KPoly {
    KPoly::linear(r)
}

/// Polynomials with roots on the unit circle or with ratios of roots
/// that are roots of unity.
fn structured(rng: &mut ChaCha8Rng, f: QuadField) -> KPoly {
    let r = loop {
        let r = small(rng, f, 3);
        if !r.is_zero() {
            break r;
        }
    };
    let x = KPoly::x(f);
    let rr = &r * &r;
    match rng.gen_range(0..6) {
        // r, -r
        0 => &lin(&r) * &lin(&-&r),
        // r, r i, -r i
        1 => &lin(&r) * &KPoly::new(f, vec![rr, f.zero(), f.one()]),
        // r, r w, r w^2 with w a cube root of unity
        2 => &lin(&r) * &KPoly::new(f, vec![rr, r.clone(), f.one()]),
        // r and its conjugate
        3 => &lin(&r) * &lin(&r.conj()),
        // x^2 - x + 1 times a random linear factor
        4 => &KPoly::new(f, vec![f.one(), -f.one(), f.one()]) * &lin(&f.int(2, 1)),
        // x^4 + 1 shifted away from degeneracy by a random linear factor
        _ => &(&x.pow(4) + &KPoly::one(f)) * &lin(&r),
    }
}

#[test]
fn circle_profile_matches_numeric_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..50 {
        let f = k([2, 3, 5, 7][i % 4]);
        let p = if i % 5 == 0 { structured(&mut rng, f).squarefree_part() } else { random_poly(&mut rng, f) };
        let exact = circle_profile(&p).unwrap();
        let (a, b, c) = numeric_circle_profile(&p);
        assert_eq!((exact.inside, exact.on, exact.outside), (a, b, c), "{}", p.render());
    }
}

#[test]
fn nondegeneracy_matches_numeric_ratios() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut seen_degenerate = [0usize; 2];
    for i in 0..50 {
        let f = k([2, 5, 3][i % 3]);
        let p = if i % 2 == 0 { structured(&mut rng, f) } else { random_poly(&mut rng, f) };
        for (j, over) in [Over::BaseK, Over::Q].into_iter().enumerate() {
            let (ok, orders) = nondegeneracy(&p, over).unwrap();
            let numeric = numeric_degenerate(&p, over == Over::Q, 120);
            assert_eq!(ok, !numeric, "{} over {over:?}: orders {orders:?}", p.render());
            seen_degenerate[j] += usize::from(!ok);
        }
    }
    assert!(seen_degenerate[0] >= 5 && seen_degenerate[1] > seen_degenerate[0], "{seen_degenerate:?}");
}

fn planted(rng: &mut ChaCha8Rng, f: QuadField) -> KPoly {
    let x = KPoly::x(f);
    let d = f.d();
    let nonsquare = if d == 2 { 3 } else { 2 };
    match rng.gen_range(0..5) {
        0 => lin(&small(rng, f, 5)),
        // x^2 - c with c not a square in K
        1 => &x.pow(2) - &KPoly::constant(f.int(nonsquare, 0)),
        // x^2 - u for a unit of norm -1
        2 => {
            let u = if d == 2 { f.int(1, 1) } else { f.elem(common::rat(1, 2), common::rat(1, 2)) };
            &x.pow(2) - &KPoly::constant(u)
        }
        // x^3 - c, irreducible since 3 does not divide 2
        3 => &x.pow(3) - &KPoly::constant(f.int(rng.gen_range(2..6), 0)),
        // x^3 - x - 1 has no rational roots and stays irreducible over K
        _ => KPoly::new(f, vec![-f.one(), -f.one(), f.zero(), f.one()]),
    }
}

#[test]
fn factor_k_multiplies_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for i in 0..100 {
        let f = k(if i % 2 == 0 { 2 } else { 5 });
        let n = rng.gen_range(1..=3);
        let parts: Vec<KPoly> = (0..n).map(|_| planted(&mut rng, f)).collect();
        let c = f.int(rng.gen_range(1..4), rng.gen_range(-1..=1));
        let mut p = KPoly::constant(c);
        for q in &parts {
            p = &p * q;
        }
        let fac = factor_k(&p).unwrap();
        assert_eq!(fac.product(), p, "{}", p.render());
        for (g, _) in &fac.factors {
            assert!(g.is_monic() && g.deg() >= 1);
        }
        let mut want: Vec<usize> = parts.iter().map(|q| q.deg()).collect();
        let mut got: Vec<usize> = fac.factors.iter().flat_map(|(g, m)| std::iter::repeat(g.deg()).take(*m)).collect();
        want.sort_unstable();
        got.sort_unstable();
        assert_eq!(got, want, "{}", p.render());
    }
}
