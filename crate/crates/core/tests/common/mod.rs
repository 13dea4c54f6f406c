//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::OnceLock;

use cfperiod_core::polyalg::KPoly;
use cfperiod_core::qfield::integer_sqrt_floor;
use cfperiod_core::{QuadElem, Rational, Surd};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Textbook CF of `(P + sqrt D)/Q` with a map of visited `(P, Q)` states.
/// Returns `(preperiod, period)`.
pub fn hashmap_cf(x: &Surd) -> (Vec<BigInt>, Vec<BigInt>) {
    let d = x.d.clone();
    let s = integer_sqrt_floor(&d).unwrap();
    let (mut p, mut q) = (x.p.clone(), x.q.clone());
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut qs = Vec::new();
    loop {
        if let Some(&i) = seen.get(&(p.clone(), q.clone())) {
            let per = qs.split_off(i);
            return (qs, per);
        }
        seen.insert((p.clone(), q.clone()), qs.len());
        // floor((p + sqrt d)/q) without floats
        let num = if q.is_positive() { &p + &s } else { &p + &s + 1 };
        let a = num.div_floor(&q);
        let p2 = &a * &q - &p;
        let q2 = (&d - &p2 * &p2) / &q;
        qs.push(a);
        p = p2;
        q = q2;
    }
}

/// First `n` partial quotients of `x` from a fixed-point value with `digits`
/// decimal digits, stopping early if precision runs out.
pub fn numeric_cf(x: &QuadElem, n: usize, digits: u32) -> Vec<BigInt> {
    let scale = BigInt::from(10).pow(digits);
    let d = BigInt::from(x.d());
    let root = integer_sqrt_floor(&(&d * &scale * &scale)).unwrap();
    let (a, b) = (x.a(), x.b());
    // value * scale * denominators, truncated
    let den = a.denom() * b.denom();
    let mut num = a.numer() * b.denom() * &scale + b.numer() * a.denom() * &root;
    let mut den = den * &scale;
    let mut out = Vec::new();
    let guard = BigInt::from(10).pow(digits / 3);
    while out.len() < n {
        let (q, r) = num.div_mod_floor(&den);
        out.push(q);
        if r.is_zero() || den.abs() < guard {
            break;
        }
        num = den;
        den = r;
    }
    out
}

/// Complex numbers in fixed point with `SCALE = 10^DIGITS`.
pub const DIGITS: u32 = 120;

#[derive(Clone, Debug, PartialEq)]
pub struct Cx {
    pub re: BigInt,
    pub im: BigInt,
}

pub fn scale() -> BigInt {
    static SCALE: OnceLock<BigInt> = OnceLock::new();
    SCALE.get_or_init(|| BigInt::from(10).pow(DIGITS)).clone()
}

impl Cx {
    pub fn real(re: BigInt) -> Cx {
        Cx { re, im: BigInt::zero() }
    }
    pub fn add(&self, o: &Cx) -> Cx {
        Cx { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    pub fn sub(&self, o: &Cx) -> Cx {
        Cx { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    pub fn mul(&self, o: &Cx) -> Cx {
        let s = scale();
        Cx { re: (&self.re * &o.re - &self.im * &o.im) / &s, im: (&self.re * &o.im + &self.im * &o.re) / &s }
    }
    pub fn div(&self, o: &Cx) -> Cx {
        let s = scale();
        let n = &o.re * &o.re + &o.im * &o.im;
        if n.is_zero() {
            return Cx { re: s.clone() * 1_000_000, im: BigInt::zero() };
        }
        Cx {
            re: (&self.re * &o.re + &self.im * &o.im) * &s / &n,
            im: (&self.im * &o.re - &self.re * &o.im) * &s / &n,
        }
    }
    /// `|z|^2` in fixed point.
    pub fn norm2(&self) -> BigInt {
        (&self.re * &self.re + &self.im * &self.im) / scale()
    }
    pub fn pow(&self, e: u32) -> Cx {
        let mut acc = Cx::real(scale());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// `|a - b| < 10^(-tol_digits)` in fixed point.
pub fn close(a: &BigInt, b: &BigInt, tol_digits: u32) -> bool {
    (a - b).abs() < BigInt::from(10).pow(DIGITS - tol_digits)
}

pub fn cx_close(a: &Cx, b: &Cx, tol_digits: u32) -> bool {
    close(&a.re, &b.re, tol_digits) && close(&a.im, &b.im, tol_digits)
}

/// Fixed-point value of a rational.
pub fn fx_rat(r: &Rational) -> BigInt {
    r.numer() * scale() / r.denom()
}

/// Fixed-point value of `a + b sqrt d` in the first real embedding.
pub fn fx_quad(x: &QuadElem) -> BigInt {
    let s = scale();
    let root = integer_sqrt_floor(&(BigInt::from(x.d()) * &s * &s)).unwrap();
    fx_rat(x.a()) + x.b().numer() * root / x.b().denom()
}

/// All complex roots of a polynomial with fixed-point real coefficients,
/// by Durand-Kerner iteration.
pub fn roots(coeffs: &[BigInt]) -> Vec<Cx> {
    let s = scale();
    let n = coeffs.len() - 1;
    let lead = coeffs[n].clone();
    let monic: Vec<Cx> = coeffs.iter().map(|c| Cx::real(c * &s / &lead)).collect();
    let eval = |z: &Cx| {
        let mut acc = Cx::real(BigInt::zero());
        for c in monic.iter().rev() {
            acc = acc.mul(z).add(c);
        }
        acc
    };
    // starting points (0.4 + 0.9i)^k scaled by a root bound
    let bound: BigInt = monic.iter().take(n).map(|c| c.re.abs()).max().unwrap_or_default() / &s + 2;
    let seed = Cx { re: &s * 4 / 10, im: &s * 9 / 10 };
    let mut zs: Vec<Cx> = (0..n)
        .map(|k| {
            let z = seed.pow(k as u32 + 1);
            Cx { re: z.re * &bound, im: z.im * &bound }
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = false;
        for i in 0..n {
            let mut den = Cx::real(s.clone());
            for j in 0..n {
                if i != j {
                    den = den.mul(&zs[i].sub(&zs[j]));
                }
            }
            let step = eval(&zs[i]).div(&den);
            if !close(&step.re, &BigInt::zero(), DIGITS - 10) || !close(&step.im, &BigInt::zero(), DIGITS - 10) {
                moved = true;
            }
            zs[i] = zs[i].sub(&step);
        }
        if !moved {
            break;
        }
    }
    zs
}

/// Distinct roots of a polynomial over K in the embedding `sqrt d -> +sqrt d`.
pub fn kpoly_roots(p: &KPoly) -> Vec<Cx> {
    let p = p.squarefree_part();
    let cs: Vec<BigInt> = p.coeffs().iter().map(fx_quad).collect();
    roots(&cs)
}

/// `(inside, on, outside)` counts with an on-circle tolerance of `10^-60`.
pub fn numeric_circle_profile(p: &KPoly) -> (usize, usize, usize) {
    let one = scale();
    let (mut i, mut o, mut out) = (0, 0, 0);
    for z in kpoly_roots(p) {
        let n2 = z.norm2();
        if close(&n2, &one, 60) {
            o += 1;
        } else if n2 < one {
            i += 1;
        } else {
            out += 1;
        }
    }
    (i, o, out)
}

/// Whether some ratio of two distinct roots is a root of unity of order
/// at most `max_order`; `with_conjugates` adds the roots of the conjugate.
pub fn numeric_degenerate(p: &KPoly, with_conjugates: bool, max_order: u32) -> bool {
    let mut rs = kpoly_roots(p);
    if with_conjugates {
        rs.extend(kpoly_roots(&p.conj()));
    }
    let mut distinct: Vec<Cx> = Vec::new();
    for r in rs {
        if !distinct.iter().any(|q| cx_close(q, &r, 40)) {
            distinct.push(r);
        }
    }
    let one = Cx::real(scale());
    for (i, a) in distinct.iter().enumerate() {
        for (j, b) in distinct.iter().enumerate() {
            if i == j || b.norm2().is_zero() {
                continue;
            }
            let ratio = a.div(b);
            if !close(&ratio.norm2(), &one.re, 40) {
                continue;
            }
            let mut z = ratio.clone();
            for _ in 1..=max_order {
                if cx_close(&z, &one, 30) {
                    return true;
                }
                z = z.mul(&ratio);
            }
        }
    }
    false
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn one() -> BigInt {
    BigInt::one()
}
