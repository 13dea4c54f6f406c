//! Certified real enclosures with rational endpoints.
//!
//! Logarithms use `ln r = k ln 2 + 2 atanh((y - 1)/(y + 1))` with
//! `y = r / 2^k` in `[1, 2)`, summed in fixed point with directed rounding.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qfield::{integer_sqrt_floor, rat_int, rat_to_f64, QuadElem, Rational};

/// Largest working precision before giving up on separating a value.
pub const MAX_BITS: u32 = 1 << 16;

pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    pub fn new(lo: Rational, hi: Rational) -> Enclosure {
        debug_assert!(lo <= hi);
        Enclosure { lo, hi }
    }

    pub fn exact(x: Rational) -> Enclosure {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn add(&self, o: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn scale(&self, c: &Rational) -> Enclosure {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Enclosure { lo: b, hi: a }
        } else {
            Enclosure { lo: a, hi: b }
        }
    }

    pub fn mul(&self, o: &Enclosure) -> Enclosure {
        let ps = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = ps.iter().min().unwrap().clone();
        let hi = ps.iter().max().unwrap().clone();
        Enclosure { lo, hi }
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.mid())
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.15e}, {:.15e}]", rat_to_f64(&self.lo), rat_to_f64(&self.hi))
    }
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// `sqrt(r)` to within `2^-bits`.
pub fn sqrt_enclosure(r: &Rational, bits: u32) -> Result<Enclosure> {
    if r.is_negative() {
        return Err(Error::NegativeInput);
    }
    let scale = pow2(bits);
    // sqrt(n/q) = sqrt(n q) / q
    let nq = r.numer() * r.denom() * &scale * &scale;
    let s = integer_sqrt_floor(&nq)?;
    let den = r.denom() * &scale;
    let exact = &s * &s == nq;
    let hi = if exact { s.clone() } else { &s + 1 };
    Ok(Enclosure::new(Rational::new(s, den.clone()), Rational::new(hi, den)))
}

/// Value of `a + b sqrt d` to within about `2^-bits`.
pub fn quad_enclosure(x: &QuadElem, bits: u32) -> Result<Enclosure> {
    let b = x.b();
    if b.is_zero() {
        return Ok(Enclosure::exact(x.a().clone()));
    }
    let extra = b.numer().bits().saturating_sub(b.denom().bits()) as u32 + 2;
    let root = sqrt_enclosure(&rat_int(x.d()), bits + extra)?;
    Ok(root.scale(b).add(&Enclosure::exact(x.a().clone())))
}

/// Enclosure of `|x|` with `lo > 0` and relative width below `2^-bits`.
pub fn abs_enclosure(x: &QuadElem, bits: u32) -> Result<Enclosure> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let s = x.sign();
    let mut work = bits + 8;
    loop {
        let e = quad_enclosure(x, work)?;
        let e = if s < 0 { e.neg() } else { e };
        if e.lo.is_positive() {
            let rel = e.width() / &e.lo;
            if rel * rat_int(pow2(bits)) <= Rational::one() {
                return Ok(e);
            }
        }
        work *= 2;
        if work > MAX_BITS {
            return Err(Error::PrecisionExhausted(work));
        }
    }
}

/// `(floor(z 2^w), ceil(z 2^w))` for a nonnegative rational `z`.
fn fixed(z: &Rational, w: u32) -> (BigInt, BigInt) {
    let n = z.numer() << w;
    let (q, r) = n.div_rem(z.denom());
    let up = if r.is_zero() { q.clone() } else { &q + 1 };
    (q, up)
}

/// `atanh(z)` for rational `0 <= z <= 1/3`, to within about `2^-bits`.
pub fn atanh_enclosure(z: &Rational, bits: u32) -> Enclosure {
    debug_assert!(!z.is_negative() && *z <= Rational::new(1.into(), 3.into()));
    let w = bits + 16;
    let one = pow2(w);
    let (zl, zh) = fixed(z, w);
    let (zl2, zh2) = (&zl * &zl, &zh * &zh);
    let mut pow_lo = zl;
    let mut pow_hi = zh;
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut j = 0u64;
    loop {
        let k = BigInt::from(2 * j + 1);
        if pow_hi <= BigInt::one() {
            // tail <= z^(2j+1)/(2j+1) * 1/(1 - z^2) <= pow_hi * 9/8
            let tail = Integer::div_ceil(&(&pow_hi * 9u32), &(&k * 8u32)) + 1u32;
            sum_hi += tail;
            break;
        }
        sum_lo += pow_lo.div_floor(&k);
        sum_hi += Integer::div_ceil(&pow_hi, &k);
        pow_lo = (&pow_lo * &zl2).div_floor(&(&one * &one));
        pow_hi = Integer::div_ceil(&(&pow_hi * &zh2), &(&one * &one));
        j += 1;
    }
    Enclosure::new(Rational::new(sum_lo, one.clone()), Rational::new(sum_hi, one))
}

pub fn ln2_enclosure(bits: u32) -> Enclosure {
    atanh_enclosure(&Rational::new(1.into(), 3.into()), bits + 2).scale(&rat_int(2))
}

/// `ln r` for rational `r > 0`.
pub fn ln_enclosure(r: &Rational, bits: u32) -> Result<Enclosure> {
    if !r.is_positive() {
        return Err(Error::Precondition("logarithm of a non-positive number".into()));
    }
    let k = r.numer().bits() as i64 - r.denom().bits() as i64;
    let mut y = r / pow2_rational(k);
    let mut k = k;
    let two = rat_int(2);
    while y >= two {
        y /= &two;
        k += 1;
    }
    while y < Rational::one() {
        y *= &two;
        k -= 1;
    }
    let z = (&y - Rational::one()) / (&y + Rational::one());
    let kb = (k.unsigned_abs() as u32).max(1).ilog2() + 2;
    let tail = atanh_enclosure(&z, bits + 2).scale(&two);
    let head = ln2_enclosure(bits + kb + 2).scale(&rat_int(k));
    Ok(head.add(&tail))
}

fn pow2_rational(k: i64) -> Rational {
    if k >= 0 {
        rat_int(pow2(k as u32))
    } else {
        Rational::new(BigInt::one(), pow2((-k) as u32))
    }
}

/// `ln |x|` for nonzero `x` in `K`, with absolute width about `2^-bits`.
pub fn ln_abs_enclosure(x: &QuadElem, bits: u32) -> Result<Enclosure> {
    let e = abs_enclosure(x, bits + 2)?;
    let lo = ln_enclosure(&e.lo, bits + 2)?;
    let hi = ln_enclosure(&e.hi, bits + 2)?;
    Ok(Enclosure::new(lo.lo, hi.hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::{rat, QuadField};

    #[test]
    fn square_roots() {
        let e = sqrt_enclosure(&rat(2, 1), 100).unwrap();
        assert!(e.lo < e.hi);
        assert!(&e.lo * &e.lo < rat(2, 1) && &e.hi * &e.hi > rat(2, 1));
        assert!(e.width() <= Rational::new(1.into(), pow2(100)));
        assert_eq!(sqrt_enclosure(&rat(9, 4), 20).unwrap(), Enclosure::exact(rat(3, 2)));
    }

    #[test]
    fn logs() {
        let l2 = ln2_enclosure(200);
        assert!((l2.to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
        assert!(l2.width() < Rational::new(1.into(), pow2(190)));
        for (r, v) in [(rat(10, 1), 10f64.ln()), (rat(1, 3), (1.0f64 / 3.0).ln()), (rat(1, 1), 0.0)] {
            let e = ln_enclosure(&r, 120).unwrap();
            assert!((e.to_f64() - v).abs() < 1e-14, "{r}");
            assert!(e.width() < Rational::new(1.into(), pow2(100)));
        }
        let e = ln_enclosure(&rat(1, 1), 50).unwrap();
        assert!(e.contains(&Rational::zero()));
    }

    #[test]
    fn unit_log() {
        let k = QuadField::new(2).unwrap();
        let u = k.int(1, 1);
        let a = ln_abs_enclosure(&u, 128).unwrap();
        let b = ln_abs_enclosure(&u.conj(), 128).unwrap();
        assert!(a.add(&b).contains(&Rational::zero()));
        assert!((a.to_f64() - 0.881373587019543).abs() < 1e-14);
    }
}
