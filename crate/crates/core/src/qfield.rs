//! Exact arithmetic in a real quadratic field `Q(sqrt d)`.
//!
//! Elements are stored as `a + b*sqrt(d)` with reduced big rationals and the
//! field tag travels with every element. The operator traits panic when the
//! tags disagree; [`QuadElem::checked_arith`] reports the mismatch instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Largest `m` with `m^2 <= n`.
pub fn integer_sqrt_floor(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::NegativeInput);
    }
    Ok(n.sqrt())
}

pub fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let s = n.sqrt();
        &s * &s == *n
    }
}

pub fn is_squarefree(n: u64) -> bool {
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadField {
    d: i64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        if d < 2 || !is_squarefree(d as u64) {
            return Err(Error::InvalidField(d));
        }
        Ok(QuadField { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn d_big(&self) -> BigInt {
        BigInt::from(self.d)
    }

    pub fn elem(&self, a: Rational, b: Rational) -> QuadElem {
        QuadElem { a, b, field: *self }
    }

    pub fn int(&self, a: i64, b: i64) -> QuadElem {
        self.elem(rat_int(a), rat_int(b))
    }

    pub fn rational(&self, a: Rational) -> QuadElem {
        self.elem(a, Rational::zero())
    }

    pub fn zero(&self) -> QuadElem {
        self.rational(Rational::zero())
    }

    pub fn one(&self) -> QuadElem {
        self.rational(Rational::one())
    }

    pub fn sqrt_d(&self) -> QuadElem {
        self.int(0, 1)
    }

    /// `d mod 4 == 1`, i.e. the ring of integers has basis `1, (1+sqrt d)/2`.
    pub fn has_half_integers(&self) -> bool {
        self.d % 4 == 1
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}))", self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    a: Rational,
    b: Rational,
    field: QuadField,
}

impl QuadElem {
    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn d(&self) -> i64 {
        self.field.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn conj(&self) -> QuadElem {
        QuadElem { a: self.a.clone(), b: -&self.b, field: self.field }
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * rat_int(self.field.d)
    }

    pub fn trace_norm(&self) -> (Rational, Rational) {
        (self.trace(), self.norm())
    }

    pub fn scale(&self, r: &Rational) -> QuadElem {
        QuadElem { a: &self.a * r, b: &self.b * r, field: self.field }
    }

    /// Sign of the real number `a + b sqrt(d)`.
    pub fn sign(&self) -> i32 {
        let sa = rsign(&self.a);
        let sb = rsign(&self.b);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * rat_int(self.field.d);
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn cmp_value(&self, other: &QuadElem) -> Ordering {
        (self - other).sign().cmp(&0)
    }

    pub fn abs(&self) -> QuadElem {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact floor. The estimate comes from an integer square root of the
    /// irrational part and is then certified with two sign tests.
    pub fn floor(&self) -> BigInt {
        let den = self.a.denom().lcm(self.b.denom());
        let an = self.a.numer() * (&den / self.a.denom());
        let bn = self.b.numer() * (&den / self.b.denom());
        let t = (&bn * &bn * self.field.d_big()).sqrt();
        let num = if bn.is_negative() { &an - &t - 1 } else { &an + &t };
        let mut m = num.div_floor(&den);
        loop {
            let lo = self - &self.field.rational(rat_int(m.clone()));
            if lo.sign() < 0 {
                m -= 1;
                continue;
            }
            let hi = self - &self.field.rational(rat_int(&m + 1));
            if hi.sign() >= 0 {
                m += 1;
                continue;
            }
            return m;
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn inv(&self) -> Result<QuadElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadElem { a: &self.a / &n, b: -(&self.b / &n), field: self.field })
    }

    pub fn pow(&self, e: i64) -> Result<QuadElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn checked_arith(&self, other: &QuadElem, op: ArithOp) -> Result<QuadElem> {
        if self.field != other.field {
            return Err(Error::MixedField(self.field.d, other.field.d));
        }
        Ok(match op {
            ArithOp::Add => self + other,
            ArithOp::Sub => self - other,
            ArithOp::Mul => self * other,
            ArithOp::Div => self * &other.inv()?,
        })
    }

    /// Canonical `(P + sqrt D)/Q` form with `Q | D - P^2`.
    pub fn to_surd(&self) -> Result<Surd> {
        if self.b.is_zero() {
            return Err(Error::RationalInput);
        }
        let l = self.a.denom().lcm(self.b.denom());
        let an = self.a.numer() * (&l / self.a.denom());
        let bn = self.b.numer() * (&l / self.b.denom());
        let dd = &bn * &bn * self.field.d_big();
        let (mut p, mut q) = if bn.is_positive() { (an, l) } else { (-an, -l) };
        let mut dd = dd;
        if !(&dd - &p * &p).is_multiple_of(&q) {
            let qa = q.abs();
            p *= &qa;
            dd *= &q * &q;
            q *= &qa;
        }
        Ok(Surd { p, q, d: dd })
    }

    /// Least positive integer `m` with `m x` an algebraic integer, using the
    /// `(1 + sqrt d)/2` basis when `d = 1 mod 4`.
    pub fn integral_denominator(&self) -> BigInt {
        let m0 = self.a.denom().lcm(self.b.denom());
        if self.field.has_half_integers() && m0.is_even() {
            let half: BigInt = &m0 / 2;
            let a2 = &self.a * rat_int(&half * 2);
            let b2 = &self.b * rat_int(&half * 2);
            if a2.is_integer() && b2.is_integer() && (a2.to_integer() - b2.to_integer()).is_even() {
                return half;
            }
        }
        m0
    }

    /// Round-to-nearest `f64` approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * (self.field.d as f64).sqrt()
    }

    fn check(&self, other: &QuadElem) {
        if self.field != other.field {
            panic!("{}", Error::MixedField(self.field.d, other.field.d));
        }
    }
}

pub fn rsign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let shift = r.numer().bits() as i64 - r.denom().bits() as i64 - 60;
        let scaled = if shift > 0 {
            Rational::new(r.numer().clone(), r.denom() << shift as usize)
        } else {
            Rational::new(r.numer() << (-shift) as usize, r.denom().clone())
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let root = format!("sqrt({})", self.field.d);
        let b_abs = self.b.abs();
        let b_part = if b_abs.is_one() {
            root
        } else if b_abs.is_integer() {
            format!("{}*{}", b_abs.numer(), root)
        } else {
            format!("{}*{}/{}", b_abs.numer(), root, b_abs.denom())
        };
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{sign}{b_part}")
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{}{}{}", fmt_rational(&self.a), sign, b_part)
        }
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [d={}]", self, self.field.d)
    }
}

impl<'a> Add<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn add(self, o: &QuadElem) -> QuadElem {
        self.check(o);
        QuadElem { a: &self.a + &o.a, b: &self.b + &o.b, field: self.field }
    }
}

impl<'a> Sub<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn sub(self, o: &QuadElem) -> QuadElem {
        self.check(o);
        QuadElem { a: &self.a - &o.a, b: &self.b - &o.b, field: self.field }
    }
}

impl<'a> Mul<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn mul(self, o: &QuadElem) -> QuadElem {
        self.check(o);
        let d = rat_int(self.field.d);
        QuadElem {
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
            field: self.field,
        }
    }
}

impl<'a> Div<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn div(self, o: &QuadElem) -> QuadElem {
        self.check(o);
        self * &o.inv().expect("division by zero in Q(sqrt d)")
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem { a: -&self.a, b: -&self.b, field: self.field }
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $m(self, o: QuadElem) -> QuadElem { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $m(self, o: &QuadElem) -> QuadElem { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

/// `(P + sqrt D) / Q` with `Q | D - P^2` and `D` a positive non-square.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    pub p: BigInt,
    pub q: BigInt,
    pub d: BigInt,
}

impl Surd {
    pub fn new(p: BigInt, q: BigInt, d: BigInt) -> Result<Surd> {
        if q.is_zero() {
            return Err(Error::InvalidSurd("Q = 0".into()));
        }
        if !d.is_positive() || is_square(&d) {
            return Err(Error::InvalidSurd(format!("D = {d} is not a positive non-square")));
        }
        if !(&d - &p * &p).is_multiple_of(&q) {
            return Err(Error::InvalidSurd(format!("Q = {q} does not divide D - P^2")));
        }
        Ok(Surd { p, q, d })
    }

    /// Any `(P + sqrt D)/Q` with `Q != 0`, rescaled to satisfy `Q | D - P^2`.
    pub fn normalized(p: BigInt, q: BigInt, d: BigInt) -> Result<Surd> {
        if q.is_zero() {
            return Err(Error::InvalidSurd("Q = 0".into()));
        }
        if (&d - &p * &p).is_multiple_of(&q) {
            return Surd::new(p, q, d);
        }
        let qa = q.abs();
        Surd::new(&p * &qa, &q * &qa, &d * &q * &q)
    }

    /// The field `Q(sqrt D)` together with the element this surd denotes.
    pub fn to_quad(&self) -> Result<QuadElem> {
        let (f, core) = square_split(&self.d);
        let core = core.to_i64().ok_or_else(|| Error::InvalidSurd("squarefree part too large".into()))?;
        let field = QuadField::new(core)?;
        let q = rat_int(self.q.clone());
        Ok(field.elem(rat_int(self.p.clone()) / &q, rat_int(f) / q))
    }

    pub fn to_quad_in(&self, field: QuadField) -> Result<QuadElem> {
        let e = self.to_quad()?;
        if e.field() != field {
            return Err(Error::MixedField(e.d(), field.d()));
        }
        Ok(e)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + sqrt({}))/{}", self.p, self.d, self.q)
    }
}

/// Writes `n = f^2 * c` with `c` squarefree, by trial division.
pub fn square_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.abs();
    let mut f = BigInt::one();
    let mut c = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            f *= p.pow(e / 2);
            if e % 2 == 1 {
                c *= &p;
            }
        }
        p += 1;
    }
    c *= rest;
    if n.sign() == Sign::Minus {
        c = -c;
    }
    (f, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> QuadField {
        QuadField::new(2).unwrap()
    }

    #[test]
    fn field_rejects_bad_d() {
        assert!(QuadField::new(4).is_err());
        assert!(QuadField::new(1).is_err());
        assert!(QuadField::new(12).is_err());
        assert!(QuadField::new(15).is_ok());
    }

    #[test]
    fn basic_arithmetic() {
        let k = k2();
        let u = k.int(1, 1);
        assert_eq!(&u * &u, k.int(3, 2));
        assert_eq!(&u * &u.conj(), k.int(-1, 0));
        let x = k.int(8, 6);
        assert!((&x - &x).is_zero());
        assert_eq!(k.int(20, 14).trace_norm(), (rat_int(40), rat_int(8)));
        assert_eq!(u.trace_norm(), (rat_int(2), rat_int(-1)));
        assert_eq!(k.int(3, 1).trace_norm(), (rat_int(6), rat_int(7)));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = k2().int(1, 1);
        let b = QuadField::new(3).unwrap().int(1, 1);
        assert_eq!(a.checked_arith(&b, ArithOp::Add), Err(Error::MixedField(2, 3)));
        assert_eq!(a.checked_arith(&k2().zero(), ArithOp::Div), Err(Error::DivisionByZero));
    }

    #[test]
    fn floors_and_signs() {
        let k = k2();
        assert_eq!(k.int(8, 6).floor(), BigInt::from(16));
        assert_eq!(k.int(1, 1).floor(), BigInt::from(2));
        assert_eq!(k.int(-1, -1).floor(), BigInt::from(-3));
        assert_eq!(k.int(1, -1).sign(), -1);
        assert_eq!(k.zero().sign(), 0);
        assert_eq!(k.int(3, -2).sign(), 1);
        assert_eq!(k.rational(rat(-7, 2)).floor(), BigInt::from(-4));
    }

    #[test]
    fn surd_forms() {
        let k = k2();
        let s = k.int(1, 1).to_surd().unwrap();
        assert_eq!((s.p.clone(), s.q.clone(), s.d.clone()), (1.into(), 1.into(), 2.into()));
        let k5 = QuadField::new(5).unwrap();
        let g = k5.elem(rat(1, 2), rat(1, 2)).to_surd().unwrap();
        assert_eq!((g.p, g.q, g.d), (1.into(), 2.into(), 5.into()));
        let x = k.elem(rat(3, 4), rat(1, 4));
        let s = x.to_surd().unwrap();
        assert_eq!((s.p.clone(), s.q.clone(), s.d.clone()), (12.into(), 16.into(), 32.into()));
        assert_eq!(s.to_quad().unwrap(), x);
        assert_eq!(k.int(3, 0).to_surd(), Err(Error::RationalInput));
    }

    #[test]
    fn isqrt() {
        assert_eq!(integer_sqrt_floor(&BigInt::from(0)).unwrap(), BigInt::from(0));
        assert_eq!(integer_sqrt_floor(&BigInt::from(2)).unwrap(), BigInt::from(1));
        assert_eq!(integer_sqrt_floor(&BigInt::from(1_000_000)).unwrap(), BigInt::from(1000));
        assert_eq!(integer_sqrt_floor(&BigInt::from(-1)), Err(Error::NegativeInput));
    }

    #[test]
    fn negative_powers() {
        let k = k2();
        let u = k.int(3, 1);
        let inv = u.pow(-2).unwrap();
        assert!((&inv * &u.pow(2).unwrap()).is_one());
        assert!(k.zero().pow(-1).is_err());
    }
}
