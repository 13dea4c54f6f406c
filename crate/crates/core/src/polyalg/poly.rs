//! Dense univariate polynomials over `Q` or `Q(sqrt d)`, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qfield::{rat_int, QuadElem, QuadField, Rational};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Poly<T: Scalar> {
    field: T::Field,
    coeffs: Vec<T>,
}

pub type RatPoly = Poly<Rational>;
pub type KPoly = Poly<QuadElem>;

impl<T: Scalar> Poly<T> {
    pub fn new(field: T::Field, mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_nil()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: T::Field) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: T::Field) -> Self {
        Self::constant(T::one_in(field))
    }

    pub fn constant(c: T) -> Self {
        Self::new(c.field(), vec![c])
    }

    pub fn x(field: T::Field) -> Self {
        Self::monomial(T::one_in(field), 1)
    }

    pub fn monomial(c: T, k: usize) -> Self {
        let f = c.field();
        let mut v = vec![T::zero_in(f); k];
        v.push(c);
        Self::new(f, v)
    }

    /// `x - root`.
    pub fn linear(root: &T) -> Self {
        let f = root.field();
        Self::new(f, vec![root.negated(), T::one_in(f)])
    }

    pub fn from_rationals(field: T::Field, cs: &[Rational]) -> Self {
        Self::new(field, cs.iter().map(|c| T::from_rational(field, c.clone())).collect())
    }

    pub fn from_ints(field: T::Field, cs: &[i64]) -> Self {
        Self::new(field, cs.iter().map(|&c| T::from_rational(field, rat_int(c))).collect())
    }

    pub fn field(&self) -> T::Field {
        self.field
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(|| T::zero_in(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(|| T::zero_in(self.field))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_unity())
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inverse().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|x| x.times(c)).collect())
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|x| x.scaled(r)).collect())
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero_in(self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> T {
        self.eval(&T::from_rational(self.field, x.clone()))
    }

    pub fn derivative(&self) -> Self {
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scaled(&rat_int(i as i64)))
            .collect();
        Self::new(self.field, cs)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|c| c.conjugate()).collect())
    }

    /// `x^deg * p(1/x)`.
    pub fn reverse(&self) -> Self {
        let mut cs = self.coeffs.clone();
        cs.reverse();
        Self::new(self.field, cs)
    }

    /// `p(c x)`.
    pub fn scale_arg(&self, c: &T) -> Self {
        let mut pw = T::one_in(self.field);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.times(&pw));
            pw = pw.times(c);
        }
        Self::new(self.field, out)
    }

    /// `p(-x)`.
    pub fn negate_arg(&self) -> Self {
        self.scale_arg(&T::one_in(self.field).negated())
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &T) -> Self {
        let lin = Self::new(self.field, vec![c.clone(), T::one_in(self.field)]);
        let mut acc = Self::zero(self.field);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(a.clone());
        }
        acc
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero(self.field);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Self::constant(a.clone());
        }
        acc
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division over the coefficient field.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.lc().inverse().ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(self.field), self.clone()));
        }
        let mut q = vec![T::zero_in(self.field); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].times(&inv);
            if !c.is_nil() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = r[i + j].minus(&c.times(dc));
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(self.field, q), Self::new(self.field, r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Quotient when `d` divides `self`, `None` otherwise.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, p: &Self) -> bool {
        !self.is_zero() && p.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.gcd(other).is_constant()
    }

    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return Self::one(self.field);
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.is_constant() || self.is_coprime(&self.derivative())
    }

    /// Yun's algorithm: monic squarefree `s_i` with `p = lc * prod s_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let mut c = df.exact_div(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Resultant by the Euclidean recurrence over the coefficient field.
    pub fn resultant(&self, other: &Self) -> T {
        let f0 = self.field;
        let (mut f, mut g) = (self.clone(), other.clone());
        if f.is_zero() || g.is_zero() {
            return T::zero_in(f0);
        }
        let mut acc = T::one_in(f0);
        loop {
            let (df, dg) = (f.deg(), g.deg());
            if dg == 0 {
                return acc.times(&pow_scalar(&g.lc(), df));
            }
            if df == 0 {
                return acc.times(&pow_scalar(&f.lc(), dg));
            }
            let r = f.rem(&g).expect("nonzero divisor");
            if r.is_zero() {
                return T::zero_in(f0);
            }
            let dr = r.deg();
            if (df * dg) % 2 == 1 {
                acc = acc.negated();
            }
            acc = acc.times(&pow_scalar(&g.lc(), df - dr));
            f = g;
            g = r;
        }
    }

    /// Sturm-style sequence `f0, f1, -rem(f0, f1), ...` up to the last nonzero term.
    pub fn sturm_chain(f0: &Self, f1: &Self) -> Vec<Self> {
        let mut seq = vec![f0.clone()];
        if f1.is_zero() {
            return seq;
        }
        seq.push(f1.clone());
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero divisor");
            if r.is_zero() {
                return seq;
            }
            seq.push(make_content_small(&-&r));
        }
    }

    /// Interpolate the polynomial of degree `< xs.len()` through `(xs[i], ys[i])`.
    pub fn interpolate(field: T::Field, xs: &[Rational], ys: &[T]) -> Self {
        let n = xs.len();
        let mut dd: Vec<T> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let den = &xs[i] - &xs[i - j];
                dd[i] = dd[i].minus(&dd[i - 1]).scaled(&den.recip());
            }
        }
        let mut acc = Self::zero(field);
        for i in (0..n).rev() {
            let lin = Self::new(field, vec![T::from_rational(field, -&xs[i]), T::one_in(field)]);
            acc = &(&acc * &lin) + &Self::constant(dd[i].clone());
        }
        acc
    }

    pub fn map_field<U: Scalar>(&self, field: U::Field, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(field, self.coeffs.iter().map(f).collect())
    }

    pub fn to_rational_poly(&self) -> Option<RatPoly> {
        let cs: Option<Vec<Rational>> = self.coeffs.iter().map(|c| c.to_rational()).collect();
        cs.map(|cs| RatPoly::new((), cs))
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_nil() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "X".into(),
                _ => format!("X^{i}"),
            };
            let cs = c.render();
            let simple = !cs[1..].contains(['+', '-']);
            let grouped = if simple {
                cs
            } else if cs.starts_with('-') {
                format!("-({})", c.negated().render())
            } else {
                format!("({cs})")
            };
            let term = if i == 0 {
                grouped
            } else if c.is_unity() {
                mono
            } else if c.negated().is_unity() {
                format!("-{mono}")
            } else {
                format!("{grouped}*{mono}")
            };
            parts.push(term);
        }
        let mut s = parts[0].clone();
        for t in &parts[1..] {
            if let Some(rest) = t.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(t);
            }
        }
        s
    }
}

fn pow_scalar<T: Scalar>(x: &T, e: usize) -> T {
    let mut acc = T::one_in(x.field());
    for _ in 0..e {
        acc = acc.times(x);
    }
    acc
}

/// Divides by a positive rational content when the coefficients are rational,
/// which keeps remainder sequences from blowing up; signs are preserved.
fn make_content_small<T: Scalar>(p: &Poly<T>) -> Poly<T> {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in p.coeffs() {
        match c.to_rational() {
            Some(r) => {
                num = num.gcd(r.numer());
                den = den.lcm(r.denom());
            }
            None => return p.clone(),
        }
    }
    if num.is_zero() {
        return p.clone();
    }
    p.scale_rational(&Rational::new(den, num.abs()))
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<T: Scalar> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a, T: Scalar> Add<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn add(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let cs = (0..n).map(|i| self.coeff(i).plus(&o.coeff(i))).collect();
        Poly::new(self.field, cs)
    }
}

impl<'a, T: Scalar> Sub<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn sub(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let cs = (0..n).map(|i| self.coeff(i).minus(&o.coeff(i))).collect();
        Poly::new(self.field, cs)
    }
}

impl<'a, T: Scalar> Mul<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn mul(self, o: &Poly<T>) -> Poly<T> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut cs = vec![T::zero_in(self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_nil() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                cs[i + j] = cs[i + j].plus(&a.times(b));
            }
        }
        Poly::new(self.field, cs)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.field, self.coeffs.iter().map(|c| c.negated()).collect())
    }
}

impl RatPoly {
    pub fn ints(cs: &[i64]) -> RatPoly {
        RatPoly::from_ints((), cs)
    }

    pub fn from_bigints(cs: &[BigInt]) -> RatPoly {
        RatPoly::new((), cs.iter().map(|c| rat_int(c.clone())).collect())
    }

    /// `(content, primitive integer coefficients with positive leading term)`.
    pub fn primitive_part(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, den), prim)
    }

    pub fn primitive(&self) -> RatPoly {
        RatPoly::from_bigints(&self.primitive_part().1)
    }

    pub fn to_k(&self, field: QuadField) -> KPoly {
        self.map_field(field, |c| field.rational(c.clone()))
    }
}

impl KPoly {
    pub fn is_conj_fixed(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }
}
