//! Two-sided linear recurrence sequences over `K = Q(sqrt d)`.

use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::polyalg::cyclotomic::lcm_all;
use crate::polyalg::{is_unital, nondegeneracy, KPoly, Over, Poly};
use crate::qfield::{rat_int, QuadElem, QuadField, Rational};
use crate::scalar::Scalar;

pub const VERIFY_MARGIN: usize = 8;

#[derive(Default)]
struct Memo {
    forward: Vec<QuadElem>,
    /// `backward[j]` is `A_{-1-j}`.
    backward: Vec<QuadElem>,
}

/// `A_n = c_1 A_{n-1} + ... + c_k A_{n-k}` with `c_k != 0`, valid for all
/// integers `n`. Terms are memoized behind a mutex, so one instance can be
/// shared between threads.
pub struct LinRec {
    field: QuadField,
    coeffs: Vec<QuadElem>,
    initials: Vec<QuadElem>,
    memo: Mutex<Memo>,
}

impl Clone for LinRec {
    fn clone(&self) -> Self {
        LinRec::build(self.field, self.coeffs.clone(), self.initials.clone())
    }
}

impl PartialEq for LinRec {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs && self.initials == other.initials
    }
}

impl fmt::Debug for LinRec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinRec")
            .field("d", &self.field.d())
            .field("coeffs", &self.coeffs)
            .field("initials", &self.initials)
            .finish()
    }
}

impl fmt::Display for LinRec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let is: Vec<String> = self.initials.iter().map(|c| c.to_string()).collect();
        write!(f, "A_n = rec[{}], A_0.. = [{}] over {}", cs.join(", "), is.join(", "), self.field)
    }
}

impl LinRec {
    fn build(field: QuadField, coeffs: Vec<QuadElem>, initials: Vec<QuadElem>) -> LinRec {
        let memo = Memo { forward: initials.clone(), backward: Vec::new() };
        LinRec { field, coeffs, initials, memo: Mutex::new(memo) }
    }

    pub fn new(field: QuadField, coeffs: Vec<QuadElem>, initials: Vec<QuadElem>) -> Result<LinRec> {
        if coeffs.is_empty() {
            return Err(Error::InvalidRecurrence("order must be at least 1".into()));
        }
        if coeffs.len() != initials.len() {
            return Err(Error::InvalidRecurrence(format!(
                "{} coefficients but {} initial values",
                coeffs.len(),
                initials.len()
            )));
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(Error::InvalidRecurrence("last coefficient must be nonzero".into()));
        }
        for x in coeffs.iter().chain(&initials) {
            if x.field() != field {
                return Err(Error::MixedField(field.d(), x.d()));
            }
        }
        Ok(LinRec::build(field, coeffs, initials))
    }

    /// Rational recurrence embedded in `field`.
    pub fn rational(field: QuadField, coeffs: &[Rational], initials: &[Rational]) -> Result<LinRec> {
        let k = |v: &[Rational]| v.iter().map(|r| field.rational(r.clone())).collect();
        LinRec::new(field, k(coeffs), k(initials))
    }

    /// `first * ratio^n`.
    pub fn geometric(ratio: &QuadElem, first: &QuadElem) -> Result<LinRec> {
        LinRec::new(ratio.field(), vec![ratio.clone()], vec![first.clone()])
    }

    /// Recurrence with characteristic polynomial `p` (monic, `p(0) != 0`).
    pub fn from_charpoly(p: &KPoly, initials: Vec<QuadElem>) -> Result<LinRec> {
        if !p.is_monic() || p.deg() == 0 {
            return Err(Error::InvalidRecurrence("characteristic polynomial must be monic of degree >= 1".into()));
        }
        let k = p.deg();
        let coeffs = (1..=k).map(|i| -p.coeff(k - i)).collect();
        LinRec::new(p.field(), coeffs, initials)
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[QuadElem] {
        &self.coeffs
    }

    pub fn initials(&self) -> &[QuadElem] {
        &self.initials
    }

    /// `X^k - c_1 X^{k-1} - ... - c_k`.
    pub fn charpoly(&self) -> KPoly {
        let k = self.order();
        let mut cs: Vec<QuadElem> = (0..k).map(|i| -&self.coeffs[k - 1 - i]).collect();
        cs.push(self.field.one());
        Poly::new(self.field, cs)
    }

    fn at(m: &Memo, i: i64) -> &QuadElem {
        if i >= 0 {
            &m.forward[i as usize]
        } else {
            &m.backward[(-i - 1) as usize]
        }
    }

    pub fn term(&self, n: i64) -> QuadElem {
        let mut m = self.memo.lock().unwrap_or_else(|e| e.into_inner());
        let k = self.order() as i64;
        if n >= 0 {
            while m.forward.len() as i64 <= n {
                let i = m.forward.len() as i64;
                let mut acc = self.field.zero();
                for (j, c) in self.coeffs.iter().enumerate() {
                    acc = &acc + &(c * Self::at(&m, i - 1 - j as i64));
                }
                m.forward.push(acc);
            }
            return m.forward[n as usize].clone();
        }
        let inv_last = self.coeffs.last().unwrap().inv().expect("last coefficient is nonzero");
        while (m.backward.len() as i64) < -n {
            let t = -1 - m.backward.len() as i64;
            let mut acc = Self::at(&m, t + k).clone();
            for j in 1..k {
                acc = &acc - &(&self.coeffs[j as usize - 1] * Self::at(&m, t + k - j));
            }
            let v = &acc * &inv_last;
            m.backward.push(v);
        }
        m.backward[(-n - 1) as usize].clone()
    }

    pub fn window(&self, start: i64, len: usize) -> SeqWindow {
        SeqWindow { start, field: self.field, values: (0..len as i64).map(|i| self.term(start + i)).collect() }
    }

    pub fn conj_rec(&self) -> LinRec {
        let c = |v: &[QuadElem]| v.iter().map(|x| x.conj()).collect();
        LinRec::build(self.field, c(&self.coeffs), c(&self.initials))
    }

    /// `c * A_n`.
    pub fn scaled(&self, c: &QuadElem) -> LinRec {
        LinRec::build(self.field, self.coeffs.clone(), self.initials.iter().map(|x| c * x).collect())
    }

    /// `A_n + B_n`, with the product of the characteristic polynomials.
    pub fn add(&self, other: &LinRec) -> Result<LinRec> {
        if self.field != other.field {
            return Err(Error::MixedField(self.field.d(), other.field.d()));
        }
        let p = &self.charpoly() * &other.charpoly();
        let initials = (0..p.deg() as i64).map(|n| &self.term(n) + &other.term(n)).collect();
        LinRec::from_charpoly(&p, initials)
    }

    /// `(A_{dn+j})_n`, using the polynomial whose roots are the `d`-th
    /// powers of the roots of the characteristic polynomial.
    pub fn subsequence(&self, d: u64, j: i64) -> Result<LinRec> {
        if d == 0 {
            return Err(Error::Precondition("step must be positive".into()));
        }
        let p = power_poly(&self.charpoly(), d as usize);
        let initials = (0..p.deg() as i64).map(|n| self.term(d as i64 * n + j)).collect();
        LinRec::from_charpoly(&p, initials)
    }
}

/// `prod (X - alpha^d)` over the roots `alpha` of the monic `p`, as
/// `Res_Y(p(Y), X - Y^d)`.
pub fn power_poly<T: Scalar>(p: &Poly<T>, d: usize) -> Poly<T> {
    let f = p.field();
    let k = p.deg();
    let xs: Vec<Rational> = (0..=k as i64).map(rat_int).collect();
    let ys: Vec<T> = xs
        .iter()
        .map(|x| {
            let g = &Poly::new(f, vec![T::from_rational(f, x.clone())]) - &Poly::monomial(T::one_in(f), d);
            p.resultant(&g)
        })
        .collect();
    Poly::interpolate(f, &xs, &ys).monic()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeqWindow {
    pub start: i64,
    pub field: QuadField,
    pub values: Vec<QuadElem>,
}

impl SeqWindow {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// All entries rational, as rationals.
    pub fn to_rationals(&self) -> Option<Vec<Rational>> {
        self.values.iter().map(|x| x.as_rational()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Sum,
    Difference,
}

/// Termwise `r + s` or `r - s`.
pub struct Combined<'a> {
    r: &'a LinRec,
    s: &'a LinRec,
    op: CombineOp,
}

impl Combined<'_> {
    pub fn term(&self, n: i64) -> QuadElem {
        match self.op {
            CombineOp::Sum => &self.r.term(n) + &self.s.term(n),
            CombineOp::Difference => &self.r.term(n) - &self.s.term(n),
        }
    }

    pub fn window(&self, start: i64, len: usize) -> SeqWindow {
        SeqWindow { start, field: self.r.field, values: (0..len as i64).map(|i| self.term(start + i)).collect() }
    }
}

pub fn combine<'a>(r: &'a LinRec, s: &'a LinRec, op: CombineOp) -> Result<Combined<'a>> {
    if r.field != s.field {
        return Err(Error::MixedField(r.field.d(), s.field.d()));
    }
    Ok(Combined { r, s, op })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Annihilator<T: Scalar> {
    ZeroSequence,
    Poly(Poly<T>),
}

impl<T: Scalar> Annihilator<T> {
    pub fn poly(&self) -> Option<&Poly<T>> {
        match self {
            Annihilator::ZeroSequence => None,
            Annihilator::Poly(p) => Some(p),
        }
    }

    pub fn is_zero_sequence(&self) -> bool {
        matches!(self, Annihilator::ZeroSequence)
    }

    pub fn render(&self) -> String {
        match self {
            Annihilator::ZeroSequence => "0 (zero sequence)".into(),
            Annihilator::Poly(p) => p.render(),
        }
    }
}

/// Berlekamp-Massey on the first `2 * bound` values, then a check of the
/// remaining ones.
pub fn berlekamp_massey<T: Scalar>(field: T::Field, values: &[T], bound: usize) -> Result<Annihilator<T>> {
    let needed = 2 * bound + VERIFY_MARGIN;
    if values.len() < needed {
        return Err(Error::WindowTooShort { len: values.len(), needed });
    }
    if values.iter().all(|v| v.is_nil()) {
        return Ok(Annihilator::ZeroSequence);
    }
    let s = &values[..2 * bound];
    let zero = T::zero_in(field);
    let one = T::one_in(field);
    let mut c = vec![one.clone()];
    let mut b = vec![one.clone()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last = one.clone();
    for n in 0..s.len() {
        let mut disc = s[n].clone();
        for i in 1..=l {
            if let Some(ci) = c.get(i) {
                disc = disc.plus(&ci.times(&s[n - i]));
            }
        }
        if disc.is_nil() {
            m += 1;
            continue;
        }
        let coef = disc.quotient(&last).expect("previous discrepancy is nonzero");
        let prev = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, zero.clone());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] = c[i + m].minus(&coef.times(bi));
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            last = disc;
            m = 1;
        } else {
            m += 1;
        }
    }
    if l > bound {
        return Err(Error::VerificationFailed(bound));
    }
    c.resize(l + 1, zero.clone());
    let charpoly = Poly::new(field, c.iter().rev().cloned().collect());
    for n in l..values.len() {
        let mut acc = zero.clone();
        for (i, ci) in c.iter().enumerate() {
            acc = acc.plus(&ci.times(&values[n - i]));
        }
        if !acc.is_nil() {
            return Err(Error::VerificationFailed(bound));
        }
    }
    Ok(Annihilator::Poly(charpoly))
}

pub fn min_charpoly(w: &SeqWindow, bound: usize) -> Result<Annihilator<QuadElem>> {
    berlekamp_massey(w.field, &w.values, bound)
}

fn window_len(bound: usize) -> usize {
    2 * bound + VERIFY_MARGIN
}

/// Minimal polynomial of the sequence itself, from a window starting at 0.
pub fn rec_min_charpoly(r: &LinRec) -> Result<Annihilator<QuadElem>> {
    min_charpoly(&r.window(0, window_len(r.order())), r.order())
}

/// Minimal polynomials of `A_n - A_n'` (over K) and `A_n + A_n'` (over Q).
pub fn diff_sum_parts(r: &LinRec) -> Result<(Annihilator<QuadElem>, Annihilator<Rational>)> {
    let bound = 2 * r.order();
    let len = window_len(bound);
    let conj = r.conj_rec();
    let diff = combine(r, &conj, CombineOp::Difference)?.window(0, len);
    let sum = combine(r, &conj, CombineOp::Sum)?.window(0, len);
    let sums = sum.to_rationals().ok_or_else(|| Error::Internal("A_n + A_n' is not rational".into()))?;
    let pd = min_charpoly(&diff, bound)?;
    let ps = berlekamp_massey((), &sums, bound)?;
    Ok((pd, ps))
}

pub fn nondegenerate_rec(r: &LinRec, over: Over) -> Result<(bool, Vec<u64>)> {
    match rec_min_charpoly(r)? {
        Annihilator::ZeroSequence => Ok((true, Vec::new())),
        Annihilator::Poly(p) if p.deg() == 0 => Ok((true, Vec::new())),
        Annihilator::Poly(p) => nondegeneracy(&p, over),
    }
}

/// `d` and the subsequences `(A_{dn+j})_n`, `0 <= j < d`, each
/// non-degenerate over Q.
pub fn split_degenerate(r: &LinRec) -> Result<(u64, Vec<LinRec>)> {
    let (ok, orders) = nondegenerate_rec(r, Over::Q)?;
    if ok {
        return Ok((1, vec![r.clone()]));
    }
    let d = lcm_all(&orders);
    let parts = (0..d as i64).map(|j| r.subsequence(d, j)).collect::<Result<Vec<_>>>()?;
    for p in &parts {
        if !nondegenerate_rec(p, Over::Q)?.0 {
            return Err(Error::Internal(format!("subsequence step {d} is still degenerate")));
        }
    }
    Ok((d, parts))
}

/// Largest integral denominator of `A_0, ..., A_{n-1}` and whether the
/// minimal polynomial is unital.
pub fn denominator_profile(r: &LinRec, n: usize) -> Result<(BigInt, bool)> {
    if n == 0 {
        return Err(Error::Precondition("window must contain at least one term".into()));
    }
    let max = (0..n as i64).map(|i| r.term(i).integral_denominator()).max().unwrap_or_else(BigInt::one);
    let unital = match rec_min_charpoly(r)? {
        Annihilator::ZeroSequence => true,
        Annihilator::Poly(p) => p.deg() == 0 || is_unital(&p)?,
    };
    Ok((max, unital))
}
