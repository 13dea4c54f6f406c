//! Continued fractions of rationals and real quadratic irrationals.
//!
//! Irrationals are stepped as `(P + sqrt D)/Q` states. The first reduced
//! complete quotient starts the period, and the period ends when that state
//! comes back, so the preperiod is minimal and the cycle is primitive.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::qfield::{integer_sqrt_floor, rat_int, QuadElem, Rational, Surd};

pub const DEFAULT_STEP_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CfSource {
    Rational(Rational),
    Surd(Surd),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFExpansion {
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
    pub source: CfSource,
}

impl CFExpansion {
    pub fn period_length(&self) -> usize {
        self.period.len()
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// `a_i`, unrolling the period; `None` past the end of a finite expansion.
    pub fn quotient(&self, i: usize) -> Option<BigInt> {
        if i < self.preperiod.len() {
            return Some(self.preperiod[i].clone());
        }
        if self.period.is_empty() {
            return None;
        }
        let k = (i - self.preperiod.len()) % self.period.len();
        Some(self.period[k].clone())
    }

    /// `a_0, ..., a_n`.
    pub fn quotients(&self, n: usize) -> Result<Vec<BigInt>> {
        (0..=n)
            .map(|i| self.quotient(i).ok_or(Error::IndexOutOfRange { index: n, len: self.preperiod.len() }))
            .collect()
    }
}

impl fmt::Display for CFExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut all: Vec<String> = self.preperiod.iter().map(|a| a.to_string()).collect();
        if !self.period.is_empty() {
            let cyc: Vec<String> = self.period.iter().map(|a| a.to_string()).collect();
            all.push(format!("({})", cyc.join(", ")));
        }
        match all.split_first() {
            None => write!(f, "[]"),
            Some((head, [])) => write!(f, "[{head}]"),
            Some((head, rest)) => write!(f, "[{head}; {}]", rest.join(", ")),
        }
    }
}

/// Minimal preperiod and primitive period describing the same quotient
/// sequence as `pre` followed by `per` repeated forever.
pub fn canonical_form(pre: &[BigInt], per: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut pre = pre.to_vec();
    let mut per = per.to_vec();
    if let Some(len) = (1..=per.len()).find(|&l| per.len() % l == 0 && (l..per.len()).all(|i| per[i] == per[i - l])) {
        per.truncate(len);
    }
    while !per.is_empty() && pre.last() == per.last() {
        pre.pop();
        per.rotate_right(1);
    }
    (pre, per)
}

impl CFExpansion {
    /// Whether this expansion is the quotient sequence `pre, (per)`.
    pub fn matches(&self, pre: &[BigInt], per: &[BigInt]) -> bool {
        canonical_form(pre, per) == canonical_form(&self.preperiod, &self.period)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
}

impl Convergent {
    pub fn value(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone())
    }
}

impl fmt::Display for Convergent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Result of a streaming period scan; nothing but counts is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodScan {
    pub preperiod_len: u64,
    pub period_len: u64,
    /// `a_1`, absent only for integers.
    pub a1: Option<BigInt>,
}

enum Quot {
    Small(i128),
    Big(BigInt),
}

impl Quot {
    fn into_big(self) -> BigInt {
        match self {
            Quot::Small(a) => BigInt::from(a),
            Quot::Big(a) => a,
        }
    }
}

#[derive(Clone, Debug)]
enum State {
    Small { p: i128, q: i128, d: i128, s: i128 },
    Big { p: BigInt, q: BigInt, d: BigInt, s: BigInt },
}

impl State {
    fn new(x: &Surd) -> State {
        let s = integer_sqrt_floor(&x.d).expect("D is positive");
        match (x.p.to_i128(), x.q.to_i128(), x.d.to_i128(), s.to_i128()) {
            (Some(p), Some(q), Some(d), Some(s)) => State::Small { p, q, d, s },
            _ => State::Big { p: x.p.clone(), q: x.q.clone(), d: x.d.clone(), s },
        }
    }

    fn widen(&self) -> State {
        match self {
            State::Small { p, q, d, s } => State::Big {
                p: BigInt::from(*p),
                q: BigInt::from(*q),
                d: BigInt::from(*d),
                s: BigInt::from(*s),
            },
            big => big.clone(),
        }
    }

    fn pq(&self) -> (BigInt, BigInt) {
        match self {
            State::Small { p, q, .. } => (BigInt::from(*p), BigInt::from(*q)),
            State::Big { p, q, .. } => (p.clone(), q.clone()),
        }
    }

    fn same(&self, other: &State) -> bool {
        match (self, other) {
            (State::Small { p: a, q: b, .. }, State::Small { p: c, q: e, .. }) => a == c && b == e,
            _ => self.pq() == other.pq(),
        }
    }

    fn is_reduced(&self) -> bool {
        match self {
            State::Small { p, q, s, .. } => *q > 0 && *p >= 1 && p <= s && *q <= s + p && *q > s - p,
            State::Big { p, q, s, .. } => q.is_positive() && p.is_positive() && p <= s && *q <= s + p && *q > s - p,
        }
    }

    fn step(&mut self) -> Quot {
        if let State::Small { p, q, d, s } = *self {
            if let Some((a, p2, q2)) = small_step(p, q, d, s) {
                *self = State::Small { p: p2, q: q2, d, s };
                return Quot::Small(a);
            }
            *self = self.widen();
        }
        let State::Big { p, q, d, s } = self else { unreachable!() };
        let num: BigInt = if q.is_positive() { &*p + &*s } else { &*p + &*s + 1 };
        let a = Integer::div_floor(&num, q);
        let p2 = &a * &*q - &*p;
        let q2 = (&*d - &p2 * &p2) / &*q;
        *p = p2;
        *q = q2;
        Quot::Big(a)
    }
}

fn small_step(p: i128, q: i128, d: i128, s: i128) -> Option<(i128, i128, i128)> {
    let num = if q > 0 { p.checked_add(s)? } else { p.checked_add(s)?.checked_add(1)? };
    let a = Integer::div_floor(&num, &q);
    let p2 = a.checked_mul(q)?.checked_sub(p)?;
    let q2 = d.checked_sub(p2.checked_mul(p2)?)? / q;
    Some((a, p2, q2))
}

/// Runs the surd until its period closes, calling `visit` on every quotient.
fn run_surd(x: &Surd, cap: u64, mut visit: impl FnMut(u64, Quot)) -> Result<(u64, u64)> {
    let mut st = State::new(x);
    let mut i = 0u64;
    while !st.is_reduced() {
        if i >= cap {
            return Err(Error::StepCapExceeded { cap, lower_bound: 1 });
        }
        visit(i, st.step());
        i += 1;
    }
    let pre = i;
    let start = st.clone();
    loop {
        if i >= cap {
            return Err(Error::StepCapExceeded { cap, lower_bound: i - pre + 1 });
        }
        visit(i, st.step());
        i += 1;
        if st.same(&start) {
            return Ok((pre, i - pre));
        }
    }
}

fn rational_quotients(r: &Rational) -> Vec<BigInt> {
    let mut n = r.numer().clone();
    let mut d = r.denom().clone();
    let mut out = Vec::new();
    while !d.is_zero() {
        let (a, m) = n.div_mod_floor(&d);
        out.push(a);
        n = d;
        d = m;
    }
    out
}

pub fn expand_rational(r: &Rational) -> CFExpansion {
    CFExpansion { preperiod: rational_quotients(r), period: Vec::new(), source: CfSource::Rational(r.clone()) }
}

pub fn expand_surd(x: &Surd, cap: u64) -> Result<CFExpansion> {
    let mut all = Vec::new();
    let (pre, _) = run_surd(x, cap, |_, a| all.push(a.into_big()))?;
    let period = all.split_off(pre as usize);
    Ok(CFExpansion { preperiod: all, period, source: CfSource::Surd(x.clone()) })
}

pub fn expand(x: &QuadElem) -> Result<CFExpansion> {
    expand_capped(x, DEFAULT_STEP_CAP)
}

pub fn expand_capped(x: &QuadElem, cap: u64) -> Result<CFExpansion> {
    match x.as_rational() {
        Some(r) => Ok(expand_rational(&r)),
        None => expand_surd(&x.to_surd()?, cap),
    }
}

pub fn period_length(x: &QuadElem) -> Result<u64> {
    Ok(scan_period(x, DEFAULT_STEP_CAP)?.period_len)
}

/// Preperiod and period lengths without storing the quotients.
pub fn scan_period(x: &QuadElem, cap: u64) -> Result<PeriodScan> {
    if let Some(r) = x.as_rational() {
        let qs = rational_quotients(&r);
        return Ok(PeriodScan { preperiod_len: qs.len() as u64, period_len: 0, a1: qs.get(1).cloned() });
    }
    scan_surd(&x.to_surd()?, cap)
}

pub fn scan_surd(x: &Surd, cap: u64) -> Result<PeriodScan> {
    let (mut a0, mut a1) = (None, None);
    let (pre, ell) = run_surd(x, cap, |i, a| match i {
        0 => a0 = Some(a.into_big()),
        1 => a1 = Some(a.into_big()),
        _ => {}
    })?;
    Ok(PeriodScan { preperiod_len: pre, period_len: ell, a1: a1.or(a0) })
}

/// `p_n/q_n` from `p_{-1} = 1, q_{-1} = 0, p_{-2} = 0, q_{-2} = 1`.
pub fn convergents(e: &CFExpansion, n: usize) -> Result<Convergent> {
    if e.is_finite() && n >= e.preperiod.len() {
        return Err(Error::IndexOutOfRange { index: n, len: e.preperiod.len() });
    }
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    for i in 0..=n {
        let a = e.quotient(i).expect("index checked");
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    Ok(Convergent { p: p1, q: q1 })
}

/// `|x - p_n/q_n| <= 1/(a_{n+1} q_n^2)`, decided exactly.
pub fn check_convergent_bound(x: &QuadElem, n: usize) -> Result<bool> {
    if x.is_rational() {
        return Err(Error::RationalInput);
    }
    let e = expand(x)?;
    let c = convergents(&e, n)?;
    let a = e.quotient(n + 1).expect("infinite expansion");
    let err = (x - &x.field().rational(c.value())).abs();
    let bound = x.field().rational(Rational::new(BigInt::one(), &a * &c.q * &c.q));
    Ok((&bound - &err).sign() >= 0)
}

pub fn fibonacci(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

/// `a_1...a_n <= q_n <= F_{n+1} a_1...a_n`, and when `a_0 >= 1` also
/// `a_0...a_n <= p_n <= F_{n+2} a_0...a_n`, with `F_0 = 0, F_1 = 1`.
pub fn check_fibonacci_bounds(e: &CFExpansion, n: usize) -> Result<bool> {
    let a = e.quotients(n)?;
    let c = convergents(e, n)?;
    let tail: BigInt = a[1..].iter().product();
    let mut ok = tail <= c.q && c.q <= fibonacci(n + 1) * &tail;
    if a[0] >= BigInt::one() {
        let full = &a[0] * &tail;
        ok &= full <= c.p && c.p <= fibonacci(n + 2) * &full;
    }
    Ok(ok)
}

/// `x > 1` and `-1 < x' < 0`.
pub fn is_reduced(x: &QuadElem) -> Result<bool> {
    if x.is_rational() {
        return Err(Error::RationalInput);
    }
    let one = x.field().one();
    let c = x.conj();
    Ok((x - &one).sign() > 0 && c.sign() < 0 && (&c + &one).sign() > 0)
}

/// `(a x + b)/(c x + d)` for `m = [[a, b], [c, d]]`.
pub fn mobius_apply(m: [[i64; 2]; 2], x: &QuadElem) -> Result<QuadElem> {
    let [[a, b], [c, d]] = m;
    if (a as i128) * (d as i128) == (b as i128) * (c as i128) {
        return Err(Error::SingularMatrix);
    }
    let f = x.field();
    let k = |v: i64| f.rational(rat_int(v));
    let den = &(&k(c) * x) + &k(d);
    if den.is_zero() {
        return Err(Error::Pole);
    }
    Ok(&(&(&k(a) * x) + &k(b)) * &den.inv()?)
}

/// The complete quotient `x_n`, with `x_0 = x` and `x_{k+1} = 1/(x_k - a_k)`.
pub fn complete_quotient(x: &QuadElem, n: usize) -> Result<QuadElem> {
    let mut y = x.clone();
    for _ in 0..n {
        let frac = &y - &y.field().rational(rat_int(y.floor()));
        y = frac.inv()?;
    }
    Ok(y)
}

/// `[a_0; a_1, ..., a_k, tail]`.
pub fn evaluate_with_tail(quotients: &[BigInt], tail: &QuadElem) -> Result<QuadElem> {
    let f = tail.field();
    let mut y = tail.clone();
    for a in quotients.iter().rev() {
        y = &f.rational(rat_int(a.clone())) + &y.inv()?;
    }
    Ok(y)
}
