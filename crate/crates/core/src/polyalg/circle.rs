//! Exact location of roots relative to the unit circle.
//!
//! Roots on the circle are the roots of `gcd(p, p*)` whose reciprocal pair
//! coincides with the complex conjugate; after `y = x + 1/x` they become real
//! roots in `(-2, 2)`, counted with a Sturm sequence. The rest is counted with
//! the Routh-Hurwitz Cauchy index of the Cayley transform `x = (1+w)/(1-w)`.

use num_traits::{One, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::qfield::{rat_int, Rational};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CircleProfile {
    pub inside: usize,
    pub on: usize,
    pub outside: usize,
}

impl CircleProfile {
    pub fn degree(&self) -> usize {
        self.inside + self.on + self.outside
    }

    /// Some root with `|z| >= 1`.
    pub fn has_root_at_least_one(&self) -> bool {
        self.on + self.outside > 0
    }

    /// Some root with `|z| <= 1`.
    pub fn has_root_at_most_one(&self) -> bool {
        self.on + self.inside > 0
    }

    fn add_scaled(&mut self, o: &CircleProfile, m: usize) {
        self.inside += o.inside * m;
        self.on += o.on * m;
        self.outside += o.outside * m;
    }
}

impl std::fmt::Display for CircleProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(inside {}, on {}, outside {})", self.inside, self.on, self.outside)
    }
}

pub fn circle_profile<T: Scalar>(p: &Poly<T>) -> Result<CircleProfile> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut prof = CircleProfile::default();
    for (s, m) in p.squarefree_decomposition() {
        prof.add_scaled(&squarefree_profile(&s)?, m);
    }
    if prof.degree() != p.deg() {
        return Err(Error::Internal(format!("circle counts {prof} do not sum to degree {}", p.deg())));
    }
    Ok(prof)
}

fn squarefree_profile<T: Scalar>(s: &Poly<T>) -> Result<CircleProfile> {
    let f = s.field();
    let mut prof = CircleProfile::default();
    let mut s = s.monic();
    if s.coeff(0).is_nil() {
        prof.inside += 1;
        s = s.exact_div(&Poly::x(f)).expect("x divides");
    }
    if s.deg() == 0 {
        return Ok(prof);
    }
    let n = s.deg();
    let g = s.gcd(&s.reverse());
    let mut g1 = g.clone();
    for r in [1i64, -1] {
        let lin = Poly::linear(&T::from_rational(f, rat_int(r)));
        if g1.eval_rational(&rat_int(r)).is_nil() {
            prof.on += 1;
            g1 = g1.exact_div(&lin).expect("root divides");
        }
    }
    if g1.deg() % 2 == 1 {
        return Err(Error::Internal("self-reciprocal part has odd degree".into()));
    }
    let m = g1.deg() / 2;
    let c = if m == 0 { 0 } else { roots_in_open_interval(&palindromic_to_trace(&g1), &rat_int(-2), &rat_int(2)) };
    prof.on += 2 * c;
    let rest = s.exact_div(&g).expect("gcd divides");
    let inside = routh_inside(&rest)? + (m - c);
    prof.inside += inside;
    prof.outside = n - prof.on - inside;
    Ok(prof)
}

/// `g(x) = x^m h(x + 1/x)` for palindromic `g` of degree `2m`.
fn palindromic_to_trace<T: Scalar>(g: &Poly<T>) -> Poly<T> {
    let f = g.field();
    let m = g.deg() / 2;
    let y = Poly::x(f);
    let two = Poly::constant(T::from_rational(f, rat_int(2)));
    let mut dk = vec![two, y.clone()];
    for k in 2..=m {
        let next = &(&y * &dk[k - 1]) - &dk[k - 2];
        dk.push(next);
    }
    let mut h = Poly::constant(g.coeff(m));
    for k in 1..=m {
        h = &h + &dk[k].scale(&g.coeff(m + k));
    }
    h
}

fn sign_at<T: Scalar>(p: &Poly<T>, x: &Rational) -> i32 {
    p.eval_rational(x).signum()
}

fn sign_at_infinity<T: Scalar>(p: &Poly<T>, positive: bool) -> i32 {
    let s = p.lc().signum();
    if positive || p.deg() % 2 == 0 {
        s
    } else {
        -s
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Distinct real roots of a squarefree `h` in `(a, b)`, with `h(a) h(b) != 0`.
pub fn roots_in_open_interval<T: Scalar>(h: &Poly<T>, a: &Rational, b: &Rational) -> usize {
    let chain = Poly::sturm_chain(h, &h.derivative());
    let va = variations(chain.iter().map(|p| sign_at(p, a)));
    let vb = variations(chain.iter().map(|p| sign_at(p, b)));
    va - vb
}

/// Number of roots strictly inside the unit circle of a polynomial with no
/// roots on the circle.
fn routh_inside<T: Scalar>(p: &Poly<T>) -> Result<usize> {
    let n = p.deg();
    if n == 0 {
        return Ok(0);
    }
    let f = p.field();
    let one = T::one_in(f);
    let plus = Poly::new(f, vec![one.clone(), one.clone()]);
    let minus = Poly::new(f, vec![one.clone(), one.negated()]);
    let mut q = Poly::zero(f);
    for j in 0..=n {
        let c = p.coeff(j);
        if c.is_nil() {
            continue;
        }
        let term = &plus.pow(j) * &minus.pow(n - j);
        q = &q + &term.scale(&c);
    }
    if q.deg() != n {
        return Err(Error::Internal("Cayley transform lost degree (root at -1)".into()));
    }
    // Even and odd parts evaluated on the imaginary axis.
    let mut even = vec![T::zero_in(f); n + 1];
    let mut odd = vec![T::zero_in(f); n + 1];
    for k in 0..=n {
        let c = q.coeff(k);
        let sign = if ((n - k) / 2) % 2 == 0 { c.clone() } else { c.negated() };
        if (n - k) % 2 == 0 {
            even[k] = sign;
        } else {
            odd[k] = sign;
        }
    }
    let big = Poly::new(f, even);
    let small = Poly::new(f, odd);
    let index = cauchy_index(&big, &small);
    let total = n as i64 + index;
    if total < 0 || total % 2 != 0 || total > 2 * n as i64 {
        return Err(Error::Internal("Routh-Hurwitz index out of range".into()));
    }
    Ok((total / 2) as usize)
}

/// Cauchy index of `g/f` over the whole real line.
fn cauchy_index<T: Scalar>(f: &Poly<T>, g: &Poly<T>) -> i64 {
    let chain = Poly::sturm_chain(f, g);
    let vm = variations(chain.iter().map(|p| sign_at_infinity(p, false)));
    let vp = variations(chain.iter().map(|p| sign_at_infinity(p, true)));
    vm as i64 - vp as i64
}

/// Modulus bounds for the largest root: `lo < |alpha_1| <= hi`, or equal
/// bounds when a root lies exactly on the circle of that radius.
pub fn dominant_modulus<T: Scalar>(p: &Poly<T>, iters: u32) -> Result<(Rational, Rational)> {
    let deg = p.degree().ok_or(Error::ZeroInput)?;
    if deg == 0 {
        return Err(Error::Precondition("constant polynomial has no roots".into()));
    }
    let f = p.field();
    let mut p = p.clone();
    while p.coeff(0).is_nil() && p.deg() > 0 {
        p = p.exact_div(&Poly::x(f)).expect("x divides");
    }
    if p.deg() == 0 {
        return Ok((Rational::zero(), Rational::zero()));
    }
    let outside = |r: &Rational| -> Result<CircleProfile> {
        circle_profile(&p.scale_arg(&T::from_rational(f, r.clone())))
    };
    let mut hi = Rational::one();
    loop {
        let pr = outside(&hi)?;
        if pr.on > 0 && pr.outside == 0 {
            return Ok((hi.clone(), hi));
        }
        if pr.outside == 0 {
            break;
        }
        hi *= rat_int(2);
    }
    let mut lo = Rational::zero();
    for _ in 0..iters {
        let mid = (&lo + &hi) / rat_int(2);
        let pr = outside(&mid)?;
        if pr.outside > 0 {
            lo = mid;
        } else if pr.on > 0 {
            return Ok((mid.clone(), mid));
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}
