//! Factorization over `Q` (big-prime Zassenhaus) and over `Q(sqrt d)`
//! (norm method with a squarefree shift).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{abs_max, next_prime, norm2_ceil, Fp};
use super::poly::{KPoly, Poly, RatPoly};
use crate::error::{Error, Result};
use crate::qfield::{is_square, QuadElem, QuadField, Rational};
use crate::scalar::Scalar;

pub const DEFAULT_DEGREE_CAP: usize = 48;
const MAX_SHIFT: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<T: Scalar> {
    pub unit: T,
    /// Monic irreducible factors with multiplicities.
    pub factors: Vec<(Poly<T>, usize)>,
}

pub type QFactorization = Factorization<Rational>;
pub type KFactorization = Factorization<QuadElem>;

impl<T: Scalar> Factorization<T> {
    pub fn product(&self) -> Poly<T> {
        let f = self.unit.field();
        let mut acc = Poly::constant(self.unit.clone());
        for (g, m) in &self.factors {
            acc = &acc * &g.pow(*m);
        }
        if acc.is_zero() {
            Poly::zero(f)
        } else {
            acc
        }
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

pub fn factor_q(p: &RatPoly) -> Result<QFactorization> {
    factor_q_capped(p, DEFAULT_DEGREE_CAP)
}

pub fn factor_q_capped(p: &RatPoly, cap: usize) -> Result<QFactorization> {
    let deg = p.degree().ok_or(Error::ZeroInput)?;
    if deg > cap {
        return Err(Error::DegreeTooLarge { degree: deg, cap });
    }
    let mut factors = Vec::new();
    for (s, m) in p.squarefree_decomposition() {
        for f in factor_squarefree_q(&s) {
            factors.push((f, m));
        }
    }
    factors.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    let out = Factorization { unit: p.lc(), factors };
    if out.product() != *p {
        return Err(Error::Internal(format!("factorization of {p} does not multiply back")));
    }
    for (f, _) in &out.factors {
        if small_degree_irreducible(f) == Some(false) {
            return Err(Error::Internal(format!("factor {f} failed the irreducibility re-check")));
        }
    }
    Ok(out)
}

/// Deterministic order: by degree, then coefficients from the top down.
pub fn cmp_poly(a: &RatPoly, b: &RatPoly) -> Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for i in (0..=a.deg()).rev() {
            let c = a.coeff(i).cmp(&b.coeff(i));
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    })
}

fn factor_squarefree_q(s: &RatPoly) -> Vec<RatPoly> {
    let mut out = Vec::new();
    let mut s = s.monic();
    if s.deg() >= 1 && s.coeff(0).is_zero() {
        out.push(RatPoly::ints(&[0, 1]));
        s = s.exact_div(&RatPoly::ints(&[0, 1])).expect("x divides");
    }
    if s.deg() == 0 {
        return out;
    }
    let ints = s.primitive_part().1;
    for g in zassenhaus(&ints) {
        out.push(RatPoly::from_bigints(&g).monic());
    }
    out
}

/// Irreducible factors of a squarefree primitive integer polynomial.
fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    if n == 2 {
        let disc = &f[1] * &f[1] - BigInt::from(4) * &f[0] * &f[2];
        if !is_square(&disc) {
            return vec![f.to_vec()];
        }
    }
    let lc = f[n].abs();
    let bound = &lc * (BigInt::one() << (n + 1)) * norm2_ceil(f) * 2;
    let mut p = next_prime(&bound);
    let fp = loop {
        let fp = Fp::new(p.clone());
        let red = fp.from_ints(f);
        if red.len() == f.len() {
            let g = fp.gcd(&red, &fp.derivative(&red));
            if g.len() == 1 {
                break fp;
            }
        }
        p = next_prime(&(&p + 1));
    };
    let red = fp.from_ints(f);
    let mut modular = fp.factor_squarefree(&red, 0x5eed ^ n as u64);
    modular.sort();
    recombine(f, &fp, modular)
}

fn recombine(f: &[BigInt], fp: &Fp, mut modular: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut found = Vec::new();
    let mut current = f.to_vec();
    let mut size = 1;
    while 2 * size <= modular.len() {
        let mut hit = None;
        for subset in combinations(modular.len(), size) {
            let lc = current.last().unwrap().clone();
            let mut g = vec![lc];
            for &i in &subset {
                g = fp.mul(&g, &modular[i]);
            }
            let cand = primitive(&fp.lift(&g));
            if let Some(q) = int_exact_div(&current, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                current = q;
                modular = modular
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, m)| m)
                    .collect();
            }
            None => size += 1,
        }
    }
    if current.len() > 1 {
        found.push(current);
    }
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn primitive(g: &[BigInt]) -> Vec<BigInt> {
    let mut c = BigInt::zero();
    for x in g {
        c = c.gcd(x);
    }
    if g.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    g.iter().map(|x| x / &c).collect()
}

/// Quotient over `Z` when `d` divides `a` exactly.
fn int_exact_div(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = d.len() - 1;
    if a.len() <= dd || (!d[0].is_zero() && !a[0].is_multiple_of(&d[0])) {
        return None;
    }
    let lc = d.last().unwrap();
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + dd].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, x) in d.iter().enumerate() {
            r[i + j] -= &c * x;
        }
        q[i] = c;
    }
    r.iter().all(|x| x.is_zero()).then_some(q)
}

/// Independent check for degrees up to 4: discriminant, rational roots and
/// quadratic splittings. `None` when the coefficients are too large to try.
pub fn small_degree_irreducible(f: &RatPoly) -> Option<bool> {
    let n = f.deg();
    if n <= 1 {
        return Some(n == 1);
    }
    if n > 4 {
        return None;
    }
    let c = f.primitive_part().1;
    if n == 2 {
        let disc = &c[1] * &c[1] - BigInt::from(4) * &c[0] * &c[2];
        return Some(!is_square(&disc));
    }
    let a0 = c[0].abs();
    let an = c[n].abs();
    if a0.is_zero() {
        return Some(false);
    }
    let d0 = small_divisors(&a0)?;
    let dn = small_divisors(&an)?;
    for p in &d0 {
        for q in &dn {
            for s in [1, -1] {
                let r = Rational::new(p * s, q.clone());
                if f.eval(&r).is_zero() {
                    return Some(false);
                }
            }
        }
    }
    if n == 3 {
        return Some(true);
    }
    for g2 in &dn {
        for g0 in &d0 {
            for s in [1, -1] {
                let g0 = g0 * s;
                if let Some(found) = quadratic_factor_with(&c, g2, &g0) {
                    if found {
                        return Some(false);
                    }
                } else {
                    return None;
                }
            }
        }
    }
    Some(true)
}

/// Integer quadratic `g2 x^2 + g1 x + g0` dividing the quartic `c` for fixed
/// outer coefficients; `g1` and the cofactor's `h1` solve a 2x2 system.
fn quadratic_factor_with(c: &[BigInt], g2: &BigInt, g0: &BigInt) -> Option<bool> {
    let (h2, r2) = c[4].div_rem(g2);
    let (h0, r0) = c[0].div_rem(g0);
    if !r2.is_zero() || !r0.is_zero() {
        return Some(false);
    }
    let check = |g1: &BigInt, h1: &BigInt| {
        g2 * h1 + g1 * &h2 == c[3] && g1 * &h0 + g0 * h1 == c[1] && g0 * &h2 + g1 * h1 + g2 * &h0 == c[2]
    };
    let det = g2 * g0 - &h2 * &h0;
    if !det.is_zero() {
        let n1 = &c[3] * g0 - g2 * &c[1];
        let (g1, r) = n1.div_rem(&det);
        if !r.is_zero() {
            return Some(false);
        }
        let num = &c[3] - &g1 * &h2;
        if !num.is_multiple_of(g2) {
            return Some(false);
        }
        return Some(check(&g1, &(num / g2)));
    }
    let bound = (abs_max(c) * BigInt::from(5) + BigInt::from(5)).to_i64().filter(|b| *b <= 100_000)?;
    for g1 in -bound..=bound {
        let g1 = BigInt::from(g1);
        let num = &c[3] - &g1 * &h2;
        if num.is_multiple_of(g2) && check(&g1, &(num / g2)) {
            return Some(true);
        }
    }
    Some(false)
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64().filter(|v| *v <= 1_000_000_000_000)?;
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(BigInt::from(i));
            if i * i != n {
                out.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    Some(out)
}

pub fn factor_k(p: &KPoly) -> Result<KFactorization> {
    factor_k_capped(p, DEFAULT_DEGREE_CAP)
}

pub fn factor_k_capped(p: &KPoly, cap: usize) -> Result<KFactorization> {
    let deg = p.degree().ok_or(Error::ZeroInput)?;
    if 2 * deg > cap {
        return Err(Error::DegreeTooLarge { degree: deg, cap: cap / 2 });
    }
    let field = p.field();
    let mut factors = Vec::new();
    for (s, m) in p.squarefree_decomposition() {
        for f in factor_squarefree_k(&s, field, cap)? {
            factors.push((f, m));
        }
    }
    factors.sort_by(|a, b| cmp_kpoly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    let out = Factorization { unit: p.lc(), factors };
    if out.product() != *p {
        return Err(Error::Internal(format!("factorization of {p} over K does not multiply back")));
    }
    Ok(out)
}

pub fn cmp_kpoly(a: &KPoly, b: &KPoly) -> Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for i in (0..=a.deg()).rev() {
            let (x, y) = (a.coeff(i), b.coeff(i));
            let c = x.a().cmp(y.a()).then_with(|| x.b().cmp(y.b()));
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    })
}

/// Trager: find `k` with `N(x) = s(x - k sqrt d) * conj(...)` squarefree,
/// factor `N` over `Q`, and pull the factors back by gcds.
fn factor_squarefree_k(s: &KPoly, field: QuadField, cap: usize) -> Result<Vec<KPoly>> {
    let s = s.monic();
    if s.deg() <= 1 {
        return Ok(vec![s]);
    }
    for k in 0..=MAX_SHIFT {
        let shift = field.int(0, -(k as i64));
        let sk = s.shift(&shift);
        let norm = (&sk * &sk.conj())
            .to_rational_poly()
            .ok_or_else(|| Error::Internal("norm polynomial is not rational".into()))?;
        if !norm.is_squarefree() {
            continue;
        }
        let fact = factor_q_capped(&norm, cap)?;
        let mut out = Vec::new();
        let mut rest = sk.clone();
        for (nf, _) in &fact.factors {
            let g = rest.gcd(&nf.to_k(field));
            if g.deg() >= 1 {
                rest = rest.exact_div(&g).expect("gcd divides");
                out.push(g.shift(&field.int(0, k as i64)).monic());
            }
        }
        if !rest.is_constant() {
            return Err(Error::Internal("norm factors did not exhaust the polynomial".into()));
        }
        return Ok(out);
    }
    Err(Error::ShiftExhausted(MAX_SHIFT))
}

/// Minimal polynomial over `Q` of the roots of a monic irreducible `pi` over K.
pub fn minpoly_over_q(pi: &KPoly) -> Result<RatPoly> {
    if pi.is_constant() {
        return Err(Error::NotIrreducible);
    }
    let pi = pi.monic();
    let out = match pi.to_rational_poly() {
        Some(r) => r,
        None => (&pi * &pi.conj()).to_rational_poly().ok_or_else(|| Error::Internal("norm not rational".into()))?,
    };
    let f = factor_q(&out)?;
    if !f.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    Ok(out)
}
