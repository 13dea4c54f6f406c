//! Places of `K = Q(sqrt d)`, normalized absolute values, projective heights
//! and growth of recurrence terms at a place.
//!
//! Finite places use `|x|_w = (p^f)^(-ord_w x)` with `ord_w` normalized so
//! that the sum of `f * ord_w x` over the places above `p` is `v_p(N(x))`.
//! With this choice the product formula needs no extra weights.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{ln_abs_enclosure, ln_enclosure, Enclosure};
use crate::polyalg::modp::is_probable_prime;
use crate::polyalg::{circle_profile, dominant_modulus, KPoly, Over};
use crate::qfield::{rat_int, QuadElem, QuadField, Rational};
use crate::recurrence::{nondegenerate_rec, rec_min_charpoly, Annihilator, LinRec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Splitting::Split => "split",
            Splitting::Inert => "inert",
            Splitting::Ramified => "ramified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePlace {
    pub field: QuadField,
    pub p: u64,
    pub splitting: Splitting,
    /// For split places, the residue of the chosen 2-adic or p-adic square
    /// root of `d`: modulo `p` for odd `p`, modulo 4 for `p = 2`.
    pub branch: Option<u64>,
    pub residue_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// `sqrt d -> +sqrt d` for embedding 1, `-sqrt d` for embedding 2.
    Real { field: QuadField, embedding: u8 },
    Finite(FinitePlace),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real { embedding, .. } => write!(f, "real embedding {embedding}"),
            Place::Finite(w) => match w.branch {
                Some(t) => write!(f, "p = {} ({}, sqrt d = {} mod {})", w.p, w.splitting, t, if w.p == 2 { 4 } else { w.p }),
                None => write!(f, "p = {} ({})", w.p, w.splitting),
            },
        }
    }
}

pub fn real_places(field: QuadField) -> Vec<Place> {
    vec![Place::Real { field, embedding: 1 }, Place::Real { field, embedding: 2 }]
}

fn legendre(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let r = BigInt::from(a).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Square root of a quadratic residue modulo an odd prime (Tonelli-Shanks).
fn sqrt_mod_prime(a: u64, p: u64) -> u64 {
    let (a, p) = (a as u128 % p as u128, p as u128);
    let pw = |mut b: u128, mut e: u128| {
        let mut r = 1u128;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    if a == 0 {
        return 0;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2u128;
    while pw(z, (p - 1) / 2) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pw(z, q);
    let mut t = pw(a, q);
    let mut r = pw(a, q.div_ceil(2));
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = tt * tt % p;
            i += 1;
        }
        let b = pw(c, 1 << (m - i - 1));
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    r as u64
}

pub fn places_above(p: u64, field: QuadField) -> Result<Vec<Place>> {
    if !is_probable_prime(&BigInt::from(p)) {
        return Err(Error::NotPrime(p));
    }
    let d = field.d();
    let mk = |splitting, branch, f| Place::Finite(FinitePlace { field, p, splitting, branch, residue_degree: f });
    let ramified = d % p as i64 == 0 || (p == 2 && d.rem_euclid(4) == 3);
    if ramified {
        return Ok(vec![mk(Splitting::Ramified, None, 1)]);
    }
    let split = if p == 2 { d.rem_euclid(8) == 1 } else { legendre(d, p) == 1 };
    if !split {
        return Ok(vec![mk(Splitting::Inert, None, 2)]);
    }
    let (t0, t1) = if p == 2 {
        (1, 3)
    } else {
        let t = sqrt_mod_prime(d.rem_euclid(p as i64) as u64, p);
        (t.min(p - t), t.max(p - t))
    };
    Ok(vec![mk(Splitting::Split, Some(t0), 1), mk(Splitting::Split, Some(t1), 1)])
}

impl FinitePlace {
    /// A root `t` of `t^2 = d` in `Z_p` on this branch, correct modulo `p^k`.
    pub fn root_mod(&self, k: u32) -> BigInt {
        let branch = self.branch.expect("split place");
        let p = BigInt::from(self.p);
        let d = BigInt::from(self.field.d());
        if self.p == 2 {
            // t known mod 2^j whenever t^2 = d mod 2^(j+1)
            let mut t = BigInt::from(branch);
            for j in 2..k.max(2) {
                let m = BigInt::one() << (j + 2);
                if !(&t * &t - &d).mod_floor(&m).is_zero() {
                    t += BigInt::one() << j;
                }
            }
            return t.mod_floor(&(BigInt::one() << k.max(2)));
        }
        let mut t = BigInt::from(branch);
        let mut j = 1u32;
        while j < k {
            j = (2 * j).min(k);
            let m = p.pow(j);
            let two_t: BigInt = &t * 2u32;
            let inv = two_t.modinv(&m).expect("2t is a unit");
            t = (&t - (&t * &t - &d) * inv).mod_floor(&m);
        }
        t
    }
}

pub fn v_p_int(n: &BigInt, p: u64) -> u64 {
    if n.is_zero() {
        return u64::MAX;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn v_p(r: &Rational, p: u64) -> i64 {
    v_p_int(r.numer(), p) as i64 - v_p_int(r.denom(), p) as i64
}

/// `ord_w(x)` for a finite place `w`.
pub fn val(x: &QuadElem, w: &FinitePlace) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if x.field() != w.field {
        return Err(Error::MixedField(w.field.d(), x.d()));
    }
    let vn = v_p(&x.norm(), w.p);
    match w.splitting {
        Splitting::Inert => Ok(vn / 2),
        Splitting::Ramified => Ok(vn),
        Splitting::Split => {
            let m = x.a().denom().lcm(x.b().denom());
            let a = (x.a() * rat_int(m.clone())).to_integer();
            let b = (x.b() * rat_int(m.clone())).to_integer();
            let n = &a * &a - &b * &b * BigInt::from(w.field.d());
            let bound = v_p_int(&n, w.p) as u32;
            let k = bound + 2;
            let t = w.root_mod(k);
            let s = (&a + &b * t).mod_floor(&BigInt::from(w.p).pow(k));
            let v = v_p_int(&s, w.p);
            if v > bound as u64 {
                return Err(Error::PrecisionExhausted(k));
            }
            Ok(v as i64 - v_p_int(&m, w.p) as i64)
        }
    }
}

/// Normalized absolute value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceAbs {
    /// `|x| = base^exponent`.
    Finite { base: BigInt, exponent: i64 },
    /// `|x|` equals the real value of this element of `K`.
    Real { value: QuadElem },
    Zero,
}

impl PlaceAbs {
    pub fn rational(&self) -> Option<Rational> {
        match self {
            PlaceAbs::Finite { base, exponent } => Some(rat_pow(base, *exponent)),
            PlaceAbs::Real { value } => value.as_rational(),
            PlaceAbs::Zero => Some(Rational::zero()),
        }
    }

    pub fn ln_enclosure(&self, bits: u32) -> Result<Enclosure> {
        match self {
            PlaceAbs::Finite { base, exponent } => Ok(ln_enclosure(&rat_int(base.clone()), bits + 64)?.scale(&rat_int(*exponent))),
            PlaceAbs::Real { value } => ln_abs_enclosure(value, bits),
            PlaceAbs::Zero => Err(Error::ZeroInput),
        }
    }
}

fn rat_pow(base: &BigInt, e: i64) -> Rational {
    let m = base.pow(e.unsigned_abs() as u32);
    if e >= 0 {
        rat_int(m)
    } else {
        Rational::new(BigInt::one(), m)
    }
}

fn embed(x: &QuadElem, embedding: u8) -> QuadElem {
    if embedding == 1 {
        x.clone()
    } else {
        x.conj()
    }
}

pub fn abs_at(x: &QuadElem, v: &Place) -> Result<PlaceAbs> {
    match v {
        Place::Real { embedding, .. } => {
            if x.is_zero() {
                return Ok(PlaceAbs::Zero);
            }
            Ok(PlaceAbs::Real { value: embed(x, *embedding).abs() })
        }
        Place::Finite(w) => {
            if x.is_zero() {
                return Ok(PlaceAbs::Zero);
            }
            let base = BigInt::from(w.p).pow(w.residue_degree);
            Ok(PlaceAbs::Finite { base, exponent: -val(x, w)? })
        }
    }
}

fn is_s_number(n: &BigInt, support: &[u64]) -> bool {
    let mut n = n.abs();
    for &p in support {
        let p = BigInt::from(p);
        while !n.is_zero() && n.is_multiple_of(&p) {
            n /= &p;
        }
    }
    n.is_one()
}

/// Nonzero `x` has trivial absolute value at every finite place not above
/// a prime in `support`.
pub fn is_s_unit(x: &QuadElem, support: &[u64]) -> bool {
    !x.is_zero()
        && is_s_number(&x.integral_denominator(), support)
        && is_s_number(&x.inv().expect("nonzero").integral_denominator(), support)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Height {
    /// Product over finite places above the support primes.
    pub finite: Rational,
    /// Product over the two real embeddings, as an element of `K`.
    pub archimedean: QuadElem,
    pub value: QuadElem,
}

impl Height {
    pub fn enclosure(&self, bits: u32) -> Result<Enclosure> {
        crate::numeric::quad_enclosure(&self.value, bits)
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `H(x) = prod_v max_i |x_i|_v` over the real embeddings and the places
/// above `support`.
pub fn height(xs: &[QuadElem], support: &[u64]) -> Result<Height> {
    let Some(first) = xs.iter().find(|x| !x.is_zero()) else {
        return Err(Error::ZeroInput);
    };
    let field = first.field();
    for x in xs {
        if x.field() != field {
            return Err(Error::MixedField(field.d(), x.d()));
        }
        if !x.is_zero() && !is_s_unit(x, support) {
            return Err(Error::SupportIncomplete(format!("{x} has prime support outside {support:?}")));
        }
    }
    let mut finite = Rational::one();
    for &p in support {
        for v in places_above(p, field)? {
            let mut best = Rational::zero();
            for x in xs {
                let a = abs_at(x, &v)?.rational().expect("finite places are rational");
                if a > best {
                    best = a;
                }
            }
            finite *= best;
        }
    }
    let mut archimedean = field.one();
    for v in real_places(field) {
        let mut best = field.zero();
        for x in xs {
            if let PlaceAbs::Real { value } = abs_at(x, &v)? {
                if value.cmp_value(&best).is_gt() {
                    best = value;
                }
            }
        }
        archimedean = &archimedean * &best;
    }
    let value = archimedean.scale(&finite);
    Ok(Height { finite, archimedean, value })
}

/// Size of the dominant root of the minimal polynomial at a place.
#[derive(Clone, Debug, PartialEq)]
pub enum DominantRoot {
    /// Smallest root valuation `mu`; `|alpha_1|_v = base^(-mu)`.
    Finite { min_ord: Rational, base: BigInt },
    /// `lo <= |alpha_1| <= hi` in the chosen embedding.
    Archimedean { lo: Rational, hi: Rational },
}

impl DominantRoot {
    pub fn ln_upper(&self, bits: u32) -> Result<Enclosure> {
        match self {
            DominantRoot::Finite { min_ord, base } => Ok(ln_enclosure(&rat_int(base.clone()), bits + 64)?.scale(&-min_ord)),
            DominantRoot::Archimedean { hi, .. } => ln_enclosure(hi, bits),
        }
    }
}

impl fmt::Display for DominantRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DominantRoot::Finite { min_ord, base } => write!(f, "|alpha_1|_v = {}^({})", base, -min_ord),
            DominantRoot::Archimedean { lo, hi } => {
                write!(f, "{:.12} <= |alpha_1| <= {:.12}", crate::qfield::rat_to_f64(lo), crate::qfield::rat_to_f64(hi))
            }
        }
    }
}

/// Smallest valuation among the roots of `p`, from its Newton polygon.
pub fn newton_min_root_ord(p: &KPoly, w: &FinitePlace) -> Result<Rational> {
    let k = p.deg();
    if k == 0 {
        return Err(Error::Precondition("constant polynomial has no roots".into()));
    }
    let vk = val(&p.coeff(k), w)?;
    let mut best: Option<Rational> = None;
    for i in 0..k {
        let c = p.coeff(i);
        if c.is_zero() {
            continue;
        }
        let s = Rational::new(BigInt::from(val(&c, w)? - vk), BigInt::from((k - i) as u64));
        if best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
    }
    best.ok_or_else(|| Error::Precondition("zero is the only root".into()))
}

fn min_poly_of(r: &LinRec) -> Result<KPoly> {
    match rec_min_charpoly(r)? {
        Annihilator::Poly(p) if p.deg() > 0 => Ok(p),
        _ => Err(Error::HypothesisViolated("the sequence has no characteristic roots".into())),
    }
}

/// `|alpha_1|_v` for the minimal polynomial of `r`; errors unless it is `> 1`.
pub fn dominant_root(r: &LinRec, v: &Place, bisect_iters: u32) -> Result<DominantRoot> {
    let p = min_poly_of(r)?;
    match v {
        Place::Finite(w) => {
            let mu = newton_min_root_ord(&p, w)?;
            if !mu.is_negative() {
                return Err(Error::HypothesisViolated(format!(
                    "every root has |alpha|_v <= 1 at {v} (smallest root valuation {mu})"
                )));
            }
            Ok(DominantRoot::Finite { min_ord: mu, base: BigInt::from(w.p).pow(w.residue_degree) })
        }
        Place::Real { embedding, .. } => {
            let q = if *embedding == 1 { p } else { p.conj() };
            if circle_profile(&q)?.outside == 0 {
                return Err(Error::HypothesisViolated(format!("no root of absolute value > 1 at {v}")));
            }
            let (lo, hi) = dominant_modulus(&q, bisect_iters)?;
            Ok(DominantRoot::Archimedean { lo, hi })
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthPoint {
    pub n: i64,
    /// `log |A_n|_v`, absent when `A_n = 0`.
    pub log_abs: Option<Enclosure>,
    /// Exact `ord_w(A_n)` at finite places.
    pub ord: Option<i64>,
}

pub fn growth_profile(r: &LinRec, v: &Place, n0: i64, n1: i64, bits: u32) -> Result<Vec<GrowthPoint>> {
    let mut out = Vec::new();
    for n in n0..=n1 {
        let x = r.term(n);
        if x.is_zero() {
            out.push(GrowthPoint { n, log_abs: None, ord: None });
            continue;
        }
        let abs = abs_at(&x, v)?;
        let ord = match &abs {
            PlaceAbs::Finite { exponent, .. } => Some(-exponent),
            _ => None,
        };
        out.push(GrowthPoint { n, log_abs: Some(abs.ln_enclosure(bits)?), ord });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthRow {
    pub point: GrowthPoint,
    /// `n (1 - eps) log |alpha_1|_v`.
    pub bound: Enclosure,
    pub checked: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub dominant: DominantRoot,
    pub tail_start: i64,
    pub rows: Vec<GrowthRow>,
    pub pass: bool,
}

/// Checks `|A_n|_v >= |alpha_1|_v^(n (1 - eps))` on the last 80% of
/// `n0..=n1`. Finite places are decided exactly; at real places the lower
/// end of `log |A_n|` must clear the upper end of the bound.
pub fn growth_check(r: &LinRec, v: &Place, eps: &Rational, n0: i64, n1: i64, bits: u32) -> Result<GrowthReport> {
    if !eps.is_positive() || *eps >= Rational::one() {
        return Err(Error::Precondition("eps must lie in (0, 1)".into()));
    }
    if n1 < n0 {
        return Err(Error::Precondition("empty range".into()));
    }
    if !nondegenerate_rec(r, Over::BaseK)?.0 {
        return Err(Error::HypothesisViolated("the sequence is degenerate".into()));
    }
    let dominant = dominant_root(r, v, bits.max(64))?;
    let ln_alpha = dominant.ln_upper(bits)?;
    let tail_start = n0 + (n1 - n0 + 1) / 5;
    let factor = Rational::one() - eps;
    let mut rows = Vec::new();
    let mut pass = true;
    for point in growth_profile(r, v, n0, n1, bits)? {
        let n = point.n;
        let weight = &factor * rat_int(n);
        let bound = ln_alpha.scale(&weight);
        let ok = match (&dominant, &point.ord, &point.log_abs) {
            (_, _, None) => false,
            (DominantRoot::Finite { min_ord, .. }, Some(ord), _) => rat_int(*ord) <= min_ord * &weight,
            (_, _, Some(l)) => l.lo >= bound.hi,
        };
        let checked = n >= tail_start;
        if checked && !ok {
            pass = false;
        }
        rows.push(GrowthRow { point, bound, checked, ok });
    }
    Ok(GrowthReport { dominant, tail_start, rows, pass })
}

/// Product of `|x|_v` over both embeddings and every place above `support`.
pub fn product_formula(x: &QuadElem, support: &[u64], bits: u32) -> Result<(Rational, Enclosure)> {
    let mut finite = Rational::one();
    for &p in support {
        for v in places_above(p, x.field())? {
            finite *= abs_at(x, &v)?.rational().expect("finite");
        }
    }
    let mut arch = Enclosure::exact(Rational::one());
    for v in real_places(x.field()) {
        if let PlaceAbs::Real { value } = abs_at(x, &v)? {
            arch = arch.mul(&crate::numeric::abs_enclosure(&value, bits)?);
        }
    }
    Ok((finite.clone(), arch.scale(&finite)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::rat;

    fn k(d: i64) -> QuadField {
        QuadField::new(d).unwrap()
    }

    fn fin(v: &Place) -> &FinitePlace {
        match v {
            Place::Finite(w) => w,
            _ => panic!("finite place expected"),
        }
    }

    #[test]
    fn splitting_types() {
        let ps = places_above(7, k(2)).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!((fin(&ps[0]).branch, fin(&ps[1]).branch), (Some(3), Some(4)));
        assert_eq!(fin(&places_above(5, k(2)).unwrap()[0]).splitting, Splitting::Inert);
        assert_eq!(fin(&places_above(2, k(2)).unwrap()[0]).splitting, Splitting::Ramified);
        assert_eq!(fin(&places_above(2, k(3)).unwrap()[0]).splitting, Splitting::Ramified);
        assert_eq!(fin(&places_above(2, k(5)).unwrap()[0]).splitting, Splitting::Inert);
        assert_eq!(places_above(2, k(17)).unwrap().len(), 2);
        assert_eq!(places_above(9, k(2)), Err(Error::NotPrime(9)));
    }

    #[test]
    fn hensel_roots() {
        for (p, d) in [(7u64, 2i64), (2, 17), (2, 41), (23, 2), (13, 3)] {
            for v in places_above(p, k(d)).unwrap() {
                let w = fin(&v).clone();
                for kk in [1u32, 3, 10, 25] {
                    let t = w.root_mod(kk);
                    let m = BigInt::from(p).pow(kk);
                    assert!((&t * &t - BigInt::from(d)).mod_floor(&m).is_zero(), "p={p} d={d} k={kk}");
                }
            }
        }
    }

    #[test]
    fn valuations() {
        let f = k(2);
        let ps = places_above(7, f).unwrap();
        let x = f.int(3, 1);
        assert_eq!(val(&x, fin(&ps[1])).unwrap(), 1);
        assert_eq!(val(&x, fin(&ps[0])).unwrap(), 0);
        let five = places_above(5, f).unwrap();
        assert_eq!(abs_at(&f.int(5, 0), &five[0]).unwrap().rational(), Some(rat(1, 25)));
        let two = places_above(2, f).unwrap();
        assert_eq!(abs_at(&f.int(0, 1), &two[0]).unwrap().rational(), Some(rat(1, 2)));
        for v in &ps {
            assert_eq!(abs_at(&f.int(7, 0), v).unwrap().rational(), Some(rat(1, 7)));
            assert_eq!(abs_at(&f.int(1, 1), v).unwrap().rational(), Some(rat(1, 1)));
        }
    }

    #[test]
    fn heights() {
        let f = k(2);
        assert_eq!(height(&[f.one(), f.int(1, 1)], &[]).unwrap().value, f.int(1, 1));
        assert_eq!(height(&[f.int(2, 0), f.int(3, 0)], &[2, 3]).unwrap().value, f.int(9, 0));
        let u = f.int(1, 1);
        assert_eq!(height(&[u.clone(), u], &[]).unwrap().value, f.one());
        assert!(matches!(height(&[f.int(2, 0), f.int(3, 0)], &[2]), Err(Error::SupportIncomplete(_))));
        assert!(!is_s_unit(&f.elem(rat(11, 7), rat(6, 7)), &[]));
        assert!(is_s_unit(&f.elem(rat(11, 7), rat(6, 7)), &[7]));
    }

    #[test]
    fn product_formula_examples() {
        let f = k(2);
        for (x, s) in [(f.int(3, 1), vec![7u64]), (f.elem(rat(11, 7), rat(-6, 7)), vec![7]), (f.int(2, 0), vec![2])] {
            let (_, e) = product_formula(&x, &s, 128).unwrap();
            assert!(e.contains(&Rational::one()), "{x}");
        }
    }

    #[test]
    fn growth_examples() {
        let f = k(17);
        let r = LinRec::geometric(&f.elem(rat(1, 2), rat(0, 1)), &f.one())
            .unwrap()
            .add(&LinRec::geometric(&f.int(3, 0), &f.one()).unwrap())
            .unwrap();
        let v = places_above(2, f).unwrap()[0].clone();
        let rep = growth_check(&r, &v, &rat(1, 10), 10, 200, 64).unwrap();
        assert!(rep.pass);
        for row in &rep.rows {
            assert_eq!(row.point.ord, Some(-row.point.n));
        }
        let g = k(2);
        let fib = LinRec::rational(g, &[rat(1, 1), rat(1, 1)], &[rat(0, 1), rat(1, 1)]).unwrap();
        let real = real_places(g)[0].clone();
        assert!(growth_check(&fib, &real, &rat(1, 20), 20, 300, 64).unwrap().pass);
        let unit = LinRec::geometric(&g.int(1, 1), &g.one()).unwrap();
        let tr = unit.add(&unit.conj_rec()).unwrap();
        let seven = places_above(7, g).unwrap()[0].clone();
        assert!(matches!(growth_check(&tr, &seven, &rat(1, 10), 20, 200, 64), Err(Error::HypothesisViolated(_))));
    }
}
