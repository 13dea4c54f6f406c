//! Cyclotomic polynomials, root-of-unity detection and root-ratio tests.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;

use super::factor::{factor_k, factor_q};
use super::modp::{is_zero_mod, next_prime, Fp, ZPoly};
use super::poly::{KPoly, Poly, RatPoly};
use crate::error::{Error, Result};
use crate::qfield::{rat_int, Rational};
use crate::scalar::Scalar;

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

fn mobius(n: u64) -> i32 {
    let mut m = n;
    let mut k = 0;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if m > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Phi_n` from the Mobius product of `x^d - 1`.
pub fn cyclotomic(n: u64) -> RatPoly {
    let mut num = RatPoly::ints(&[1]);
    let mut den = RatPoly::ints(&[1]);
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let mut cs = vec![0i64; d as usize + 1];
        cs[0] = -1;
        cs[d as usize] = 1;
        let f = RatPoly::ints(&cs);
        match mobius(n / d) {
            1 => num = &num * &f,
            -1 => den = &den * &f,
            _ => {}
        }
    }
    num.exact_div(&den).expect("Mobius product is a polynomial")
}

/// All `n` with `phi(n) = m`; uses `phi(n) >= sqrt(n/2)`.
pub fn orders_with_phi(m: u64) -> Vec<u64> {
    (1..=2 * m * m.max(1)).filter(|&n| euler_phi(n) == m).collect()
}

fn phi_table() -> &'static BTreeMap<u64, Vec<u64>> {
    static TABLE: OnceLock<BTreeMap<u64, Vec<u64>>> = OnceLock::new();
    TABLE.get_or_init(|| (1..=24).map(|m| (m, orders_with_phi(m))).collect())
}

pub fn orders_for_degree(m: u64) -> Vec<u64> {
    phi_table().get(&m).cloned().unwrap_or_else(|| orders_with_phi(m))
}

/// All `n > 1` with `phi(n) <= bound`, ascending.
pub fn orders_up_to(bound: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (1..=bound).flat_map(orders_for_degree).filter(|&n| n > 1).collect();
    v.sort_unstable();
    v
}

/// `(true, n)` when the irreducible `q` is `Phi_n`.
pub fn is_root_of_unity(q: &RatPoly) -> Result<(bool, Option<u64>)> {
    if q.is_constant() || !factor_q(q)?.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let m = q.monic();
    for n in orders_for_degree(m.deg() as u64) {
        if cyclotomic(n) == m {
            return Ok((true, Some(n)));
        }
    }
    Ok((false, None))
}

/// `Res_y(q(y), p(x y))`: its roots include every ratio `alpha/beta` with
/// `p(alpha) = 0` and `q(beta) = 0`.
pub fn ratio_poly<T: Scalar>(p: &Poly<T>, q: &Poly<T>) -> Result<Poly<T>> {
    if q.is_zero() || q.coeff(0).is_nil() {
        return Err(Error::ZeroRootInDenominator);
    }
    let f = p.field();
    let bound = p.deg() * q.deg();
    let xs: Vec<Rational> = (1..=bound as i64 + 1).map(rat_int).collect();
    let ys: Vec<T> = xs
        .iter()
        .map(|x| {
            let scaled = p.scale_arg(&T::from_rational(f, x.clone()));
            q.resultant(&scaled)
        })
        .collect();
    Ok(Poly::interpolate(f, &xs, &ys))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Over {
    BaseK,
    Q,
}

/// Orders `n > 1` such that some ratio of roots of `a` and `b` is a primitive
/// `n`-th root of unity; `same` drops the trivial ratio `alpha/alpha`.
fn ratio_witnesses<T: Scalar>(a: &Poly<T>, b: &Poly<T>, same: bool, degree_factor: u64) -> Result<Vec<u64>> {
    let f = a.field();
    let mut r = ratio_poly(a, b)?;
    if same {
        let lin = Poly::linear(&T::one_in(f));
        for _ in 0..a.deg() {
            r = r.exact_div(&lin).ok_or_else(|| Error::Internal("ratio polynomial lost its unit roots".into()))?;
        }
    }
    if r.is_constant() {
        return Ok(Vec::new());
    }
    let screen = ModScreen::new(&r);
    let mut out = Vec::new();
    for n in orders_up_to(r.deg() as u64 * degree_factor) {
        let phi_q = cyclotomic_cached(n);
        if !screen.may_share_factor(&phi_q) {
            continue;
        }
        let phi = phi_q.map_field(f, |c| T::from_rational(f, c.clone()));
        if !r.gcd(&phi).is_constant() {
            out.push(n);
        }
    }
    Ok(out)
}

/// A rational shadow of `r` (itself, or `r` times its conjugate) reduced
/// mod a prime dividing neither end coefficient. A common factor of the
/// shadow and a monic integer polynomial survives the reduction.
struct ModScreen {
    fp: Option<(Fp, ZPoly)>,
}

impl ModScreen {
    fn new<T: Scalar>(r: &Poly<T>) -> ModScreen {
        let shadow = r.to_rational_poly().or_else(|| (r * &r.conj()).to_rational_poly());
        let Some(shadow) = shadow else {
            return ModScreen { fp: None };
        };
        let ints = strip_zero_root(&shadow).primitive_part().1;
        let mut p = BigInt::from(1u64 << 40);
        for _ in 0..3 {
            p = next_prime(&(&p + 1));
            if ints.is_empty() || is_zero_mod(&ints[0], &p) || is_zero_mod(ints.last().unwrap(), &p) {
                continue;
            }
            let fp = Fp::new(p.clone());
            let red = fp.from_ints(&ints);
            return ModScreen { fp: Some((fp, red)) };
        }
        ModScreen { fp: None }
    }

    fn may_share_factor(&self, monic: &RatPoly) -> bool {
        let Some((fp, red)) = &self.fp else {
            return true;
        };
        let m = fp.from_ints(&monic.primitive_part().1);
        fp.gcd(red, &m).len() > 1
    }
}

fn cyclotomic_cached(n: u64) -> RatPoly {
    static CACHE: OnceLock<Mutex<BTreeMap<u64, RatPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return p.clone();
    }
    let p = cyclotomic(n);
    cache.lock().expect("cache lock").insert(n, p.clone());
    p
}

/// Non-degeneracy of the roots of `p` (over K), or of the roots of `p` and
/// their Galois conjugates (over Q). Returns the offending orders.
pub fn nondegeneracy(p: &KPoly, over: Over) -> Result<(bool, Vec<u64>)> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut orders = Vec::new();
    match over {
        Over::BaseK => {
            let s = strip_zero_root(&p.squarefree_part());
            let fs: Vec<KPoly> = factor_k(&s)?.factors.into_iter().map(|x| x.0).collect();
            for i in 0..fs.len() {
                for j in i..fs.len() {
                    orders.extend(ratio_witnesses(&fs[i], &fs[j], i == j, 2)?);
                }
            }
        }
        Over::Q => {
            let t = (p * &p.conj())
                .to_rational_poly()
                .ok_or_else(|| Error::Internal("p times its conjugate is not rational".into()))?;
            let s = strip_zero_root(&t.squarefree_part());
            let fs: Vec<RatPoly> = factor_q(&s)?.factors.into_iter().map(|x| x.0).collect();
            for i in 0..fs.len() {
                for j in i..fs.len() {
                    orders.extend(ratio_witnesses(&fs[i], &fs[j], i == j, 1)?);
                }
            }
        }
    }
    orders.sort_unstable();
    orders.dedup();
    Ok((orders.is_empty(), orders))
}

fn strip_zero_root<T: Scalar>(p: &Poly<T>) -> Poly<T> {
    let mut p = p.clone();
    while p.deg() > 0 && p.coeff(0).is_nil() {
        p = p.exact_div(&Poly::x(p.field())).expect("x divides");
    }
    p
}

pub fn lcm_all(xs: &[u64]) -> u64 {
    xs.iter().fold(1, |a, &b| a.lcm(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::QuadField;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), RatPoly::ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), RatPoly::ints(&[1, 1]));
        assert_eq!(cyclotomic(6), RatPoly::ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), RatPoly::ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_preimages() {
        assert_eq!(orders_with_phi(2), vec![3, 4, 6]);
        assert_eq!(orders_with_phi(4), vec![5, 8, 10, 12]);
        assert!(orders_with_phi(14).is_empty());
    }

    #[test]
    fn unity_detection() {
        assert_eq!(is_root_of_unity(&RatPoly::ints(&[1, 1])).unwrap(), (true, Some(2)));
        assert_eq!(is_root_of_unity(&RatPoly::ints(&[1, 1, 1])).unwrap(), (true, Some(3)));
        assert_eq!(is_root_of_unity(&RatPoly::ints(&[-1, -2, 1])).unwrap(), (false, None));
        assert_eq!(is_root_of_unity(&RatPoly::ints(&[-1, 0, 1])), Err(Error::NotIrreducible));
    }

    #[test]
    fn ratio_examples() {
        let p = RatPoly::ints(&[-2, 0, 1]);
        let r = ratio_poly(&p, &p).unwrap();
        assert!(r.eval(&rat_int(-1)).is_nil());
        assert!(r.eval(&rat_int(1)).is_nil());
        let l = RatPoly::ints(&[-2, 1]);
        assert_eq!(ratio_poly(&l, &l).unwrap().monic(), RatPoly::ints(&[-1, 1]));
    }

    #[test]
    fn degenerate_over_q_only() {
        let k = QuadField::new(2).unwrap();
        let p = &KPoly::linear(&k.int(0, 1)) * &KPoly::linear(&k.int(1, 1));
        assert_eq!(nondegeneracy(&p, Over::BaseK).unwrap(), (true, vec![]));
        assert_eq!(nondegeneracy(&p, Over::Q).unwrap(), (false, vec![2]));
        let u = RatPoly::ints(&[-1, -2, 1]).to_k(k);
        assert_eq!(nondegeneracy(&u, Over::BaseK).unwrap(), (true, vec![]));
        assert_eq!(nondegeneracy(&u, Over::Q).unwrap(), (true, vec![]));
    }
}
