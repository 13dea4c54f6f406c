//! Polynomial algebra over `Q` and `K = Q(sqrt d)`.

pub mod circle;
pub mod cyclotomic;
pub mod factor;
pub mod modp;
pub mod poly;

pub use circle::{circle_profile, dominant_modulus, CircleProfile};
pub use cyclotomic::{cyclotomic, euler_phi, is_root_of_unity, nondegeneracy, ratio_poly, Over};
pub use factor::{factor_k, factor_q, minpoly_over_q, KFactorization, QFactorization};
pub use poly::{KPoly, Poly, RatPoly};

use num_traits::{One, Signed};

use crate::error::{Error, Result};

pub fn conj_poly(p: &KPoly) -> KPoly {
    p.conj()
}

/// `(P^Q, P^K)`: the conjugation-fixed irreducible factors and the rest.
/// The leading unit goes to `P^Q` when rational, else to `P^K`.
pub fn decompose_q_k(p: &KPoly) -> Result<(KPoly, KPoly)> {
    let f = p.field();
    let fact = factor_k(p)?;
    let mut pq = KPoly::one(f);
    let mut pk = KPoly::one(f);
    for (pi, m) in &fact.factors {
        if pi.conj() == *pi {
            pq = &pq * &pi.pow(*m);
        } else {
            pk = &pk * &pi.pow(*m);
        }
    }
    if fact.unit.is_rational() {
        Ok((pq.scale(&fact.unit), pk))
    } else {
        Ok((pq, pk.scale(&fact.unit)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntegralityFlags {
    pub is_alg_integer: bool,
    pub is_recip_alg_integer: bool,
    pub is_unit: bool,
}

pub fn root_integrality_flags(q: &RatPoly) -> Result<IntegralityFlags> {
    if q.is_constant() || !factor_q(q)?.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    Ok(integrality_of_irreducible(q))
}

pub(crate) fn integrality_of_irreducible(q: &RatPoly) -> IntegralityFlags {
    let c = q.primitive_part().1;
    let lead = c.last().unwrap().abs().is_one();
    let trail = c[0].abs().is_one();
    IntegralityFlags { is_alg_integer: lead, is_recip_alg_integer: trail, is_unit: lead && trail }
}

pub fn is_unital(p: &KPoly) -> Result<bool> {
    for (pi, _) in factor_k(p)?.factors {
        if !integrality_of_irreducible(&minpoly_over_q(&pi)?).is_unit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Unital test for a rational polynomial, factor by factor over `Q`.
pub fn is_unital_q(p: &RatPoly) -> Result<bool> {
    Ok(factor_q(p)?.factors.iter().all(|(f, _)| integrality_of_irreducible(f).is_unit))
}

/// Every irreducible factor `pi` has `pi != pi'`, with one of `pi`, `pi'`
/// having all roots inside the unit circle and the other all roots outside.
pub fn is_conjugate_pisot(p: &KPoly) -> Result<bool> {
    for (pi, _) in factor_k(p)?.factors {
        if !pisot_factor(&pi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn pisot_factor(pi: &KPoly) -> Result<bool> {
    let c = pi.conj();
    if c == *pi {
        return Ok(false);
    }
    let a = circle_profile(pi)?;
    let b = circle_profile(&c)?;
    let n = pi.deg();
    Ok((a.inside == n && b.outside == n) || (a.outside == n && b.inside == n))
}

pub fn is_unital_pisot(p: &KPoly) -> Result<bool> {
    Ok(is_unital(p)? && is_conjugate_pisot(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::QuadField;

    fn k2() -> QuadField {
        QuadField::new(2).unwrap()
    }

    #[test]
    fn decomposition() {
        let k = k2();
        let p = &RatPoly::ints(&[-2, 1]).to_k(k) * &RatPoly::ints(&[-1, -2, 1]).to_k(k);
        let (pq, pk) = decompose_q_k(&p).unwrap();
        assert_eq!(pq, RatPoly::ints(&[-2, 1]).to_k(k));
        assert_eq!(pk, RatPoly::ints(&[-1, -2, 1]).to_k(k));
        let (pq, pk) = decompose_q_k(&KPoly::linear(&k.int(1, 1))).unwrap();
        assert_eq!(pq, KPoly::one(k));
        assert_eq!(pk, KPoly::linear(&k.int(1, 1)));
    }

    #[test]
    fn flags() {
        let f = |cs: &[i64]| root_integrality_flags(&RatPoly::ints(cs)).unwrap();
        assert_eq!(f(&[-1, -2, 1]), IntegralityFlags { is_alg_integer: true, is_recip_alg_integer: true, is_unit: true });
        assert_eq!(f(&[7, -6, 1]), IntegralityFlags { is_alg_integer: true, is_recip_alg_integer: false, is_unit: false });
        assert_eq!(f(&[-1, 2]), IntegralityFlags { is_alg_integer: false, is_recip_alg_integer: true, is_unit: false });
    }

    #[test]
    fn unital_and_pisot() {
        let k = k2();
        let u = RatPoly::ints(&[-1, -2, 1]).to_k(k);
        assert!(is_unital(&u).unwrap());
        assert!(!is_unital(&KPoly::linear(&k.int(3, 1))).unwrap());
        assert!(is_unital(&RatPoly::ints(&[-1, 1]).to_k(k)).unwrap());
        assert!(is_conjugate_pisot(&KPoly::linear(&k.int(1, 1))).unwrap());
        assert!(is_conjugate_pisot(&u).unwrap());
        assert!(!is_conjugate_pisot(&KPoly::linear(&k.int(3, 1))).unwrap());
        assert!(is_unital_pisot(&u).unwrap());
        assert!(!is_unital_pisot(&RatPoly::ints(&[1, 1]).to_k(k)).unwrap());
        assert!(!is_unital_pisot(&KPoly::linear(&k.int(3, 1))).unwrap());
    }
}
