//! Polynomials over a prime field `F_p` with a big prime `p`, enough for
//! distinct-degree and equal-degree (Cantor-Zassenhaus) factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn is_probable_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    const SMALL: [u32; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];
    for &p in &SMALL {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if n.is_multiple_of(&p) {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn next_prime(n: &BigInt) -> BigInt {
    let mut c = n.clone();
    if c <= BigInt::from(2) {
        return BigInt::from(2);
    }
    if c.is_even() {
        c += 1;
    }
    while !is_probable_prime(&c) {
        c += 2;
    }
    c
}

/// Deterministic splitmix64 stream used for random splitting polynomials.
pub struct SplitMix(u64);

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        SplitMix(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, m: &BigInt) -> BigInt {
        let words = (m.bits() / 64 + 2) as usize;
        let mut acc = BigInt::zero();
        for _ in 0..words {
            acc = (acc << 64) + BigInt::from(self.next_u64());
        }
        acc % m
    }
}

pub struct Fp {
    pub p: BigInt,
}

impl Fp {
    pub fn new(p: BigInt) -> Self {
        Fp { p }
    }

    pub fn reduce(&self, x: &BigInt) -> BigInt {
        x.mod_floor(&self.p)
    }

    pub fn inv(&self, x: &BigInt) -> BigInt {
        let e = &self.p - 2;
        self.reduce(x).modpow(&e, &self.p)
    }

    pub fn trim(&self, mut a: ZPoly) -> ZPoly {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn from_ints(&self, a: &[BigInt]) -> ZPoly {
        self.trim(a.iter().map(|c| self.reduce(c)).collect())
    }

    pub fn add(&self, a: &ZPoly, b: &ZPoly) -> ZPoly {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        let v = (0..n)
            .map(|i| self.reduce(&(a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))))
            .collect();
        self.trim(v)
    }

    pub fn sub(&self, a: &ZPoly, b: &ZPoly) -> ZPoly {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        let v = (0..n)
            .map(|i| self.reduce(&(a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))))
            .collect();
        self.trim(v)
    }

    pub fn mul(&self, a: &ZPoly, b: &ZPoly) -> ZPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.trim(out.iter().map(|c| self.reduce(c)).collect())
    }

    pub fn divrem(&self, a: &ZPoly, b: &ZPoly) -> (ZPoly, ZPoly) {
        let db = b.len() - 1;
        let inv = self.inv(b.last().unwrap());
        let mut r = a.clone();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.reduce(&(&r[i + db] * &inv));
            if !c.is_zero() {
                for (j, bc) in b.iter().enumerate() {
                    r[i + j] = self.reduce(&(&r[i + j] - &c * bc));
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &ZPoly, b: &ZPoly) -> ZPoly {
        self.divrem(a, b).1
    }

    pub fn monic(&self, a: &ZPoly) -> ZPoly {
        match a.last() {
            None => Vec::new(),
            Some(l) => {
                let inv = self.inv(l);
                a.iter().map(|c| self.reduce(&(c * &inv))).collect()
            }
        }
    }

    pub fn gcd(&self, a: &ZPoly, b: &ZPoly) -> ZPoly {
        let mut a = self.monic(a);
        let mut b = self.monic(b);
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = self.monic(&r);
        }
        a
    }

    pub fn derivative(&self, a: &ZPoly) -> ZPoly {
        let v = a.iter().enumerate().skip(1).map(|(i, c)| self.reduce(&(c * BigInt::from(i)))).collect();
        self.trim(v)
    }

    pub fn powmod(&self, base: &ZPoly, e: &BigInt, m: &ZPoly) -> ZPoly {
        let mut result = self.rem(&vec![BigInt::one()], m);
        let b = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            result = self.rem(&self.mul(&result, &result), m);
            if e.bit(i) {
                result = self.rem(&self.mul(&result, &b), m);
            }
        }
        result
    }

    /// Distinct-degree split of a monic squarefree polynomial.
    pub fn distinct_degree(&self, f: &ZPoly) -> Vec<(ZPoly, usize)> {
        let mut out = Vec::new();
        let mut rest = f.clone();
        let x: ZPoly = vec![BigInt::zero(), BigInt::one()];
        let mut h = x.clone();
        let mut i = 1;
        while rest.len() - 1 >= 2 * i {
            h = self.powmod(&h, &self.p, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if g.len() > 1 {
                rest = self.divrem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, i));
            }
            i += 1;
        }
        if rest.len() > 1 {
            let d = rest.len() - 1;
            out.push((rest, d));
        }
        out
    }

    /// Splits a monic product of distinct degree-`d` irreducibles.
    pub fn equal_degree(&self, g: &ZPoly, d: usize, rng: &mut SplitMix) -> Vec<ZPoly> {
        let n = g.len() - 1;
        if n == d {
            return vec![g.clone()];
        }
        let e = (self.p.pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: ZPoly = self.trim((0..n).map(|_| rng.below(&self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, &e, g), &vec![BigInt::one()]);
            let u = self.gcd(&b, g);
            if u.len() > 1 && u.len() < g.len() {
                let v = self.divrem(g, &u).0;
                let mut out = self.equal_degree(&u, d, rng);
                out.extend(self.equal_degree(&self.monic(&v), d, rng));
                return out;
            }
        }
    }

    pub fn factor_squarefree(&self, f: &ZPoly, seed: u64) -> Vec<ZPoly> {
        let mut rng = SplitMix::new(seed);
        let f = self.monic(f);
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(&f) {
            out.extend(self.equal_degree(&g, d, &mut rng));
        }
        out
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn lift(&self, a: &ZPoly) -> Vec<BigInt> {
        let half = &self.p >> 1;
        a.iter()
            .map(|c| {
                let c = self.reduce(c);
                if c > half {
                    c - &self.p
                } else {
                    c
                }
            })
            .collect()
    }
}

pub fn is_zero_mod(a: &BigInt, p: &BigInt) -> bool {
    a.mod_floor(p).is_zero()
}

pub fn norm2_ceil(cs: &[BigInt]) -> BigInt {
    let s: BigInt = cs.iter().map(|c| c * c).sum();
    s.sqrt() + 1
}

pub fn abs_max(cs: &[BigInt]) -> BigInt {
    cs.iter().map(|c| c.abs()).max().unwrap_or_default()
}
