//! Dense polynomials over `Z/pZ` for word-sized primes `p < 2^31`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PolyP {
    pub c: Vec<u64>,
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn reduce_bigint(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

impl PolyP {
    pub fn new(mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { c }
    }

    pub fn from_bigints(coeffs: &[BigInt], p: u64) -> Self {
        Self::new(coeffs.iter().map(|x| reduce_bigint(x, p)).collect())
    }

    pub fn one() -> Self {
        Self { c: vec![1] }
    }

    pub fn x() -> Self {
        Self { c: vec![0, 1] }
    }

    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn add(&self, o: &Self, p: u64) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            (0..n)
                .map(|i| (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % p)
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self, p: u64) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            (0..n)
                .map(|i| (self.c.get(i).unwrap_or(&0) + p - o.c.get(i).unwrap_or(&0)) % p)
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self, p: u64) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(vec![]);
        }
        let mut v = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = (v[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, s: u64, p: u64) -> Self {
        Self::new(self.c.iter().map(|&a| mul_mod(a, s, p)).collect())
    }

    pub fn monic(&self, p: u64) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&lc) => self.scale(inv_mod(lc, p), p),
        }
    }

    pub fn div_rem(&self, d: &Self, p: u64) -> (Self, Self) {
        assert!(!d.is_zero());
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (Self::new(vec![]), self.clone());
        }
        let inv = inv_mod(d.c[dd], p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + dd], inv, p);
            if c != 0 {
                for (j, &dc) in d.c.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - mul_mod(c, dc, p)) % p;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self, p: u64) -> Self {
        self.div_rem(d, p).1
    }

    pub fn derivative(&self, p: u64) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mul_mod(a, i as u64 % p, p))
                .collect(),
        )
    }

    pub fn gcd(&self, o: &Self, p: u64) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    /// Returns `(s, t)` with `s*self + t*o = gcd` (monic).
    pub fn ext_gcd(&self, o: &Self, p: u64) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(), Self::new(vec![]));
        let (mut t0, mut t1) = (Self::new(vec![]), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1, p);
            let s2 = s0.sub(&q.mul(&s1, p), p);
            let t2 = t0.sub(&q.mul(&t1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let inv = inv_mod(*r0.c.last().unwrap(), p);
        (r0.scale(inv, p), s0.scale(inv, p), t0.scale(inv, p))
    }

    /// `base^e mod m` with a big exponent.
    pub fn pow_mod_poly(base: &Self, e: &BigUint, m: &Self, p: u64) -> Self {
        let mut acc = Self::one().rem(m, p);
        let b = base.rem(m, p);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc, p).rem(m, p);
            if e.bit(i) {
                acc = acc.mul(&b, p).rem(m, p);
            }
        }
        acc
    }
}

/// Factors a monic squarefree polynomial over `F_p` (odd `p`) into monic
/// irreducibles: distinct-degree split, then Cantor–Zassenhaus.
pub(crate) fn factor_squarefree_modp<R: Rng>(f: &PolyP, p: u64, rng: &mut R) -> Vec<PolyP> {
    let mut out = Vec::new();
    let mut f = f.monic(p);
    let mut h = PolyP::x();
    let mut d = 1usize;
    let pb = BigUint::from(p);
    while f.deg() >= 2 * d as isize {
        h = PolyP::pow_mod_poly(&h, &pb, &f, p);
        let g = h.sub(&PolyP::x(), p).gcd(&f, p);
        if !g.is_one() {
            equal_degree_split(&g, d, p, rng, &mut out);
            f = f.div_rem(&g, p).0;
            h = h.rem(&f, p);
        }
        d += 1;
    }
    if f.deg() > 0 {
        out.push(f);
    }
    out
}

fn equal_degree_split<R: Rng>(g: &PolyP, d: usize, p: u64, rng: &mut R, out: &mut Vec<PolyP>) {
    if g.deg() as usize == d {
        out.push(g.clone());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let n = g.deg() as usize;
        let a = PolyP::new((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() < 1 {
            continue;
        }
        let b = PolyP::pow_mod_poly(&a, &e, g, p).sub(&PolyP::one(), p);
        let h = b.gcd(g, p);
        if h.deg() > 0 && h.deg() < g.deg() {
            let q = g.div_rem(&h, p).0;
            equal_degree_split(&h, d, p, rng, out);
            equal_degree_split(&q, d, p, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_x4_minus_1_mod_5() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let f = PolyP::new(vec![4, 0, 0, 0, 1]);
        let fs = factor_squarefree_modp(&f, 5, &mut rng);
        assert_eq!(fs.len(), 4);
        let prod = fs.iter().fold(PolyP::one(), |a, b| a.mul(b, 5));
        assert_eq!(prod, f);
    }

    #[test]
    fn irreducible_stays_whole() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        // x^2 + 1 is irreducible mod 7
        let f = PolyP::new(vec![1, 0, 1]);
        assert_eq!(factor_squarefree_modp(&f, 7, &mut rng), vec![f]);
    }

    #[test]
    fn ext_gcd_identity() {
        let p = 11;
        let a = PolyP::new(vec![1, 2, 3]);
        let b = PolyP::new(vec![1, 1]);
        let (g, s, t) = a.ext_gcd(&b, p);
        assert!(g.is_one());
        assert_eq!(s.mul(&a, p).add(&t.mul(&b, p), p), g);
    }
}
