use super::modp::{factor_squarefree_modp, PolyP};
use super::poly::gcd_nonzero;
use super::primes::primes;
use super::{Rational, UnivariatePoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;

/// `p = content * prod(factor_i ^ multiplicity_i)` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: Rational,
    pub factors: Vec<(UnivariatePoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> UnivariatePoly {
        self.factors
            .iter()
            .fold(UnivariatePoly::constant(self.content.clone()), |acc, (f, m)| {
                &acc * &f.pow(*m)
            })
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Yun's algorithm. Returns monic squarefree, pairwise coprime parts with their
/// multiplicities (parts equal to 1 are dropped).
pub fn squarefree_decomposition(p: &UnivariatePoly) -> Vec<(UnivariatePoly, u32)> {
    let mut out = Vec::new();
    if p.degree() < 1 {
        return out;
    }
    let a = p.monic();
    let da = a.derivative();
    let b = gcd_nonzero(&a, &da);
    let mut c = a.exact_div(&b).unwrap();
    let mut d = &da.exact_div(&b).unwrap() - &c.derivative();
    let mut i = 1;
    while c.degree() > 0 {
        let ai = gcd_nonzero(&c, &d);
        c = c.exact_div(&ai).unwrap();
        d = &d.exact_div(&ai).unwrap() - &c.derivative();
        if ai.degree() > 0 {
            out.push((ai, i));
        }
        i += 1;
    }
    out
}

/// Complete factorization over the rationals into monic irreducible factors.
///
/// Factors are sorted by degree, then lexicographically by their coefficient
/// lists (constant term first).
pub fn factor_over_rationals(p: &UnivariatePoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let content = p.leading().unwrap().clone();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(p) {
        for f in factor_squarefree(&part) {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|a, b| a.0.ordering_key().cmp(&b.0.ordering_key()));
    Ok(Factorization { content, factors })
}

/// Factors a monic squarefree polynomial with rational coefficients.
fn factor_squarefree(f: &UnivariatePoly) -> Vec<UnivariatePoly> {
    if f.degree() <= 1 {
        return vec![f.monic()];
    }
    let mut out = Vec::new();
    let mut f = f.clone();
    if f.coeff(0).is_zero() {
        out.push(UnivariatePoly::x());
        f = f.exact_div(&UnivariatePoly::x()).unwrap();
        if f.degree() <= 1 {
            if f.degree() == 1 {
                out.push(f.monic());
            }
            return out;
        }
    }
    let (_, prim) = f.content_and_primitive();
    let n = prim.len() - 1;
    let lc = prim[n].clone();
    // Monic transform F(x) = lc^(n-1) f(x / lc).
    let mut monic = Vec::with_capacity(n + 1);
    let pows: Vec<BigInt> = std::iter::successors(Some(BigInt::one()), |p| Some(p * &lc)).take(n).collect();
    for (i, c) in prim.iter().enumerate().take(n) {
        monic.push(c * &pows[n - 1 - i]);
    }
    monic.push(BigInt::one());
    for g in factor_monic_integer(&monic) {
        // G(lc * x), then back to a monic rational polynomial.
        let back = UnivariatePoly::from_bigints(&g).scale_variable(&Rational::from_integer(lc.clone()));
        out.push(back.monic());
    }
    out
}

type IntPoly = Vec<BigInt>;

fn trim(mut v: IntPoly) -> IntPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    trim(v)
}

/// Exact division by a monic integer polynomial, `None` on a nonzero remainder.
fn int_div_monic(a: &[BigInt], d: &[BigInt]) -> Option<IntPoly> {
    let dd = d.len() - 1;
    if a.len() <= dd {
        return if a.iter().all(Zero::is_zero) { Some(Vec::new()) } else { None };
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd].clone();
        if !c.is_zero() {
            for (j, dc) in d.iter().enumerate() {
                r[i + j] -= &c * dc;
            }
        }
        q[i] = c;
    }
    r.iter().all(Zero::is_zero).then(|| trim(q))
}

fn symmetric_mod(v: &[BigInt], m: &BigInt) -> IntPoly {
    let half = m / 2;
    v.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn to_big(p: &PolyP) -> IntPoly {
    p.c.iter().map(|&x| BigInt::from(x)).collect()
}

/// Zassenhaus: factor a monic squarefree integer polynomial over Z.
fn factor_monic_integer(f: &[BigInt]) -> Vec<IntPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);

    // Pick the good prime (among the first few) giving the fewest modular factors.
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    let mut tried = 0;
    for p in primes().skip(1) {
        let fp = PolyP::from_bigints(f, p);
        if fp.deg() as usize != n || !fp.gcd(&fp.derivative(p), p).is_one() {
            continue;
        }
        let fs = factor_squarefree_modp(&fp, p, &mut rng);
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, modular) = best.expect("some prime has good reduction");
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    // Coefficient bound for factors: 2^n * ||f||_2.
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm2.sqrt() + 1u32);
    let target = bound * 2u32 + 1u32;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk < target {
        pk *= p;
        k += 1;
    }
    let lifted = hensel_lift(f, &modular, p, k);

    // Subset recombination.
    let mut remaining: Vec<IntPoly> = lifted;
    let mut rest: IntPoly = f.to_vec();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = false;
        for subset in combinations(remaining.len(), s) {
            let prod = subset
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| symmetric_mod(&int_mul(&acc, &remaining[i]), &pk));
            let cand = trim(symmetric_mod(&prod, &pk));
            if let Some(q) = int_div_monic(&rest, &cand) {
                out.push(cand);
                rest = q;
                for &i in subset.iter().rev() {
                    remaining.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if rest.len() > 1 {
        out.push(rest);
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Lifts `f = prod(factors) mod p` to a factorization modulo `p^k`, factor by factor.
fn hensel_lift(f: &[BigInt], factors: &[PolyP], p: u64, k: u32) -> Vec<IntPoly> {
    let mut out = Vec::with_capacity(factors.len());
    let mut rest = f.to_vec();
    for i in 0..factors.len() - 1 {
        let g0 = factors[i].clone();
        let h0 = factors[i + 1..]
            .iter()
            .fold(PolyP::one(), |acc, x| acc.mul(x, p));
        let (g, h) = lift_pair(&rest, &g0, &h0, p, k);
        out.push(g);
        rest = h;
    }
    out.push(rest);
    out
}

/// Linear Hensel lifting of `f = g0*h0 mod p` (both monic) to modulus `p^k`.
fn lift_pair(f: &[BigInt], g0: &PolyP, h0: &PolyP, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, a, b) = g0.ext_gcd(h0, p);
    debug_assert!(one.is_one());
    let mut g = to_big(g0);
    let mut h = to_big(h0);
    let mut m = BigInt::from(p);
    let pb = BigInt::from(p);
    for _ in 1..k {
        let gh = int_mul(&g, &h);
        let n = f.len().max(gh.len());
        let diff: IntPoly = (0..n)
            .map(|i| {
                let x = f.get(i).cloned().unwrap_or_default();
                let y = gh.get(i).cloned().unwrap_or_default();
                (x - y) / &m
            })
            .collect();
        let e = PolyP::from_bigints(&diff, p);
        let (q, big_g) = e.mul(&b, p).div_rem(g0, p);
        let big_h = e.mul(&a, p).add(&q.mul(h0, p), p);
        let add = |base: &mut IntPoly, delta: &PolyP| {
            if base.len() < delta.c.len() {
                base.resize(delta.c.len(), BigInt::zero());
            }
            for (i, &d) in delta.c.iter().enumerate() {
                base[i] += &m * d;
            }
        };
        add(&mut g, &big_g);
        add(&mut h, &big_h);
        m *= &pb;
        g = g.iter().map(|c| c.mod_floor(&m)).collect();
        h = h.iter().map(|c| c.mod_floor(&m)).collect();
    }
    (g, h)
}
