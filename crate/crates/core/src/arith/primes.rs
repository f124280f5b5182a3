use super::modp::{mul_mod, pow_mod};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in increasing order, starting at 2.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime_u64(n))
}

/// A uniformly drawn prime in `[2^61, 2^62)`.
pub fn random_prime_62<R: Rng>(rng: &mut R) -> u64 {
    loop {
        let c = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime_u64(c) {
            return c;
        }
    }
}

/// Refines a list of nonzero integers into a pairwise-coprime base: every
/// input is, up to sign, a product of powers of the returned elements.
pub fn coprime_base(nums: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = nums
        .iter()
        .map(|n| n.abs())
        .filter(|n| *n > BigInt::one())
        .collect();
    base.sort();
    base.dedup();
    'outer: loop {
        for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if !g.is_one() {
                    let a = &base[i] / &g;
                    let b = &base[j] / &g;
                    base.remove(j);
                    base.remove(i);
                    base.extend([a, b, g].into_iter().filter(|x| *x > BigInt::one()));
                    base.sort();
                    base.dedup();
                    continue 'outer;
                }
            }
        }
        return base;
    }
}

/// Exponents of `|n|` over a pairwise-coprime base; `None` if it does not factor.
pub fn exponents_over(n: &BigInt, base: &[BigInt]) -> Option<Vec<i64>> {
    let mut rest = n.abs();
    if rest.is_zero() {
        return None;
    }
    let mut out = vec![0i64; base.len()];
    for (e, b) in out.iter_mut().zip(base) {
        while (&rest % b).is_zero() {
            rest /= b;
            *e += 1;
        }
    }
    rest.is_one().then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        let naive = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..5000 {
            assert_eq!(is_prime_u64(n), naive(n), "{n}");
        }
        assert!(is_prime_u64(2305843009213693951)); // 2^61 - 1
    }

    #[test]
    fn coprime_base_factors_inputs() {
        let nums: Vec<BigInt> = [12, 18, 35, 4].iter().map(|&x| BigInt::from(x)).collect();
        let base = coprime_base(&nums);
        for i in 0..base.len() {
            for j in i + 1..base.len() {
                assert!(base[i].gcd(&base[j]).is_one());
            }
        }
        for n in &nums {
            assert!(exponents_over(n, &base).is_some());
        }
    }
}
