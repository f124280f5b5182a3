use super::{factor_over_rationals, UnivariatePoly};
use crate::error::{Error, Result};

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Every `n` with `phi(n) = d`. Uses `phi(n) >= sqrt(n / 2)`.
pub fn phi_inverse(d: u64) -> Vec<u64> {
    (1..=2 * d * d + 2).filter(|&n| euler_phi(n) == d).collect()
}

/// The `n`-th cyclotomic polynomial, as `(x^n - 1) / prod_{d | n, d < n} Phi_d`.
pub fn cyclotomic_polynomial(n: u64) -> UnivariatePoly {
    let mut p = &UnivariatePoly::monomial(super::rat(1), n as usize) - &UnivariatePoly::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.exact_div(&cyclotomic_polynomial(d)).unwrap();
        }
    }
    p
}

/// Returns `Some(n)` if `p` is the `n`-th cyclotomic polynomial.
///
/// The input must be monic and irreducible over the rationals.
pub fn is_cyclotomic(p: &UnivariatePoly) -> Result<Option<u64>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if p.degree() < 1 || !factor_over_rationals(p)?.is_irreducible() {
        return Err(Error::Reducible);
    }
    Ok(cyclotomic_order_unchecked(p))
}

/// Cyclotomic test for a polynomial already known to be monic irreducible.
pub(crate) fn cyclotomic_order_unchecked(p: &UnivariatePoly) -> Option<u64> {
    p.integer_coeffs()?;
    let d = p.degree() as u64;
    // Smallest n with p | x^n - 1 is the order of its roots.
    phi_inverse(d)
        .into_iter()
        .find(|&n| p.x_pow_mod(n) == UnivariatePoly::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(is_cyclotomic(&UnivariatePoly::from_ints(&[-1, 1])).unwrap(), Some(1));
        assert_eq!(is_cyclotomic(&UnivariatePoly::from_ints(&[1, 1, 1])).unwrap(), Some(3));
        assert_eq!(is_cyclotomic(&UnivariatePoly::from_ints(&[-1, -1, 1])).unwrap(), None);
        assert_eq!(
            is_cyclotomic(&UnivariatePoly::from_ints(&[-1, 0, 1])),
            Err(Error::Reducible)
        );
    }

    #[test]
    fn phi_values() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(euler_phi(i as u64 + 1), e);
        }
        assert_eq!(phi_inverse(2), vec![3, 4, 6]);
    }
}
