//! Linear versus faster growth of integer orbits `A^n p`.

use crate::arith::cyclotomic::cyclotomic_order_unchecked;
use crate::arith::{factor_over_rationals, Rational};
use crate::error::{Error, Result};
use crate::linalg::{char_poly, ZMatrix};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowthVerdict {
    LinearlyBounded,
    /// First step exceeding the fitted line.
    ExceedsLinear(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthReport {
    pub steps: usize,
    /// `max_n |A^n p|_inf / (n + 1)`.
    pub max_ratio: Rational,
    pub verdict: GrowthVerdict,
    /// Whether the characteristic polynomial has a cyclotomic factor.
    pub cyclotomic_factor: bool,
    /// `|A^n p|_inf` for `n = 0..=steps`.
    pub norms: Vec<BigInt>,
}

/// Fits `c1 n + c2` to the running maximum of `norms` at `N/4` and `N/2`
/// (slope clamped at zero) and reports the first later step above it.
pub fn growth_verdict(norms: &[BigInt]) -> GrowthVerdict {
    let n = norms.len().saturating_sub(1);
    let mut running = Vec::with_capacity(norms.len());
    let mut best = BigInt::zero();
    for v in norms {
        if *v > best {
            best = v.clone();
        }
        running.push(best.clone());
    }
    if n < 2 {
        return GrowthVerdict::LinearlyBounded;
    }
    let n1 = (n / 4).max(1);
    let n2 = (n / 2).max(n1 + 1).min(n);
    let r = |i: usize| Rational::from_integer(running[i].clone());
    let slope = (r(n2) - r(n1)) / Rational::from_integer((n2 - n1).into());
    let c1 = if slope.is_negative() { Rational::zero() } else { slope };
    let c2 = r(n2) - &c1 * Rational::from_integer(n2.into());
    (n2 + 1..=n)
        .find(|&i| r(i) > &c1 * Rational::from_integer(i.into()) + &c2)
        .map_or(GrowthVerdict::LinearlyBounded, GrowthVerdict::ExceedsLinear)
}

pub fn growth_check(a: &ZMatrix, p: &[BigInt], steps: usize) -> Result<GrowthReport> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if p.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!("vector of length {} for a {}x{} matrix", p.len(), a.rows(), a.cols())));
    }
    if p.iter().all(Zero::is_zero) {
        return Err(Error::ZeroInput);
    }
    if a.determinant()?.is_zero() {
        return Err(Error::DominanceViolation("matrix is singular".into()));
    }
    let mut v = p.to_vec();
    let mut norms = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        if i > 0 {
            v = a.mul_vec(&v)?;
        }
        norms.push(v.iter().map(|x| x.abs()).max().unwrap_or_default());
    }
    let max_ratio = norms
        .iter()
        .enumerate()
        .map(|(i, m)| Rational::new(m.clone(), BigInt::from(i + 1)))
        .max()
        .unwrap_or_default();
    let cyclotomic_factor = factor_over_rationals(&char_poly(&a.to_rational())?)?
        .factors
        .iter()
        .any(|(f, _)| cyclotomic_order_unchecked(&f.monic()).is_some());
    Ok(GrowthReport { steps, max_ratio, verdict: growth_verdict(&norms), cyclotomic_factor, norms })
}
