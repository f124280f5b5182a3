//! The explicit invariant functions, written in Jordan coordinates.

use crate::error::{Error, Result};
use crate::symbolic::{Coeff, CoeffRing, MPoly, MultiRationalFunction, VarSpace};
use std::sync::Arc;

fn var(space: VarSpace, ring: &Arc<CoeffRing>, i: usize) -> Result<MultiRationalFunction> {
    if i >= space.additive {
        return Err(Error::DimensionMismatch(format!(
            "coordinate x{} outside {} additive variables",
            i + 1,
            space.additive
        )));
    }
    Ok(MultiRationalFunction::var(space, ring, i))
}

fn constant(space: VarSpace, ring: &Arc<CoeffRing>, c: Coeff) -> MultiRationalFunction {
    MultiRationalFunction::constant(space, ring, c)
}

/// `2u/w - v^2/w^2 + v/(lambda w)` where `u, v, w` are the last three
/// coordinates of a Jordan block of size `size` starting at `offset`.
pub fn build_invariant_case3(
    space: VarSpace,
    ring: &Arc<CoeffRing>,
    lambda: &Coeff,
    size: usize,
    offset: usize,
) -> Result<MultiRationalFunction> {
    if size < 3 {
        return Err(Error::InvalidWitness(format!("block of size {size} is too small, need at least 3")));
    }
    let inv = ring.inv(lambda).ok_or(Error::ZeroInput)?;
    let last = offset + size - 1;
    let u = var(space, ring, last - 2)?;
    let v = var(space, ring, last - 1)?;
    let w = var(space, ring, last)?;
    let two = constant(space, ring, ring.from_i64(2));
    let first = two.mul(&u.div(&w)?)?;
    let second = v.pow(2)?.div(&w.pow(2)?)?;
    let third = constant(space, ring, inv).mul(&v.div(&w)?)?;
    first.sub(&second)?.add(&third)
}

/// A Jordan block of size two: its eigenvalue and first coordinate.
#[derive(Clone, Debug)]
pub struct BlockRef {
    pub eigenvalue: Coeff,
    pub offset: usize,
}

/// `x_a/(lambda2 x_{a+1}) - x_b/(lambda1 x_{b+1})` for two blocks of size two.
pub fn build_invariant_case2(
    space: VarSpace,
    ring: &Arc<CoeffRing>,
    first: &BlockRef,
    second: &BlockRef,
) -> Result<MultiRationalFunction> {
    let inv1 = ring.inv(&first.eigenvalue).ok_or(Error::ZeroInput)?;
    let inv2 = ring.inv(&second.eigenvalue).ok_or(Error::ZeroInput)?;
    let ratio = |b: &BlockRef| -> Result<MultiRationalFunction> {
        var(space, ring, b.offset)?.div(&var(space, ring, b.offset + 1)?)
    };
    let left = constant(space, ring, inv2).mul(&ratio(first)?)?;
    let right = constant(space, ring, inv1).mul(&ratio(second)?)?;
    left.sub(&right)
}

/// Flips the sign of a relation so that the numerator degree is at least
/// the denominator degree.
pub(crate) fn orient(exponents: &mut [i64]) {
    let up: i64 = exponents.iter().filter(|&&c| c > 0).sum();
    let down: i64 = -exponents.iter().filter(|&&c| c < 0).sum::<i64>();
    if up < down {
        exponents.iter_mut().for_each(|c| *c = -*c);
    }
}

/// `prod_i base_i^e_i` for polynomial bases and integer exponents.
pub(crate) fn power_product(factors: &[(MPoly, i64)]) -> Result<MultiRationalFunction> {
    let first = &factors.first().ok_or_else(|| Error::InvalidWitness("empty product".into()))?.0;
    let (space, ring) = (first.space(), first.ring().clone());
    let mut num = MPoly::one(space, &ring);
    let mut den = MPoly::one(space, &ring);
    for (base, e) in factors {
        let p = base.pow(e.unsigned_abs() as u32);
        if *e >= 0 {
            num = num.mul(&p);
        } else {
            den = den.mul(&p);
        }
    }
    MultiRationalFunction::new(num, den)
}
