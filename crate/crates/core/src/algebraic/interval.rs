//! Exact rational intervals and complex boxes.

use crate::arith::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Sub};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn around(c: &Rational, r: &Rational) -> Self {
        Self::new(c - r, c + r)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn intersects(&self, o: &Self) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn contains(&self, o: &Self) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn sqr(&self) -> Self {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if self.contains_zero() {
            Self::new(Rational::zero(), a.max(b))
        } else if a < b {
            Self::new(a, b)
        } else {
            Self::new(b, a)
        }
    }

    /// `1 / self`; the interval must not contain zero.
    pub fn recip(&self) -> Self {
        assert!(!self.contains_zero());
        Self::new(self.hi.recip(), self.lo.recip())
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }
}

/// Axis-aligned box in the complex plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexBox {
    pub fn point(re: Rational, im: Rational) -> Self {
        Self { re: Interval::point(re), im: Interval::point(im) }
    }

    pub fn square(c: &ComplexRational, half_side: &Rational) -> Self {
        Self {
            re: Interval::around(&c.re, half_side),
            im: Interval::around(&c.im, half_side),
        }
    }

    pub fn width(&self) -> Rational {
        self.re.width().max(self.im.width())
    }

    pub fn intersects(&self, o: &Self) -> bool {
        self.re.intersects(&o.re) && self.im.intersects(&o.im)
    }

    pub fn contains(&self, o: &Self) -> bool {
        self.re.contains(&o.re) && self.im.contains(&o.im)
    }

    pub fn center(&self) -> ComplexRational {
        let two = Rational::from_integer(2.into());
        ComplexRational {
            re: (&self.re.lo + &self.re.hi) / &two,
            im: (&self.im.lo + &self.im.hi) / &two,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    /// Enclosure of `{1/z : z in self}`, or `None` if the box touches zero.
    pub fn recip(&self) -> Option<Self> {
        let norm = &self.re.sqr() + &self.im.sqr();
        if norm.contains_zero() {
            return None;
        }
        let inv = norm.recip();
        let neg_im = Interval::new(-self.im.hi.clone(), -self.im.lo.clone());
        Some(Self { re: &self.re * &inv, im: &neg_im * &inv })
    }

    pub fn to_array(&self) -> [Rational; 4] {
        [
            self.re.lo.clone(),
            self.re.hi.clone(),
            self.im.lo.clone(),
            self.im.hi.clone(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn zero() -> Self {
        Self { re: Rational::zero(), im: Rational::zero() }
    }

    pub fn one() -> Self {
        Self { re: Rational::one(), im: Rational::zero() }
    }

    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    pub fn div(&self, o: &Self) -> Self {
        let n = o.norm_sqr();
        let conj = Self::new(o.re.clone(), -o.im.clone());
        self.mul(&conj).scale(&n.recip())
    }

    /// Rounds both parts to the grid `2^-bits`.
    pub fn round(&self, bits: u32) -> Self {
        let scale = Rational::from_integer(BigInt::one() << bits);
        let r = |x: &Rational| (x * &scale).round() / &scale;
        Self::new(r(&self.re), r(&self.im))
    }
}

/// A power of two that is at least `sqrt(x)` and less than `2*sqrt(x)` (for `x > 0`).
pub fn sqrt_upper(x: &Rational) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let mut e = (nb - db) / 2 + 1;
    let pow2 = |e: i64| {
        if e >= 0 {
            Rational::from_integer(BigInt::one() << e as u64)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (-e) as u64)
        }
    };
    while &(pow2(e) * pow2(e)) < x {
        e += 1;
    }
    while &(pow2(e - 1) * pow2(e - 1)) >= x {
        e -= 1;
    }
    pow2(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat2};

    #[test]
    fn interval_products_enclose() {
        let a = Interval::new(rat(-1), rat(2));
        let b = Interval::new(rat(3), rat(4));
        assert_eq!(&a * &b, Interval::new(rat(-4), rat(8)));
        assert_eq!(a.sqr(), Interval::new(rat(0), rat(4)));
    }

    #[test]
    fn sqrt_upper_is_tight_power_of_two() {
        for (n, d) in [(1, 1), (2, 1), (1, 1000), (99, 7), (1, 1 << 40)] {
            let x = rat2(n, d);
            let s = sqrt_upper(&x);
            assert!(&s * &s >= x);
            let h = &s / rat(2);
            assert!(&h * &h < x);
        }
    }

    #[test]
    fn reciprocal_box_contains_point_inverse() {
        let b = ComplexBox {
            re: Interval::new(rat(1), rat(2)),
            im: Interval::new(rat(1), rat(2)),
        };
        let inv = b.recip().unwrap();
        // 1 / (3/2 + 3/2 i) = 1/3 - 1/3 i
        let p = ComplexBox::point(rat2(1, 3), rat2(-1, 3));
        assert!(inv.contains(&p));
    }
}
