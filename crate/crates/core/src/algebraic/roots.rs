//! Certified isolation of the complex roots of a squarefree polynomial.
//!
//! Approximations come from a floating-point Aberth iteration and are then
//! polished in dyadic rational arithmetic. Each approximation `z` is wrapped
//! in a square containing the disc `|w - z| <= n |p(z)| / |p'(z)|`, which
//! holds at least one root; once all `n` squares are pairwise disjoint each
//! holds exactly one.

use super::interval::{sqrt_upper, ComplexBox, ComplexRational};
use crate::arith::{Rational, UnivariatePoly};
use crate::error::{Error, Result};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

const START_BITS: u32 = 64;
const MAX_BITS: u32 = 1 << 16;

/// Boxes of width at most `max_width`, one per root, pairwise disjoint.
pub(crate) fn isolate_roots(p: &UnivariatePoly, max_width: &Rational) -> Result<Vec<ComplexBox>> {
    let n = p.degree();
    if n < 1 {
        return Err(Error::ZeroPolynomial);
    }
    if n == 1 {
        let r = -&p.coeffs()[0] / &p.coeffs()[1];
        return Ok(vec![ComplexBox::point(r, Rational::zero())]);
    }
    let dp = p.derivative();
    let mut z: Vec<ComplexRational> = aberth_f64(p)
        .into_iter()
        .map(to_rational)
        .collect::<Option<_>>()
        .unwrap_or_else(|| fallback_start(p));
    let mut bits = START_BITS;
    while bits <= MAX_BITS {
        polish(p, &dp, &mut z, bits);
        if let Some(boxes) = certify(p, &dp, &z, max_width) {
            return Ok(boxes);
        }
        bits *= 2;
    }
    Err(Error::Isolation(format!("could not separate roots of {p}")))
}

fn to_rational(c: Complex64) -> Option<ComplexRational> {
    Some(ComplexRational::new(
        Rational::from_float(c.re)?,
        Rational::from_float(c.im)?,
    ))
}

fn cauchy_bound(p: &UnivariatePoly) -> f64 {
    let lc = p.leading().and_then(|l| l.to_f64()).unwrap_or(1.0).abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::MAX).abs() / lc)
        .fold(0.0, f64::max);
    1.0 + m.min(1e150)
}

fn circle_start(n: usize, radius: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect()
}

fn fallback_start(p: &UnivariatePoly) -> Vec<ComplexRational> {
    let r = cauchy_bound(p).min(1e6);
    circle_start(p.degree() as usize, r)
        .into_iter()
        .map(|c| to_rational(c).expect("finite start"))
        .collect()
}

fn aberth_f64(p: &UnivariatePoly) -> Vec<Complex64> {
    let n = p.degree() as usize;
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let dc: Vec<f64> = c.iter().enumerate().skip(1).map(|(i, a)| a * i as f64).collect();
    let horner = |cs: &[f64], z: Complex64| {
        cs.iter().rev().fold(Complex64::zero(), |acc, &a| acc * z + a)
    };
    let mut z = circle_start(n, cauchy_bound(p).min(1e100));
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let pv = horner(&c, z[i]);
            let dv = horner(&dc, z[i]);
            if pv == Complex64::zero() {
                continue;
            }
            let ratio = pv / dv;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn eval(p: &UnivariatePoly, z: &ComplexRational) -> ComplexRational {
    p.coeffs().iter().rev().fold(ComplexRational::zero(), |acc, a| {
        let m = acc.mul(z);
        ComplexRational::new(m.re + a, m.im)
    })
}

/// Aberth steps in exact arithmetic, rounding iterates to `2^-bits`.
fn polish(p: &UnivariatePoly, dp: &UnivariatePoly, z: &mut [ComplexRational], bits: u32) {
    let n = z.len();
    let tiny = Rational::new(1.into(), num_bigint::BigInt::from(1) << (bits + 8));
    let tol = Rational::new(1.into(), num_bigint::BigInt::from(1) << bits);
    let tol2 = &tol * &tol;
    for _ in 0..60 {
        let mut max_step = Rational::zero();
        for i in 0..n {
            let pv = eval(p, &z[i]);
            if pv.norm_sqr().is_zero() {
                continue;
            }
            let mut dv = eval(dp, &z[i]);
            if dv.norm_sqr().is_zero() {
                dv = ComplexRational::new(tiny.clone(), Rational::zero());
            }
            let ratio = pv.div(&dv);
            let mut s = ComplexRational::zero();
            for j in (0..n).filter(|&j| j != i) {
                let d = z[i].sub(&z[j]);
                if !d.norm_sqr().is_zero() {
                    s = s.add(&ComplexRational::one().div(&d));
                }
            }
            let denom = ComplexRational::one().sub(&ratio.mul(&s));
            let w = if denom.norm_sqr().is_zero() { ratio } else { ratio.div(&denom) };
            z[i] = z[i].sub(&w).round(bits);
            let step = w.norm_sqr();
            if step > max_step {
                max_step = step;
            }
        }
        if max_step <= tol2 {
            break;
        }
    }
}

fn certify(
    p: &UnivariatePoly,
    dp: &UnivariatePoly,
    z: &[ComplexRational],
    max_width: &Rational,
) -> Option<Vec<ComplexBox>> {
    let n2 = Rational::from_integer((z.len() * z.len()).into());
    let mut boxes = Vec::with_capacity(z.len());
    for zi in z {
        let dv = eval(dp, zi).norm_sqr();
        if dv.is_zero() {
            return None;
        }
        let r2 = &n2 * eval(p, zi).norm_sqr() / dv;
        let half = sqrt_upper(&r2);
        if &half * Rational::from_integer(2.into()) > *max_width {
            return None;
        }
        boxes.push(ComplexBox::square(zi, &half));
    }
    for i in 0..boxes.len() {
        for j in i + 1..boxes.len() {
            if boxes[i].intersects(&boxes[j]) {
                return None;
            }
        }
    }
    Some(boxes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat2};

    fn contains_point(b: &ComplexBox, re: f64, im: f64) -> bool {
        let c = b.center();
        let (cr, ci) = (c.re.to_f64().unwrap(), c.im.to_f64().unwrap());
        let w = b.width().to_f64().unwrap();
        (cr - re).abs() <= w + 1e-12 && (ci - im).abs() <= w + 1e-12
    }

    #[test]
    fn isolates_quadratic_roots() {
        let p = UnivariatePoly::from_ints(&[-2, 0, 1]);
        let boxes = isolate_roots(&p, &rat2(1, 1000)).unwrap();
        assert_eq!(boxes.len(), 2);
        let s = 2f64.sqrt();
        assert!(boxes.iter().any(|b| contains_point(b, s, 0.0)));
        assert!(boxes.iter().any(|b| contains_point(b, -s, 0.0)));
    }

    #[test]
    fn isolates_complex_roots_to_fine_width() {
        let p = UnivariatePoly::from_ints(&[1, 1, 1]);
        let w = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(30));
        let boxes = isolate_roots(&p, &w).unwrap();
        assert_eq!(boxes.len(), 2);
        for b in &boxes {
            assert!(b.width() <= w);
            assert!(b.re.contains(&super::super::interval::Interval::point(rat2(-1, 2))));
        }
    }

    #[test]
    fn clustered_roots_are_separated() {
        // (x - 1)(x - 1 - 10^-12)(x + 3)
        let eps = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(12));
        let a = UnivariatePoly::linear_root(&rat(1));
        let b = UnivariatePoly::linear_root(&(rat(1) + eps));
        let c = UnivariatePoly::linear_root(&rat(-3));
        let p = &(&a * &b) * &c;
        let boxes = isolate_roots(&p, &rat(1)).unwrap();
        assert_eq!(boxes.len(), 3);
    }
}
