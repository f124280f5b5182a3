use super::{lcm_denominators, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial over the rationals, constant term first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and has degree `-1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UnivariatePoly {
    coeffs: Vec<Rational>,
}

impl UnivariatePoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// `x - root`
    pub fn linear_root(root: &Rational) -> Self {
        Self::from_coeffs(vec![-root.clone(), Rational::one()])
    }

    /// `c * x^n`
    pub fn monomial(c: Rational, n: usize) -> Self {
        let mut v = vec![Rational::zero(); n + 1];
        v[n] = c;
        Self::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Polynomial long division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Composition `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// `x^deg * p(1/x)`, i.e. the coefficient list reversed.
    pub fn reversed(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::from_coeffs(v)
    }

    /// `p(c*x)`
    pub fn scale_variable(&self, c: &Rational) -> Self {
        let mut pw = Rational::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a * &pw);
            pw *= c;
        }
        Self::from_coeffs(v)
    }

    /// Splits `self = content * primitive` where `primitive` has coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn content_and_primitive(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let l = lcm_denominators(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = ints
            .iter()
            .fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, l), prim)
    }

    /// Coefficients as integers when they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// `x^n mod self`
    pub fn x_pow_mod(&self, mut n: u64) -> Self {
        let mut acc = Self::one().rem(self);
        let mut base = Self::x().rem(self);
        while n > 0 {
            if n & 1 == 1 {
                acc = (&acc * &base).rem(self);
            }
            base = (&base * &base).rem(self);
            n >>= 1;
        }
        acc
    }

    /// Lexicographic key used for deterministic factor ordering: degree, then
    /// coefficients from the constant term up.
    pub fn ordering_key(&self) -> (isize, &[Rational]) {
        (self.degree(), &self.coeffs)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&super::format_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", super::format_rational(&a)));
            }
        }
        out
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl fmt::Debug for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnivariatePoly({self})")
    }
}

impl Add for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn add(self, rhs: &UnivariatePoly) -> UnivariatePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UnivariatePoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn sub(self, rhs: &UnivariatePoly) -> UnivariatePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UnivariatePoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn mul(self, rhs: &UnivariatePoly) -> UnivariatePoly {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UnivariatePoly::from_coeffs(v)
    }
}

impl Neg for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn neg(self) -> UnivariatePoly {
        UnivariatePoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UnivariatePoly {
            type Output = UnivariatePoly;
            fn $m(self, rhs: UnivariatePoly) -> UnivariatePoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn gcd_unchecked(a: &UnivariatePoly, b: &UnivariatePoly) -> UnivariatePoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r.monic();
    }
    a.monic()
}

/// Monic greatest common divisor. Both inputs zero is rejected.
pub fn poly_gcd(a: &UnivariatePoly, b: &UnivariatePoly) -> Result<UnivariatePoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(gcd_unchecked(a, b))
}

pub(crate) fn gcd_nonzero(a: &UnivariatePoly, b: &UnivariatePoly) -> UnivariatePoly {
    gcd_unchecked(a, b)
}

/// Resultant of two polynomials, computed along the Euclidean remainder sequence.
pub fn resultant(f: &UnivariatePoly, g: &UnivariatePoly) -> Rational {
    if f.is_zero() || g.is_zero() {
        return Rational::zero();
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut acc = Rational::one();
    loop {
        let m = a.degree();
        let n = b.degree();
        if n == 0 {
            return acc * pow_rat(b.leading().unwrap(), m as u32);
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return Rational::zero();
        }
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= pow_rat(b.leading().unwrap(), (m - r.degree()) as u32);
        a = b;
        b = r;
    }
}

pub(crate) fn pow_rat(q: &Rational, e: u32) -> Rational {
    num_traits::pow::pow(q.clone(), e as usize)
}

/// Lagrange interpolation through `(xs[i], ys[i])` with distinct abscissae.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UnivariatePoly {
    // Newton divided differences.
    let n = xs.len();
    let mut dd: Vec<Rational> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = UnivariatePoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &UnivariatePoly::linear_root(&xs[i])) + &UnivariatePoly::constant(dd[i].clone());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(c: &[i64]) -> UnivariatePoly {
        UnivariatePoly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[0, 1]), &p(&[1, 1])).unwrap(), p(&[1]));
        // (x-2)(x-1)(x+1) against x^2-1
        assert_eq!(poly_gcd(&p(&[2, -1, -2, 1]), &p(&[-1, 0, 1])).unwrap(), p(&[-1, 0, 1]));
        assert_eq!(poly_gcd(&UnivariatePoly::zero(), &UnivariatePoly::zero()), Err(Error::ZeroPolynomial));
        assert_eq!(poly_gcd(&UnivariatePoly::zero(), &p(&[4, 2])).unwrap(), p(&[2, 1]));
    }

    #[test]
    fn zero_has_degree_minus_one() {
        assert_eq!(UnivariatePoly::zero().degree(), -1);
        assert_eq!(p(&[0, 0, 0]).degree(), -1);
        assert_eq!(p(&[1, 0, 0]).degree(), 0);
    }

    #[test]
    fn division_round_trip() {
        let a = p(&[3, -2, 0, 5, 1]);
        let b = p(&[1, 2, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn resultant_matches_root_products() {
        // Res(x^2-2, x^2-3) = prod over roots of f of g(root) = (2-3)^2 = 1
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-3, 0, 1])), rat(1));
        // Res(x-2, x^2+1) = 5
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[1, 0, 1])), rat(5));
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-1, 0, 1])), rat(0));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p(&[1, -3, 0, 2]);
        let xs: Vec<_> = (0..4).map(rat).collect();
        let ys: Vec<_> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), f);
    }

    #[test]
    fn content_split() {
        let f = UnivariatePoly::from_coeffs(vec![crate::arith::rat2(-3, 2), rat(0), crate::arith::rat2(-9, 4)]);
        let (c, prim) = f.content_and_primitive();
        assert_eq!(prim, vec![BigInt::from(2), BigInt::from(0), BigInt::from(3)]);
        assert_eq!(c, crate::arith::rat2(-3, 4));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[6, -5, 1]).to_string(), "x^2 - 5*x + 6");
        assert_eq!(p(&[-1]).to_string(), "-1");
    }
}
