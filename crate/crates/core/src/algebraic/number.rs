use super::interval::ComplexBox;
use super::roots::isolate_roots;
use crate::arith::cyclotomic::cyclotomic_order_unchecked;
use crate::arith::poly::{interpolate, pow_rat, resultant};
use crate::arith::{factor_over_rationals, Rational, UnivariatePoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

/// An algebraic number: a monic irreducible minimal polynomial plus a complex
/// box that contains exactly one of its roots.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    minpoly: UnivariatePoly,
    isolation: ComplexBox,
}

fn pow2_inv(bits: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits)
}

impl AlgebraicNumber {
    pub fn from_rational(q: Rational) -> Self {
        Self {
            minpoly: UnivariatePoly::linear_root(&q),
            isolation: ComplexBox::point(q, Rational::zero()),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// Validates `minpoly` (monic, irreducible) and that `isolation` holds exactly one root.
    pub fn new(minpoly: UnivariatePoly, isolation: ComplexBox) -> Result<Self> {
        if minpoly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !minpoly.is_monic() {
            return Err(Error::NotMonic);
        }
        if minpoly.degree() < 1 || !factor_over_rationals(&minpoly)?.is_irreducible() {
            return Err(Error::Reducible);
        }
        let mut w = isolation.width().max(Rational::one());
        for _ in 0..64 {
            let boxes = isolate_roots(&minpoly, &w)?;
            let hits = boxes.iter().filter(|b| b.intersects(&isolation)).count();
            let inside = boxes.iter().filter(|b| isolation.contains(b)).count();
            if hits == 0 || inside > 1 {
                return Err(Error::Isolation(format!(
                    "box holds {inside} roots of {minpoly}, expected one"
                )));
            }
            if hits == 1 && inside == 1 {
                return Ok(Self { minpoly, isolation });
            }
            w /= Rational::from_integer(16.into());
        }
        Err(Error::Isolation("a root lies too close to the box boundary".into()))
    }

    /// All roots of a monic irreducible polynomial, sorted by real then imaginary part.
    pub fn roots_of(p: &UnivariatePoly) -> Result<Vec<Self>> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p = p.monic();
        if p.degree() < 1 || !factor_over_rationals(&p)?.is_irreducible() {
            return Err(Error::Reducible);
        }
        Self::roots_unchecked(&p, &Rational::one())
    }

    fn roots_unchecked(p: &UnivariatePoly, width: &Rational) -> Result<Vec<Self>> {
        let mut out: Vec<Self> = isolate_roots(p, width)?
            .into_iter()
            .map(|b| Self { minpoly: p.clone(), isolation: b })
            .collect();
        out.sort_by(|a, b| {
            let (ca, cb) = (a.isolation.center(), b.isolation.center());
            ca.re.cmp(&cb.re).then(ca.im.cmp(&cb.im))
        });
        Ok(out)
    }

    pub fn minpoly(&self) -> &UnivariatePoly {
        &self.minpoly
    }

    pub fn isolation(&self) -> &ComplexBox {
        &self.isolation
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree() as usize
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.minpoly.degree() == 1).then(|| -self.minpoly.coeff(0))
    }

    pub fn is_zero(&self) -> bool {
        self.minpoly.degree() == 1 && self.minpoly.coeff(0).is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// Floating-point approximation (box center).
    pub fn approx(&self) -> Complex64 {
        let c = self.isolation.center();
        Complex64::new(c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN))
    }

    /// A copy whose isolation box has width at most `width`.
    pub fn refine(&self, width: &Rational) -> Result<Self> {
        if self.isolation.width() <= *width {
            return Ok(self.clone());
        }
        let mut w = width.clone();
        for _ in 0..64 {
            let boxes = isolate_roots(&self.minpoly, &w)?;
            let mut hits = boxes.into_iter().filter(|b| b.intersects(&self.isolation));
            if let (Some(b), None) = (hits.next(), hits.next()) {
                return Ok(Self { minpoly: self.minpoly.clone(), isolation: b });
            }
            w /= Rational::from_integer(16.into());
        }
        Err(Error::Isolation(format!("refinement of a root of {} stalled", self.minpoly)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::from_rational(Rational::zero()));
        }
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => return Ok(Self::from_rational(a * b)),
            (Some(q), None) => return Ok(other.scale(&q)),
            (None, Some(q)) => return Ok(self.scale(&q)),
            _ => {}
        }
        let r = product_resultant(&self.minpoly, &other.minpoly);
        select_root(&r, |level| {
            let w = pow2_inv(32 * (level as u64 + 1));
            let a = self.refine(&w)?;
            let b = other.refine(&w)?;
            Ok(Some(a.isolation.mul(&b.isolation)))
        })
    }

    /// `q * self` for a nonzero rational `q`.
    fn scale(&self, q: &Rational) -> Self {
        // q^d * m(x / q) is monic with root q * alpha
        let minpoly = self
            .minpoly
            .scale_variable(&q.recip())
            .scale(&pow_rat(q, self.degree() as u32));
        let qbox = ComplexBox::point(q.clone(), Rational::zero());
        Self { minpoly, isolation: self.isolation.mul(&qbox) }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        let rev = self.minpoly.reversed().monic();
        select_root(&rev, |level| {
            let w = pow2_inv(32 * (level as u64 + 1));
            Ok(self.refine(&w)?.isolation.recip())
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.mul(&other.inv()?)
    }

    /// `self^e`; negative exponents require a nonzero value.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Smallest `n > 0` with `self^n = 1`, if any.
    pub fn is_root_of_unity(&self) -> Result<Option<u64>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(cyclotomic_order_unchecked(&self.minpoly))
    }

    /// Numerically distinguishes the conjugates; two values are equal iff
    /// their quotient is exactly one.
    pub fn same_value(&self, other: &Self) -> Result<bool> {
        if self.minpoly != other.minpoly {
            return Ok(false);
        }
        if self.is_zero() {
            return Ok(true);
        }
        Ok(self.div(other)?.is_one())
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{}", crate::arith::format_rational(&q)),
            None => {
                let z = self.approx();
                write!(f, "root of {} near {:.6}{:+.6}i", self.minpoly, z.re, z.im)
            }
        }
    }
}

/// Order of `a / b` as a root of unity, if it is one.
pub fn quotient_is_root_of_unity(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<Option<u64>> {
    a.div(b)?.is_root_of_unity()
}

/// `prod nums[i]^exps[i]`.
pub fn product_of_powers(nums: &[AlgebraicNumber], exps: &[i64]) -> Result<AlgebraicNumber> {
    if nums.len() != exps.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} numbers but {} exponents",
            nums.len(),
            exps.len()
        )));
    }
    nums.iter()
        .zip(exps)
        .filter(|(_, &e)| e != 0)
        .try_fold(AlgebraicNumber::one(), |acc, (n, &e)| acc.mul(&n.pow(e)?))
}

/// `Res_y(a(y), y^deg(b) b(x / y))`, made monic. Its roots are all products of
/// a root of `a` with a root of `b`.
pub(crate) fn product_resultant(a: &UnivariatePoly, b: &UnivariatePoly) -> UnivariatePoly {
    let da = a.degree() as usize;
    let db = b.degree() as usize;
    let total = da * db;
    let xs: Vec<Rational> = (0..=total as i64).map(|t| Rational::from_integer(t.into())).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|t| {
            let mut coeffs = vec![Rational::zero(); db + 1];
            let mut tp = Rational::one();
            for i in 0..=db {
                coeffs[db - i] = b.coeff(i) * &tp;
                tp *= t;
            }
            resultant(a, &UnivariatePoly::from_coeffs(coeffs))
        })
        .collect();
    interpolate(&xs, &ys).monic()
}

/// Picks the unique root of `poly` inside the enclosure produced at each
/// precision level; the closure may return `None` to request a finer level.
fn select_root<F>(poly: &UnivariatePoly, mut enclosure: F) -> Result<AlgebraicNumber>
where
    F: FnMut(u32) -> Result<Option<ComplexBox>>,
{
    let factors: Vec<UnivariatePoly> = factor_over_rationals(poly)?
        .factors
        .into_iter()
        .map(|(f, _)| f.monic())
        .collect();
    for level in 0..24 {
        let Some(enc) = enclosure(level)? else { continue };
        let w = enc.width().max(pow2_inv(32 * (level as u64 + 1)));
        let mut found = Vec::new();
        for f in &factors {
            for b in isolate_roots(f, &w)? {
                if b.intersects(&enc) {
                    found.push(AlgebraicNumber { minpoly: f.clone(), isolation: b });
                }
            }
        }
        match found.len() {
            0 => return Err(Error::Isolation("no root inside the enclosure".into())),
            1 => return Ok(found.pop().unwrap()),
            _ => {}
        }
    }
    Err(Error::Isolation(format!("could not single out a root of {poly}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat2};

    fn sqrt(n: i64) -> AlgebraicNumber {
        AlgebraicNumber::roots_of(&UnivariatePoly::from_ints(&[-n, 0, 1]))
            .unwrap()
            .pop()
            .unwrap()
    }

    fn sylvester_resultant(f: &UnivariatePoly, g: &UnivariatePoly) -> Rational {
        let (m, n) = (f.degree() as usize, g.degree() as usize);
        let size = m + n;
        let mut rows = vec![vec![Rational::zero(); size]; size];
        for i in 0..n {
            for j in 0..=m {
                rows[i][i + j] = f.coeff(m - j);
            }
        }
        for i in 0..m {
            for j in 0..=n {
                rows[n + i][i + j] = g.coeff(n - j);
            }
        }
        leibniz_det(&rows)
    }

    fn leibniz_det(m: &[Vec<Rational>]) -> Rational {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut acc = Rational::zero();
        for c in 0..m.len() {
            if m[0][c].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][c] * leibniz_det(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn euclidean_resultant_matches_sylvester_determinant() {
        let f = UnivariatePoly::from_ints(&[3, -1, 0, 2]);
        let g = UnivariatePoly::from_ints(&[-5, 4, 1]);
        assert_eq!(resultant(&f, &g), sylvester_resultant(&f, &g));
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let s = sqrt(2);
        let r = product_resultant(s.minpoly(), s.minpoly());
        // (x - 2)^2 (x + 2)^2
        let expect = &UnivariatePoly::from_ints(&[-2, 1]).pow(2) * &UnivariatePoly::from_ints(&[2, 1]).pow(2);
        assert_eq!(r, expect);
        assert_eq!(s.mul(&s).unwrap().as_rational(), Some(rat(2)));
    }

    #[test]
    fn sqrt2_times_sqrt3() {
        let p = sqrt(2).mul(&sqrt(3)).unwrap();
        assert_eq!(p.minpoly(), &UnivariatePoly::from_ints(&[-6, 0, 1]));
        assert!(p.approx().re > 0.0);
    }

    #[test]
    fn inverse_cancels() {
        let l = AlgebraicNumber::roots_of(&UnivariatePoly::from_ints(&[-1, -1, 1])).unwrap();
        for x in &l {
            assert!(x.mul(&x.inv().unwrap()).unwrap().is_one());
        }
        assert!(!l[0].same_value(&l[1]).unwrap());
        assert!(l[0].same_value(&l[0].refine(&rat2(1, 1 << 40)).unwrap()).unwrap());
    }

    #[test]
    fn roots_of_unity() {
        let i = &AlgebraicNumber::roots_of(&UnivariatePoly::from_ints(&[1, 0, 1])).unwrap()[0];
        assert_eq!(i.is_root_of_unity().unwrap(), Some(4));
        assert_eq!(AlgebraicNumber::one().is_root_of_unity().unwrap(), Some(1));
        assert_eq!(AlgebraicNumber::from_rational(rat(2)).is_root_of_unity().unwrap(), None);
        let two = AlgebraicNumber::from_rational(rat(2));
        let m2 = AlgebraicNumber::from_rational(rat(-2));
        let three = AlgebraicNumber::from_rational(rat(3));
        assert_eq!(quotient_is_root_of_unity(&two, &two).unwrap(), Some(1));
        assert_eq!(quotient_is_root_of_unity(&two, &m2).unwrap(), Some(2));
        assert_eq!(quotient_is_root_of_unity(&two, &three).unwrap(), None);
        assert_eq!(i.pow(4).unwrap().as_rational(), Some(rat(1)));
    }

    #[test]
    fn constructor_rejects_bad_boxes() {
        let p = UnivariatePoly::from_ints(&[-2, 0, 1]);
        let both = ComplexBox::square(&super::super::interval::ComplexRational::zero(), &rat(2));
        assert!(AlgebraicNumber::new(p.clone(), both).is_err());
        let one = ComplexBox::square(
            &super::super::interval::ComplexRational::new(rat(1), rat(0)),
            &rat2(1, 2),
        );
        assert!(AlgebraicNumber::new(p, one).is_ok());
        assert_eq!(
            AlgebraicNumber::new(UnivariatePoly::from_ints(&[-1, 0, 1]), ComplexBox::point(rat(1), rat(0))).unwrap_err(),
            Error::Reducible
        );
    }

    #[test]
    fn refinement_does_not_change_selection() {
        let a = sqrt(2);
        let b = &AlgebraicNumber::roots_of(&UnivariatePoly::from_ints(&[1, 1, 1])).unwrap()[1];
        let coarse = a.mul(b).unwrap();
        let w = Rational::new(1.into(), BigInt::from(10).pow(30));
        let fine = a.refine(&w).unwrap().mul(&b.refine(&w).unwrap()).unwrap();
        assert_eq!(coarse.minpoly(), fine.minpoly());
        assert!(coarse.same_value(&fine).unwrap());
    }
}
