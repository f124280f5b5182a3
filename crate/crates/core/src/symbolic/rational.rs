use super::gcd::mpoly_gcd;
use super::mpoly::{MPoly, Monomial, VarSpace};
use super::ring::{Coeff, CoeffRing};
use crate::arith::Rational;
use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// A quotient of polynomials kept in normal form: over the rationals the
/// numerator and denominator are coprime and the denominator's leading
/// coefficient is one. Over extensions, common monomial factors are removed
/// and the denominator is made monic when its leading coefficient is a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiRationalFunction {
    num: MPoly,
    den: MPoly,
}

impl MultiRationalFunction {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        num.check_compatible(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: MPoly) -> Self {
        let one = MPoly::one(p.space(), p.ring());
        Self::normalized(p, one)
    }

    pub fn constant(space: VarSpace, ring: &Arc<CoeffRing>, c: Coeff) -> Self {
        Self::from_poly(MPoly::constant(space, ring, c))
    }

    pub fn var(space: VarSpace, ring: &Arc<CoeffRing>, i: usize) -> Self {
        Self::from_poly(MPoly::var(space, ring, i))
    }

    /// `x^a * y^b` with integer (possibly negative) torus exponents.
    pub fn laurent_monomial(space: VarSpace, ring: &Arc<CoeffRing>, x: &[u32], y: &[i64]) -> Self {
        let mut top = x.to_vec();
        let mut bottom = vec![0; space.len()];
        for (j, &e) in y.iter().enumerate() {
            if e >= 0 {
                top.push(e as u32);
            } else {
                top.push(0);
                bottom[space.additive + j] = (-e) as u32;
            }
        }
        Self::normalized(
            MPoly::term(space, ring, Monomial(top), ring.one()),
            MPoly::term(space, ring, Monomial(bottom), ring.one()),
        )
    }

    fn normalized(num: MPoly, den: MPoly) -> Self {
        let ring = num.ring().clone();
        let (mut num, mut den) = if num.is_zero() {
            (num, MPoly::one(den.space(), &ring))
        } else if ring.is_rationals() {
            let g = mpoly_gcd(&num, &den);
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        } else {
            let mut common = num.monomial_content();
            for (a, b) in common.0.iter_mut().zip(&den.monomial_content().0) {
                *a = (*a).min(*b);
            }
            let (n, d) = (num.div_monomial(&common), den.div_monomial(&common));
            match n.div_exact(&d) {
                Some(q) => (q, MPoly::one(d.space(), &ring)),
                None => (n, d),
            }
        };
        if let Some(inv) = den.leading().and_then(|(_, lc)| ring.inv(lc)) {
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { num, den }
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    pub fn space(&self) -> VarSpace {
        self.num.space()
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        self.num.ring()
    }

    pub fn is_constant(&self) -> bool {
        if self.num.is_zero() {
            return true;
        }
        let (Some((_, ln)), Some((_, ld))) = (self.num.leading(), self.den.leading()) else {
            return true;
        };
        // num * ld == den * ln exactly when num / den is the constant ln / ld
        self.num.scale(ld) == self.den.scale(ln)
    }

    /// Larger of the numerator and denominator total degrees.
    pub fn degree(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }

    pub fn eval(&self, point: &[Coeff]) -> Option<Coeff> {
        let r = self.ring();
        let d = self.den.eval(point);
        Some(r.mul(&self.num.eval(point), &r.inv(&d)?))
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Option<Rational> {
        let r = self.ring();
        let pt: Vec<Coeff> = point.iter().map(|q| r.from_rational(q.clone())).collect();
        r.as_rational(&self.eval(&pt)?)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.num.check_compatible(&o.num)?;
        Ok(Self::normalized(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        ))
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.num.check_compatible(&o.num)?;
        Ok(Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den)))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.num.check_compatible(&o.num)?;
        if o.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.num.mul(&o.den), self.den.mul(&o.num)))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 {
            if self.num.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Self { num: self.den.clone(), den: self.num.clone() }
        } else {
            self.clone()
        };
        let e = e.unsigned_abs() as u32;
        Ok(Self::normalized(base.num.pow(e), base.den.pow(e)))
    }

    /// Moves the function to a larger variable space (see [`MPoly::embed`]).
    pub fn embed(&self, space: VarSpace, x_offset: usize, y_offset: usize) -> Self {
        Self::normalized(self.num.embed(space, x_offset, y_offset), self.den.embed(space, x_offset, y_offset))
    }

    pub fn with_ring(&self, ring: &Arc<CoeffRing>) -> Result<Self> {
        Ok(Self::normalized(self.num.with_ring(ring)?, self.den.with_ring(ring)?))
    }

    /// `num * den' - num' * den`; zero exactly when the functions agree.
    pub fn cross_difference(&self, o: &Self) -> Result<MPoly> {
        self.num.check_compatible(&o.num)?;
        Ok(self.num.mul(&o.den).sub(&o.num.mul(&self.den)))
    }
}

/// Whether two rational functions are equal, by cross-multiplication.
pub fn rational_functions_equal(f: &MultiRationalFunction, g: &MultiRationalFunction) -> Result<bool> {
    Ok(f.cross_difference(g)?.is_zero())
}

impl fmt::Display for MultiRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.to_string();
        if self.den.is_constant() && self.ring().is_one(&self.den.constant_value().unwrap()) {
            return write!(f, "{num}");
        }
        let num = if self.num.num_terms() > 1 { format!("({num})") } else { num };
        let den = self.den.to_string();
        // a denominator that is a product needs parentheses as well as a sum
        let den = if self.den.num_terms() > 1 || den.contains(['*', '/']) { format!("({den})") } else { den };
        write!(f, "{num}/{den}")
    }
}
