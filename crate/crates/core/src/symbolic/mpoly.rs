//! Sparse multivariate polynomials over a [`CoeffRing`].

use super::ring::{Coeff, CoeffRing};
use crate::arith::Rational;
use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Variables `x1..xk` (additive) followed by `y1..yl` (torus).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarSpace {
    pub additive: usize,
    pub torus: usize,
}

impl VarSpace {
    pub fn new(additive: usize, torus: usize) -> Self {
        Self { additive, torus }
    }

    pub fn len(&self) -> usize {
        self.additive + self.torus
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn name(&self, i: usize) -> String {
        if i < self.additive {
            format!("x{}", i + 1)
        } else {
            format!("y{}", i - self.additive + 1)
        }
    }
}

/// Exponent vector, ordered graded-lexicographically with `x1 > x2 > ... > y_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Self) -> Self {
        Self(o.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    space: VarSpace,
    ring: Arc<CoeffRing>,
    terms: BTreeMap<Monomial, Coeff>,
}

impl MPoly {
    pub fn zero(space: VarSpace, ring: &Arc<CoeffRing>) -> Self {
        Self { space, ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(space: VarSpace, ring: &Arc<CoeffRing>, c: Coeff) -> Self {
        Self::term(space, ring, Monomial::one(space.len()), c)
    }

    pub fn from_rational(space: VarSpace, ring: &Arc<CoeffRing>, q: Rational) -> Self {
        Self::constant(space, ring, ring.from_rational(q))
    }

    pub fn one(space: VarSpace, ring: &Arc<CoeffRing>) -> Self {
        Self::constant(space, ring, ring.one())
    }

    pub fn term(space: VarSpace, ring: &Arc<CoeffRing>, m: Monomial, c: Coeff) -> Self {
        let mut p = Self::zero(space, ring);
        if !ring.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    /// The `i`-th variable (zero-based over `x1..xk, y1..yl`).
    pub fn var(space: VarSpace, ring: &Arc<CoeffRing>, i: usize) -> Self {
        let mut m = Monomial::one(space.len());
        m.0[i] = 1;
        Self::term(space, ring, m, ring.one())
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Coeff> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(|| self.ring.zero()))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    /// Leading term under graded-lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.space != o.space {
            return Err(Error::DimensionMismatch("polynomials live in different variable spaces".into()));
        }
        if self.ring != o.ring {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.ring.add(existing, &c);
                if self.ring.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert!(self.check_compatible(o).is_ok());
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.ring.neg(c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert!(self.check_compatible(o).is_ok());
        let mut out = Self::zero(self.space, &self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), self.ring.mul(ca, cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero(self.space, &self.ring);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), self.ring.mul(a, c));
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&self.ring.from_rational(q.clone()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            space: self.space,
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.space, &self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let n = self.space.len();
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Monomial::one(n) };
        let mut m = first.clone();
        for k in it {
            for (a, b) in m.0.iter_mut().zip(&k.0) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    /// Divides every term by `m`, which must divide all of them.
    pub fn div_monomial(&self, m: &Monomial) -> Self {
        Self {
            space: self.space,
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, c)| (m.quotient_of(k), c.clone())).collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    /// Needs the leading coefficient of `d` to be invertible.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (lm, lc) = d.leading()?;
        let lc_inv = self.ring.inv(lc)?;
        let mut rem = self.clone();
        let mut q = Self::zero(self.space, &self.ring);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let t = Self::term(self.space, &self.ring, lm.quotient_of(m), self.ring.mul(c, &lc_inv));
            rem = rem.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Coefficients of powers of variable `v`: `self = sum_i out[i] * v^i`.
    pub fn coefficients_in(&self, v: usize) -> Vec<Self> {
        let mut out = vec![Self::zero(self.space, &self.ring); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let mut k = m.clone();
            let e = k.0[v] as usize;
            k.0[v] = 0;
            out[e].add_term(k, c.clone());
        }
        out
    }

    pub fn eval(&self, point: &[Coeff]) -> Coeff {
        let r = &self.ring;
        let mut acc = r.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = r.mul(&t, &r.pow(x, e));
                }
            }
            acc = r.add(&acc, &t);
        }
        acc
    }

    /// Evaluation at a rational point (coefficients must be rational).
    pub fn eval_rational(&self, point: &[Rational]) -> Option<Rational> {
        let pt: Vec<Coeff> = point.iter().map(|q| self.ring.from_rational(q.clone())).collect();
        self.ring.as_rational(&self.eval(&pt))
    }

    /// Replaces variable `i` by `images[i]` (all in a common target space).
    pub fn substitute(&self, images: &[Self]) -> Self {
        let target = &images[0];
        let mut cache: Vec<Vec<Self>> = images.iter().map(|p| vec![Self::one(p.space, &p.ring), p.clone()]).collect();
        let mut out = Self::zero(target.space, &target.ring);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target.space, &target.ring, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap().mul(&images[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Same polynomial viewed over a larger variable space, shifting additive
    /// variables to start at `x_offset` and torus variables at `y_offset`.
    pub fn embed(&self, space: VarSpace, x_offset: usize, y_offset: usize) -> Self {
        let mut out = Self::zero(space, &self.ring);
        for (m, c) in &self.terms {
            let mut e = vec![0; space.len()];
            for (i, &v) in m.0.iter().enumerate() {
                let j = if i < self.space.additive {
                    x_offset + i
                } else {
                    space.additive + y_offset + i - self.space.additive
                };
                e[j] = v;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn with_ring(&self, ring: &Arc<CoeffRing>) -> Result<Self> {
        if !self.ring.is_rationals() && self.ring != *ring {
            return Err(Error::FieldMismatch);
        }
        let mut out = Self::zero(self.space, ring);
        for (m, c) in &self.terms {
            let q = self.ring.as_rational(c).ok_or(Error::FieldMismatch)?;
            out.add_term(m.clone(), ring.from_rational(q));
        }
        Ok(out)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let n = self.space.name(i);
                    if e == 1 { n } else { format!("{n}^{e}") }
                })
                .collect();
            let (neg, mag) = match self.ring.as_rational(c) {
                Some(q) if q < Rational::from_integer(0.into()) => (true, self.ring.from_rational(-q)),
                _ => (false, c.clone()),
            };
            let coef = self.ring.format(&mag);
            let body = if vars.is_empty() {
                coef
            } else if self.ring.is_one(&mag) {
                vars.join("*")
            } else {
                format!("{coef}*{}", vars.join("*"))
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q() -> Arc<CoeffRing> {
        CoeffRing::rationals()
    }

    #[test]
    fn arithmetic_and_display() {
        let s = VarSpace::new(2, 1);
        let x1 = MPoly::var(s, &q(), 0);
        let x2 = MPoly::var(s, &q(), 1);
        let y1 = MPoly::var(s, &q(), 2);
        let p = x1.pow(2).sub(&x2.scale_rational(&rat(3))).add(&y1);
        assert_eq!(p.to_string(), "x1^2 - 3*x2 + y1");
        let sq = x1.add(&x2).pow(2);
        assert_eq!(sq.to_string(), "x1^2 + 2*x1*x2 + x2^2");
        assert_eq!(sq.div_exact(&x1.add(&x2)).unwrap(), x1.add(&x2));
        assert!(sq.div_exact(&x1.sub(&x2)).is_none());
    }

    #[test]
    fn grlex_order() {
        assert!(Monomial(vec![0, 2]) > Monomial(vec![1, 0]));
        assert!(Monomial(vec![1, 1]) > Monomial(vec![0, 2]));
    }

    #[test]
    fn substitution() {
        let s = VarSpace::new(2, 0);
        let x1 = MPoly::var(s, &q(), 0);
        let x2 = MPoly::var(s, &q(), 1);
        // x1*x2 with x1 -> x1 + x2, x2 -> x2
        let p = x1.mul(&x2).substitute(&[x1.add(&x2), x2.clone()]);
        assert_eq!(p, x1.mul(&x2).add(&x2.pow(2)));
        assert_eq!(p.eval_rational(&[rat(2), rat(3)]), Some(rat(15)));
    }
}
