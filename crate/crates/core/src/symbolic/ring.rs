//! Coefficient rings `Q[a1, ..., ar] / (m1(a1), ..., mr(ar))`.
//!
//! With no generators this is the rationals and with one it is a number
//! field. Several generators give a tensor product of number fields, which
//! may have zero divisors; [`CoeffRing::inv`] then fails on them.

use crate::arith::{format_rational, Rational, UnivariatePoly};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use num_traits::{One, Zero};
use std::sync::Arc;

/// Coordinates of a ring element on the monomial basis `a^e`, `e_i < deg m_i`,
/// indexed in mixed radix with `a1` varying fastest.
pub type Coeff = Vec<Rational>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffRing {
    gens: Vec<UnivariatePoly>,
    // reduced[t][e] = a_t^e mod m_t, for e < 2 deg m_t - 1
    reduced: Vec<Vec<Vec<Rational>>>,
}

impl CoeffRing {
    pub fn rationals() -> Arc<Self> {
        Arc::new(Self { gens: Vec::new(), reduced: Vec::new() })
    }

    /// Each generator must be a monic polynomial of positive degree.
    pub fn new(gens: Vec<UnivariatePoly>) -> Result<Arc<Self>> {
        for g in &gens {
            if g.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            if g.degree() < 1 || !g.is_monic() {
                return Err(Error::NotMonic);
            }
        }
        let reduced = gens
            .iter()
            .map(|m| {
                let d = m.degree() as usize;
                (0..2 * d - 1)
                    .map(|e| {
                        let r = UnivariatePoly::monomial(Rational::one(), e).rem(m);
                        (0..d).map(|i| r.coeff(i)).collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Arc::new(Self { gens, reduced }))
    }

    pub fn gens(&self) -> &[UnivariatePoly] {
        &self.gens
    }

    pub fn is_rationals(&self) -> bool {
        self.gens.is_empty()
    }

    fn degs(&self) -> impl Iterator<Item = usize> + '_ {
        self.gens.iter().map(|g| g.degree() as usize)
    }

    pub fn dim(&self) -> usize {
        self.degs().product()
    }

    fn digits(&self, mut i: usize) -> Vec<usize> {
        self.degs()
            .map(|d| {
                let e = i % d;
                i /= d;
                e
            })
            .collect()
    }

    fn index(&self, digits: &[usize]) -> usize {
        let degs: Vec<usize> = self.degs().collect();
        digits.iter().zip(&degs).rev().fold(0, |acc, (e, d)| acc * d + e)
    }

    pub fn zero(&self) -> Coeff {
        vec![Rational::zero(); self.dim()]
    }

    pub fn one(&self) -> Coeff {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, q: Rational) -> Coeff {
        let mut c = self.zero();
        c[0] = q;
        c
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        self.from_rational(Rational::from_integer(n.into()))
    }

    /// The class of `a_{t+1}` (zero-based `t`).
    pub fn generator(&self, t: usize) -> Coeff {
        let mut digits = vec![0; self.gens.len()];
        let mut c = self.zero();
        if self.gens[t].degree() == 1 {
            c[0] = -self.gens[t].coeff(0);
            return c;
        }
        digits[t] = 1;
        c[self.index(&digits)] = Rational::one();
        c
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        a.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self, a: &Coeff) -> Option<Rational> {
        a[1..].iter().all(Zero::is_zero).then(|| a[0].clone())
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        self.as_rational(a).is_some_and(|q| q.is_one())
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        a.iter().map(|x| -x).collect()
    }

    pub fn scale(&self, a: &Coeff, q: &Rational) -> Coeff {
        a.iter().map(|x| x * q).collect()
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        if self.gens.is_empty() {
            return vec![&a[0] * &b[0]];
        }
        // Convolve on the unreduced grid (radix 2d - 1 per generator), then
        // reduce one axis at a time.
        let degs: Vec<usize> = self.degs().collect();
        let mut radix: Vec<usize> = degs.iter().map(|d| 2 * d - 1).collect();
        let wide = |digits: &[usize], radix: &[usize]| {
            digits.iter().zip(radix).rev().fold(0, |acc, (e, r)| acc * r + e)
        };
        let mut grid = vec![Rational::zero(); radix.iter().product()];
        let nonzero = |c: &Coeff| -> Vec<(Vec<usize>, Rational)> {
            c.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (self.digits(i), x.clone()))
                .collect()
        };
        let (na, nb) = (nonzero(a), nonzero(b));
        for (ea, x) in &na {
            for (eb, y) in &nb {
                let sum: Vec<usize> = ea.iter().zip(eb).map(|(p, q)| p + q).collect();
                grid[wide(&sum, &radix)] += x * y;
            }
        }
        for t in 0..degs.len() {
            let mut next_radix = radix.clone();
            next_radix[t] = degs[t];
            let mut next = vec![Rational::zero(); next_radix.iter().product()];
            for (i, v) in grid.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let mut digits = Vec::with_capacity(radix.len());
                let mut rest = i;
                for r in &radix {
                    digits.push(rest % r);
                    rest /= r;
                }
                let row = &self.reduced[t][digits[t]];
                for (e, f) in row.iter().enumerate().filter(|(_, f)| !f.is_zero()) {
                    digits[t] = e;
                    next[wide(&digits, &next_radix)] += v * f;
                }
            }
            grid = next;
            radix = next_radix;
        }
        grid
    }

    pub fn pow(&self, a: &Coeff, mut e: u32) -> Coeff {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Multiplicative inverse, or `None` for zero divisors.
    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        if let Some(q) = self.as_rational(a) {
            return (!q.is_zero()).then(|| self.from_rational(q.recip()));
        }
        let dim = self.dim();
        let cols: Vec<Vec<Rational>> = (0..dim)
            .map(|j| {
                let mut e = self.zero();
                e[j] = Rational::one();
                self.mul(a, &e)
            })
            .collect();
        let m = QMatrix::from_columns(&cols).ok()?;
        let inv = m.inverse().ok()?;
        Some(inv.column(0))
    }

    /// Evaluates `p` at a ring element.
    pub fn eval_poly(&self, p: &UnivariatePoly, at: &Coeff) -> Coeff {
        p.coeffs()
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, at), &self.from_rational(c.clone())))
    }

    /// Renders an element as a polynomial in `a1, a2, ...`.
    pub fn format(&self, a: &Coeff) -> String {
        if let Some(q) = self.as_rational(a) {
            return format_rational(&q);
        }
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in a.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
            let mono: Vec<String> = self
                .digits(i)
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(t, &e)| if e == 1 { format!("a{}", t + 1) } else { format!("a{}^{}", t + 1, e) })
                .collect();
            let body = if mono.is_empty() {
                format_rational(c)
            } else if c.is_one() {
                mono.join("*")
            } else if *c == -Rational::one() {
                format!("-{}", mono.join("*"))
            } else {
                format!("{}*{}", format_rational(c), mono.join("*"))
            };
            terms.push(body);
        }
        let mut s = terms.join(" + ").replace("+ -", "- ");
        if terms.len() > 1 {
            s = format!("({s})");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn number_field_arithmetic() {
        // Q(sqrt 2)
        let k = CoeffRing::new(vec![UnivariatePoly::from_ints(&[-2, 0, 1])]).unwrap();
        let a = k.generator(0);
        assert_eq!(k.as_rational(&k.mul(&a, &a)), Some(rat(2)));
        let b = k.add(&a, &k.one());
        let bi = k.inv(&b).unwrap();
        assert!(k.is_one(&k.mul(&b, &bi)));
        assert_eq!(k.format(&b), "(a1 + 1)");
    }

    #[test]
    fn tensor_algebra() {
        // Q(sqrt 2) (x) Q(i)
        let r = CoeffRing::new(vec![
            UnivariatePoly::from_ints(&[-2, 0, 1]),
            UnivariatePoly::from_ints(&[1, 0, 1]),
        ])
        .unwrap();
        assert_eq!(r.dim(), 4);
        let (a, b) = (r.generator(0), r.generator(1));
        let ab = r.mul(&a, &b);
        assert_eq!(r.as_rational(&r.mul(&ab, &ab)), Some(rat(-2)));
        assert!(r.is_one(&r.mul(&ab, &r.inv(&ab).unwrap())));
        // a1 - a2 with equal generators is a zero divisor
        let same = CoeffRing::new(vec![
            UnivariatePoly::from_ints(&[-2, 0, 1]),
            UnivariatePoly::from_ints(&[-2, 0, 1]),
        ])
        .unwrap();
        let d = same.sub(&same.generator(0), &same.generator(1));
        assert!(same.inv(&d).is_none());
    }

    #[test]
    fn linear_generator_is_rational() {
        let r = CoeffRing::new(vec![UnivariatePoly::from_ints(&[-3, 1])]).unwrap();
        assert_eq!(r.as_rational(&r.generator(0)), Some(rat(3)));
    }
}
