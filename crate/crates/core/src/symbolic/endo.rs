use super::mpoly::{MPoly, Monomial, VarSpace};
use super::rational::MultiRationalFunction;
use super::ring::CoeffRing;
use crate::arith::primes::is_prime_u64;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, ZMatrix};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::Arc;

/// `x -> additive * x` on the additive factor and `y_i -> prod_j y_j^torus[i][j]`
/// on the torus factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupEndomorphism {
    additive: QMatrix,
    torus: ZMatrix,
}

impl GroupEndomorphism {
    /// Both matrices must be square and nonsingular (possibly empty).
    pub fn new(additive: QMatrix, torus: ZMatrix) -> Result<Self> {
        if !additive.is_square() {
            return Err(Error::NotSquare { rows: additive.rows(), cols: additive.cols() });
        }
        if !torus.is_square() {
            return Err(Error::NotSquare { rows: torus.rows(), cols: torus.cols() });
        }
        if additive.determinant()?.is_zero() {
            return Err(Error::DominanceViolation("additive matrix is singular".into()));
        }
        if torus.determinant()?.is_zero() {
            return Err(Error::DominanceViolation("torus matrix is singular".into()));
        }
        Ok(Self { additive, torus })
    }

    pub fn additive(&self) -> &QMatrix {
        &self.additive
    }

    pub fn torus(&self) -> &ZMatrix {
        &self.torus
    }

    pub fn space(&self) -> VarSpace {
        VarSpace::new(self.additive.rows(), self.torus.rows())
    }

    /// The additive action as linear forms over `ring`.
    pub fn linear_forms(&self, ring: &Arc<CoeffRing>) -> Vec<MPoly> {
        let space = self.space();
        (0..space.additive)
            .map(|i| {
                (0..space.additive).fold(MPoly::zero(space, ring), |acc, j| {
                    acc.add(&MPoly::var(space, ring, j).scale_rational(self.additive.get(i, j)))
                })
            })
            .collect()
    }

    pub fn apply(&self, p: &OrbitPoint) -> Result<OrbitPoint> {
        let additive = self.additive.mul_vec(&p.additive)?;
        let torus = match &p.torus {
            TorusCoords::Values(v) => {
                let out = (0..self.torus.rows())
                    .map(|i| {
                        v.iter().enumerate().try_fold(Rational::one(), |acc, (j, y)| {
                            let e = self.torus.get(i, j).to_i32().ok_or_else(|| {
                                Error::Unsupported("torus exponent too large".into())
                            })?;
                            Ok(acc * pow_rational(y, e))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                TorusCoords::Values(out)
            }
            TorusCoords::Exponents { primes, exps } => {
                let e = ZMatrix::from_rows(exps.clone())?;
                let next = self.torus.mul(&e)?;
                TorusCoords::Exponents { primes: primes.clone(), exps: next.to_rows() }
            }
        };
        Ok(OrbitPoint { additive, torus })
    }
}

fn pow_rational(y: &Rational, e: i32) -> Rational {
    let base = if e < 0 { y.recip() } else { y.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// `f(forms(x), y^torus)`: additive variables replaced by the given linear
/// (or arbitrary) forms, torus variables by Laurent monomials.
pub fn compose_with_forms(
    f: &MultiRationalFunction,
    forms: &[MPoly],
    torus: &ZMatrix,
) -> Result<MultiRationalFunction> {
    let space = f.space();
    if forms.len() != space.additive || torus.rows() != space.torus || torus.cols() != space.torus {
        return Err(Error::DimensionMismatch(format!(
            "function on {} + {} variables, map on {} + {}",
            space.additive,
            space.torus,
            forms.len(),
            torus.rows()
        )));
    }
    let ring = f.ring();
    // Laurent exponent of the image of each torus monomial: A2^T b.
    let torus_image = |m: &Monomial| -> Vec<BigInt> {
        (0..space.torus)
            .map(|j| {
                (0..space.torus)
                    .map(|i| torus.get(i, j) * BigInt::from(m.0[space.additive + i]))
                    .sum()
            })
            .collect()
    };
    let mut shift = vec![BigInt::zero(); space.torus];
    for p in [f.numerator(), f.denominator()] {
        for (m, _) in p.terms() {
            for (s, e) in shift.iter_mut().zip(torus_image(m)) {
                if e < *s {
                    *s = e;
                }
            }
        }
    }
    let mut powers: HashMap<(usize, u32), MPoly> = HashMap::new();
    let mut substitute = |p: &MPoly| -> Result<MPoly> {
        let mut out = MPoly::zero(space, ring);
        for (m, c) in p.terms() {
            let mut t = MPoly::constant(space, ring, c.clone());
            for (i, &e) in m.0[..space.additive].iter().enumerate() {
                if e > 0 {
                    let pw = powers.entry((i, e)).or_insert_with(|| forms[i].pow(e));
                    t = t.mul(pw);
                }
            }
            let mut mono = Monomial::one(space.len());
            for (j, (e, s)) in torus_image(m).iter().zip(&shift).enumerate() {
                mono.0[space.additive + j] = (e - s)
                    .to_u32()
                    .ok_or_else(|| Error::Unsupported("torus exponent too large".into()))?;
            }
            out = out.add(&t.mul_monomial(&mono));
        }
        Ok(out)
    };
    let num = substitute(f.numerator())?;
    let den = substitute(f.denominator())?;
    MultiRationalFunction::new(num, den)
}

/// `f o phi`.
pub fn compose_with_endomorphism(
    f: &MultiRationalFunction,
    phi: &GroupEndomorphism,
) -> Result<MultiRationalFunction> {
    if f.space() != phi.space() {
        return Err(Error::DimensionMismatch(format!(
            "function on {:?}, map on {:?}",
            f.space(),
            phi.space()
        )));
    }
    compose_with_forms(f, &phi.linear_forms(f.ring()), phi.torus())
}

/// Torus coordinates as explicit values, or as exponent vectors over a fixed
/// list of primes (`exps[i][p]` is the exponent of `primes[p]` in coordinate `i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusCoords {
    Values(Vec<Rational>),
    Exponents { primes: Vec<u64>, exps: Vec<Vec<BigInt>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPoint {
    pub additive: Vec<Rational>,
    pub torus: TorusCoords,
}

impl OrbitPoint {
    /// Switches to the exponent representation when the torus coordinates are
    /// distinct primes.
    pub fn new(additive: Vec<Rational>, torus: Vec<Rational>) -> Result<Self> {
        if torus.iter().any(Zero::is_zero) {
            return Err(Error::ZeroInput);
        }
        let primes: Option<Vec<u64>> = torus
            .iter()
            .map(|q| q.is_integer().then(|| q.to_integer().to_u64()).flatten().filter(|&p| is_prime_u64(p)))
            .collect();
        let distinct = primes.as_ref().is_some_and(|ps| {
            let mut s = ps.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == ps.len()
        });
        let torus = match primes {
            Some(primes) if distinct && !primes.is_empty() => {
                let n = primes.len();
                let exps = (0..n)
                    .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
                    .collect();
                TorusCoords::Exponents { primes, exps }
            }
            _ => TorusCoords::Values(torus),
        };
        Ok(Self { additive, torus })
    }

    pub fn torus_len(&self) -> usize {
        match &self.torus {
            TorusCoords::Values(v) => v.len(),
            TorusCoords::Exponents { exps, .. } => exps.len(),
        }
    }

    /// Explicit torus values; `None` if some exponent is too large to expand.
    pub fn torus_values(&self) -> Option<Vec<Rational>> {
        match &self.torus {
            TorusCoords::Values(v) => Some(v.clone()),
            TorusCoords::Exponents { primes, exps } => exps
                .iter()
                .map(|row| {
                    row.iter().zip(primes).try_fold(Rational::one(), |acc, (e, &p)| {
                        let e = e.to_i32().filter(|e| e.abs() <= 4096)?;
                        Some(acc * pow_rational(&Rational::from_integer(p.into()), e))
                    })
                })
                .collect(),
        }
    }
}

/// `[alpha, phi(alpha), ..., phi^n(alpha)]`.
pub fn evaluate_orbit(phi: &GroupEndomorphism, alpha: &OrbitPoint, n: usize) -> Result<Vec<OrbitPoint>> {
    let space = phi.space();
    if alpha.additive.len() != space.additive || alpha.torus_len() != space.torus {
        return Err(Error::DimensionMismatch("point does not match the map".into()));
    }
    if let TorusCoords::Values(v) = &alpha.torus {
        if v.iter().any(Zero::is_zero) {
            return Err(Error::ZeroInput);
        }
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(alpha.clone());
    for _ in 0..n {
        let next = phi.apply(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

/// `(x1, x2, ..., xk) -> (lambda * (x1 - x2), x2, ..., xk)` on every point.
pub fn psi_transform(points: &[OrbitPoint], lambda: &Rational) -> Result<Vec<OrbitPoint>> {
    if lambda.is_zero() {
        return Err(Error::ZeroInput);
    }
    points
        .iter()
        .map(|p| {
            if p.additive.len() < 2 {
                return Err(Error::DimensionMismatch("needs at least two additive coordinates".into()));
            }
            let mut q = p.clone();
            q.additive[0] = lambda * (&p.additive[0] - &p.additive[1]);
            Ok(q)
        })
        .collect()
}
