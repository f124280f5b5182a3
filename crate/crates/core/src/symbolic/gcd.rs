//! Multivariate gcd over the rationals by recursive primitive remainder sequences.

use super::mpoly::{MPoly, Monomial};
use crate::arith::{lcm_denominators, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Monic (in graded-lex order) gcd of two polynomials with rational coefficients.
pub fn mpoly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    debug_assert!(a.ring().is_rationals());
    let g = gcd_rec(a, b);
    match g.leading() {
        Some((_, lc)) => {
            let inv = g.ring().inv(lc).expect("nonzero rational");
            g.scale(&inv)
        }
        None => g,
    }
}

fn one_like(p: &MPoly) -> MPoly {
    MPoly::one(p.space(), p.ring())
}

fn main_variable(a: &MPoly, b: &MPoly) -> Option<usize> {
    (0..a.space().len()).find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
}

fn gcd_rec(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return one_like(a);
    }
    let Some(v) = main_variable(a, b) else { return one_like(a) };
    if a.degree_in(v) == 0 {
        return gcd_rec(a, &content(b, v));
    }
    if b.degree_in(v) == 0 {
        return gcd_rec(&content(a, v), b);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd_rec(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        if q.degree_in(v) == 0 {
            // q is a nonzero polynomial free of v while p is primitive in v.
            p = one_like(a);
            break;
        }
        let r = pseudo_remainder(&p, &q, v);
        p = q;
        q = if r.is_zero() { r } else { primitive_part(&r, v) };
    }
    let g = if p.degree_in(v) == 0 { one_like(a) } else { primitive_part(&p, v) };
    c.mul(&g)
}

fn content(p: &MPoly, v: usize) -> MPoly {
    let mut g = MPoly::zero(p.space(), p.ring());
    for c in p.coefficients_in(v).into_iter().filter(|c| !c.is_zero()) {
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return one_like(p);
        }
    }
    g
}

/// Primitive in `v`, scaled to coprime integer coefficients. Without the
/// scaling, pseudo-remainders of univariate inputs grow exponentially.
fn primitive_part(p: &MPoly, v: usize) -> MPoly {
    integer_primitive(&p.div_exact(&content(p, v)).expect("content divides"))
}

fn integer_primitive(p: &MPoly) -> MPoly {
    let ring = p.ring();
    let coeffs: Vec<Rational> = p.terms().filter_map(|(_, c)| ring.as_rational(c)).collect();
    let l = lcm_denominators(&coeffs);
    let g = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(&(c * Rational::from_integer(l.clone())).to_integer()));
    if g.is_zero() {
        return p.clone();
    }
    p.scale_rational(&Rational::new(l, g))
}

fn pseudo_remainder(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let db = b.degree_in(v);
    let lcb = b.coefficients_in(v).pop().expect("nonzero");
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lcr = r.coefficients_in(v).pop().expect("nonzero");
        let mut shift = Monomial::one(a.space().len());
        shift.0[v] = dr - db;
        r = lcb.mul(&r).sub(&lcr.mul(&b.mul_monomial(&shift)));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::symbolic::{CoeffRing, VarSpace};

    #[test]
    fn recovers_common_factor() {
        let r = CoeffRing::rationals();
        let s = VarSpace::new(3, 0);
        let x = MPoly::var(s, &r, 0);
        let y = MPoly::var(s, &r, 1);
        let z = MPoly::var(s, &r, 2);
        let common = x.mul(&y).sub(&z.scale_rational(&rat(2))).add(&MPoly::one(s, &r));
        let a = common.mul(&x.add(&z)).scale_rational(&rat(6));
        let b = common.mul(&y.pow(2).sub(&x)).scale_rational(&rat(4));
        let g = mpoly_gcd(&a, &b);
        let lc = common.leading().unwrap().1.clone();
        assert_eq!(g, common.scale(&r.inv(&lc).unwrap()));
    }

    #[test]
    fn coprime_inputs() {
        let r = CoeffRing::rationals();
        let s = VarSpace::new(2, 0);
        let x = MPoly::var(s, &r, 0);
        let y = MPoly::var(s, &r, 1);
        assert_eq!(mpoly_gcd(&x.add(&y), &x.sub(&y)), MPoly::one(s, &r));
        assert_eq!(mpoly_gcd(&x.pow(2).mul(&y), &x.mul(&y.pow(3))), x.mul(&y));
    }
}
