//! Recursive-descent parser for rational expressions such as
//! `x1^2/x2 - (a1*x3 + 1/2)/y1^-1`.

use super::mpoly::VarSpace;
use super::rational::MultiRationalFunction;
use super::ring::CoeffRing;
use crate::arith::Rational;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::sync::Arc;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    space: VarSpace,
    ring: &'a Arc<CoeffRing>,
}

/// Parses `input` as a rational function on `space` with coefficients in `ring`.
/// Variables are `x1..xk`, `y1..yl` and ring generators `a1, a2, ...`.
pub fn parse_rational_function(
    input: &str,
    space: VarSpace,
    ring: &Arc<CoeffRing>,
) -> Result<MultiRationalFunction> {
    let mut p = Parser { chars: input.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, space, ring };
    let f = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn constant(&self, q: Rational) -> MultiRationalFunction {
        MultiRationalFunction::constant(self.space, self.ring, self.ring.from_rational(q))
    }

    fn expr(&mut self) -> Result<MultiRationalFunction> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiRationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?)?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|_| self.error("division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiRationalFunction> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiRationalFunction> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let wrapped = self.eat('(');
        let neg = if wrapped { self.eat('-') ^ neg } else { neg };
        let e = self.integer()?;
        if wrapped && !self.eat(')') {
            return Err(self.error("expected ')'"));
        }
        let e: i64 = e.try_into().map_err(|_| self.error("exponent too large"))?;
        base.pow(if neg { -e } else { e }).map_err(|_| self.error("zero to a negative power"))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("bad number"))
    }

    fn index(&mut self) -> Result<usize> {
        self.eat('_');
        let i = self.integer()?;
        let i: usize = i.try_into().map_err(|_| self.error("index too large"))?;
        if i == 0 {
            return Err(self.error("indices start at 1"));
        }
        Ok(i - 1)
    }

    fn atom(&mut self) -> Result<MultiRationalFunction> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.constant(Rational::from_integer(n)))
            }
            Some('x') => {
                self.pos += 1;
                let i = self.index()?;
                if i >= self.space.additive {
                    return Err(self.error("additive variable out of range"));
                }
                Ok(MultiRationalFunction::var(self.space, self.ring, i))
            }
            Some('y') => {
                self.pos += 1;
                let i = self.index()?;
                if i >= self.space.torus {
                    return Err(self.error("torus variable out of range"));
                }
                Ok(MultiRationalFunction::var(self.space, self.ring, self.space.additive + i))
            }
            Some('a') => {
                self.pos += 1;
                let i = self.index()?;
                if i >= self.ring.gens().len() {
                    return Err(self.error("unknown field generator"));
                }
                Ok(MultiRationalFunction::constant(self.space, self.ring, self.ring.generator(i)))
            }
            _ => Err(self.error("unexpected character")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::UnivariatePoly;

    #[test]
    fn round_trips_display() {
        let r = CoeffRing::rationals();
        let s = VarSpace::new(4, 2);
        for src in ["x1^2/x2", "x1/(3*x2) - x3/(2*x4)", "y1 + y2^-1 + y1^(-1) + y2", "2/3*x1 - 7"] {
            let f = parse_rational_function(src, s, &r).unwrap();
            let g = parse_rational_function(&f.to_string(), s, &r).unwrap();
            assert_eq!(f, g, "{src} -> {f}");
        }
    }

    #[test]
    fn field_generators() {
        let k = CoeffRing::new(vec![UnivariatePoly::from_ints(&[-1, -1, 1])]).unwrap();
        let s = VarSpace::new(2, 0);
        let f = parse_rational_function("x1/(a1*x2)", s, &k).unwrap();
        let g = parse_rational_function(&f.to_string(), s, &k).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn errors() {
        let r = CoeffRing::rationals();
        let s = VarSpace::new(1, 0);
        for bad in ["x2", "x1 +", "(x1", "x1/0", "a1", "x0", "x1 $"] {
            assert!(matches!(parse_rational_function(bad, s, &r), Err(Error::Parse(_))), "{bad}");
        }
    }
}
