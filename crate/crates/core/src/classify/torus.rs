use super::{CoordinateSystem, FibrationWitness, Provenance, Verdict, VerdictKind, WitnessPoint};
use crate::arith::cyclotomic::cyclotomic_order_unchecked;
use crate::arith::factor_over_rationals;
use crate::arith::primes::primes;
use crate::error::{Error, Result};
use crate::linalg::{char_poly, default_max_period, fixed_character, ZMatrix};
use crate::symbolic::{CoeffRing, MultiRationalFunction, VarSpace};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Classifies the torus map `y -> y^a2`. With a root of unity among the
/// eigenvalues the sum of the characters in the cycle of a fixed character
/// is invariant; otherwise the first primes give a dense orbit.
pub fn classify_torus(a2: &ZMatrix) -> Result<Verdict> {
    if !a2.is_square() {
        return Err(Error::NotSquare { rows: a2.rows(), cols: a2.cols() });
    }
    let l = a2.rows();
    if a2.determinant()?.is_zero() {
        return Err(Error::DominanceViolation("torus matrix is singular".into()));
    }
    let cp = char_poly(&a2.to_rational())?;
    let cyclotomic = l > 0
        && factor_over_rationals(&cp)?
            .factors
            .iter()
            .any(|(f, _)| cyclotomic_order_unchecked(&f.monic()).is_some());
    if !cyclotomic {
        return Ok(Verdict {
            kind: VerdictKind::Dense(WitnessPoint {
                additive: Vec::new(),
                torus: primes().take(l).collect(),
                coordinate_system: CoordinateSystem::OriginalCoordinates,
            }),
            provenance: Provenance::DenseTorus,
            caveats: Vec::new(),
        });
    }
    let (w, period) = fixed_character(a2, default_max_period(l))?
        .ok_or_else(|| Error::Unsupported("no fixed character below the period bound".into()))?;
    let space = VarSpace::new(0, l);
    let ring = CoeffRing::rationals();
    let step = a2.transpose();
    let mut seen: Vec<Vec<BigInt>> = Vec::new();
    let mut current = w;
    for _ in 0..period {
        if !seen.contains(&current) {
            seen.push(current.clone());
        }
        current = step.mul_vec(&current)?;
    }
    let mut f = MultiRationalFunction::constant(space, &ring, ring.zero());
    for chi in &seen {
        let exps = chi
            .iter()
            .map(|e| e.to_i64().ok_or_else(|| Error::Unsupported("character exponent too large".into())))
            .collect::<Result<Vec<_>>>()?;
        f = f.add(&MultiRationalFunction::laurent_monomial(space, &ring, &[], &exps))?;
    }
    Ok(Verdict {
        kind: VerdictKind::Fibration(FibrationWitness { function: f, generators: Vec::new() }),
        provenance: Provenance::TorusCharacterOrbit,
        caveats: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse_rational_function;

    fn z(rows: &[Vec<i64>]) -> ZMatrix {
        ZMatrix::from_i64(rows).unwrap()
    }

    fn parsed(src: &str, l: usize) -> MultiRationalFunction {
        parse_rational_function(src, VarSpace::new(0, l), &CoeffRing::rationals()).unwrap()
    }

    #[test]
    fn examples() {
        let v = classify_torus(&z(&[vec![1, 1], vec![0, 1]])).unwrap();
        assert_eq!(v.function(), Some(&parsed("y2", 2)));
        let v = classify_torus(&z(&[vec![0, 1], vec![1, 1]])).unwrap();
        assert_eq!(v.witness_point().unwrap().torus, vec![2, 3]);
        let v = classify_torus(&z(&[vec![0, -1], vec![1, 0]])).unwrap();
        assert_eq!(v.function(), Some(&parsed("y1 + y2^-1 + y1^-1 + y2", 2)));
    }

    #[test]
    fn inversion_gives_a_two_term_sum() {
        let v = classify_torus(&z(&[vec![-1]])).unwrap();
        assert_eq!(v.function(), Some(&parsed("y1 + y1^-1", 1)));
    }

    #[test]
    fn singular_rejected() {
        assert!(matches!(classify_torus(&z(&[vec![1, 2], vec![2, 4]])), Err(Error::DominanceViolation(_))));
    }
}
