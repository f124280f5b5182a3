//! The Dense/Fibration dichotomy for dominant endomorphisms of `G_a^k x G_m^l`.

mod additive;
mod builders;
mod forms;
mod torus;

pub use additive::classify_additive;
pub use builders::{build_invariant_case2, build_invariant_case3, BlockRef};
pub use torus::classify_torus;

use crate::algebraic::{multiplicative_dependence, AlgebraicNumber, Dependence};
use crate::arith::primes::primes;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::symbolic::{GroupEndomorphism, MultiRationalFunction, OrbitPoint};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;

/// Which construction produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// One block of size two and dependent eigenvalues: a monomial.
    Case1,
    /// Two blocks of size two.
    Case2,
    /// A block of size at least three.
    Case3,
    DiagonalMonomial,
    TorusCharacterOrbit,
    DenseAdditive,
    DenseTorus,
    DenseMixed,
}

impl Provenance {
    pub const ALL: [Provenance; 8] = [
        Provenance::Case1,
        Provenance::Case2,
        Provenance::Case3,
        Provenance::DiagonalMonomial,
        Provenance::TorusCharacterOrbit,
        Provenance::DenseAdditive,
        Provenance::DenseTorus,
        Provenance::DenseMixed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Provenance::Case1 => "Case1",
            Provenance::Case2 => "Case2",
            Provenance::Case3 => "Case3",
            Provenance::DiagonalMonomial => "DiagonalMonomial",
            Provenance::TorusCharacterOrbit => "TorusCharacterOrbit",
            Provenance::DenseAdditive => "DenseAdditive",
            Provenance::DenseTorus => "DenseTorus",
            Provenance::DenseMixed => "DenseMixed",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == s)
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Limitations attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Caveat {
    /// No relation among the additive eigenvalues with exponents up to the
    /// bound, without a proof of independence.
    EigenvaluesIndependentUpToBound(u32),
    /// Same for the eigenvalues together with the torus witness primes.
    WitnessIndependentUpToBound(u32),
}

impl fmt::Display for Caveat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Caveat::EigenvaluesIndependentUpToBound(b) => {
                write!(f, "eigenvalues independent up to bound {b}")
            }
            Caveat::WitnessIndependentUpToBound(b) => {
                write!(f, "eigenvalues and witness primes independent up to bound {b}")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoordinateSystem {
    /// Coordinates of a rational Jordan basis of the additive matrix.
    JordanCoordinates,
    OriginalCoordinates,
}

/// A point whose orbit is claimed to be Zariski dense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPoint {
    pub additive: Vec<Rational>,
    /// Pairwise distinct primes.
    pub torus: Vec<u64>,
    pub coordinate_system: CoordinateSystem,
}

impl WitnessPoint {
    /// The point as an orbit start (torus part in exponent form).
    /// Only meaningful in original coordinates.
    pub fn to_orbit_point(&self) -> Result<OrbitPoint> {
        let torus = self.torus.iter().map(|&p| Rational::from_integer(p.into())).collect();
        OrbitPoint::new(self.additive.clone(), torus)
    }
}

/// An invariant rational function. Its coefficient ring is generated by
/// `a1, a2, ...` standing for the listed algebraic numbers.
#[derive(Clone, Debug)]
pub struct FibrationWitness {
    pub function: MultiRationalFunction,
    pub generators: Vec<AlgebraicNumber>,
}

#[derive(Clone, Debug)]
pub enum VerdictKind {
    Dense(WitnessPoint),
    Fibration(FibrationWitness),
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub provenance: Provenance,
    pub caveats: Vec<Caveat>,
}

impl Verdict {
    pub fn is_dense(&self) -> bool {
        matches!(self.kind, VerdictKind::Dense(_))
    }

    pub fn is_fibration(&self) -> bool {
        matches!(self.kind, VerdictKind::Fibration(_))
    }

    pub fn function(&self) -> Option<&MultiRationalFunction> {
        match &self.kind {
            VerdictKind::Fibration(w) => Some(&w.function),
            VerdictKind::Dense(_) => None,
        }
    }

    pub fn witness_point(&self) -> Option<&WitnessPoint> {
        match &self.kind {
            VerdictKind::Dense(p) => Some(p),
            VerdictKind::Fibration(_) => None,
        }
    }
}

/// First `count` primes dividing none of `avoid`.
fn primes_avoiding(count: usize, avoid: &[BigInt]) -> Vec<u64> {
    primes()
        .filter(|&p| {
            let p = BigInt::from(p);
            avoid.iter().all(|n| n.is_zero() || !n.is_multiple_of(&p))
        })
        .take(count)
        .collect()
}

/// Classifies `phi`: an invariant of either factor lifts to the product;
/// otherwise the product of the two dense witnesses, with torus primes
/// chosen away from the norms of the additive eigenvalues.
pub fn classify(phi: &GroupEndomorphism, bound: u32) -> Result<Verdict> {
    let space = phi.space();
    let additive = if space.additive > 0 {
        let outcome = additive::analyze(phi.additive(), bound)?;
        if let VerdictKind::Fibration(w) = &outcome.verdict.kind {
            return Ok(lift(w, outcome.verdict.provenance, outcome.verdict.caveats.clone(), phi));
        }
        Some(outcome)
    } else {
        None
    };
    if space.torus > 0 {
        let tv = classify_torus(phi.torus())?;
        if let VerdictKind::Fibration(w) = &tv.kind {
            return Ok(lift(w, tv.provenance, tv.caveats.clone(), phi));
        }
    }
    let (point, eigenvalues, norms, mut caveats) = match additive {
        Some(a) => {
            let VerdictKind::Dense(p) = a.verdict.kind else { unreachable!("fibrations returned above") };
            (p.additive, a.eigenvalues, a.norms, a.verdict.caveats)
        }
        None => (Vec::new(), Vec::new(), Vec::new(), Vec::new()),
    };
    let avoid: Vec<BigInt> = norms.iter().flat_map(|q| [q.numer().abs(), q.denom().abs()]).collect();
    let torus = primes_avoiding(space.torus, &avoid);
    if !eigenvalues.is_empty() && !torus.is_empty() {
        let mut all = eigenvalues;
        all.extend(torus.iter().map(|&p| AlgebraicNumber::from_rational(Rational::from_integer(p.into()))));
        match multiplicative_dependence(&all, bound)? {
            Dependence::Independent => {}
            Dependence::IndependentUpToBound => caveats.push(Caveat::WitnessIndependentUpToBound(bound)),
            Dependence::Dependent(w) => {
                return Err(Error::Unsupported(format!(
                    "witness primes satisfy the relation {:?} with the eigenvalues",
                    w.exponents()
                )))
            }
        }
    }
    let provenance = match (space.additive, space.torus) {
        (_, 0) => Provenance::DenseAdditive,
        (0, _) => Provenance::DenseTorus,
        _ => Provenance::DenseMixed,
    };
    Ok(Verdict {
        kind: VerdictKind::Dense(WitnessPoint {
            additive: point,
            torus,
            coordinate_system: CoordinateSystem::OriginalCoordinates,
        }),
        provenance,
        caveats,
    })
}

/// Pulls a witness on one factor back to the whole group.
fn lift(w: &FibrationWitness, provenance: Provenance, caveats: Vec<Caveat>, phi: &GroupEndomorphism) -> Verdict {
    Verdict {
        kind: VerdictKind::Fibration(FibrationWitness {
            function: w.function.embed(phi.space(), 0, 0),
            generators: w.generators.clone(),
        }),
        provenance,
        caveats,
    }
}
