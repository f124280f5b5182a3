//! Independent checks of verdicts: symbolic invariance, orbit rank tests and
//! orbit growth.

mod density;
mod growth;

pub use density::{
    density_check, density_check_with, monomials_up_to, suffix_density_check, DensityOptions,
    DensityOutcome, DensityReport, RankMethod,
};
pub use growth::{growth_check, growth_verdict, GrowthReport, GrowthVerdict};

use crate::classify::{Verdict, VerdictKind};
use crate::error::{Error, Result};
use crate::symbolic::{compose_with_endomorphism, GroupEndomorphism, MPoly, MultiRationalFunction};

/// Result of [`verify_invariant`]. The certificate is the numerator of the
/// normalized `f o phi - f`, zero exactly when `holds`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub holds: bool,
    pub certificate: MPoly,
}

/// Checks `f o phi = f` exactly. Constant functions are not witnesses.
pub fn verify_invariant(phi: &GroupEndomorphism, f: &MultiRationalFunction) -> Result<InvariantCheck> {
    if f.is_constant() {
        return Err(Error::InvalidWitness("constant function".into()));
    }
    let g = compose_with_endomorphism(f, phi)?;
    let diff = g.sub(f)?;
    let certificate = diff.numerator().clone();
    Ok(InvariantCheck { holds: certificate.is_zero(), certificate })
}

/// Outcome of checking a whole verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerdictCheck {
    Invariant(InvariantCheck),
    Density(DensityReport),
}

impl VerdictCheck {
    pub fn passed(&self) -> bool {
        match self {
            VerdictCheck::Invariant(c) => c.holds,
            VerdictCheck::Density(r) => r.outcome == DensityOutcome::FullRank,
        }
    }
}

/// Runs [`verify_invariant`] on fibrations and [`density_check`] on dense verdicts.
pub fn check_verdict(phi: &GroupEndomorphism, verdict: &Verdict, degree: u32, steps: usize) -> Result<VerdictCheck> {
    match &verdict.kind {
        VerdictKind::Fibration(w) => Ok(VerdictCheck::Invariant(verify_invariant(phi, &w.function)?)),
        VerdictKind::Dense(p) => Ok(VerdictCheck::Density(density_check(phi, p, degree, steps)?)),
    }
}
