//! Polynomials and rational functions on `G_a^k x G_m^l`, group endomorphisms
//! acting on them, and exact orbit evaluation.

mod endo;
mod gcd;
mod mpoly;
mod parse;
mod rational;
mod ring;

pub use endo::{
    compose_with_endomorphism, compose_with_forms, evaluate_orbit, psi_transform,
    GroupEndomorphism, OrbitPoint, TorusCoords,
};
pub use gcd::mpoly_gcd;
pub use mpoly::{MPoly, Monomial, VarSpace};
pub use parse::parse_rational_function;
pub use rational::{rational_functions_equal, MultiRationalFunction};
pub use ring::{Coeff, CoeffRing};
