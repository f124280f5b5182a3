//! Exact algebraic numbers with certified isolating boxes, and multiplicative
//! dependence of tuples of them.

mod dependence;
pub mod interval;
mod number;
mod roots;

pub use dependence::{multiplicative_dependence, Dependence, DependenceWitness};
pub use interval::{ComplexBox, ComplexRational, Interval};
pub use number::{product_of_powers, quotient_is_root_of_unity, AlgebraicNumber};
