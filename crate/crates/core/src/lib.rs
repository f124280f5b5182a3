pub mod algebraic;
pub mod arith;
pub mod classify;
pub mod error;
pub mod io;
pub mod linalg;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
