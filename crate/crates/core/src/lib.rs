//! Exact invariants of complex algebraic sets at infinity.

pub mod compare;
pub mod cone;
pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod numeric;
pub mod poly;
pub mod topology;

pub use error::{Error, Result};
