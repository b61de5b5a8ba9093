//! Exact sparse multivariate polynomials over Q.

mod factor;
mod gcd;
mod linear;
mod monomial;
mod parse;
mod polynomial;
mod ring;
mod squarefree;

pub use factor::{
    essential_variable_count, factor_homogeneous, factor_univariate_integer, FormFactorization,
};
pub use gcd::{content_in, gcd, lcm, primitive_part_in};
pub use linear::{identity, invert, random_invertible, substitute_linear, RationalMatrix};
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use parse::{parse_input, parse_polynomial, ParsedInput};
pub use polynomial::{ArithOp, Degree, Polynomial};
pub use ring::Ring;
pub use squarefree::{squarefree_decomposition, squarefree_part};

/// Coefficients: arbitrary precision rationals, always in lowest terms.
pub type Rational = num_rational::BigRational;

pub(crate) use gcd::integer_gcd;
#[cfg(test)]
pub(crate) use parse::rational;
