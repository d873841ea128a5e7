//! Exact polynomial algebra over the rationals.
//!
//! Everything here is exact: coefficients are arbitrary-precision
//! rationals, Gröbner bases are reduced, and dimensions are read off the
//! leading-term ideal.

mod dimension;
mod groebner;
mod ideal;
mod jacobian;
mod monomial;
mod parse;
mod polynomial;

use num_bigint::BigInt;
use thiserror::Error;

pub use dimension::{krull_dimension_of_leading_terms, max_independent_set};
pub use groebner::{groebner_basis, is_groebner_basis, reduce, s_polynomial, GroebnerBudget};
pub use ideal::Ideal;
pub use jacobian::{jacobian_matrix, jacobian_minors, jacobian_minors_ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_polynomial, parse_system, write_system};
pub use polynomial::{EvalRing, Polynomial, Ring};

/// Exact rational coefficient, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("Gröbner budget exhausted: {what} exceeded limit {limit}")]
    Budget { what: &'static str, limit: usize },
    #[error("minor size {size} out of range for a {rows}x{cols} Jacobian")]
    MinorSize { size: usize, rows: usize, cols: usize },
    #[error("variable index {0} out of range")]
    VariableIndex(usize),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

impl AlgebraError {
    pub fn is_resource(&self) -> bool {
        matches!(self, AlgebraError::Budget { .. })
    }
}
