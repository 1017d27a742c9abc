//! Exact multivariate polynomials over the rationals.

mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use monomial::Monomial;
pub use parse::parse_polynomial;
pub use polynomial::{Multiplicity, Polynomial};
pub use ring::{MonomialOrder, PolyRing, Ring};

/// Exact rational coefficients, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// Builds the rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
