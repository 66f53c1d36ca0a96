//! Exact arithmetic: rationals, sparse multivariate polynomials and the field
//! of rational functions they generate.

mod poly;
mod ratfunc;

pub use poly::{Monomial, MultiPoly};
pub use ratfunc::RatFunc;

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `num/den` as a [`Rational`]; panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
