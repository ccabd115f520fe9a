//! Exact arithmetic: Laurent polynomials over the integers, polynomials in
//! `t` over those, truncated rational power series, and univariate
//! polynomials over the rationals.

mod laurent;
mod series;
mod tpoly;
mod upoly;

pub use laurent::LaurentPoly;
pub use series::{quadratic_series_root, TruncSeries};
pub use tpoly::TPoly;
pub use upoly::{JPoly, UPoly};

/// Reduced fraction of arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

/// Exact `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
