//! `U_j` and `V_0` straight from their closed forms in `X(t)`, by truncated
//! series arithmetic. Slow but independent of the recurrences.

use crate::arith::{quadratic_series_root, Rational, TruncSeries};
use crate::error::{Error, Result};

fn ints(c: &[i64]) -> Vec<Rational> {
    c.iter()
        .map(|&v| Rational::from_integer(v.into()))
        .collect()
}

/// The root `X = t + 2t^2 + 6t^3 + ...` of `A X^2 + B X + C = 0` with
/// `A = C = t(t^2 - 3t + 1)` and `B = 2t^3 - 6t^2 + 5t - 1`.
pub fn x_series(order: i64) -> Result<TruncSeries> {
    let a = ints(&[0, 1, -3, 1]);
    let b = ints(&[-1, 5, -6, 2]);
    quadratic_series_root(&a, &b, &a, order)
}

pub(crate) fn poly(c: &[i64], order: i64) -> TruncSeries {
    TruncSeries::from_ints(c, order)
}

/// Evaluates `build(X)` with growing working precision until the result is
/// known through `t^order`.
fn with_precision(
    order: i64,
    build: impl Fn(&TruncSeries, i64) -> Result<TruncSeries>,
) -> Result<TruncSeries> {
    let mut work = order.max(1) + 8;
    loop {
        let x = x_series(work)?;
        let s = build(&x, work)?;
        if s.order() >= order {
            return Ok(s.truncate(order));
        }
        work += order - s.order() + 2;
    }
}

/// `U_j = X^(2-j) / (t (t^2 - 3t + 1)(X - t)(X^2 - 1)(X t - 1))` through
/// `t^order`; valuation `-j-1`.
pub fn u_direct(j: i64, order: i64) -> Result<TruncSeries> {
    if j > 0 {
        return Err(Error::InvalidArgument(format!(
            "j must be nonpositive, got {j}"
        )));
    }
    if order < -j - 1 {
        return Err(Error::Truncation {
            requested: -j - 1,
            order,
        });
    }
    with_precision(order, |x, w| {
        let t = poly(&[0, 1], w);
        let one = poly(&[1], w);
        let den = poly(&[0, 1, -3, 1], w)
            .mul(&x.sub(&t))
            .mul(&x.mul(x).sub(&one))
            .mul(&x.mul(&t).sub(&one));
        x.pow((2 - j) as u32).div(&den)
    })
}

/// `V_0 = -X / ((t^2 - 3t + 1)(X - t)(X t - 1)(t^2 - 1))` through
/// `t^order`; valuation `-1`.
pub fn v_direct(order: i64) -> Result<TruncSeries> {
    if order < -1 {
        return Err(Error::Truncation {
            requested: -1,
            order,
        });
    }
    with_precision(order, |x, w| {
        let t = poly(&[0, 1], w);
        let one = poly(&[1], w);
        let den = poly(&[1, -3, 1], w)
            .mul(&x.sub(&t))
            .mul(&x.mul(&t).sub(&one))
            .mul(&poly(&[-1, 0, 1], w));
        x.neg().div(&den)
    })
}
