//! Truncated Laurent series in `t` with exact rational coefficients.
//!
//! A series knows its coefficients for exponents up to `order` inclusive;
//! anything above is unknown, and asking for it is an error. Every operation
//! propagates the minimum reliable order of its inputs.

use std::fmt;

use num_traits::{One, Zero};

use super::{Rational, UPoly};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    /// Exponent of `coeffs[0]`; `order + 1` for a series that vanishes up to
    /// its order.
    valuation: i64,
    coeffs: Vec<Rational>,
    order: i64,
}

impl TruncSeries {
    /// `sum_i coeffs[i] * t^(valuation + i) + O(t^(order + 1))`.
    pub fn new(valuation: i64, mut coeffs: Vec<Rational>, order: i64) -> Self {
        let keep = (order - valuation + 1).max(0) as usize;
        coeffs.truncate(keep);
        coeffs.resize(keep, Rational::zero());
        let mut s = TruncSeries {
            valuation,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            None => {
                self.coeffs.clear();
                self.valuation = self.order + 1;
            }
            Some(first) => {
                self.coeffs.drain(..first);
                self.valuation += first as i64;
            }
        }
    }

    pub fn zero(order: i64) -> Self {
        Self::new(order + 1, Vec::new(), order)
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(Rational::one(), 0, order)
    }

    pub fn monomial(c: Rational, e: i64, order: i64) -> Self {
        Self::new(e, vec![c], order)
    }

    /// A polynomial in `t` (coefficients from `t^0`), known up to `order`.
    pub fn from_poly(coeffs: &[Rational], order: i64) -> Self {
        Self::new(0, coeffs.to_vec(), order)
    }

    pub fn from_upoly(p: &UPoly, order: i64) -> Self {
        Self::from_poly(p.coeffs(), order)
    }

    pub fn from_ints(coeffs: &[i64], order: i64) -> Self {
        let c: Vec<Rational> = coeffs
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect();
        Self::from_poly(&c, order)
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Smallest exponent with a nonzero coefficient; `None` when the series
    /// vanishes up to its order.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.valuation)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^e`.
    pub fn coeff(&self, e: i64) -> Result<Rational> {
        if e > self.order {
            return Err(Error::Truncation {
                requested: e,
                order: self.order,
            });
        }
        if e < self.valuation {
            return Ok(Rational::zero());
        }
        Ok(self.coeffs[(e - self.valuation) as usize].clone())
    }

    /// Coefficients for exponents `from..=to`.
    pub fn coeffs_range(&self, from: i64, to: i64) -> Result<Vec<Rational>> {
        (from..=to).map(|e| self.coeff(e)).collect()
    }

    /// Drops knowledge above `order` (a no-op if already coarser).
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        Self::new(self.valuation, self.coeffs.clone(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let val = self.valuation.min(other.valuation).min(order + 1);
        let coeffs = (val..=order)
            .map(|e| self.coeff(e).unwrap() + other.coeff(e).unwrap())
            .collect();
        Self::new(val, coeffs, order)
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(
            self.valuation,
            self.coeffs.iter().map(|a| a * c).collect(),
            self.order,
        )
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        TruncSeries {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.valuation).min(other.order + self.valuation);
        let val = self.valuation + other.valuation;
        if self.is_zero() || other.is_zero() || order < val {
            return Self::zero(order);
        }
        let n = (order - val + 1) as usize;
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(val, out, order)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroSeries);
        }
        let n = self.coeffs.len();
        let a0_inv = self.coeffs[0].recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(a0_inv.clone());
        for k in 1..n {
            let mut s = Rational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    s += &self.coeffs[i] * &out[k - i];
                }
            }
            out.push(-s * &a0_inv);
        }
        Ok(Self::new(
            -self.valuation,
            out,
            self.order - 2 * self.valuation,
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one(self.order - self.valuation.min(self.order));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        result.unwrap()
    }

    /// Reinterprets the stored coefficients as known up to `order`, padding
    /// with zeros. Only sound when the caller knows those terms vanish.
    pub(crate) fn assume_order(&self, order: i64) -> Self {
        Self::new(self.valuation, self.coeffs.clone(), order)
    }

    /// Formal derivative in `t`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rational::from_integer((self.valuation + i as i64).into()))
            .collect();
        Self::new(self.valuation - 1, coeffs, self.order - 1)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*t^{}", self.valuation + i as i64))
            .collect();
        if parts.is_empty() {
            write!(f, "O(t^{})", self.order + 1)
        } else {
            write!(f, "{} + O(t^{})", parts.join(" + "), self.order + 1)
        }
    }
}

fn poly_series(p: &[Rational], order: i64) -> TruncSeries {
    TruncSeries::from_poly(p, order)
}

/// The unique power series `X` with positive valuation solving
/// `a*X^2 + b*X + c = 0`, where `a`, `b`, `c` are polynomials in `t`
/// (coefficient vectors from `t^0`). Requires `c(0) = 0` and `b(0) != 0`;
/// Newton iteration then converges from `X = 0`, doubling the number of
/// correct coefficients per step.
pub fn quadratic_series_root(
    a: &[Rational],
    b: &[Rational],
    c: &[Rational],
    order: i64,
) -> Result<TruncSeries> {
    let at0 = |p: &[Rational]| p.first().cloned().unwrap_or_else(Rational::zero);
    if !at0(c).is_zero() {
        return Err(Error::NoSeriesRoot("constant term of c is nonzero".into()));
    }
    if at0(b).is_zero() {
        return Err(Error::NoSeriesRoot(
            "b vanishes at t = 0, so the branch is not isolated".into(),
        ));
    }
    if order < 1 {
        return Ok(TruncSeries::zero(order.max(0)));
    }
    let mut x = TruncSeries::zero(0);
    let mut known = 0i64;
    while known < order {
        let target = (2 * known + 1).min(order);
        let xt = x.assume_order(target);
        let (fa, fb, fc) = (
            poly_series(a, target),
            poly_series(b, target),
            poly_series(c, target),
        );
        let f = fa.mul(&xt).mul(&xt).add(&fb.mul(&xt)).add(&fc);
        let df = fa
            .scale(&Rational::from_integer(2.into()))
            .mul(&xt)
            .add(&fb);
        let step = f.div(&df)?.truncate(target);
        x = xt.sub(&step);
        known = target;
    }
    Ok(x)
}
