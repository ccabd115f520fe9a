//! Polynomials in `t` whose coefficients are Laurent polynomials in `x`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::LaurentPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct TPoly {
    coeffs: Vec<LaurentPoly>,
}

impl TPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(LaurentPoly::one())
    }

    pub fn constant(p: LaurentPoly) -> Self {
        Self::new(vec![p])
    }

    /// `c * t^i` with `c` a Laurent polynomial.
    pub fn t_monomial(c: LaurentPoly, i: usize) -> Self {
        let mut coeffs = vec![LaurentPoly::zero(); i];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<LaurentPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    /// Builds from `(t-exponent, x-exponent, coefficient)` triples.
    pub fn from_terms(terms: &[(usize, i64, i64)]) -> Self {
        let deg = terms.iter().map(|t| t.0).max().map_or(0, |d| d + 1);
        Self::new(
            (0..deg)
                .map(|i| {
                    LaurentPoly::from_terms(
                        terms.iter().filter(|t| t.0 == i).map(|&(_, e, c)| (e, c)),
                    )
                })
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> LaurentPoly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        TPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![LaurentPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    /// Multiplies every coefficient by a Laurent polynomial in `x`.
    pub fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * p).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift_x(&self, k: i64) -> Self {
        TPoly {
            coeffs: self.coeffs.iter().map(|c| c.shift(k)).collect(),
        }
    }

    /// Substitutes `x -> 1/x` in every coefficient.
    pub fn reverse_x(&self) -> Self {
        TPoly {
            coeffs: self.coeffs.iter().map(LaurentPoly::reverse).collect(),
        }
    }

    /// Smallest and largest `x`-exponent over all coefficients.
    pub fn x_support(&self) -> Option<(i64, i64)> {
        let lo = self.coeffs.iter().filter_map(|c| c.ldeg().ok()).min()?;
        let hi = self.coeffs.iter().filter_map(|c| c.deg().ok()).max()?;
        Some((lo, hi))
    }

    /// If `self = u * other` for a unit `u = ±x^k`, returns `(sign, k)`.
    pub fn unit_ratio(&self, other: &Self) -> Option<(i64, i64)> {
        let a = self.coeffs.iter().find(|c| !c.is_zero())?;
        let b = other.coeffs.iter().find(|c| !c.is_zero())?;
        let k = a.ldeg().ok()? - b.ldeg().ok()?;
        let sign = if a.coeff(a.ldeg().ok()?) == b.coeff(b.ldeg().ok()?) {
            1
        } else if a.coeff(a.ldeg().ok()?) == -b.coeff(b.ldeg().ok()?) {
            -1
        } else {
            return None;
        };
        let candidate = other
            .shift_x(k)
            .mul_laurent(&LaurentPoly::monomial(sign, 0));
        (candidate == *self).then_some((sign, k))
    }

    /// Power-series expansion of `self / den` in `t` up to `t^order`
    /// inclusive. The constant term of `den` must be a unit `±x^k`.
    pub fn series_div(&self, den: &Self, order: usize) -> Result<Vec<LaurentPoly>> {
        let d0 = den.coeff(0);
        let (sign, k) = match (d0.ldeg(), d0.deg()) {
            (Ok(lo), Ok(hi)) if lo == hi && (d0.coeff(lo).is_one() || (-d0.coeff(lo)).is_one()) => {
                (d0.coeff(lo), lo)
            }
            _ => {
                return Err(Error::InvalidArgument(
                    "series expansion needs a unit constant term in t".into(),
                ))
            }
        };
        let mut out: Vec<LaurentPoly> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeff(n);
            for (r, dr) in den.coeffs.iter().enumerate().skip(1).take(n) {
                acc = &acc - &(dr * &out[n - r]);
            }
            out.push(acc.shift(-k).scale(&sign));
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*t^{i}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
