//! The middle component of `(I - B t)^(-1) v` as an explicit rational
//! function, and its factorization into `L(x, t) H(x, t)`.

use num_bigint::BigInt;

use crate::arith::{LaurentPoly, TPoly};
use crate::error::{Error, Result};
use crate::transfer::TRANSFER_B;

/// Largest seed the resolvent accepts; `x`-exponents are `±2^(n+1)`.
pub const MAX_RESOLVENT_SEED: u32 = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateRational {
    pub numerator: TPoly,
    pub denominator: TPoly,
}

impl BivariateRational {
    /// Power series in `t` up to `t^order`.
    pub fn expand(&self, order: usize) -> Result<Vec<LaurentPoly>> {
        self.numerator.series_div(&self.denominator, order)
    }

    /// `value(x) = value(1/x)` as an identity of rational functions.
    pub fn is_x_symmetric(&self) -> bool {
        self.numerator.mul(&self.denominator.reverse_x())
            == self.numerator.reverse_x().mul(&self.denominator)
    }
}

/// `I - B t` with entries in `Z[x, 1/x][t]`.
pub fn resolvent_matrix() -> Vec<Vec<TPoly>> {
    (0..5)
        .map(|r| {
            (0..5)
                .map(|c| {
                    let b = LaurentPoly::from_terms(TRANSFER_B[r][c].iter().copied());
                    let id = if r == c {
                        LaurentPoly::one()
                    } else {
                        LaurentPoly::zero()
                    };
                    TPoly::new(vec![id, -b])
                })
                .collect()
        })
        .collect()
}

/// Laplace expansion along the first row.
pub fn determinant(m: &[Vec<TPoly>]) -> TPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = TPoly::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let term = m[0][c].mul(&determinant(&minor(m, 0, c)));
        acc = if c % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

fn minor(m: &[Vec<TPoly>], row: usize, col: usize) -> Vec<Vec<TPoly>> {
    m.iter()
        .enumerate()
        .filter(|&(r, _)| r != row)
        .map(|(_, cells)| {
            cells
                .iter()
                .enumerate()
                .filter(|&(c, _)| c != col)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect()
}

/// Cramer's rule for the middle unknown, with the replaced column expanded
/// by cofactors: `numerator = sum_r (-1)^(r+2) v_r M_(r,2)`.
pub fn solve_component(n_seed: u32) -> Result<BivariateRational> {
    if n_seed == 0 || n_seed > MAX_RESOLVENT_SEED {
        return Err(Error::InvalidArgument(format!(
            "seed must be in 1..={MAX_RESOLVENT_SEED}, got {n_seed}"
        )));
    }
    let m = resolvent_matrix();
    let step = 1i64 << n_seed;
    let mut numerator = TPoly::zero();
    for r in 0..5 {
        let cof = determinant(&minor(&m, r, 2));
        let v = LaurentPoly::monomial(1, (r as i64 - 2) * step);
        let term = cof.mul_laurent(&v);
        numerator = if r % 2 == 0 {
            numerator.add(&term)
        } else {
            numerator.sub(&term)
        };
    }
    Ok(BivariateRational {
        numerator,
        denominator: determinant(&m),
    })
}

/// `-(t/x - 1)(t x - 1) f3` with
/// `f3 = (t^3 - 3t^2 + t) x + (2t^3 - 6t^2 + 5t - 1) + (t^3 - 3t^2 + t) / x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HFactorization {
    pub factor1: TPoly,
    pub factor2: TPoly,
    pub factor3: TPoly,
    pub sign: i64,
}

impl HFactorization {
    pub fn new() -> Self {
        HFactorization {
            factor1: TPoly::from_terms(&[(1, -1, 1), (0, 0, -1)]),
            factor2: TPoly::from_terms(&[(1, 1, 1), (0, 0, -1)]),
            factor3: TPoly::from_terms(&[
                (1, 1, 1),
                (2, 1, -3),
                (3, 1, 1),
                (0, 0, -1),
                (1, 0, 5),
                (2, 0, -6),
                (3, 0, 2),
                (1, -1, 1),
                (2, -1, -3),
                (3, -1, 1),
            ]),
            sign: -1,
        }
    }

    /// The denominator of `H`.
    pub fn product(&self) -> TPoly {
        self.factor1
            .mul(&self.factor2)
            .mul(&self.factor3)
            .scale(&BigInt::from(self.sign))
    }

    /// `(sign, k)` with `det = sign * x^k * product()`.
    pub fn match_determinant(&self, det: &TPoly) -> Result<(i64, i64)> {
        det.unit_ratio(&self.product()).ok_or_else(|| {
            Error::InvalidArgument("determinant does not match the H factorization".into())
        })
    }

    /// `H = 1 / product()` as a power series in `t`; its `t^n` coefficient
    /// is `h_n(x)`.
    pub fn h_series(&self, order: usize) -> Result<Vec<LaurentPoly>> {
        TPoly::one().series_div(&self.product(), order)
    }
}

impl Default for HFactorization {
    fn default() -> Self {
        Self::new()
    }
}

/// `L(x, t)` such that the solved component equals `L * H`.
pub fn l_polynomial(sol: &BivariateRational) -> Result<TPoly> {
    let (sign, k) = HFactorization::new().match_determinant(&sol.denominator)?;
    let l = sol.numerator.shift_x(-k).scale(&BigInt::from(sign));
    if l.coeff(0) != LaurentPoly::one() {
        return Err(Error::InvalidArgument("L does not start with 1".into()));
    }
    Ok(l)
}
