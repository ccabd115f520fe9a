//! The folded coefficient table `a_(i,j)` of `L(x, t) G_n(x) G_n(1/x)`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::resolvent::{l_polynomial, solve_component};
use crate::arith::LaurentPoly;
use crate::error::Result;
use crate::stern::g_correlation;
use crate::transfer::SplitChoice;

/// `a_(i,j)` for `0 <= i <= min(deg_t L, m)` and `-(m - i) <= j <= 0`.
/// Positive `x`-powers are folded onto negative ones, so `a_(i,j)` for
/// `j < 0` is the sum of the `x^j` and `x^-j` coefficients of the
/// `t^i` part. Pairs with `|j| > m - i` are dropped because
/// `CT_x h_n(x) x^j = 0` there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    pub n_seed: u32,
    pub m: u64,
    /// `rows[i][d] = a_(i,-d)`.
    pub rows: Vec<Vec<BigInt>>,
}

impl CoeffTable {
    pub fn get(&self, i: usize, j: i64) -> BigInt {
        if j > 0 {
            return BigInt::zero();
        }
        self.rows
            .get(i)
            .and_then(|r| r.get((-j) as usize))
            .cloned()
            .unwrap_or_default()
    }

    /// `(i, j, a_(i,j))` for the nonzero entries.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, &BigInt)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(d, a)| (i, -(d as i64), a)))
            .filter(|(_, _, a)| !a.is_zero())
    }

    /// Number of `(i, j)` constant-term subproblems left after pruning.
    pub fn subproblems(&self) -> usize {
        self.entries().count()
    }

    pub fn from_entries(
        n_seed: u32,
        m: u64,
        entries: impl IntoIterator<Item = (usize, i64, BigInt)>,
    ) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (i, j, a) in entries {
            let d = (-j) as usize;
            if rows.len() <= i {
                rows.resize(i + 1, Vec::new());
            }
            if rows[i].len() <= d {
                rows[i].resize(d + 1, BigInt::zero());
            }
            rows[i][d] = a;
        }
        CoeffTable { n_seed, m, rows }
    }
}

/// `L_i(x) G_n(x) G_n(1/x)` for each `t`-power `i` of `L`.
pub fn expanded_products(n_seed: u32) -> Result<Vec<LaurentPoly>> {
    let l = l_polynomial(&solve_component(n_seed)?)?;
    let corr = g_correlation(n_seed);
    Ok(l.coeffs().iter().map(|li| li.mul(&corr)).collect())
}

/// Smallest and largest `x`-exponent of `L G_n(x) G_n(1/x)` before folding.
pub fn prefold_support(n_seed: u32) -> Result<(i64, i64)> {
    let p = expanded_products(n_seed)?;
    let lo = p.iter().filter_map(|q| q.ldeg().ok()).min().unwrap_or(0);
    let hi = p.iter().filter_map(|q| q.deg().ok()).max().unwrap_or(0);
    Ok((lo, hi))
}

pub fn build_coeff_table(n_seed: u32, m: u64) -> Result<CoeffTable> {
    SplitChoice::new(m, n_seed)?;
    let products = expanded_products(n_seed)?;
    let rows = products
        .iter()
        .enumerate()
        .take_while(|&(i, _)| i as u64 <= m)
        .map(|(i, p)| {
            let reach = (m - i as u64) as i64;
            (0..=reach)
                .map(|d| {
                    if d == 0 {
                        p.coeff(0)
                    } else {
                        p.coeff(d) + p.coeff(-d)
                    }
                })
                .collect()
        })
        .collect();
    Ok(CoeffTable { n_seed, m, rows })
}
