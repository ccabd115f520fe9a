//! Brute-force definitions: the rows of `F_n` and `G_n`, and the correlation
//! sums `nu`, `omega` and `u_alpha` evaluated straight from the coefficients.
//!
//! Row entries are bounded by `3^n`, so they are held in `u64`; rows that no
//! longer fit in memory are far below that limit.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::LaurentPoly;

/// Largest `n` for which a coefficient row is materialized without an
/// explicit override.
pub const ORACLE_CUTOFF: u32 = 26;

/// `omega(0..=20)` as computed from the definition.
pub const OMEGA_SMALL: [u64; 21] = [
    1,
    3,
    13,
    55,
    249,
    1121,
    5025,
    22607,
    101931,
    460877,
    2088687,
    9482763,
    43109307,
    196163983,
    893222041,
    4069162197,
    18543631161,
    84525140297,
    385343891847,
    1756959373157,
    8011450183181,
];

/// Which of the two products a row belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `F_n = prod (1 + x^(2^i) + x^(2^(i+1)))`
    Stern,
    /// `G_n = prod (1 + x^(2^i + 1) + x^(2^(i+1) + 1))`
    Shifted,
}

impl Family {
    fn factor_exponents(self, i: u32) -> (usize, usize) {
        let (a, b) = (1usize << i, 1usize << (i + 1));
        match self {
            Family::Stern => (a, b),
            Family::Shifted => (a + 1, b + 1),
        }
    }

    /// Closed-form degree of the `n`-th row.
    pub fn degree(self, n: u32) -> u64 {
        let base = (1u64 << (n + 1)) - 2;
        match self {
            Family::Stern => base,
            Family::Shifted => base + n as u64,
        }
    }
}

/// Coefficients of `F_n` or `G_n`, indexed by exponent from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffRow {
    pub n: u32,
    pub family: Family,
    pub coeffs: Vec<u64>,
}

impl CoeffRow {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(0, self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `sum_k c_k^2`.
    pub fn sum_of_squares(&self) -> BigInt {
        let mut acc: u128 = 0;
        let mut overflow = BigUint::zero();
        for &c in &self.coeffs {
            let sq = (c as u128) * (c as u128);
            match acc.checked_add(sq) {
                Some(v) => acc = v,
                None => {
                    overflow += BigUint::from(acc);
                    acc = sq;
                }
            }
        }
        BigInt::from(overflow + BigUint::from(acc))
    }
}

fn build_row(family: Family, n: u32) -> CoeffRow {
    let mut coeffs = vec![1u64];
    for i in 0..n {
        let (a, b) = family.factor_exponents(i);
        let len = coeffs.len() + b;
        let mut next = vec![0u64; len];
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            next[k] += c;
            next[k + a] += c;
            next[k + b] += c;
        }
        coeffs = next;
    }
    CoeffRow { n, family, coeffs }
}

/// Row of Stern's triangle: the coefficients of `F_n`.
pub fn f_poly(n: u32) -> CoeffRow {
    build_row(Family::Stern, n)
}

/// Coefficients of `G_n`.
pub fn g_poly(n: u32) -> CoeffRow {
    build_row(Family::Shifted, n)
}

pub fn nu_def(n: u32) -> BigInt {
    f_poly(n).sum_of_squares()
}

pub fn omega_def(n: u32) -> BigInt {
    g_poly(n).sum_of_squares()
}

/// `sum_k a(n,k)^alpha_0 * a(n,k+1)^alpha_1 * ...` over the row of `F_n`.
/// Indices outside the row contribute `0^alpha_i`, with `0^0 = 1`.
pub fn u_alpha_def(alpha: &[u32], n: u32) -> BigInt {
    assert!(!alpha.is_empty(), "alpha must be nonempty");
    let row = f_poly(n).coeffs;
    let len = row.len() as i64;
    let window = alpha.len() as i64;
    let at = |k: i64| -> u64 {
        if (0..len).contains(&k) {
            row[k as usize]
        } else {
            0
        }
    };
    // an all-zero alpha would make every k contribute 1
    assert!(
        alpha.iter().any(|&a| a > 0),
        "u_alpha needs a positive exponent"
    );
    let mut total = BigInt::zero();
    for k in (1 - window)..len {
        let mut term = BigInt::one();
        for (i, &a) in alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let c = at(k + i as i64);
            if c == 0 {
                term = BigInt::zero();
                break;
            }
            term *= BigInt::from(c).pow(a);
        }
        total += term;
    }
    total
}

/// `G_n(x) * G_n(1/x)`, built one seven-term factor at a time.
pub fn g_correlation(n: u32) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for i in 0..n {
        let (a, b) = Family::Shifted.factor_exponents(i);
        let (a, b) = (a as i64, b as i64);
        let factor = LaurentPoly::from_terms([(0, 1), (a, 1), (b, 1)]);
        acc = acc.mul(&factor).mul(&factor.reverse());
    }
    acc
}
