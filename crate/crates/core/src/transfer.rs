//! Conditional transfer-matrix evaluation of `omega`.
//!
//! With `psi_n^(i) = x^(i 2^n) G_n(x) G_n(1/x)` for `i = -2..=2`, the
//! constant terms satisfy `CT Psi_(m+n) = CT B^m Psi_n` whenever
//! `m < 2^n + 2 - n`, where `B` is the fixed 5x5 matrix of Laurent
//! polynomials below. `omega(m + n)` is the constant term of the middle
//! entry.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::LaurentPoly;
use crate::error::{Error, Result};
use crate::stern::g_correlation;

/// Largest seed row index this module will materialize.
pub const MAX_SEED: u32 = 16;

/// One entry of `B`: a sum of `coeff * x^exp` terms, exponents in `-1..=1`.
pub type TransferEntry = &'static [(i64, i64)];

/// The transfer matrix `B`, row-major, entries as `(exponent, coefficient)`.
pub const TRANSFER_B: [[TransferEntry; 5]; 5] = [
    [&[(1, 1)], &[], &[], &[], &[]],
    [&[(0, 3)], &[(0, 1), (1, 1)], &[(1, 1)], &[], &[]],
    [
        &[(-1, 1)],
        &[(-1, 1), (0, 1)],
        &[(0, 3)],
        &[(0, 1), (1, 1)],
        &[(1, 1)],
    ],
    [&[], &[], &[(-1, 1)], &[(-1, 1), (0, 1)], &[(0, 3)]],
    [&[], &[], &[], &[], &[(-1, 1)]],
];

/// `B` as Laurent polynomials.
pub fn transfer_matrix() -> [[LaurentPoly; 5]; 5] {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| LaurentPoly::from_terms(TRANSFER_B[r][c].iter().copied()))
    })
}

/// The five-entry state; index `k` holds the conceptual entry `k - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVec {
    pub entries: [LaurentPoly; 5],
}

impl StateVec {
    pub fn zero() -> Self {
        StateVec {
            entries: Default::default(),
        }
    }

    pub fn middle(&self) -> &LaurentPoly {
        &self.entries[2]
    }

    /// Checks `entry(-i) = reverse(entry(i))` for `i = 0, 1, 2`.
    pub fn is_reverse_symmetric(&self) -> bool {
        (0..5).all(|k| self.entries[k] == self.entries[4 - k].reverse())
    }

    pub fn prune(&self, window: i64) -> Self {
        StateVec {
            entries: std::array::from_fn(|k| self.entries[k].prune(window)),
        }
    }
}

/// Split `N = m + n` with `n` the smallest seed satisfying `2^n > N - 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitChoice {
    pub m: u64,
    pub n: u32,
}

impl SplitChoice {
    /// Validates `m < 2^n + 2 - n`.
    pub fn new(m: u64, n: u32) -> Result<Self> {
        if n == 0 || !split_admissible(m, n) {
            return Err(Error::SplitConstraint { m, n });
        }
        Ok(SplitChoice { m, n })
    }

    pub fn target(&self) -> u64 {
        self.m + self.n as u64
    }
}

fn split_admissible(m: u64, n: u32) -> bool {
    // m < 2^n + 2 - n, rearranged to stay in unsigned arithmetic
    n >= 63 || m + (n as u64) < (1u64 << n) + 2
}

pub fn choose_split(target: u64) -> Result<SplitChoice> {
    if target < 2 {
        return Err(Error::BelowMinimum { target, min: 2 });
    }
    let n = (1u32..63).find(|&n| (1u64 << n) > target - 2).unwrap();
    SplitChoice::new(target - n as u64, n)
}

/// Every admissible split of `target` whose seed is at most `max_seed`.
pub fn admissible_splits(target: u64, max_seed: u32) -> Vec<SplitChoice> {
    (1..=max_seed.min(target.min(u32::MAX as u64) as u32))
        .filter_map(|n| SplitChoice::new(target - n as u64, n).ok())
        .collect()
}

pub fn psi_init(n: u32) -> Result<StateVec> {
    if n == 0 || n > MAX_SEED {
        return Err(Error::SeedTooLarge(n));
    }
    let corr = g_correlation(n);
    let step = 1i64 << n;
    Ok(StateVec {
        entries: std::array::from_fn(|k| corr.shift((k as i64 - 2) * step)),
    })
}

/// One application of `B`, optionally dropping terms with `|exponent| > window`.
pub fn transfer_step(s: &StateVec, prune_window: Option<i64>) -> StateVec {
    let rows: Vec<LaurentPoly> = (0..5)
        .into_par_iter()
        .map(|r| {
            let mut acc = LaurentPoly::zero();
            for (c, entry) in TRANSFER_B[r].iter().enumerate() {
                for &(e, coeff) in entry.iter() {
                    acc.add_scaled_shifted(&s.entries[c], &BigInt::from(coeff), e);
                }
            }
            match prune_window {
                Some(w) => acc.prune(w),
                None => acc,
            }
        })
        .collect();
    let mut it = rows.into_iter();
    StateVec {
        entries: std::array::from_fn(|_| it.next().unwrap()),
    }
}

/// Runs `B^m Psi_n` for a given split and returns the constant term of the
/// middle entry.
pub fn omega_transfer_with(split: SplitChoice, prune: bool) -> Result<BigInt> {
    let mut state = psi_init(split.n)?;
    let m = split.m as i64;
    if prune {
        state = state.prune(m);
    }
    for step in 0..m {
        let window = prune.then_some(m - step - 1);
        state = transfer_step(&state, window);
    }
    Ok(state.middle().ct())
}

pub fn omega_transfer(target: u64, prune: bool) -> Result<BigInt> {
    omega_transfer_with(choose_split(target)?, prune)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stern::{omega_def, OMEGA_SMALL};

    #[test]
    fn split_examples() {
        assert_eq!(choose_split(10000).unwrap(), SplitChoice { m: 9986, n: 14 });
        assert_eq!(choose_split(20).unwrap(), SplitChoice { m: 15, n: 5 });
        assert_eq!(choose_split(2).unwrap(), SplitChoice { m: 1, n: 1 });
        assert!(choose_split(1).is_err());
        // boundary m = 2^n + 2 - n is rejected
        assert!(SplitChoice::new(16 + 2 - 4, 4).is_err());
        assert!(SplitChoice::new(16 + 1 - 4, 4).is_ok());
    }

    #[test]
    fn psi_one() {
        let psi = psi_init(1).unwrap();
        let mid =
            LaurentPoly::from_terms([(-3, 1), (-2, 1), (-1, 1), (0, 3), (1, 1), (2, 1), (3, 1)]);
        assert_eq!(*psi.middle(), mid);
        assert_eq!(psi.middle().ct(), BigInt::from(3));
        assert_eq!(psi.entries[3], mid.shift(2));
        assert!(psi.is_reverse_symmetric());
    }

    #[test]
    fn single_step_gives_omega_two() {
        let s = transfer_step(&psi_init(1).unwrap(), None);
        assert_eq!(s.middle().ct(), BigInt::from(13));
        assert_eq!(transfer_step(&StateVec::zero(), None), StateVec::zero());
    }

    #[test]
    fn matrix_shape() {
        let b = transfer_matrix();
        assert_eq!(b[0][0], LaurentPoly::monomial(1, 1));
        assert_eq!(b[2][1], LaurentPoly::from_terms([(-1, 1), (0, 1)]));
        assert_eq!(b[4][4], LaurentPoly::monomial(1, -1));
        for row in &b {
            for p in row {
                if !p.is_zero() {
                    assert!(p.ldeg().unwrap() >= -1 && p.deg().unwrap() <= 1);
                }
            }
        }
    }

    #[test]
    fn transfer_matches_known_values() {
        assert_eq!(omega_transfer(2, false).unwrap(), BigInt::from(13));
        assert_eq!(omega_transfer(5, false).unwrap(), BigInt::from(1121));
        for n in 2..=20u64 {
            assert_eq!(
                omega_transfer(n, true).unwrap(),
                BigInt::from(OMEGA_SMALL[n as usize])
            );
        }
    }

    #[test]
    fn transfer_matches_definition_to_22() {
        for n in 21..=22u32 {
            assert_eq!(omega_transfer(n as u64, true).unwrap(), omega_def(n));
        }
    }

    #[test]
    fn every_admissible_split_agrees() {
        for target in 2..=60u64 {
            let reference = omega_transfer(target, true).unwrap();
            for split in admissible_splits(target, 10) {
                assert_eq!(
                    omega_transfer_with(split, true).unwrap(),
                    reference,
                    "{split:?}"
                );
            }
        }
    }

    #[test]
    fn symmetry_is_preserved_by_iteration() {
        let mut s = psi_init(3).unwrap();
        for _ in 0..37 {
            s = transfer_step(&s, None);
            assert!(s.is_reverse_symmetric());
        }
    }
}
