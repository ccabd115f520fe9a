//! `nu(n) = sum_k a(n,k)^2` through its two-state constant-term recurrence.
//!
//! The state `(nu(n), nu1(n))` with `nu1(n) = CT F_n(x) F_n(1/x) x^(2^n)`
//! evolves by `M = [[3, 4], [1, 2]]`. Since `det(I - tM) = 1 - 5t + 2t^2`,
//! `nu` itself satisfies `nu(n) = 5 nu(n-1) - 2 nu(n-2)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuState {
    pub nu: BigInt,
    pub nu1: BigInt,
}

impl NuState {
    pub fn initial() -> Self {
        NuState {
            nu: BigInt::one(),
            nu1: BigInt::zero(),
        }
    }
}

/// The transition matrix `M`.
pub const TRANSITION: [[i64; 2]; 2] = [[3, 4], [1, 2]];

pub fn nu_step(s: &NuState) -> NuState {
    NuState {
        nu: &s.nu * TRANSITION[0][0] + &s.nu1 * TRANSITION[0][1],
        nu1: &s.nu * TRANSITION[1][0] + &s.nu1 * TRANSITION[1][1],
    }
}

/// `nu(n)` via iterating `M` from `(1, 0)`.
pub fn nu_matrix(n: u64) -> BigInt {
    let mut s = NuState::initial();
    for _ in 0..n {
        s = nu_step(&s);
    }
    s.nu
}

pub fn nu_fast(n: u64) -> BigInt {
    let (mut prev, mut cur) = (BigInt::one(), BigInt::from(3));
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &cur * 5 - &prev * 2;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// First `count` Taylor coefficients of `(1 - 2x) / (1 - 5x + 2x^2)`.
pub fn nu_gf_coeffs(count: usize) -> Vec<BigInt> {
    let num = [BigInt::one(), BigInt::from(-2)];
    let den = [BigInt::one(), BigInt::from(-5), BigInt::from(2)];
    let mut out: Vec<BigInt> = Vec::with_capacity(count);
    for n in 0..count {
        let mut c = num.get(n).cloned().unwrap_or_default();
        for r in 1..den.len().min(n + 1) {
            c -= &den[r] * &out[n - r];
        }
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stern::nu_def;

    #[test]
    fn step_examples() {
        let s1 = nu_step(&NuState::initial());
        assert_eq!(
            s1,
            NuState {
                nu: 3.into(),
                nu1: 1.into()
            }
        );
        assert_eq!(
            nu_step(&s1),
            NuState {
                nu: 13.into(),
                nu1: 5.into()
            }
        );
        let zero = NuState {
            nu: 0.into(),
            nu1: 0.into(),
        };
        assert_eq!(nu_step(&zero), zero);
    }

    #[test]
    fn characteristic_polynomial_of_transition() {
        // det(I - tM) = 1 - tr(M) t + det(M) t^2
        let [[a, b], [c, d]] = TRANSITION;
        assert_eq!((a + d, a * d - b * c), (5, 2));
    }

    #[test]
    fn fast_matches_definition() {
        assert_eq!(nu_fast(0), BigInt::from(1));
        assert_eq!(nu_fast(1), BigInt::from(3));
        assert_eq!(nu_fast(3), BigInt::from(59));
        for n in 0..=20u32 {
            assert_eq!(nu_fast(n as u64), nu_def(n), "n = {n}");
        }
    }

    #[test]
    fn generating_function_coefficients() {
        assert_eq!(nu_gf_coeffs(1), vec![BigInt::from(1)]);
        assert_eq!(nu_gf_coeffs(2), vec![BigInt::from(1), BigInt::from(3)]);
        let four: Vec<BigInt> = [1, 3, 13, 59].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(nu_gf_coeffs(4), four);
        let coeffs = nu_gf_coeffs(60);
        for (n, c) in coeffs.iter().enumerate() {
            assert_eq!(*c, nu_fast(n as u64));
        }
    }

    #[test]
    fn matrix_route_agrees_up_to_1000() {
        let mut s = NuState::initial();
        for n in 0..=1000u64 {
            assert_eq!(s.nu, nu_fast(n));
            s = nu_step(&s);
        }
    }
}
