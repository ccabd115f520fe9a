//! Guess-and-verify: fit a recurrence ansatz to sampled coefficient
//! sequences, then check it on terms and parameters that were held back.
//!
//! The rank of the linear system is found modulo a large prime. If the
//! nullspace there is one-dimensional, the pivot rows are solved exactly by
//! fraction-free elimination and the candidate is checked against every
//! equation over the rationals, which certifies it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::recurrence::RecurrenceOp;
use crate::arith::{JPoly, Rational, UPoly};
use crate::error::{Error, Result};

/// Terms held back from the end of every fitted sequence.
pub const VALIDATION_TAIL: usize = 50;
/// Minimum excess of fitting equations over unknowns.
pub const MIN_EXCESS: usize = 50;
/// Unsampled parameter values required when the ansatz depends on `j`.
pub const MIN_HOLDOUT: usize = 2;

/// `values[i] = w_(start + i)` for parameter `j`. With `zero_before`, terms
/// below `start` are known to vanish.
#[derive(Debug, Clone)]
pub struct SeqData {
    pub j: i64,
    pub start: i64,
    pub values: Vec<Rational>,
    pub zero_before: bool,
}

impl SeqData {
    fn get(&self, k: i64) -> Option<Rational> {
        let i = k - self.start;
        if i < 0 {
            return self.zero_before.then(Rational::zero);
        }
        self.values.get(i as usize).cloned()
    }

    fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    /// Top indices `k` whose whole window is known.
    fn first_equation(&self, order: usize) -> i64 {
        if self.zero_before {
            self.start
        } else {
            self.start + order as i64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ansatz {
    pub order: usize,
    pub k_degree: usize,
    pub j_degree: usize,
}

impl Ansatz {
    pub fn unknowns(&self) -> usize {
        (self.order + 1) * (self.k_degree + 1) * (self.j_degree + 1)
    }

    fn index(&self, r: usize, a: usize, b: usize) -> usize {
        (r * (self.k_degree + 1) + a) * (self.j_degree + 1) + b
    }

    /// One equation `sum c_(r,a,b) k^a j^b w_(k-r) = 0`, scaled to integers.
    fn row(&self, seq: &SeqData, k: i64) -> Vec<BigInt> {
        let mut row = vec![Rational::zero(); self.unknowns()];
        let jr = Rational::from_integer(seq.j.into());
        let kr = Rational::from_integer(k.into());
        for r in 0..=self.order {
            let w = seq.get(k - r as i64).expect("window inside the data");
            if w.is_zero() {
                continue;
            }
            let mut ka = w;
            for a in 0..=self.k_degree {
                let mut jb = ka.clone();
                for b in 0..=self.j_degree {
                    row[self.index(r, a, b)] = jb.clone();
                    jb *= &jr;
                }
                ka *= &kr;
            }
        }
        let den = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        row.iter().map(|c| (c * &den).to_integer()).collect()
    }

    fn to_op(self, sol: &[BigInt]) -> Result<RecurrenceOp> {
        let coeffs = (0..=self.order)
            .map(|r| {
                JPoly::new(
                    (0..=self.j_degree)
                        .map(|b| {
                            UPoly::new(
                                (0..=self.k_degree)
                                    .map(|a| {
                                        Rational::from_integer(sol[self.index(r, a, b)].clone())
                                    })
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect();
        RecurrenceOp::new(coeffs)
    }
}

/// Fits `ansatz` to `fit` (minus a validation tail of each sequence), then
/// validates on those tails and on every equation of the `holdout`
/// sequences, whose parameters must not appear among the fitted ones.
pub fn fit_recurrence(
    fit: &[SeqData],
    holdout: &[SeqData],
    ansatz: Ansatz,
) -> Result<RecurrenceOp> {
    if ansatz.j_degree > 0 {
        let sampled: Vec<i64> = fit.iter().map(|s| s.j).collect();
        let fresh = holdout.iter().filter(|s| !sampled.contains(&s.j)).count();
        if fresh < MIN_HOLDOUT {
            return Err(Error::Fit(format!(
                "need at least {MIN_HOLDOUT} unsampled parameter values, got {fresh}"
            )));
        }
    }
    let mut fit_rows = Vec::new();
    let mut check_rows = Vec::new();
    for s in fit {
        let lo = s.first_equation(ansatz.order);
        let split = s.end() - VALIDATION_TAIL as i64;
        if split < lo {
            return Err(Error::Fit(format!("sequence for j = {} is too short", s.j)));
        }
        fit_rows.extend((lo..=split).map(|k| ansatz.row(s, k)));
        check_rows.extend((split + 1..=s.end()).map(|k| ansatz.row(s, k)));
    }
    for s in holdout {
        check_rows.extend((s.first_equation(ansatz.order)..=s.end()).map(|k| ansatz.row(s, k)));
    }
    let n = ansatz.unknowns();
    if fit_rows.len() < n + MIN_EXCESS {
        return Err(Error::Fit(format!(
            "{} equations for {n} unknowns; need at least {}",
            fit_rows.len(),
            n + MIN_EXCESS
        )));
    }
    let sol = solve_nullspace(&fit_rows, n)?;
    let bad = fit_rows
        .iter()
        .chain(&check_rows)
        .position(|row| !dot(row, &sol).is_zero());
    if let Some(i) = bad {
        let what = if i < fit_rows.len() {
            "fitting"
        } else {
            "validation"
        };
        return Err(Error::Validation(format!(
            "{what} equation {i} is not satisfied"
        )));
    }
    ansatz.to_op(&sol)
}

fn dot(row: &[BigInt], x: &[BigInt]) -> BigInt {
    row.iter()
        .zip(x)
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, b)| a * b)
        .sum()
}

const PRIMES: [u64; 2] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847];

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Row echelon form mod `p`; returns `(pivot rows, pivot columns)` in the
/// original numbering.
fn rank_profile(rows: &[Vec<BigInt>], n: usize, p: u64) -> (Vec<usize>, Vec<usize>) {
    let pb = BigInt::from(p);
    let mut m: Vec<(usize, Vec<u64>)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            (
                i,
                r.iter()
                    .map(|c| c.mod_floor(&pb).to_u64().unwrap())
                    .collect(),
            )
        })
        .collect();
    let mut prow = Vec::new();
    let mut pcol = Vec::new();
    let mut top = 0;
    for col in 0..n {
        let Some(piv) = (top..m.len()).find(|&i| m[i].1[col] != 0) else {
            continue;
        };
        m.swap(top, piv);
        let inv = pow_mod(m[top].1[col], p - 2, p);
        let pivot = m[top].1.clone();
        for row in m.iter_mut().skip(top + 1) {
            let f = mul_mod(row.1[col], inv, p);
            if f == 0 {
                continue;
            }
            for (x, &q) in row.1[col..n].iter_mut().zip(&pivot[col..n]) {
                *x = (*x + p - mul_mod(f, q, p)) % p;
            }
        }
        prow.push(m[top].0);
        pcol.push(col);
        top += 1;
    }
    (prow, pcol)
}

/// A primitive integer generator of the one-dimensional nullspace.
fn solve_nullspace(rows: &[Vec<BigInt>], n: usize) -> Result<Vec<BigInt>> {
    let mut profile = rank_profile(rows, n, PRIMES[0]);
    if profile.1.len() + 1 < n {
        // an unlucky prime can only lower the rank
        let other = rank_profile(rows, n, PRIMES[1]);
        if other.1.len() > profile.1.len() {
            profile = other;
        }
    }
    let (prow, pcol) = profile;
    match n - pcol.len() {
        0 => return Err(Error::Fit("no nonzero recurrence fits the data".into())),
        1 => {}
        d => {
            return Err(Error::Fit(format!(
                "underdetermined: nullspace of dimension {d}"
            )))
        }
    }
    let free = (0..n).find(|c| !pcol.contains(c)).unwrap();
    // square system A_P x = -A_free over the pivot rows, fraction-free
    let mut a: Vec<Vec<BigInt>> = prow
        .iter()
        .map(|&i| {
            let mut r: Vec<BigInt> = pcol.iter().map(|&c| rows[i][c].clone()).collect();
            r.push(-rows[i][free].clone());
            r
        })
        .collect();
    let size = a.len();
    let mut prev = BigInt::one();
    for k in 0..size {
        let piv = (k..size)
            .find(|&i| !a[i][k].is_zero())
            .ok_or_else(|| Error::Fit("singular pivot block".into()))?;
        a.swap(k, piv);
        for i in k + 1..size {
            for c in k + 1..=size {
                let v = (&a[i][c] * &a[k][k] - &a[i][k] * &a[k][c]) / &prev;
                a[i][c] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![Rational::zero(); size];
    for k in (0..size).rev() {
        let mut s = Rational::from_integer(a[k][size].clone());
        for c in k + 1..size {
            s -= Rational::from_integer(a[k][c].clone()) * &x[c];
        }
        x[k] = s / Rational::from_integer(a[k][k].clone());
    }
    let mut sol = vec![Rational::zero(); n];
    for (i, &c) in pcol.iter().enumerate() {
        sol[c] = x[i].clone();
    }
    sol[free] = Rational::one();
    let den = sol.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = sol.iter().map(|c| (c * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    Ok(ints.iter().map(|c| c / &g).collect())
}

/// Convenience: `u_(j,k)` data from the recurrence-free series oracle.
pub fn u_samples(j: i64, last: i64) -> Result<SeqData> {
    let val = -j - 1;
    let s = crate::omega_gf::u_direct(j, last)?;
    Ok(SeqData {
        j,
        start: val,
        values: s.coeffs_range(val, last)?,
        zero_before: true,
    })
}
