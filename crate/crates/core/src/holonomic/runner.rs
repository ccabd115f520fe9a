//! Forward iteration of the `u` and `v` recurrences.
//!
//! All values met in practice are dyadic rationals `z / 2^e`, so the fast
//! path keeps a sliding window of those and only ever divides by the odd
//! part of the leading coefficient. If a division is not exact the caller
//! falls back to plain rationals.

use std::collections::VecDeque;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::recurrence::{derive_rec_u, derive_rec_v, RecurrenceOp};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::omega_gf::v_direct;

/// `z / 2^e` with `z` odd unless it is zero (then `e = 0`).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Dyadic {
    pub z: BigInt,
    pub e: u64,
}

impl Dyadic {
    pub fn new(z: BigInt, e: u64) -> Self {
        if z.is_zero() {
            return Dyadic::default();
        }
        let tz = z.trailing_zeros().unwrap_or(0).min(e);
        Dyadic {
            z: z >> tz,
            e: e - tz,
        }
    }

    pub fn from_integer(z: BigInt) -> Self {
        Self::new(z, 0)
    }

    pub fn half() -> Self {
        Dyadic {
            z: BigInt::from(1),
            e: 1,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.z.is_zero()
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.z.clone(), BigInt::from(1) << self.e)
    }

    /// Exact conversion when the denominator is a power of two.
    pub fn from_rational(r: &Rational) -> Option<Self> {
        let d = r.denom();
        let e = d.trailing_zeros().unwrap_or(0);
        (d >> e == BigInt::from(1)).then(|| Self::new(r.numer().clone(), e))
    }

    pub fn is_integer(&self) -> bool {
        self.e == 0
    }

    /// `z << (e_max - e)`: the numerator over the common denominator `2^e_max`.
    fn lifted(&self, e_max: u64) -> BigInt {
        &self.z << (e_max - self.e)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, o: &Dyadic) -> Dyadic {
        let e = self.e.max(o.e);
        Dyadic::new(self.lifted(e) + o.lifted(e), e)
    }
}

impl Mul<&BigInt> for &Dyadic {
    type Output = Dyadic;
    fn mul(self, c: &BigInt) -> Dyadic {
        Dyadic::new(&self.z * c, self.e)
    }
}

/// `c_r(k)` coefficient tables, lowest power first.
enum CoeffTable {
    Small(Vec<Vec<i128>>),
    Big(Vec<Vec<BigInt>>),
}

impl CoeffTable {
    fn new(rec: &RecurrenceOp, j: i64) -> Self {
        match rec.int_table(j) {
            Some(t) if t.iter().flatten().all(|c| c.unsigned_abs() < 1 << 40) => {
                CoeffTable::Small(t)
            }
            _ => {
                let jr = Rational::from_integer(j.into());
                CoeffTable::Big(
                    rec.coeffs
                        .iter()
                        .map(|c| {
                            c.eval_j(&jr)
                                .coeffs()
                                .iter()
                                .map(|x| x.to_integer())
                                .collect()
                        })
                        .collect(),
                )
            }
        }
    }

    fn at(&self, r: usize, k: i64) -> BigInt {
        match self {
            CoeffTable::Small(t) => BigInt::from(eval_small(&t[r], k)),
            CoeffTable::Big(t) => t[r].iter().rev().fold(BigInt::zero(), |acc, c| acc * k + c),
        }
    }

    fn small(&self, r: usize, k: i64) -> Option<i128> {
        match self {
            CoeffTable::Small(t) if k.unsigned_abs() < 1 << 40 => Some(eval_small(&t[r], k)),
            _ => None,
        }
    }
}

fn eval_small(p: &[i128], k: i64) -> i128 {
    // |coeff| < 2^40 and |k| < 2^40 keep degree-two evaluations in range
    p.iter().rev().fold(0i128, |acc, &c| {
        acc.saturating_mul(k as i128).saturating_add(c)
    })
}

/// Runs the recurrence at parameter `j` over `k = first..=last`. `seeds`
/// hold `w_first, w_first+1, ...`; everything before `first` is zero.
/// `visit(k, w_k)` sees every value from `first` on.
pub fn run_dyadic(
    rec: &RecurrenceOp,
    j: i64,
    first: i64,
    seeds: &[Dyadic],
    last: i64,
    mut visit: impl FnMut(i64, &Dyadic),
) -> Result<()> {
    let table = CoeffTable::new(rec, j);
    let order = rec.order;
    let mut window: VecDeque<Dyadic> = VecDeque::from(vec![Dyadic::default(); order]);
    for (i, s) in seeds.iter().enumerate() {
        let k = first + i as i64;
        if k > last {
            return Ok(());
        }
        visit(k, s);
        window.pop_front();
        window.push_back(s.clone());
    }
    for k in (first + seeds.len() as i64)..=last {
        let c0 = table.at(0, k);
        if c0.is_zero() {
            return Err(Error::SingularRecurrence { k, j });
        }
        let e_max = window
            .iter()
            .filter(|d| !d.is_zero())
            .map(|d| d.e)
            .max()
            .unwrap_or(0);
        let mut acc = BigInt::zero();
        for r in 1..=order {
            let w = &window[order - r];
            if w.is_zero() {
                continue;
            }
            let shift = e_max - w.e;
            match table.small(r, k) {
                Some(0) => {}
                Some(c) if shift == 0 => acc += &w.z * c,
                Some(c) => acc += (&w.z << shift) * c,
                None => acc += w.lifted(e_max) * table.at(r, k),
            }
        }
        // w_k = -acc / (c0 * 2^e_max) with c0 = 2^a * odd
        let a = c0.trailing_zeros().unwrap_or(0);
        let odd = c0 >> a;
        let (q, rem) = acc.div_rem(&odd);
        if !rem.is_zero() {
            return Err(Error::NotDyadic(k));
        }
        let w = Dyadic::new(-q, e_max + a);
        visit(k, &w);
        window.pop_front();
        window.push_back(w);
    }
    Ok(())
}

/// Plain rational iteration, same contract as [`run_dyadic`].
pub fn run_rational(
    rec: &RecurrenceOp,
    j: i64,
    first: i64,
    seeds: &[Rational],
    last: i64,
    mut visit: impl FnMut(i64, &Rational),
) -> Result<()> {
    let table = CoeffTable::new(rec, j);
    let order = rec.order;
    let mut window: VecDeque<Rational> = VecDeque::from(vec![Rational::zero(); order]);
    for (i, s) in seeds.iter().enumerate() {
        let k = first + i as i64;
        if k > last {
            return Ok(());
        }
        visit(k, s);
        window.pop_front();
        window.push_back(s.clone());
    }
    for k in (first + seeds.len() as i64)..=last {
        let c0 = table.at(0, k);
        if c0.is_zero() {
            return Err(Error::SingularRecurrence { k, j });
        }
        let mut acc = Rational::zero();
        for r in 1..=order {
            let w = &window[order - r];
            if !w.is_zero() {
                acc += w * Rational::from_integer(table.at(r, k));
            }
        }
        let w = -acc / Rational::from_integer(c0);
        visit(k, &w);
        window.pop_front();
        window.push_back(w);
    }
    Ok(())
}

/// Values `w_k` for `k` in `want` (sorted ascending, all within
/// `first..=last`), computed through the dyadic path with a rational
/// fallback.
fn collect(
    rec: &RecurrenceOp,
    j: i64,
    first: i64,
    seeds: &[Rational],
    want: &[i64],
) -> Result<Vec<Dyadic>> {
    let Some(&last) = want.last() else {
        return Ok(Vec::new());
    };
    let dy: Option<Vec<Dyadic>> = seeds.iter().map(Dyadic::from_rational).collect();
    if let Some(dy) = dy {
        let mut out = Vec::with_capacity(want.len());
        let mut it = want.iter().peekable();
        let res = run_dyadic(rec, j, first, &dy, last, |k, w| {
            while it.peek().is_some_and(|&&x| x == k) {
                out.push(w.clone());
                it.next();
            }
        });
        match res {
            Ok(()) => return Ok(out),
            Err(Error::NotDyadic(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let mut out = Vec::with_capacity(want.len());
    let mut it = want.iter().peekable();
    run_rational(rec, j, first, seeds, last, |k, w| {
        while it.peek().is_some_and(|&&x| x == k) {
            out.push(Dyadic::from_rational(w).expect("non-dyadic coefficient"));
            it.next();
        }
    })?;
    Ok(out)
}

/// `u_(j,k)` for each `k` in `ks` (ascending). Entries below the valuation
/// `-j-1` are zero.
pub fn u_values(j: i64, ks: &[i64]) -> Result<Vec<Dyadic>> {
    if j > 0 {
        return Err(Error::InvalidArgument(format!(
            "j must be nonpositive, got {j}"
        )));
    }
    let rec = derive_rec_u()?;
    let val = -j - 1;
    let above: Vec<i64> = ks.iter().copied().filter(|&k| k >= val).collect();
    let vals = collect(rec, j, val, &[Rational::new(1.into(), 2.into())], &above)?;
    let mut it = vals.into_iter();
    Ok(ks
        .iter()
        .map(|&k| {
            if k >= val {
                it.next().unwrap()
            } else {
                Dyadic::default()
            }
        })
        .collect())
}

/// `u_(j, k_target)`, the coefficient of `t^k_target` in `U_j`.
pub fn run_rec_u(j: i64, k_target: i64) -> Result<Rational> {
    Ok(u_values(j, &[k_target])?[0].to_rational())
}

/// First index from which the `v` recurrence can run unaided: one past the
/// largest integer root of its leading coefficient.
fn v_seed_len(rec: &RecurrenceOp) -> usize {
    let c0 = &rec.coeffs[0];
    let bound = c0
        .j_coeff(0)
        .coeffs()
        .iter()
        .map(|c| (c / c0.j_coeff(0).lead().unwrap()).abs().to_integer())
        .max()
        .unwrap_or_default();
    let bound: i64 = i64::try_from(bound + 1)
        .unwrap_or(i64::MAX / 2)
        .min(1 << 20);
    let top = rec
        .leading_roots(0, -1, bound)
        .into_iter()
        .max()
        .unwrap_or(-2);
    (top + 2).max(1) as usize
}

/// `v_k` for each `k` in `ks` (ascending); `v_k = 0` for `k < -1`.
pub fn v_values(ks: &[i64]) -> Result<Vec<Dyadic>> {
    let rec = derive_rec_v()?;
    let n_seed = v_seed_len(rec);
    let seeds = v_direct(n_seed as i64 - 2)?.coeffs_range(-1, n_seed as i64 - 2)?;
    let above: Vec<i64> = ks.iter().copied().filter(|&k| k >= -1).collect();
    let vals = collect(rec, 0, -1, &seeds, &above)?;
    let mut it = vals.into_iter();
    Ok(ks
        .iter()
        .map(|&k| {
            if k >= -1 {
                it.next().unwrap()
            } else {
                Dyadic::default()
            }
        })
        .collect())
}

pub fn run_rec_v(k_target: i64) -> Result<Rational> {
    Ok(v_values(&[k_target])?[0].to_rational())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::omega_gf::u_direct;

    #[test]
    fn dyadic_normal_form() {
        let d = Dyadic::new(BigInt::from(12), 3);
        assert_eq!((d.z.clone(), d.e), (BigInt::from(3), 1));
        assert_eq!(d.to_rational(), rat(3, 2));
        assert_eq!(
            Dyadic::from_rational(&rat(5, 8)),
            Some(Dyadic::new(5.into(), 3))
        );
        assert_eq!(Dyadic::from_rational(&rat(1, 3)), None);
        assert_eq!((&Dyadic::half() + &Dyadic::half()).to_rational(), rat(1, 1));
        assert!(Dyadic::new(BigInt::zero(), 9).is_zero());
    }

    #[test]
    fn seeds_and_small_values() {
        assert_eq!(run_rec_u(0, -1).unwrap(), rat(1, 2));
        assert_eq!(run_rec_u(-3, 1).unwrap(), rat(0, 1));
        assert_eq!(run_rec_u(0, 0).unwrap(), rat(2, 1));
        assert_eq!(run_rec_u(0, 1).unwrap(), rat(31, 4));
        assert_eq!(run_rec_v(-1).unwrap(), rat(-1, 2));
        assert_eq!(run_rec_v(1).unwrap(), rat(-11, 4));
        assert_eq!(run_rec_u(0, 0).unwrap() + run_rec_v(0).unwrap(), rat(1, 1));
    }

    #[test]
    fn runner_matches_direct_series() {
        for j in [0i64, -1, -5] {
            let u = u_direct(j, 60).unwrap();
            let ks: Vec<i64> = (-j - 3..=60).collect();
            let got = u_values(j, &ks).unwrap();
            for (k, g) in ks.iter().zip(&got) {
                assert_eq!(g.to_rational(), u.coeff(*k).unwrap(), "j = {j}, k = {k}");
            }
        }
        let v = v_direct(100).unwrap();
        let ks: Vec<i64> = (-3..=100).collect();
        for (k, g) in ks.iter().zip(v_values(&ks).unwrap()) {
            assert_eq!(g.to_rational(), v.coeff(*k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn rational_and_dyadic_paths_agree() {
        let rec = derive_rec_u().unwrap();
        let mut a = Vec::new();
        let mut b = Vec::new();
        run_dyadic(rec, -4, 3, &[Dyadic::half()], 70, |_, w| {
            a.push(w.to_rational())
        })
        .unwrap();
        run_rational(rec, -4, 3, &[rat(1, 2)], 70, |_, w| b.push(w.clone())).unwrap();
        assert_eq!(a, b);
    }
}
