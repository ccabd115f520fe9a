//! Linear recurrences with coefficients polynomial in the index `k` and the
//! parameter `j`, and their extraction from ODEs.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::ode::{derive_ode_u, derive_ode_v, integer_scale, OdeOperator};
use super::quadratic::QuadraticModel;
use crate::arith::{JPoly, Rational, UPoly};
use crate::error::{Error, Result};

/// `sum_{r=0}^{order} c_r(k, j) w_(k-r) = 0` for every `k`. Each `c_r` is a
/// [`JPoly`] whose main variable is `k`.
#[derive(Clone, PartialEq, Eq)]
pub struct RecurrenceOp {
    pub order: usize,
    pub coeffs: Vec<JPoly>,
}

impl RecurrenceOp {
    /// Builds and normalizes: coprime integer coefficients, and the
    /// top-`j`, top-`k` coefficient of `c_0` positive.
    pub fn new(coeffs: Vec<JPoly>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().all(JPoly::is_zero) {
            return Err(Error::TrivialSolution);
        }
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(JPoly::is_zero) {
            coeffs.pop();
        }
        let s = integer_scale(coeffs.iter());
        let mut coeffs: Vec<JPoly> = coeffs.iter().map(|c| c.scale(&s)).collect();
        let head = coeffs.iter().find(|c| !c.is_zero()).unwrap();
        let sign_negative = head
            .coeffs()
            .last()
            .and_then(UPoly::lead)
            .is_some_and(|c| c.is_negative());
        if sign_negative {
            coeffs = coeffs.iter().map(JPoly::neg).collect();
        }
        Ok(RecurrenceOp {
            order: coeffs.len() - 1,
            coeffs,
        })
    }

    pub fn leading(&self) -> &JPoly {
        &self.coeffs[0]
    }

    pub fn trailing(&self) -> &JPoly {
        &self.coeffs[self.order]
    }

    pub fn j_degree(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(JPoly::j_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn k_degree(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(JPoly::main_degree)
            .max()
            .unwrap_or(0)
    }

    /// Fixes `j = j0`; the result has `j`-free coefficients (not rescaled).
    pub fn specialize(&self, j0: i64) -> Self {
        let j = Rational::from_integer(j0.into());
        RecurrenceOp {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| JPoly::from_upoly(c.eval_j(&j)))
                .collect(),
        }
    }

    /// `c_r(k, j)` for integer arguments.
    pub fn eval(&self, r: usize, k: i64, j: i64) -> BigInt {
        let v = self.coeffs[r].eval(
            &Rational::from_integer(k.into()),
            &Rational::from_integer(j.into()),
        );
        assert!(v.is_integer(), "recurrence coefficients are integral");
        v.to_integer()
    }

    /// Integer coefficient table of `c_r(k)` at `j = j0`, lowest `k`-degree
    /// first, if every coefficient fits in `i128`.
    pub fn int_table(&self, j0: i64) -> Option<Vec<Vec<i128>>> {
        let j = Rational::from_integer(j0.into());
        self.coeffs
            .iter()
            .map(|c| {
                c.eval_j(&j)
                    .coeffs()
                    .iter()
                    .map(|x| {
                        if x.is_integer() {
                            x.to_integer().to_i128()
                        } else {
                            None
                        }
                    })
                    .collect::<Option<Vec<i128>>>()
            })
            .collect()
    }

    /// Residual `sum_r c_r(k, j) w_(k-r)` for a sequence starting at index
    /// `start`; entries before the start count as zero.
    pub fn residual(&self, j: i64, start: i64, w: &[Rational], k: i64) -> Rational {
        let jr = Rational::from_integer(j.into());
        let kr = Rational::from_integer(k.into());
        (0..=self.order)
            .filter_map(|r| {
                let idx = k - r as i64 - start;
                (idx >= 0 && (idx as usize) < w.len())
                    .then(|| self.coeffs[r].eval(&kr, &jr) * &w[idx as usize])
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Integer roots `k` of `c_0(k, j0)` inside `[lo, hi]`.
    pub fn leading_roots(&self, j0: i64, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi)
            .filter(|&k| self.eval(0, k, j0).is_zero())
            .collect()
    }
}

impl fmt::Debug for RecurrenceOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RecurrenceOp(order {})", self.order)?;
        for (r, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "  c_{r}: {:?}", c)?;
        }
        Ok(())
    }
}

/// Falling factorial `(k - r)(k - r - 1)...(k - r - s + 1)` as a polynomial in `k`.
fn falling(r: i64, s: usize) -> UPoly {
    (0..s as i64).fold(UPoly::one(), |acc, i| {
        acc.mul(&UPoly::from_ints(&[-r - i, 1]))
    })
}

/// Coefficient extraction: `t^a (d/dt)^s` sends `sum w_k t^k` to
/// `sum w_k k^(s falling) t^(k - s + a)`. The top index of each relation is
/// renamed `k`.
pub fn ode_to_rec(op: &OdeOperator) -> Result<RecurrenceOp> {
    let mut shifts = Vec::new();
    for (s, f) in op.f.iter().enumerate() {
        for a in 0..=f.main_degree().unwrap_or(0) {
            if !f.main_coeff(a).is_zero() {
                shifts.push(a as i64 - s as i64);
            }
        }
    }
    let (dmin, dmax) = match (shifts.iter().min(), shifts.iter().max()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return Err(Error::TrivialSolution),
    };
    let order = (dmax - dmin) as usize;
    let mut coeffs = vec![JPoly::zero(); order + 1];
    for (r, c) in coeffs.iter_mut().enumerate() {
        for (s, f) in op.f.iter().enumerate() {
            let a = r as i64 + dmin + s as i64;
            if a < 0 {
                continue;
            }
            let in_j = f.main_coeff(a as usize);
            if in_j.is_zero() {
                continue;
            }
            // constants in k, polynomial in j
            let jpart = JPoly::new(
                in_j.coeffs()
                    .iter()
                    .map(|x| UPoly::constant(x.clone()))
                    .collect(),
            );
            *c = c.add(&jpart.mul_upoly(&falling(r as i64, s)));
        }
    }
    RecurrenceOp::new(coeffs)
}

static REC_U: OnceLock<RecurrenceOp> = OnceLock::new();
static REC_V: OnceLock<RecurrenceOp> = OnceLock::new();

/// The recurrence for `u_(j,k)` with symbolic `j`, derived once per process.
pub fn derive_rec_u() -> Result<&'static RecurrenceOp> {
    if let Some(r) = REC_U.get() {
        return Ok(r);
    }
    let rec = ode_to_rec(&derive_ode_u(&QuadraticModel::new())?)?;
    Ok(REC_U.get_or_init(|| rec))
}

/// The recurrence for `v_k`, derived once per process.
pub fn derive_rec_v() -> Result<&'static RecurrenceOp> {
    if let Some(r) = REC_V.get() {
        return Ok(r);
    }
    let rec = ode_to_rec(&derive_ode_v(&QuadraticModel::new())?)?;
    Ok(REC_V.get_or_init(|| rec))
}

/// Installs externally loaded recurrences (for example from a cache) if none
/// has been derived yet. Returns whether the value was taken.
pub fn preload(u: Option<RecurrenceOp>, v: Option<RecurrenceOp>) -> (bool, bool) {
    (
        u.is_some_and(|r| REC_U.set(r).is_ok()),
        v.is_some_and(|r| REC_V.set(r).is_ok()),
    )
}
