//! `omega(N)` through the generating function of the transfer system.
//!
//! The middle component of `(I - B t)^(-1) Psi_n` factors as
//! `L(x, t) G_n(x) G_n(1/x) H(x, t)`, with `L` a polynomial of `t`-degree 4
//! and `H` symmetric under `x -> 1/x`. Reading off `t^m` turns `omega(m + n)`
//! into a weighted sum of `CT_x x^j h_k(x)`, and those constant terms are
//! the `t^k` coefficients of `U_j + V_j`.

mod checks;
mod direct;
mod resolvent;
mod table;

use num_bigint::BigInt;
use rayon::prelude::*;

pub use checks::{
    ct_against_pole, h_support_ok, omega_series, partial_fraction_residual, residues_c2_c4,
    u_recurrence_mismatch, v_recurrence_mismatch, x_quadratic_residual,
};
pub use direct::{u_direct, v_direct, x_series};
pub use resolvent::{
    determinant, l_polynomial, resolvent_matrix, solve_component, BivariateRational,
    HFactorization, MAX_RESOLVENT_SEED,
};
pub use table::{build_coeff_table, expanded_products, prefold_support, CoeffTable};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::holonomic::{u_values, v_values, Dyadic};
use crate::transfer::{choose_split, SplitChoice};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CtMethod {
    Direct,
    Recurrence,
}

/// `CT_x x^j H(x, t)` at `t^k`, i.e. the `t^k` coefficient of `U_j + V_j`
/// where `V_j = t^(-j) V_0`.
pub fn ct_h(j: i64, k: i64, method: CtMethod) -> Result<Rational> {
    if j > 0 {
        return Err(Error::InvalidArgument(format!(
            "j must be nonpositive, got {j}"
        )));
    }
    let kv = k + j;
    let (u, v) = match method {
        CtMethod::Direct => {
            let u = if k >= -j - 1 {
                u_direct(j, k)?.coeff(k)?
            } else {
                Rational::default()
            };
            let v = if kv >= -1 {
                v_direct(kv)?.coeff(kv)?
            } else {
                Rational::default()
            };
            (u, v)
        }
        CtMethod::Recurrence => (
            u_values(j, &[k])?[0].to_rational(),
            v_values(&[kv])?[0].to_rational(),
        ),
    };
    Ok(u + v)
}

#[derive(Debug, Clone)]
pub struct GfOutcome {
    pub value: BigInt,
    pub split: SplitChoice,
    pub subproblems: usize,
}

/// `sum_(i,j) a_(i,j) (u_(j, m-i) + v_(m-i+j))` over a prepared table.
pub fn assemble(table: &CoeffTable) -> Result<BigInt> {
    let m = table.m as i64;
    let depth = table.rows.iter().map(Vec::len).max().unwrap_or(0);
    let vs = v_values(&(0..=m).collect::<Vec<_>>())?;
    let partials: Vec<Dyadic> = (0..depth)
        .into_par_iter()
        .map(|d| -> Result<Dyadic> {
            let j = -(d as i64);
            // rows reaching this j, in increasing k = m - i
            let is: Vec<usize> = (0..table.rows.len())
                .rev()
                .filter(|&i| table.rows[i].len() > d)
                .collect();
            let ks: Vec<i64> = is.iter().map(|&i| m - i as i64).collect();
            let us = u_values(j, &ks)?;
            let mut acc = Dyadic::default();
            for (&i, u) in is.iter().zip(&us) {
                let a = &table.rows[i][d];
                let k = m - i as i64;
                let v = &vs[(k + j) as usize];
                acc = &acc + &(&(u + v) * a);
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let total = partials.iter().fold(Dyadic::default(), |acc, p| &acc + p);
    if !total.is_integer() {
        return Err(Error::NotIntegral(format!("{}/2^{}", total.z, total.e)));
    }
    Ok(total.z)
}

pub fn omega_gf_with(target: u64, table: Option<CoeffTable>) -> Result<GfOutcome> {
    let split = choose_split(target)?;
    let table = match table {
        Some(t) if t.n_seed == split.n && t.m == split.m => t,
        Some(_) => {
            return Err(Error::InvalidArgument(
                "table does not match the split".into(),
            ))
        }
        None => build_coeff_table(split.n, split.m)?,
    };
    let value = assemble(&table)?;
    Ok(GfOutcome {
        value,
        split,
        subproblems: table.subproblems(),
    })
}

pub fn omega_gf(target: u64) -> Result<BigInt> {
    Ok(omega_gf_with(target, None)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stern::{omega_def, OMEGA_SMALL};

    #[test]
    fn gf_matches_known_values() {
        for n in 2..=20u64 {
            assert_eq!(
                omega_gf(n).unwrap(),
                BigInt::from(OMEGA_SMALL[n as usize]),
                "n = {n}"
            );
        }
        assert!(omega_gf(1).is_err());
    }

    #[test]
    fn explicit_small_split() {
        let table = build_coeff_table(3, 5).unwrap();
        assert_eq!(assemble(&table).unwrap(), omega_def(8));
    }

    #[test]
    fn ct_h_examples() {
        assert_eq!(
            ct_h(0, 0, CtMethod::Direct).unwrap(),
            Rational::from_integer(1.into())
        );
        assert_eq!(
            ct_h(0, 0, CtMethod::Recurrence).unwrap(),
            Rational::from_integer(1.into())
        );
        let h = HFactorization::new().h_series(12).unwrap();
        for j in [0i64, -1, -3] {
            for k in 0..=12 {
                let want = Rational::from_integer(h[k as usize].coeff(-j));
                assert_eq!(
                    ct_h(j, k, CtMethod::Direct).unwrap(),
                    want,
                    "j = {j}, k = {k}"
                );
                assert_eq!(
                    ct_h(j, k, CtMethod::Recurrence).unwrap(),
                    want,
                    "j = {j}, k = {k}"
                );
            }
        }
    }
}
