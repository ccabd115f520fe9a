//! Independent checks of the generating-function route: plain series
//! expansion, the shape of `h_n`, and the partial fraction decomposition of
//! `H` in `x`.

use num_bigint::BigInt;

use super::direct::{poly, u_direct, v_direct, x_series};
use super::resolvent::{solve_component, HFactorization};
use crate::arith::TruncSeries;
use crate::error::Result;
use crate::holonomic::{u_values, v_values};
use crate::stern::g_correlation;
use crate::transfer::choose_split;

/// `omega(N)` by expanding the solved component as a `t`-series of Laurent
/// polynomials and reading `CT_x` of the `t^m` coefficient against
/// `G_n(x) G_n(1/x)`.
pub fn omega_series(target: u64) -> Result<BigInt> {
    let split = choose_split(target)?;
    let sol = solve_component(split.n)?;
    let series = sol.expand(split.m as usize)?;
    Ok(series[split.m as usize].ct_of_product(&g_correlation(split.n)))
}

/// `A X^2 + B X + C` for the computed `X`, through `t^order`.
pub fn x_quadratic_residual(order: i64) -> Result<TruncSeries> {
    let x = x_series(order)?;
    let a = poly(&[0, 1, -3, 1], order);
    let b = poly(&[-1, 5, -6, 2], order);
    Ok(a.mul(&x).mul(&x).add(&b.mul(&x)).add(&a).truncate(order))
}

/// First `k <= order` where the recurrence value of `u_(j,k)` differs from
/// the closed-form expansion, if any.
pub fn u_recurrence_mismatch(j: i64, order: i64) -> Result<Option<i64>> {
    let direct = u_direct(j, order)?;
    let ks: Vec<i64> = (0..=order).collect();
    let rec = u_values(j, &ks)?;
    for (&k, r) in ks.iter().zip(&rec) {
        if direct.coeff(k)? != r.to_rational() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Same as [`u_recurrence_mismatch`] for `v_k`, `-1 <= k <= order`.
pub fn v_recurrence_mismatch(order: i64) -> Result<Option<i64>> {
    let direct = v_direct(order)?;
    let ks: Vec<i64> = (-1..=order).collect();
    let rec = v_values(&ks)?;
    for (&k, r) in ks.iter().zip(&rec) {
        if direct.coeff(k)? != r.to_rational() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Checks that `h_n(x)` has exponents in `[-n, n]` and `h_n(x) = h_n(1/x)`
/// for every `n <= max_n`; returns the first offending `n`.
pub fn h_support_ok(max_n: usize) -> Result<std::result::Result<(), usize>> {
    let h = HFactorization::new().h_series(max_n)?;
    for (n, hn) in h.iter().enumerate() {
        let within = hn.is_zero() || (hn.ldeg()? >= -(n as i64) && hn.deg()? <= n as i64);
        if !within || !hn.is_reverse_symmetric() {
            return Ok(Err(n));
        }
    }
    Ok(Ok(()))
}

/// `C2 = X / ((1 - t^2)(X - t)(X t - 1))` and
/// `C4 = X^2 / (t (X - t)(X^2 - 1)(X t - 1))`, through `t^order`.
pub fn residues_c2_c4(order: i64) -> Result<(TruncSeries, TruncSeries)> {
    let w = order + 8;
    let x = x_series(w)?;
    let t = poly(&[0, 1], w);
    let one = poly(&[1], w);
    let xmt = x.sub(&t);
    let xtm1 = x.mul(&t).sub(&one);
    let c2 = x.div(&poly(&[1, 0, -1], w).mul(&xmt).mul(&xtm1))?;
    let c4 = x
        .mul(&x)
        .div(&t.mul(&xmt).mul(&x.mul(&x).sub(&one)).mul(&xtm1))?;
    Ok((c2.truncate(order), c4.truncate(order)))
}

/// Polynomial in `x` with series coefficients, lowest power first.
type XPoly = Vec<TruncSeries>;

fn xmul(a: &XPoly, b: &XPoly, order: i64) -> XPoly {
    let mut out = vec![TruncSeries::zero(order); a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&p.mul(q));
        }
    }
    out
}

fn xadd(a: &XPoly, b: &XPoly, order: i64) -> XPoly {
    (0..a.len().max(b.len()))
        .map(|i| {
            let z = TruncSeries::zero(order);
            a.get(i).unwrap_or(&z).add(b.get(i).unwrap_or(&z))
        })
        .collect()
}

/// Clears denominators in
/// `q H = C1/(x - t) + C2/(1 - t x) + C3/(x - X) + C4/(1 - X x)`,
/// `q = t^2 - 3t + 1`, and returns the `x`-coefficients of
/// `X x^2 / t - sum_i C_i prod_(k != i) (factor_k)`. All of them vanish
/// through `t^order` exactly when the decomposition is right. `C1` and `C3`
/// are the residues at `x = t` and `x = X`.
pub fn partial_fraction_residual(order: i64) -> Result<XPoly> {
    let w = order + 12;
    let x = x_series(w)?;
    let t = poly(&[0, 1], w);
    let one = poly(&[1], w);
    let zero = TruncSeries::zero(w);
    let (c2, c4) = residues_c2_c4(w - 8)?;
    let xmt = x.sub(&t);
    let one_m_tx = one.sub(&t.mul(&x));
    let one_m_x2 = one.sub(&x.mul(&x));
    let one_m_t2 = poly(&[1, 0, -1], w);
    // C1 = X t / ((1 - t^2)(t - X)(1 - t X)),  C3 = X^3 / (t (X - t)(1 - t X)(1 - X^2))
    let c1 = x.mul(&t).div(&one_m_t2.mul(&xmt.neg()).mul(&one_m_tx))?;
    let c3 = x
        .mul(&x)
        .mul(&x)
        .div(&t.mul(&xmt).mul(&one_m_tx).mul(&one_m_x2))?;
    let f_xt: XPoly = vec![t.neg(), one.clone()];
    let f_tx: XPoly = vec![one.clone(), t.neg()];
    let f_xx: XPoly = vec![x.neg(), one.clone()];
    let f_1x: XPoly = vec![one.clone(), x.neg()];
    let factors = [f_xt, f_tx, f_xx, f_1x];
    let residues = [c1, c2, c3, c4];
    let mut rhs: XPoly = vec![zero.clone()];
    for (i, c) in residues.iter().enumerate() {
        let mut term: XPoly = vec![c.clone()];
        for (k, f) in factors.iter().enumerate() {
            if k != i {
                term = xmul(&term, f, w);
            }
        }
        rhs = xadd(&rhs, &term, w);
    }
    let lhs: XPoly = vec![zero.clone(), zero, x.div(&t)?];
    let diff = xadd(&lhs, &rhs.iter().map(TruncSeries::neg).collect(), w);
    Ok(diff.iter().map(|s| s.truncate(order)).collect())
}

/// `CT_x x^j / (x - r)` for a series `r` of positive valuation, expanded
/// as `sum_(n >= 0) r^n x^(j - n - 1)`; it picks out `r^(j-1)`, which does
/// not exist for `j <= 0`.
pub fn ct_against_pole(j: i64, r: &TruncSeries, order: i64) -> TruncSeries {
    let mut acc = TruncSeries::zero(order);
    let mut power = TruncSeries::one(order);
    for n in 0..=order.max(j) {
        if j - n - 1 == 0 {
            acc = acc.add(&power);
        }
        power = power.mul(r).truncate(order);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::stern::OMEGA_SMALL;

    #[test]
    fn series_method_matches_known_values() {
        for n in 2..=20u64 {
            assert_eq!(
                omega_series(n).unwrap(),
                BigInt::from(OMEGA_SMALL[n as usize])
            );
        }
    }

    #[test]
    fn x_solves_its_quadratic() {
        assert!(x_quadratic_residual(60).unwrap().is_zero());
    }

    #[test]
    fn recurrences_match_closed_forms() {
        for j in [0, -1, -4] {
            assert_eq!(u_recurrence_mismatch(j, 40).unwrap(), None);
        }
        assert_eq!(v_recurrence_mismatch(40).unwrap(), None);
    }

    #[test]
    fn h_support_and_symmetry() {
        assert_eq!(h_support_ok(60).unwrap(), Ok(()));
    }

    #[test]
    fn partial_fractions_reconstruct_h() {
        for s in partial_fraction_residual(30).unwrap() {
            assert!(s.is_zero(), "{s:?}");
            assert!(s.order() >= 30);
        }
    }

    #[test]
    fn poles_at_t_and_x_do_not_contribute() {
        let x = x_series(30).unwrap();
        let t = poly(&[0, 1], 30);
        for j in -5..=0 {
            assert!(ct_against_pole(j, &t, 30).is_zero());
            assert!(ct_against_pole(j, &x, 30).is_zero());
        }
        assert_eq!(ct_against_pole(3, &t, 30).coeff(2).unwrap(), rat(1, 1));
    }
}
