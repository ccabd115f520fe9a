//! Second-order linear ODEs in `t` annihilating `U_j` (with `j` formal or
//! fixed) and `V_0`, found by eliminating `X` from `W, W', W''`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::quadratic::{poly, QElem, QuadraticModel};
use crate::arith::{JPoly, Rational, TruncSeries, UPoly};
use crate::error::{Error, Result};

/// `f0 W + f1 W' + f2 W'' = 0`; each `f_s` is a polynomial in `t` whose
/// coefficients are polynomials in `j`. `f2` is zero for first-order
/// operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdeOperator {
    pub f: [JPoly; 3],
}

impl OdeOperator {
    pub fn ode_order(&self) -> usize {
        self.f.iter().rposition(|p| !p.is_zero()).unwrap_or(0)
    }

    /// Highest `t`-degree over the three coefficients.
    pub fn t_degree(&self) -> usize {
        self.f
            .iter()
            .filter_map(JPoly::main_degree)
            .max()
            .unwrap_or(0)
    }

    /// Applies the operator, at `j = j0`, to a truncated series.
    pub fn apply(&self, j0: &Rational, w: &TruncSeries) -> TruncSeries {
        let order = w.order();
        let d1 = w.derivative();
        let d2 = d1.derivative();
        [w, &d1, &d2]
            .iter()
            .zip(&self.f)
            .map(|(s, f)| TruncSeries::from_upoly(&f.eval_j(j0), order).mul(s))
            .fold(TruncSeries::zero(order), |acc, s| acc.add(&s))
    }
}

/// `U_j X^j = X^2 / (t q (X - t)(X^2 - 1)(X t - 1))`, `q = t^2 - 3t + 1`.
pub fn u_kernel(m: &QuadraticModel) -> QElem {
    let x = QElem::x();
    let t = poly(&[0, 1]);
    let q = poly(&[1, -3, 1]);
    let den = [
        QElem::scalar(t.mul(&q)),
        QElem::linear(UPoly::one(), t.neg()),
        m.mul(&x, &x).sub(&QElem::scalar(UPoly::one())),
        QElem::linear(t, poly(&[-1])),
    ]
    .iter()
    .fold(QElem::scalar(UPoly::one()), |acc, e| m.mul(&acc, e));
    m.div(&m.mul(&x, &x), &den)
}

/// `V_0 = -X / ((t^2 - 3t + 1)(X - t)(X t - 1)(t^2 - 1))`.
pub fn v_kernel(m: &QuadraticModel) -> QElem {
    let t = poly(&[0, 1]);
    let den = [
        QElem::scalar(poly(&[1, -3, 1]).mul(&poly(&[-1, 0, 1]))),
        QElem::linear(UPoly::one(), t.neg()),
        QElem::linear(t, poly(&[-1])),
    ]
    .iter()
    .fold(QElem::scalar(UPoly::one()), |acc, e| m.mul(&acc, e));
    m.div(&QElem::x(), &den).neg()
}

/// ODE for `X^(-j) * kernel`, where `j` enters only through `jp` (the formal
/// `j` or a constant). A first-order operator (`f2 = 0`) is returned when
/// the logarithmic derivative already lies in `Q(t)`.
pub fn derive_ode(m: &QuadraticModel, kernel: &QElem, jp: &JPoly) -> Result<OdeOperator> {
    // (X^-j S)' = X^-j (S' - j (X'/X) S)
    let y = m.div(&m.dx, &QElem::x());
    let step = |s: &QElem| m.derive(s).sub(&m.mul(s, &y).mul_j(jp));
    let s0 = kernel.clone();
    if s0.is_zero() {
        return Err(Error::TrivialSolution);
    }
    let s1 = step(&s0);
    // cross product of the (X, 1) coordinates, denominators cleared
    let cross =
        |u: &QElem, v: &QElem, w: &QElem| u.a.mul(&v.b).sub(&v.a.mul(&u.b)).mul_upoly(&w.den);
    if cross(&s0, &s1, &s0).is_zero() {
        // W' = lambda W already: first order suffices
        let (p0, p1) = if s0.a.is_zero() {
            (&s0.b, &s1.b)
        } else {
            (&s0.a, &s1.a)
        };
        let f = [
            p1.mul_upoly(&s0.den).neg(),
            p0.mul_upoly(&s1.den),
            JPoly::zero(),
        ];
        return Ok(OdeOperator {
            f: normalize_triple(f),
        });
    }
    let s2 = step(&s1);
    let f = [
        cross(&s1, &s2, &s0),
        cross(&s2, &s0, &s1),
        cross(&s0, &s1, &s2),
    ];
    if f[2].is_zero() {
        return Err(Error::TrivialSolution);
    }
    Ok(OdeOperator {
        f: normalize_triple(f),
    })
}

/// Removes common factors in `t` and in `j`, then scales to coprime integer
/// coefficients with a positive leading coefficient on the highest
/// derivative present.
pub(crate) fn normalize_triple(mut f: [JPoly; 3]) -> [JPoly; 3] {
    let g = f
        .iter()
        .fold(UPoly::zero(), |g, p| g.gcd(&p.main_content()));
    if g.degree().is_some_and(|d| d > 0) {
        f = f.map(|p| p.exact_div_main(&g));
    }
    let gj = f.iter().fold(UPoly::zero(), |g, p| g.gcd(&p.j_content()));
    if gj.degree().is_some_and(|d| d > 0) {
        f = f.map(|p| p.exact_div_j(&gj));
    }
    let scale = integer_scale(f.iter());
    let mut f = f.map(|p| p.scale(&scale));
    let top = f.iter().rposition(|p| !p.is_zero()).unwrap_or(0);
    let lead_negative = f[top]
        .coeffs()
        .last()
        .and_then(|c| c.lead().cloned())
        .is_some_and(|c| c.is_negative());
    if lead_negative {
        f = f.map(|p| p.neg());
    }
    f
}

/// The rational `s` making every coefficient of `s * p` an integer with
/// overall gcd one.
pub(crate) fn integer_scale<'a>(ps: impl Iterator<Item = &'a JPoly>) -> Rational {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    let all: Vec<&Rational> = ps
        .flat_map(|p| p.coeffs().iter().flat_map(|u| u.coeffs().iter()))
        .collect();
    for c in &all {
        den = den.lcm(c.denom());
    }
    for c in &all {
        num = num.gcd(&(*c * &den).to_integer());
    }
    if num.is_zero() {
        return Rational::one();
    }
    Rational::new(den, num)
}

pub fn derive_ode_u(m: &QuadraticModel) -> Result<OdeOperator> {
    derive_ode(m, &u_kernel(m), &JPoly::j())
}

/// The same derivation with `j` fixed to `j0` from the start.
pub fn derive_ode_u_at(m: &QuadraticModel, j0: i64) -> Result<OdeOperator> {
    derive_ode(
        m,
        &u_kernel(m),
        &JPoly::constant(Rational::from_integer(j0.into())),
    )
}

pub fn derive_ode_v(m: &QuadraticModel) -> Result<OdeOperator> {
    derive_ode(m, &v_kernel(m), &JPoly::zero())
}

/// Whether `big` (evaluated at `j0`) is a left multiple of `small` by an
/// operator with rational-function coefficients, the two operators being of
/// order at most two and `small` of order at least one.
pub fn is_left_multiple(big: &OdeOperator, small: &OdeOperator, j0: i64) -> bool {
    let j = Rational::from_integer(j0.into());
    let g: Vec<UPoly> = big.f.iter().map(|p| p.eval_j(&j)).collect();
    let f: Vec<UPoly> = small.f.iter().map(|p| p.eval_j(&j)).collect();
    match (big.ode_order(), small.ode_order()) {
        (a, b) if a == b => (0..3).all(|r| (0..3).all(|s| g[r].mul(&f[s]) == g[s].mul(&f[r]))),
        (2, 1) => {
            // g2 D^2 + g1 D + g0 = (g2/f1) D (f1 D + f0) + R, R = r1/f1 D + r0/f1
            let r1 = g[1]
                .mul(&f[1])
                .sub(&g[2].mul(&f[1].derivative().add(&f[0])));
            let r0 = g[0].mul(&f[1]).sub(&g[2].mul(&f[0].derivative()));
            r0.mul(&f[1]) == r1.mul(&f[0])
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega_gf::{u_direct as u_series, v_direct as v_series};

    #[test]
    fn u_operator_matches_known_shape() {
        let m = QuadraticModel::new();
        let ode = derive_ode_u(&m).unwrap();
        assert_eq!(ode.f[0].j_degree(), Some(2));
        assert_eq!(ode.f[1].j_degree(), Some(0));
        assert_eq!(ode.f[2].j_degree(), Some(0));
        assert_eq!(
            ode.f
                .iter()
                .map(|f| f.main_degree().unwrap())
                .collect::<Vec<_>>(),
            vec![14, 15, 16]
        );
        // f0 at t = 0 is 2 - 2 j^2
        let f0_at_0 = ode.f[0].main_coeff(0);
        let expected = UPoly::from_ints(&[2, 0, -2]);
        assert!(f0_at_0 == expected || f0_at_0 == expected.neg());
    }

    #[test]
    fn u_operator_annihilates_series() {
        let m = QuadraticModel::new();
        let ode = derive_ode_u(&m).unwrap();
        for j in [0i64, -1, -5, -20] {
            let u = u_series(j, 60).unwrap();
            let r = ode.apply(&Rational::from_integer(j.into()), &u);
            assert!(r.order() >= 50);
            for e in (-j - 3)..=r.order() {
                assert!(r.coeff(e).unwrap().is_zero(), "j = {j}, t^{e}");
            }
        }
    }

    #[test]
    fn v_operator_annihilates_series() {
        let m = QuadraticModel::new();
        let ode = derive_ode_v(&m).unwrap();
        assert_eq!(ode.ode_order(), 1);
        let v = v_series(60).unwrap();
        let r = ode.apply(&Rational::zero(), &v);
        assert!(r.order() >= 50);
        for e in -3..=r.order() {
            assert!(r.coeff(e).unwrap().is_zero(), "t^{e}");
        }
    }

    #[test]
    fn fixed_parameter_derivation_is_consistent() {
        let m = QuadraticModel::new();
        let sym = derive_ode_u(&m).unwrap();
        assert_eq!(sym.ode_order(), 2);
        // U_0 is hyperexponential and j = -1 cancels an extra factor in t
        let orders: Vec<usize> = [0, -1, -7]
            .iter()
            .map(|&j| derive_ode_u_at(&m, j).unwrap().ode_order())
            .collect();
        assert_eq!(orders, vec![1, 2, 2]);
        for j0 in [0i64, -1, -7] {
            let fixed = derive_ode_u_at(&m, j0).unwrap();
            assert!(is_left_multiple(&sym, &fixed, j0), "j = {j0}");
        }
        assert_eq!(derive_ode_u_at(&m, -7).unwrap().t_degree(), sym.t_degree());
        let other = derive_ode_u_at(&m, -3).unwrap();
        assert!(!is_left_multiple(&sym, &other, -4));
    }
}
