//! Arithmetic in the quadratic extension `Q(t)[j][X] / (A X^2 + B X + C)`
//! where `X(t)` is the power-series root used throughout, and derivation in
//! `t` on that extension.

use num_traits::One;

use crate::arith::{quadratic_series_root, JPoly, Rational, TruncSeries, UPoly};
use crate::error::Result;

/// `(a X + b) / den` with `a`, `b` polynomial in `t` and `j`, and `den` a
/// monic polynomial in `t` alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QElem {
    pub a: JPoly,
    pub b: JPoly,
    pub den: UPoly,
}

impl QElem {
    pub fn new(a: JPoly, b: JPoly, den: UPoly) -> Self {
        let mut e = QElem { a, b, den };
        e.normalize();
        e
    }

    pub fn scalar(p: UPoly) -> Self {
        Self::new(JPoly::zero(), JPoly::from_upoly(p), UPoly::one())
    }

    pub fn x() -> Self {
        Self::new(JPoly::from_upoly(UPoly::one()), JPoly::zero(), UPoly::one())
    }

    /// `c * X + d` for polynomials `c`, `d` in `t`.
    pub fn linear(c: UPoly, d: UPoly) -> Self {
        Self::new(JPoly::from_upoly(c), JPoly::from_upoly(d), UPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = UPoly::one();
            return;
        }
        let g = self
            .a
            .main_content()
            .gcd(&self.b.main_content())
            .gcd(&self.den);
        if g.degree() != Some(0) {
            self.a = self.a.exact_div_main(&g);
            self.b = self.b.exact_div_main(&g);
            self.den = self.den.exact_div(&g);
        }
        let lead = self.den.lead().expect("zero denominator").clone();
        if !lead.is_one() {
            let s = lead.recip();
            self.a = self.a.scale(&s);
            self.b = self.b.scale(&s);
            self.den = self.den.scale(&s);
        }
    }

    pub fn mul_j(&self, p: &JPoly) -> Self {
        Self::new(self.a.mul(p), self.b.mul(p), self.den.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let g = self.den.gcd(&other.den);
        let fs = other.den.exact_div(&g);
        let fo = self.den.exact_div(&g);
        Self::new(
            self.a.mul_upoly(&fs).add(&other.a.mul_upoly(&fo)),
            self.b.mul_upoly(&fs).add(&other.b.mul_upoly(&fo)),
            self.den.mul(&fs),
        )
    }

    pub fn neg(&self) -> Self {
        QElem {
            a: self.a.neg(),
            b: self.b.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Substitutes `j` and the truncated series `x` for `X`.
    pub fn to_series(&self, j: &Rational, x: &TruncSeries) -> Result<TruncSeries> {
        let order = x.order();
        let a = TruncSeries::from_upoly(&self.a.eval_j(j), order);
        let b = TruncSeries::from_upoly(&self.b.eval_j(j), order);
        let d = TruncSeries::from_upoly(&self.den, order);
        a.mul(x).add(&b).div(&d)
    }
}

/// The algebraic model of `X`: its minimal polynomial and `X'` expressed
/// back in the extension.
#[derive(Debug, Clone)]
pub struct QuadraticModel {
    pub a: UPoly,
    pub b: UPoly,
    pub c: UPoly,
    /// `dX/dt` as an element of the extension.
    pub dx: QElem,
}

impl QuadraticModel {
    pub fn new() -> Self {
        let a = UPoly::from_ints(&[0, 1, -3, 1]);
        let b = UPoly::from_ints(&[-1, 5, -6, 2]);
        let c = a.clone();
        let mut m = QuadraticModel {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            dx: QElem::scalar(UPoly::zero()),
        };
        // differentiate A X^2 + B X + C = 0 and solve for X'
        let x = QElem::x();
        let x2 = m.mul(&x, &x);
        let num = m
            .mul(&x2, &QElem::scalar(a.derivative()))
            .add(&m.mul(&x, &QElem::scalar(b.derivative())))
            .add(&QElem::scalar(c.derivative()));
        let two_a = a.scale(&Rational::from_integer(2.into()));
        let inv = m.inv(&QElem::linear(two_a, b));
        m.dx = m.mul(&num, &inv).neg();
        m
    }

    pub fn mul(&self, x: &QElem, y: &QElem) -> QElem {
        // X^2 = -(B X + C) / A
        let aa = x.a.mul(&y.a);
        let mixed = x.a.mul(&y.b).add(&y.a.mul(&x.b));
        let bb = x.b.mul(&y.b);
        QElem::new(
            mixed.mul_upoly(&self.a).sub(&aa.mul_upoly(&self.b)),
            bb.mul_upoly(&self.a).sub(&aa.mul_upoly(&self.c)),
            x.den.mul(&y.den).mul(&self.a),
        )
    }

    /// Inverse of an element free of `j`.
    pub fn inv(&self, x: &QElem) -> QElem {
        assert!(
            x.a.j_degree().unwrap_or(0) == 0 && x.b.j_degree().unwrap_or(0) == 0,
            "only j-free elements are inverted"
        );
        // conjugate root is -B/A - X
        let conj = QElem::new(
            x.a.mul_upoly(&self.a).neg(),
            x.b.mul_upoly(&self.a).sub(&x.a.mul_upoly(&self.b)),
            UPoly::one(),
        );
        let norm = self.mul(x, &conj);
        assert!(norm.a.is_zero(), "norm left the base field");
        let n = norm.b.j_coeff(0);
        QElem::new(conj.a.mul_upoly(&norm.den), conj.b.mul_upoly(&norm.den), n)
    }

    pub fn div(&self, x: &QElem, y: &QElem) -> QElem {
        self.mul(x, &self.inv(y))
    }

    /// `d/dt`, with `j` treated as a constant.
    pub fn derive(&self, x: &QElem) -> QElem {
        let d = &x.den;
        let dd = d.derivative();
        let base = QElem::new(
            x.a.derivative().mul_upoly(d).sub(&x.a.mul_upoly(&dd)),
            x.b.derivative().mul_upoly(d).sub(&x.b.mul_upoly(&dd)),
            d.mul(d),
        );
        let carry = QElem::new(JPoly::zero(), x.a.clone(), d.clone());
        base.add(&self.mul(&carry, &self.dx))
    }

    /// The truncated power series of `X`.
    pub fn series(&self, order: i64) -> Result<TruncSeries> {
        quadratic_series_root(self.a.coeffs(), self.b.coeffs(), self.c.coeffs(), order)
    }
}

impl Default for QuadraticModel {
    fn default() -> Self {
        Self::new()
    }
}

/// Integer coefficient list, lowest degree first.
pub(crate) fn poly(c: &[i64]) -> UPoly {
    UPoly::from_ints(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn x_satisfies_its_derivative_identity() {
        let m = QuadraticModel::new();
        let x = m.series(40).unwrap();
        let lhs = x.derivative();
        let rhs = m.dx.to_series(&Rational::zero(), &x).unwrap();
        for e in 0..35 {
            assert_eq!(lhs.coeff(e).unwrap(), rhs.coeff(e).unwrap(), "t^{e}");
        }
    }

    #[test]
    fn inverse_and_product() {
        let m = QuadraticModel::new();
        let e = QElem::linear(poly(&[1, 1]), poly(&[-1, 0, 2]));
        let one = m.mul(&e, &m.inv(&e));
        assert_eq!(one, QElem::scalar(UPoly::one()));
        let x = QElem::x();
        // A X^2 + B X + C reduces to zero
        let lhs = m
            .mul(&m.mul(&x, &x), &QElem::scalar(m.a.clone()))
            .add(&m.mul(&x, &QElem::scalar(m.b.clone())))
            .add(&QElem::scalar(m.c.clone()));
        assert!(lhs.is_zero());
    }

    #[test]
    fn elements_evaluate_like_series() {
        let m = QuadraticModel::new();
        let x = m.series(30).unwrap();
        let e = m.div(&QElem::x(), &QElem::linear(poly(&[0, 1]), poly(&[-1])));
        let direct = x
            .div(
                &TruncSeries::from_ints(&[-1], 30)
                    .add(&x.mul(&TruncSeries::from_ints(&[0, 1], 30))),
            )
            .unwrap();
        let via = e.to_series(&Rational::zero(), &x).unwrap();
        for k in 0..25 {
            assert_eq!(direct.coeff(k).unwrap(), via.coeff(k).unwrap());
        }
    }
}
