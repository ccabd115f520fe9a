//! Dense univariate polynomials over the rationals, and polynomials in a
//! second variable `j` whose coefficients are such polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// `sum_i coeffs[i] * z^i`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.lead().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (k, d) in divisor.coeffs.iter().enumerate() {
                rem[i + k] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// `(content, primitive)` where `primitive` has coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn primitive_part(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::one(), Vec::new());
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * &den).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, den), prim)
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*z^{i}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Polynomial in `j` with [`UPoly`] coefficients: `sum_e coeffs[e] * j^e`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct JPoly {
    coeffs: Vec<UPoly>,
}

impl JPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_upoly(p: UPoly) -> Self {
        Self::new(vec![p])
    }

    /// The formal parameter `j` itself.
    pub fn j() -> Self {
        Self::new(vec![UPoly::zero(), UPoly::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_upoly(UPoly::constant(c))
    }

    pub fn new(mut coeffs: Vec<UPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        JPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn j_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest degree in the main variable over all `j`-coefficients.
    pub fn main_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.degree()).max()
    }

    pub fn coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    pub fn j_coeff(&self, e: usize) -> UPoly {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|e| self.j_coeff(e).add(&other.j_coeff(e)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|e| self.j_coeff(e).sub(&other.j_coeff(e)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        JPoly {
            coeffs: self.coeffs.iter().map(UPoly::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![UPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, pa) in self.coeffs.iter().enumerate() {
            for (b, pb) in other.coeffs.iter().enumerate() {
                out[a + b] = out[a + b].add(&pa.mul(pb));
            }
        }
        Self::new(out)
    }

    pub fn mul_upoly(&self, p: &UPoly) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul(p)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// Derivative in the main variable.
    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().map(UPoly::derivative).collect())
    }

    /// Coefficient of `z^i` as a polynomial in `j`.
    pub fn main_coeff(&self, i: usize) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|p| p.coeff(i)).collect())
    }

    /// Substitutes a value for `j`.
    pub fn eval_j(&self, j: &Rational) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(j).add(c);
        }
        acc
    }

    pub fn eval(&self, z: &Rational, j: &Rational) -> Rational {
        self.eval_j(j).eval(z)
    }

    /// Monic gcd, in the main variable, of all `j`-coefficients.
    pub fn main_content(&self) -> UPoly {
        self.coeffs.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
    }

    /// Monic gcd, in `j`, of all main-variable coefficients.
    pub fn j_content(&self) -> UPoly {
        let deg = self.main_degree().unwrap_or(0);
        (0..=deg).fold(UPoly::zero(), |g, i| g.gcd(&self.main_coeff(i)))
    }

    pub fn exact_div_main(&self, d: &UPoly) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.exact_div(d)).collect())
    }

    /// Divides by a polynomial in `j` alone.
    pub fn exact_div_j(&self, d: &UPoly) -> Self {
        let deg = self.main_degree().unwrap_or(0);
        let cols: Vec<UPoly> = (0..=deg).map(|i| self.main_coeff(i).exact_div(d)).collect();
        let jdeg = cols
            .iter()
            .filter_map(|c| c.degree())
            .max()
            .map_or(0, |d| d + 1);
        Self::new(
            (0..jdeg)
                .map(|e| UPoly::new(cols.iter().map(|c| c.coeff(e)).collect()))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_division() {
        let a = UPoly::from_ints(&[-1, 0, 1]); // z^2 - 1
        let b = UPoly::from_ints(&[1, 1]); // z + 1
        assert_eq!(a.gcd(&b), UPoly::from_ints(&[1, 1]));
        assert_eq!(a.exact_div(&b), UPoly::from_ints(&[-1, 1]));
        let (q, r) = UPoly::from_ints(&[1, 0, 1]).div_rem(&b);
        assert_eq!(q, UPoly::from_ints(&[-1, 1]));
        assert_eq!(r, UPoly::from_ints(&[2]));
        assert_eq!(UPoly::from_ints(&[3, 0, 1]).gcd(&b), UPoly::one());
    }

    #[test]
    fn primitive_part_normalizes_sign_and_content() {
        let p = UPoly::new(vec![
            Rational::new(1.into(), 2.into()),
            Rational::from_integer((-3).into()),
        ]);
        let (c, prim) = p.primitive_part();
        assert_eq!(prim, vec![BigInt::from(-1), BigInt::from(6)]);
        assert_eq!(c, Rational::new((-1).into(), 2.into()));
    }

    #[test]
    fn jpoly_contents() {
        // (j^2 - 1) * (z + 2)
        let p = JPoly::new(vec![
            UPoly::from_ints(&[-2, -1]),
            UPoly::zero(),
            UPoly::from_ints(&[2, 1]),
        ]);
        assert_eq!(p.main_content(), UPoly::from_ints(&[2, 1]));
        assert_eq!(p.j_content(), UPoly::from_ints(&[-1, 0, 1]));
        let q = p.exact_div_j(&UPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(q, JPoly::from_upoly(UPoly::from_ints(&[2, 1])));
        let three = Rational::from_integer(3.into());
        assert_eq!(
            p.eval(&Rational::one(), &three),
            Rational::from_integer(24.into())
        );
    }
}
