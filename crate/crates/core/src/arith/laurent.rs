//! Laurent polynomials in one variable with arbitrary-precision integer
//! coefficients.
//!
//! The representation is dense: a coefficient vector plus the exponent of its
//! first slot. Canonical form trims zeros at both ends, so the first and last
//! stored coefficients are nonzero and the zero polynomial stores nothing.
//! Interior zeros are stored; every polynomial in this crate has contiguous or
//! near-contiguous support.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    offset: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// `c * x^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        Self::from_coeffs(e, vec![c.into()])
    }

    /// Builds `sum_i coeffs[i] * x^(offset + i)`.
    pub fn from_coeffs(offset: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { offset, coeffs };
        p.normalize();
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_coeffs(lo, coeffs)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.offset = 0;
            }
            Some(first) => {
                let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
                self.coeffs.truncate(last + 1);
                if first > 0 {
                    self.coeffs.drain(..first);
                    self.offset += first as i64;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.offset + self.coeffs.len() as i64 - 1)
    }

    pub fn ldeg(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.offset)
    }

    /// Number of slots between `ldeg` and `deg` inclusive (zero for the zero
    /// polynomial).
    pub fn span(&self) -> usize {
        self.coeffs.len()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Coefficient of `x^e`.
    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeff_ref(e).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, e: i64) -> Option<&BigInt> {
        let idx = e.checked_sub(self.offset)?;
        if idx < 0 {
            return None;
        }
        self.coeffs.get(idx as usize)
    }

    /// Constant-term operator.
    pub fn ct(&self) -> BigInt {
        self.coeff(0)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.offset + i as i64, c))
    }

    /// Substitutes `x -> 1/x`.
    pub fn reverse(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly {
            offset: -(self.offset + self.coeffs.len() as i64 - 1),
            coeffs,
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut p = self.clone();
        if !p.is_zero() {
            p.offset += k;
        }
        p
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Drops every term whose exponent has absolute value above `window`.
    pub fn prune(&self, window: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lo = self.offset.max(-window);
        let hi = self.deg().unwrap().min(window);
        if lo > hi {
            return Self::zero();
        }
        let start = (lo - self.offset) as usize;
        let end = (hi - self.offset) as usize;
        Self::from_coeffs(lo, self.coeffs[start..=end].to_vec())
    }

    /// True when `p(x) = p(1/x)`.
    pub fn is_reverse_symmetric(&self) -> bool {
        *self == self.reverse()
    }

    fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Schoolbook product. The operand with fewer nonzero terms drives the
    /// outer loop, so products against sparse factors cost
    /// `O(nnz(sparse) * span(dense))`. When all partial sums provably fit in
    /// `i128` the accumulation runs in machine integers.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (sparse, dense) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let offset = self.offset + other.offset;
        let terms = sparse.nnz().min(dense.nnz()) as u64;
        let bound_bits = sparse.max_bits() + dense.max_bits() + 64 - terms.leading_zeros() as u64;
        if bound_bits < 126 {
            let mut acc = vec![0i128; len];
            let d: Vec<i128> = dense.coeffs.iter().map(|c| c.to_i128().unwrap()).collect();
            for (i, a) in sparse.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let a = a.to_i128().unwrap();
                for (slot, b) in acc[i..i + d.len()].iter_mut().zip(&d) {
                    *slot += a * b;
                }
            }
            return Self::from_coeffs(offset, acc.into_iter().map(BigInt::from).collect());
        }
        let mut acc = vec![BigInt::zero(); len];
        for (i, a) in sparse.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let unit = a.is_one();
            for (slot, b) in acc[i..i + dense.coeffs.len()].iter_mut().zip(&dense.coeffs) {
                if b.is_zero() {
                    continue;
                }
                if unit {
                    *slot += b;
                } else {
                    *slot += a * b;
                }
            }
        }
        Self::from_coeffs(offset, acc)
    }

    /// `CT(self * other)` without forming the product.
    pub fn ct_of_product(&self, other: &Self) -> BigInt {
        let mut sum = BigInt::zero();
        for (e, c) in self.terms() {
            if let Some(d) = other.coeff_ref(-e) {
                sum += c * d;
            }
        }
        sum
    }

    /// `self += c * x^k * other`, growing the buffer as needed.
    pub fn add_scaled_shifted(&mut self, other: &Self, c: &BigInt, k: i64) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        let lo = other.offset + k;
        let hi = lo + other.coeffs.len() as i64 - 1;
        self.reserve_range(lo, hi);
        let start = (lo - self.offset) as usize;
        let unit = c.is_one();
        let minus = !unit && (-c).is_one();
        for (slot, b) in self.coeffs[start..].iter_mut().zip(&other.coeffs) {
            if b.is_zero() {
                continue;
            }
            if unit {
                *slot += b;
            } else if minus {
                *slot -= b;
            } else {
                *slot += c * b;
            }
        }
        self.normalize();
    }

    fn reserve_range(&mut self, lo: i64, hi: i64) {
        if self.is_zero() {
            self.offset = lo;
            self.coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
            return;
        }
        let cur_hi = self.offset + self.coeffs.len() as i64 - 1;
        if lo < self.offset {
            let pad = (self.offset - lo) as usize;
            let mut v = vec![BigInt::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.offset = lo;
        }
        if hi > cur_hi {
            self.coeffs
                .resize((hi - self.offset + 1) as usize, BigInt::zero());
        }
    }

    /// Evaluates at an integer point; only meaningful for `x != 0` when
    /// negative exponents are present.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_scaled_shifted(rhs, &BigInt::one(), 0);
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_scaled_shifted(rhs, &-BigInt::one(), 0);
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled_shifted(rhs, &BigInt::one(), 0);
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(&self, &rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{e}")?,
                (_, false) => write!(f, "{mag}*x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn naive_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut terms = Vec::new();
        for (ea, ca) in a.terms() {
            for (eb, cb) in b.terms() {
                terms.push((ea + eb, ca * cb));
            }
        }
        LaurentPoly::from_terms(terms)
    }

    #[test]
    fn add_cancels_and_keeps_identity() {
        let a = lp(&[(0, 1), (1, 1)]);
        let b = lp(&[(-1, 1), (1, -1)]);
        assert_eq!(&a + &b, lp(&[(-1, 1), (0, 1)]));
        assert_eq!(&a + &LaurentPoly::zero(), a);
        let g = lp(&[(0, 1), (2, 1), (3, 1)]);
        let h = lp(&[(0, 1), (3, 1), (5, 1)]);
        assert_eq!(&g + &h, lp(&[(0, 2), (2, 1), (3, 2), (5, 1)]));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn mul_examples() {
        let g = lp(&[(0, 1), (2, 1), (3, 1)]);
        let h = lp(&[(0, 1), (3, 1), (5, 1)]);
        let g2 = lp(&[(0, 1), (2, 1), (3, 2), (5, 2), (6, 1), (7, 1), (8, 1)]);
        assert_eq!(&g * &h, g2);
        assert_eq!(&g * &LaurentPoly::one(), g);
        assert_eq!(&lp(&[(-2, 1)]) * &lp(&[(2, 1)]), LaurentPoly::one());
        // G_2(x) G_2(1/x) has constant term omega(2) = 13
        assert_eq!((&g2 * &g2.reverse()).ct(), BigInt::from(13));
        assert_eq!(g2.ct_of_product(&g2.reverse()), BigInt::from(13));
    }

    #[test]
    fn ct_reverse_shift() {
        assert_eq!(lp(&[(-1, 1), (0, 2), (1, 1)]).ct(), BigInt::from(2));
        assert_eq!(lp(&[(3, 1)]).ct(), BigInt::zero());
        let p = lp(&[(0, 1), (2, 1), (3, 1)]);
        assert_eq!(p.reverse(), lp(&[(0, 1), (-2, 1), (-3, 1)]));
        assert_eq!(p.reverse().reverse(), p);
        let q = lp(&[(-1, 3), (0, 7), (5, 1)]);
        assert_eq!(q.reverse().ct(), BigInt::from(7));
        assert_eq!(lp(&[(0, 1), (1, 1)]).shift(2), lp(&[(2, 1), (3, 1)]));
        assert_eq!(q.shift(0), q);
        assert_eq!(q.shift(3).shift(-3), q);
    }

    #[test]
    fn degrees_of_zero_are_errors() {
        assert_eq!(LaurentPoly::zero().deg(), Err(Error::ZeroPolynomial));
        assert_eq!(LaurentPoly::zero().ldeg(), Err(Error::ZeroPolynomial));
        let p = lp(&[(-4, 1), (7, -2)]);
        assert_eq!(p.deg(), Ok(7));
        assert_eq!(p.ldeg(), Ok(-4));
    }

    #[test]
    fn prune_and_accumulate() {
        let p = lp(&[(-5, 1), (-1, 2), (0, 3), (2, 4), (6, 5)]);
        assert_eq!(p.prune(2), lp(&[(-1, 2), (0, 3), (2, 4)]));
        assert!(lp(&[(5, 1)]).prune(2).is_zero());
        let mut acc = LaurentPoly::zero();
        acc.add_scaled_shifted(&p, &BigInt::from(3), 1);
        acc.add_scaled_shifted(&p, &BigInt::from(-3), 1);
        assert!(acc.is_zero());
    }

    #[test]
    fn bignum_path_matches_naive() {
        let big: BigInt = BigInt::one() << 200u32;
        let a = LaurentPoly::from_terms([(-3, big.clone()), (0, BigInt::from(5)), (4, -&big)]);
        let b = LaurentPoly::from_terms([(1, big.clone()), (2, BigInt::from(-7))]);
        assert_eq!(&a * &b, naive_mul(&a, &b));
    }

    fn arb_poly(max_terms: usize, bits: u32) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(
            (
                -150i64..150,
                prop::collection::vec(any::<u32>(), 1..=(bits as usize / 32)),
                any::<bool>(),
            ),
            0..max_terms,
        )
        .prop_map(|terms| {
            LaurentPoly::from_terms(terms.into_iter().map(|(e, limbs, neg)| {
                let mag = BigInt::from(num_bigint::BigUint::new(limbs));
                (e, if neg { -mag } else { mag })
            }))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn mul_matches_naive_convolution(a in arb_poly(200, 256), b in arb_poly(200, 256)) {
            prop_assert_eq!(&a * &b, naive_mul(&a, &b));
        }

        #[test]
        fn mul_small_coefficients_matches_naive(a in arb_poly(200, 32), b in arb_poly(200, 32)) {
            prop_assert_eq!(&a * &b, naive_mul(&a, &b));
        }

        #[test]
        fn constant_term_laws(p in arb_poly(40, 64)) {
            prop_assert_eq!(p.ct(), p.reverse().ct());
            if let (Ok(lo), Ok(hi)) = (p.ldeg(), p.deg()) {
                if lo > 0 || hi < 0 {
                    prop_assert!(p.ct().is_zero());
                }
                if !p.is_zero() {
                    prop_assert_eq!(p.coeff(lo).is_zero(), false);
                    prop_assert_eq!(p.coeff(hi).is_zero(), false);
                }
            }
        }

        #[test]
        fn support_of_product(a in arb_poly(30, 64), b in arb_poly(30, 64)) {
            let p = &a * &b;
            if !a.is_zero() && !b.is_zero() {
                // leading coefficients over Z never cancel
                prop_assert_eq!(p.deg().unwrap(), a.deg().unwrap() + b.deg().unwrap());
                prop_assert_eq!(p.ldeg().unwrap(), a.ldeg().unwrap() + b.ldeg().unwrap());
            }
        }
    }
}
