//! Dense polynomials over [`ExactRational`], also used as truncated power
//! series. Coefficient `i` multiplies `x^i`; for matrix rows that is the
//! column index.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::rational::ExactRational;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<ExactRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^degree`
    pub fn monomial(c: ExactRational, degree: usize) -> Self {
        let mut coeffs = vec![ExactRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(ExactRational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| ExactRational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactRational> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> ExactRational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients `0..len`, zero-padded.
    pub fn padded(&self, len: usize) -> Vec<ExactRational> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ExactRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Substitute `x -> x^k`.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ExactRational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self { coeffs }
    }

    /// Drop every term of degree `>= len`.
    pub fn truncate(&self, len: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(len).cloned().collect())
    }

    /// Product keeping only degrees `< len`.
    pub fn mul_truncated(&self, other: &Self, len: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let out_len = (self.coeffs.len() + other.coeffs.len() - 1).min(len);
        let mut out = vec![ExactRational::zero(); out_len];
        for (i, a) in self.coeffs.iter().enumerate().take(out_len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(out_len - i) {
                out[i + j] += &(a * b);
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * x + c)
    }
}

/// `w_m(x) = 1 + x + ... + x^m`, with `w_{-1} = 0`.
pub fn w_poly(m: i64) -> Polynomial {
    assert!(m >= -1, "w_m is defined for m >= -1");
    if m < 0 {
        return Polynomial::zero();
    }
    Polynomial::from_coeffs(vec![ExactRational::one(); m as usize + 1])
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_truncated(rhs, usize::MAX)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn w_examples() {
        assert!(w_poly(-1).is_zero());
        assert_eq!(w_poly(0), Polynomial::one());
        assert_eq!(w_poly(2), Polynomial::from_ints(&[1, 1, 1]));
    }

    #[test]
    fn substitution_and_shift() {
        let p = Polynomial::from_ints(&[1, 2]);
        assert_eq!(p.substitute_power(3), Polynomial::from_ints(&[1, 0, 0, 2]));
        assert_eq!(p.shift(2), Polynomial::from_ints(&[0, 0, 1, 2]));
        assert_eq!(Polynomial::zero().shift(4), Polynomial::zero());
    }

    #[test]
    fn normalization_strips_trailing_zeros() {
        let p = Polynomial::from_ints(&[1, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Polynomial::from_ints(&[0, 0]).degree(), None);
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(-5i64..5, 0..6).prop_map(|v| Polynomial::from_ints(&v))
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            let x = ExactRational::from(3);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        }

        #[test]
        fn truncated_product_is_prefix(a in small_poly(), b in small_poly(), len in 0usize..8) {
            prop_assert_eq!(a.mul_truncated(&b, len), (&a * &b).truncate(len));
        }
    }
}
