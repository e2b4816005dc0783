//! Dense integer polynomials, lowest degree first.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::linalg::LinalgError;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    /// Trailing zero coefficients are dropped; the zero polynomial has no coefficients.
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().copied().map(BigInt::from).collect())
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn coefficient(&self, degree: usize) -> BigInt {
        self.coefficients.get(degree).cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, mut k: u32) -> IntPolynomial {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `Φ_p(x) = 1 + x + ... + x^(p-1)` for prime `p`.
pub fn cyclotomic(p: u64) -> Result<IntPolynomial, LinalgError> {
    if !is_prime(p) {
        return Err(LinalgError::NonPrime(p));
    }
    Ok(IntPolynomial::new(vec![BigInt::one(); p as usize]))
}

/// Coefficient of `x^degree` in `f^k`.
pub fn poly_pow_coefficient(f: &IntPolynomial, k: u32, degree: usize) -> BigInt {
    f.pow(k).coefficient(degree)
}

/// `C(n, j)` as an exact integer.
pub fn binomial(n: usize, j: usize) -> BigInt {
    if j > n {
        return BigInt::zero();
    }
    let j = j.min(n - j);
    let mut acc = BigInt::one();
    for i in 0..j {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `base^e` as an exact integer.
pub fn int_pow(base: u64, e: u32) -> BigInt {
    Pow::pow(BigInt::from(base), e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small_primes() {
        assert_eq!(cyclotomic(3).unwrap(), IntPolynomial::from_i64(&[1, 1, 1]));
        assert_eq!(
            cyclotomic(5).unwrap(),
            IntPolynomial::from_i64(&[1, 1, 1, 1, 1])
        );
        let phi7 = cyclotomic(7).unwrap();
        assert_eq!(phi7.degree(), Some(6));
        assert!(phi7.coefficients().iter().all(One::is_one));
    }

    #[test]
    fn cyclotomic_rejects_composites() {
        assert_eq!(cyclotomic(9), Err(LinalgError::NonPrime(9)));
        assert_eq!(cyclotomic(1), Err(LinalgError::NonPrime(1)));
    }

    #[test]
    fn power_coefficients() {
        let phi3 = cyclotomic(3).unwrap();
        assert_eq!(poly_pow_coefficient(&phi3, 1, 1), BigInt::from(1));
        assert_eq!(poly_pow_coefficient(&phi3, 2, 2), BigInt::from(3));
        assert_eq!(poly_pow_coefficient(&phi3, 0, 0), BigInt::from(1));
        assert_eq!(poly_pow_coefficient(&phi3, 0, 1), BigInt::from(0));
        assert_eq!(phi3.pow(2), IntPolynomial::from_i64(&[1, 2, 3, 2, 1]));
    }

    #[test]
    fn zero_polynomial_normalizes() {
        let z = IntPolynomial::from_i64(&[0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn display() {
        assert_eq!(
            IntPolynomial::from_i64(&[1, -2, 1]).to_string(),
            "x^2 - 2x + 1"
        );
        assert_eq!(IntPolynomial::from_i64(&[0, 1]).to_string(), "x");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(12, 6), BigInt::from(924));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }

    #[test]
    fn phi_at_one_is_p() {
        for p in [3u64, 5, 7, 11] {
            assert_eq!(cyclotomic(p).unwrap().eval(&BigInt::one()), BigInt::from(p));
        }
    }
}
