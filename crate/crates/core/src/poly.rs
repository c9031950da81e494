//! Complex polynomials in canonical ascending-coefficient form.
//!
//! A [`Polynomial`] stores finite Taylor coefficients of an analytic function
//! on the disk, index `k` holding the coefficient of `z^k`. The zero
//! polynomial has an empty coefficient vector; every other value keeps a
//! nonzero trailing coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Tolerance used when `approx_eq` compares coefficient vectors; scaled by
/// the largest coefficient magnitude of either side.
pub const COEFF_EQ_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum PolyError {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("nonfinite coefficient at index {0}")]
    NonFiniteCoefficient(usize),
    #[error("circle grid resolution {resolution} too small for degree {degree} (need > pi * degree)")]
    ResolutionTooSmall { resolution: usize, degree: usize },
    #[error("root finder did not reach the residual target")]
    RootsNotConverged,
}

/// A polynomial with complex coefficients, ascending powers of `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Canonical form: trailing exact zeros are stripped. Panics on
    /// nonfinite coefficients; use [`Polynomial::try_new`] for fallible
    /// construction from untrusted data.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        for (k, c) in coeffs.iter().enumerate() {
            assert!(
                c.re.is_finite() && c.im.is_finite(),
                "nonfinite coefficient at index {k}"
            );
        }
        while coeffs.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn try_new(coeffs: Vec<Complex64>) -> Result<Self, PolyError> {
        if let Some(k) = coeffs
            .iter()
            .position(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(PolyError::NonFiniteCoefficient(k));
        }
        Ok(Self::new(coeffs))
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// The monomial `c * z^k`.
    pub fn monomial(c: Complex64, k: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `[c0, c1, ...]` given as `(re, im)` pairs; test and example helper.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Self {
        Self::new(pairs.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
    }

    /// Real-coefficient convenience constructor.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&re| Complex64::new(re, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    /// Horner evaluation of `sum c_k z^k`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| c * (i as f64 + 1.0))
                .collect(),
        )
    }

    /// Synthetic division at `zeta`: returns `(value, quotient)` with
    /// `p(z) = value + (z - zeta) * quotient(z)` exact coefficientwise and
    /// `value = p(zeta)`.
    pub fn divide_at(&self, zeta: Complex64) -> (Complex64, Polynomial) {
        if self.coeffs.is_empty() {
            return (Complex64::new(0.0, 0.0), Polynomial::zero());
        }
        let n = self.coeffs.len();
        let mut quotient = vec![Complex64::new(0.0, 0.0); n - 1];
        let mut acc = self.coeffs[n - 1];
        for k in (1..n).rev() {
            quotient[k - 1] = acc;
            acc = self.coeffs[k - 1] + zeta * acc;
        }
        (acc, Polynomial::new(quotient))
    }

    /// Euclidean division: `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder` and
    /// `deg remainder < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let dd = divisor.degree().expect("nonzero divisor");
        let dn = match self.degree() {
            Some(dn) if dn >= dd => dn,
            _ => return Ok((Polynomial::zero(), self.clone())),
        };
        let lead = divisor.leading_coeff().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Complex64::new(0.0, 0.0); dn - dd + 1];
        for k in (dd..=dn).rev() {
            let c = rem[k] / lead;
            quot[k - dd] = c;
            for m in 0..=dd {
                let sub = c * divisor.coeffs[m];
                rem[k - dd + m] -= sub;
            }
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Squared `H^2` norm: `sum |c_k|^2` (Parseval).
    pub fn h2_norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `H^2` inner product `sum c_k(p) * conj(c_k(q))`; linear in `self`,
    /// conjugate-linear in `other`.
    pub fn h2_inner(&self, other: &Polynomial) -> Complex64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    /// `sum |c_k|`; bounds `|p|` on the closed disk.
    pub fn coeff_abs_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// `sum k * |c_k|`; bounds `|p'|` on the closed disk.
    pub fn deriv_abs_sum(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| k as f64 * c.norm())
            .sum()
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Coefficientwise comparison with tolerance `COEFF_EQ_TOL` scaled by the
    /// largest coefficient magnitude of either operand.
    pub fn approx_eq(&self, other: &Polynomial) -> bool {
        self.approx_eq_tol(other, COEFF_EQ_TOL)
    }

    pub fn approx_eq_tol(&self, other: &Polynomial, tol: f64) -> bool {
        let scale = 1.0_f64.max(self.max_coeff_abs()).max(other.max_coeff_abs());
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|k| (self.coeff(k) - other.coeff(k)).norm() <= tol * scale)
    }

    /// Largest coefficient magnitude of `self - other`.
    pub fn max_coeff_distance(&self, other: &Polynomial) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({:.6}{:+.6}i)", c.re, c.im)?,
                1 => write!(f, "({:.6}{:+.6}i)z", c.re, c.im)?,
                _ => write!(f, "({:.6}{:+.6}i)z^{}", c.re, c.im, k)?,
            }
        }
        Ok(())
    }
}
