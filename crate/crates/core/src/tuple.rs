//! Tuples of polynomials, the row vectors `Phi = (phi_1, ..., phi_n)` that
//! corona data and Koszul complexes are made of.

use num_complex::Complex64;

use crate::poly::Polynomial;

/// A finite tuple of polynomials treated as a row vector of functions.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionTuple {
    entries: Vec<Polynomial>,
}

impl FunctionTuple {
    pub fn new(entries: Vec<Polynomial>) -> Self {
        FunctionTuple { entries }
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn entry(&self, j: usize) -> &Polynomial {
        &self.entries[j]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Pointwise values `(phi_1(z), ..., phi_n(z))`.
    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        self.entries.iter().map(|p| p.eval(z)).collect()
    }

    /// `sum_j |phi_j(z)|^2`, the quantity corona lower bounds control.
    pub fn sum_abs_sq_at(&self, z: Complex64) -> f64 {
        self.entries.iter().map(|p| p.eval(z).norm_sqr()).sum()
    }

    /// Inner product with another tuple's values: `sum_j phi_j(z) * psi_j(z)`.
    /// Panics if lengths differ.
    pub fn dot_at(&self, other: &FunctionTuple, z: Complex64) -> Complex64 {
        assert_eq!(self.len(), other.len(), "tuple length mismatch");
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(p, q)| p.eval(z) * q.eval(z))
            .sum()
    }

    /// The polynomial `sum_j phi_j * psi_j`; exact coefficient arithmetic.
    pub fn dot_poly(&self, other: &FunctionTuple) -> Polynomial {
        assert_eq!(self.len(), other.len(), "tuple length mismatch");
        let mut acc = Polynomial::zero();
        for (p, q) in self.entries.iter().zip(other.entries.iter()) {
            acc = &acc + &(p * q);
        }
        acc
    }

    /// Entrywise scalar multiple.
    pub fn scale(&self, s: Complex64) -> FunctionTuple {
        FunctionTuple::new(self.entries.iter().map(|p| p.scale(s)).collect())
    }

    /// Largest entry degree, `None` when every entry is zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(|p| p.degree()).max()
    }

    /// Sum of squared `H^2` norms of the entries.
    pub fn h2_norm_sq(&self) -> f64 {
        self.entries.iter().map(|p| p.h2_norm_sq()).sum()
    }

    /// Entrywise `approx_eq` with the default coefficient tolerance.
    pub fn approx_eq(&self, other: &FunctionTuple) -> bool {
        self.len() == other.len()
            && self
                .entries
                .iter()
                .zip(other.entries.iter())
                .all(|(p, q)| p.approx_eq(q))
    }

    /// Largest coefficient distance across entries; positional, so tuples of
    /// different lengths compare against zero padding.
    pub fn max_coeff_distance(&self, other: &FunctionTuple) -> f64 {
        let n = self.len().max(other.len());
        let zero = Polynomial::zero();
        (0..n)
            .map(|j| {
                let a = self.entries.get(j).unwrap_or(&zero);
                let b = other.entries.get(j).unwrap_or(&zero);
                a.max_coeff_distance(b)
            })
            .fold(0.0, f64::max)
    }
}

impl From<Vec<Polynomial>> for FunctionTuple {
    fn from(entries: Vec<Polynomial>) -> Self {
        FunctionTuple::new(entries)
    }
}
