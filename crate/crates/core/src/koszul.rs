//! Pair-column Koszul matrices and the solution-updating formula built from
//! them.
//!
//! For a vector `A = (a_1, ..., a_n)` the matrix `Q_A` has one column per
//! index pair `(i, j)` with `i < j`, carrying `a_j` in row `i` and `-a_i` in
//! row `j`. Its range lies in the kernel of `A`, and two exact algebraic
//! identities tie `Q_A` to rank-one modifications of the identity; those are
//! what the corona solution formula consumes, so the tests verify them
//! directly rather than pinning any particular published layout.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::measure::UnitCirclePoint;
use crate::poly::Polynomial;
use crate::tuple::FunctionTuple;

const CHECK_SEED: u64 = 0x5EED;
const CHECK_TRIALS: usize = 16;

#[derive(Debug, Error)]
pub enum KoszulError {
    #[error("empty vector has no Koszul matrix")]
    EmptyVector,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("tuple norm {norm:.3e} at the distinguished point is below 1e-9")]
    VanishingAtPoint { norm: f64 },
}

/// Sparse pair-column matrix `Q_A`. Columns are indexed by pairs `(i, j)`
/// with `i < j` in lexicographic order; column `(i, j)` holds `a_j` at row
/// `i` and `-a_i` at row `j`.
#[derive(Debug, Clone)]
pub struct KoszulMatrix {
    source: Vec<Complex64>,
}

/// Pairs `(i, j)`, `i < j`, in lexicographic order.
fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

impl KoszulMatrix {
    /// The vector the matrix was built from.
    pub fn source(&self) -> &[Complex64] {
        &self.source
    }

    /// Number of rows.
    pub fn dimension(&self) -> usize {
        self.source.len()
    }

    /// Number of pair columns, `n(n-1)/2`.
    pub fn num_columns(&self) -> usize {
        let n = self.source.len();
        n * (n - 1) / 2
    }

    /// Column index pairs in storage order.
    pub fn column_pairs(&self) -> Vec<(usize, usize)> {
        pairs(self.source.len()).collect()
    }

    /// Entry at `row` of the column indexed by the pair `(i, j)`.
    pub fn entry(&self, row: usize, pair: (usize, usize)) -> Complex64 {
        let (i, j) = pair;
        assert!(i < j && j < self.source.len(), "invalid pair ({i}, {j})");
        if row == i {
            self.source[j]
        } else if row == j {
            -self.source[i]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// Matrix-vector product `Q_A x`. Panics unless `x.len()` equals
    /// [`num_columns`](Self::num_columns).
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.num_columns(), "column count mismatch");
        let mut out = vec![Complex64::new(0.0, 0.0); self.source.len()];
        for (col, (i, j)) in pairs(self.source.len()).enumerate() {
            out[i] += self.source[j] * x[col];
            out[j] -= self.source[i] * x[col];
        }
        out
    }

    /// Dense row-major copy, mostly for tests and debugging.
    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let n = self.source.len();
        let mut dense = vec![vec![Complex64::new(0.0, 0.0); self.num_columns()]; n];
        for (col, (i, j)) in pairs(n).enumerate() {
            dense[i][col] = self.source[j];
            dense[j][col] = -self.source[i];
        }
        dense
    }
}

/// Build the pair-column matrix for a nonempty vector.
pub fn build_q(a: &[Complex64]) -> Result<KoszulMatrix, KoszulError> {
    if a.is_empty() {
        return Err(KoszulError::EmptyVector);
    }
    Ok(KoszulMatrix {
        source: a.to_vec(),
    })
}

/// Maximum absolute deviations of the three defining identities, measured on
/// concrete vectors.
#[derive(Debug, Clone, Copy)]
pub struct KoszulDeviations {
    /// `A (Q_A x) = 0`, maximized over seeded random `x`
    pub kernel: f64,
    /// `(A A^*) I - A^* A = Q_A Q_A^*`, max entry error
    pub gram: f64,
    /// `(A D^T) I - D^T A = Q_A Q_D^T`, max entry error
    pub mixed: f64,
}

/// Evaluate the three identities for the pair `(A, D)` and report the worst
/// entrywise deviation of each.
pub fn check_identities(
    a: &[Complex64],
    d: &[Complex64],
) -> Result<KoszulDeviations, KoszulError> {
    if a.len() != d.len() {
        return Err(KoszulError::LengthMismatch {
            left: a.len(),
            right: d.len(),
        });
    }
    let qa = build_q(a)?;
    let qd = build_q(d)?;
    let n = a.len();

    let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED);
    let mut kernel = 0.0f64;
    for _ in 0..CHECK_TRIALS {
        let x: Vec<Complex64> = (0..qa.num_columns())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let image = qa.apply(&x);
        let dot: Complex64 = a.iter().zip(&image).map(|(ak, yk)| ak * yk).sum();
        kernel = kernel.max(dot.norm());
    }

    let aa: f64 = a.iter().map(|ak| ak.norm_sqr()).sum();
    let ad: Complex64 = a.iter().zip(d).map(|(ak, dk)| ak * dk).sum();
    let mut gram = 0.0f64;
    let mut mixed = 0.0f64;
    for p in 0..n {
        for q in 0..n {
            let mut qq_star = Complex64::new(0.0, 0.0);
            let mut qq_t = Complex64::new(0.0, 0.0);
            for (i, j) in pairs(n) {
                qq_star += qa.entry(p, (i, j)) * qa.entry(q, (i, j)).conj();
                qq_t += qa.entry(p, (i, j)) * qd.entry(q, (i, j));
            }
            let delta = if p == q {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            let gram_lhs = aa * delta - a[p].conj() * a[q];
            let mixed_lhs = ad * delta - d[p] * a[q];
            gram = gram.max((gram_lhs - qq_star).norm());
            mixed = mixed.max((mixed_lhs - qq_t).norm());
        }
    }

    Ok(KoszulDeviations {
        kernel,
        gram,
        mixed,
    })
}

/// Update a Bezout solution `E` to one that is small at `zeta`:
///
/// ```text
/// B^T = E^T + Q_{Phi(z)} Q_{E(z)}^T Phi(zeta)^* / |Phi(zeta)|^2
/// ```
///
/// The polynomial matrix `M = Q_Phi Q_E^T` has `M[p][p] = sum_{k != p}
/// phi_k e_k` and `M[p][q] = -phi_q e_p` off the diagonal; it is assembled
/// explicitly and applied to the constant vector.
pub fn koszul_solution_form(
    phi: &FunctionTuple,
    e: &FunctionTuple,
    zeta: &UnitCirclePoint,
) -> Result<FunctionTuple, KoszulError> {
    let n = phi.len();
    if n != e.len() {
        return Err(KoszulError::LengthMismatch {
            left: n,
            right: e.len(),
        });
    }
    let phi_at = phi.eval(zeta.value());
    let s: f64 = phi_at.iter().map(|v| v.norm_sqr()).sum();
    if s.sqrt() < 1e-9 {
        return Err(KoszulError::VanishingAtPoint { norm: s.sqrt() });
    }

    let mut m = vec![vec![Polynomial::zero(); n]; n];
    for (p, row) in m.iter_mut().enumerate() {
        for (q, slot) in row.iter_mut().enumerate() {
            if p == q {
                let mut diag = Polynomial::zero();
                for k in 0..n {
                    if k != p {
                        diag = &diag + &(phi.entry(k) * e.entry(k));
                    }
                }
                *slot = diag;
            } else {
                *slot = -&(phi.entry(q) * e.entry(p));
            }
        }
    }

    let b = (0..n)
        .map(|p| {
            let mut correction = Polynomial::zero();
            for q in 0..n {
                let v = phi_at[q].conj() / s;
                correction = &correction + &m[p][q].scale(v);
            }
            e.entry(p) + &correction
        })
        .collect();
    Ok(FunctionTuple::new(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn two_vector_single_column() {
        let q = build_q(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(q.num_columns(), 1);
        assert_eq!(q.column_pairs(), vec![(0, 1)]);
        assert_eq!(q.entry(0, (0, 1)), c(0.0, 0.0));
        assert_eq!(q.entry(1, (0, 1)), c(-1.0, 0.0));
    }

    #[test]
    fn singleton_has_no_columns() {
        let q = build_q(&[c(2.0, 1.0)]).unwrap();
        assert_eq!(q.num_columns(), 0);
        assert!(q.to_dense()[0].is_empty());
        assert!(build_q(&[]).is_err());
    }

    #[test]
    fn normalized_pair_gram() {
        let s = 1.0 / 2.0f64.sqrt();
        let a = [c(s, 0.0), c(s, 0.0)];
        let q = build_q(&a).unwrap();
        assert!((q.entry(0, (0, 1)) - c(s, 0.0)).norm() < 1e-15);
        assert!((q.entry(1, (0, 1)) - c(-s, 0.0)).norm() < 1e-15);
        // Q Q^* = [[1/2, -1/2], [-1/2, 1/2]] = (A A^*) I - A^* A
        let dev = check_identities(&a, &a).unwrap();
        assert!(dev.gram < 1e-15);
    }

    #[test]
    fn identities_on_examples() {
        let a = [c(1.0, 0.0), c(0.0, 0.0)];
        let dev = check_identities(&a, &a).unwrap();
        assert!(dev.kernel < 1e-15 && dev.gram < 1e-15 && dev.mixed < 1e-15);

        let zero = [c(0.0, 0.0); 4];
        let dev = check_identities(&zero, &zero).unwrap();
        assert_eq!(dev.kernel, 0.0);
        assert_eq!(dev.gram, 0.0);
        assert_eq!(dev.mixed, 0.0);
    }

    #[test]
    fn identities_on_random_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10 {
            let a: Vec<Complex64> = (0..5)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let d: Vec<Complex64> = (0..5)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let dev = check_identities(&a, &d).unwrap();
            assert!(dev.kernel < 1e-13 && dev.gram < 1e-13 && dev.mixed < 1e-13);
        }
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let a = [c(1.0, 0.0), c(0.0, 0.0)];
        let d = [c(1.0, 0.0)];
        assert!(matches!(
            check_identities(&a, &d),
            Err(KoszulError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn solution_form_worked_example() {
        let phi = FunctionTuple::new(vec![
            Polynomial::from_real(&[0.0, 1.0]),
            Polynomial::from_real(&[1.0, -1.0]),
        ]);
        let e = FunctionTuple::new(vec![Polynomial::one(), Polynomial::one()]);
        let b = koszul_solution_form(&phi, &e, &UnitCirclePoint::one()).unwrap();
        let expected = FunctionTuple::new(vec![
            Polynomial::from_real(&[2.0, -1.0]),
            Polynomial::from_real(&[1.0, -1.0]),
        ]);
        assert!(b.approx_eq(&expected));
        // the update preserves the Bezout identity
        assert!(phi.dot_poly(&b).approx_eq(&Polynomial::one()));
    }

    #[test]
    fn solution_form_singleton_is_identity() {
        let phi = FunctionTuple::new(vec![Polynomial::from_real(&[2.0, 0.5])]);
        let e = FunctionTuple::new(vec![Polynomial::from_real(&[0.5, -0.125])]);
        let b = koszul_solution_form(&phi, &e, &UnitCirclePoint::from_angle(0.4)).unwrap();
        assert!(b.approx_eq(&e));
    }

    #[test]
    fn solution_form_fixed_point() {
        let phi = FunctionTuple::new(vec![Polynomial::one(), Polynomial::zero()]);
        let e = phi.clone();
        let b = koszul_solution_form(&phi, &e, &UnitCirclePoint::from_angle(-1.2)).unwrap();
        assert!(b.approx_eq(&phi));
    }

    #[test]
    fn solution_form_requires_nonvanishing_point() {
        let one_minus_z = Polynomial::from_real(&[1.0, -1.0]);
        let phi = FunctionTuple::new(vec![one_minus_z.clone(), &one_minus_z * &one_minus_z]);
        let e = FunctionTuple::new(vec![Polynomial::one(), Polynomial::one()]);
        assert!(matches!(
            koszul_solution_form(&phi, &e, &UnitCirclePoint::one()),
            Err(KoszulError::VanishingAtPoint { .. })
        ));
    }
}
