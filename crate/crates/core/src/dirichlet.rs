//! Local Dirichlet integrals, `D(mu)` norms, and estimates for the norm of
//! the column multiplication operator `f -> (phi_1 f, phi_2 f, ...)`.
//!
//! For a point `zeta` on the unit circle the local Dirichlet integral of a
//! polynomial `p` is
//!
//! ```text
//! D_zeta(p) = || (p - p(zeta)) / (z - zeta) ||^2_{H^2}
//! ```
//!
//! which coincides with the area integral of `|p'|^2 (1-|z|^2) / |zeta-z|^2`
//! over the disk against `dx dy / pi`. The first form is exact for
//! polynomials (synthetic division plus Parseval); the second is evaluated by
//! adaptive quadrature and serves as an independent cross-check.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bounds::{sup_circle_default, sup_sum_sq_circle_default, CertifiedBound};
use crate::measure::{AtomicMeasure, UnitCirclePoint};
use crate::poly::Polynomial;
use crate::quadrature;
use crate::tuple::FunctionTuple;

/// Seed used for the random Rayleigh trial set unless the caller overrides it.
pub const DEFAULT_TRIAL_SEED: u64 = 0x5EED;

const TRIAL_COUNT: usize = 64;

#[derive(Debug, Error)]
pub enum DirichletError {
    #[error(
        "quadrature cell cap exceeded: best estimate {best_estimate}, \
         error estimate {error_estimate}"
    )]
    QuadratureCap {
        best_estimate: f64,
        error_estimate: f64,
    },
}

/// The local Dirichlet integral `D_zeta(p)`, computed exactly as the squared
/// `H^2` norm of the synthetic-division quotient `(p - p(zeta)) / (z - zeta)`.
pub fn local_dirichlet(p: &Polynomial, zeta: &UnitCirclePoint) -> f64 {
    let (_, quotient) = p.divide_at(zeta.value());
    quotient.h2_norm_sq()
}

/// The same quantity via adaptive quadrature of the area integral, with
/// absolute error target `tol`. Slower and approximate; useful as an oracle
/// for [`local_dirichlet`].
pub fn local_dirichlet_quadrature(
    p: &Polynomial,
    zeta: &UnitCirclePoint,
    tol: f64,
) -> Result<f64, DirichletError> {
    quadrature::dirichlet_integral(p, zeta.value(), tol).map_err(|(best, err)| {
        DirichletError::QuadratureCap {
            best_estimate: best,
            error_estimate: err,
        }
    })
}

/// Squared norm of `p` in the Dirichlet-type space `D(mu)`:
/// `||p||^2_{H^2} + sum_i a_i D_{zeta_i}(p)`.
pub fn dmu_norm_sq(p: &Polynomial, mu: &AtomicMeasure) -> f64 {
    let local: f64 = mu
        .atoms()
        .iter()
        .map(|atom| atom.weight * local_dirichlet(p, &atom.zeta))
        .sum();
    p.h2_norm_sq() + local
}

/// Squared norm of a tuple in the direct sum of copies of `D(mu)`.
pub fn tuple_dmu_norm_sq(phi: &FunctionTuple, mu: &AtomicMeasure) -> f64 {
    phi.entries().iter().map(|p| dmu_norm_sq(p, mu)).sum()
}

/// Supporting quantities behind a multiplier-norm upper bound: the certified
/// boundary sup of `sum_j |phi_j|^2` and the per-atom Dirichlet sums
/// `T_i = sum_j D_{zeta_i}(phi_j)`.
#[derive(Debug, Clone)]
pub struct EstimateDetail {
    pub s_inf: CertifiedBound,
    pub t_per_atom: Vec<f64>,
}

/// A two-sided estimate for the norm of the column multiplication operator
/// `M_Phi : D(mu) -> direct sum of D(mu)`. [`mult_norm_upper`] populates the
/// upper field (leaving `lower = 0`), [`mult_norm_lower`] the lower field
/// (leaving `upper = infinity`), and [`mult_norm`] both.
#[derive(Debug, Clone)]
pub struct MultiplierNormEstimate {
    pub lower: f64,
    pub upper: f64,
    pub trial_degree: usize,
    pub detail: Option<EstimateDetail>,
}

/// Certified upper bound for the multiplier norm:
///
/// ```text
/// ||M_Phi||^2 <= 2 S_inf + 4 sum_i max(a_i, 1) T_i
/// ```
///
/// where `S_inf` bounds `sup_T sum_j |phi_j|^2` and `T_i = sum_j
/// D_{zeta_i}(phi_j)`. The bound combines the product rule for local
/// Dirichlet integrals with the evaluation bound
/// `|f(zeta)|^2 <= 2(||f||^2_{H^2} + D_zeta(f))`; it is valid but not sharp.
pub fn mult_norm_upper(phi: &FunctionTuple, mu: &AtomicMeasure) -> MultiplierNormEstimate {
    let s_inf = sup_sum_sq_circle_default(phi);
    let t_per_atom: Vec<f64> = mu
        .atoms()
        .iter()
        .map(|atom| {
            phi.entries()
                .iter()
                .map(|p| local_dirichlet(p, &atom.zeta))
                .sum()
        })
        .collect();
    let weighted: f64 = mu
        .atoms()
        .iter()
        .zip(&t_per_atom)
        .map(|(atom, t)| atom.weight.max(1.0) * t)
        .sum();
    let upper = (2.0 * s_inf.upper + 4.0 * weighted).sqrt();
    MultiplierNormEstimate {
        lower: 0.0,
        upper,
        trial_degree: 0,
        detail: Some(EstimateDetail { s_inf, t_per_atom }),
    }
}

/// Rayleigh-quotient lower bound for the multiplier norm, maximized over the
/// monomials `z^m` with `m <= trial_degree` and [`TRIAL_COUNT`] seeded random
/// polynomials of the same degree cap. Uses [`DEFAULT_TRIAL_SEED`].
pub fn mult_norm_lower(
    phi: &FunctionTuple,
    mu: &AtomicMeasure,
    trial_degree: usize,
) -> MultiplierNormEstimate {
    mult_norm_lower_seeded(phi, mu, trial_degree, DEFAULT_TRIAL_SEED)
}

/// [`mult_norm_lower`] with an explicit seed for the random trial set.
pub fn mult_norm_lower_seeded(
    phi: &FunctionTuple,
    mu: &AtomicMeasure,
    trial_degree: usize,
    seed: u64,
) -> MultiplierNormEstimate {
    let mut best = 0.0f64;
    let mut consider = |f: &Polynomial| {
        let denom = dmu_norm_sq(f, mu);
        if denom <= 0.0 {
            return;
        }
        let image = FunctionTuple::new(phi.entries().iter().map(|e| e * f).collect());
        let num = tuple_dmu_norm_sq(&image, mu);
        best = best.max((num / denom).sqrt());
    };

    for m in 0..=trial_degree {
        consider(&Polynomial::monomial(Complex64::new(1.0, 0.0), m));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..TRIAL_COUNT {
        let coeffs: Vec<Complex64> = (0..=trial_degree)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let f = Polynomial::new(coeffs);
        if f.is_zero() {
            continue;
        }
        let scale = 1.0 / f.h2_norm_sq().sqrt();
        consider(&f.scale(Complex64::new(scale, 0.0)));
    }

    MultiplierNormEstimate {
        lower: best,
        upper: f64::INFINITY,
        trial_degree,
        detail: None,
    }
}

/// Two-sided estimate combining [`mult_norm_upper`] and [`mult_norm_lower`].
/// The lower value is clamped to the upper bound so the interval is always
/// well ordered (the raw estimates can cross by floating fuzz).
pub fn mult_norm(
    phi: &FunctionTuple,
    mu: &AtomicMeasure,
    trial_degree: usize,
) -> MultiplierNormEstimate {
    let up = mult_norm_upper(phi, mu);
    let lo = mult_norm_lower(phi, mu, trial_degree);
    MultiplierNormEstimate {
        lower: lo.lower.min(up.upper),
        upper: up.upper,
        trial_degree,
        detail: up.detail,
    }
}

/// Slacks (right side minus left side, nonnegative when the inequality
/// holds) of the product-rule inequalities for local Dirichlet integrals.
/// `||phi||_inf` enters through its certified upper bound, which only
/// increases the slack of `product` and `evaluation`.
#[derive(Debug, Clone)]
pub struct ProductRuleSlacks {
    /// `D_zeta(phi f) <= 2(||phi||^2_inf D_zeta(f) + |f(zeta)|^2 D_zeta(phi))`
    pub product: f64,
    /// `|f(zeta)|^2 D_zeta(phi) <= 2(||phi||^2_inf D_zeta(f) + D_zeta(phi f))`
    pub evaluation: f64,
    /// `D_zeta(phi f) <= ||phi||^2_inf D_zeta(f)`, only when `f(zeta) = 0`
    /// (within 1e-12)
    pub vanishing: Option<f64>,
}

/// Evaluate the product-rule inequalities at one `(phi, f, zeta)` triple and
/// report their slacks.
pub fn product_rule_slacks(phi: &Polynomial, f: &Polynomial, zeta: &UnitCirclePoint) -> ProductRuleSlacks {
    let sup = sup_circle_default(phi);
    let phi_sup_sq = sup.upper * sup.upper;
    let d_f = local_dirichlet(f, zeta);
    let d_phi = local_dirichlet(phi, zeta);
    let d_product = local_dirichlet(&(phi * f), zeta);
    let f_at_sq = f.eval(zeta.value()).norm_sqr();

    let product = 2.0 * (phi_sup_sq * d_f + f_at_sq * d_phi) - d_product;
    let evaluation = 2.0 * (phi_sup_sq * d_f + d_product) - f_at_sq * d_phi;
    let vanishing = if f_at_sq.sqrt() <= 1e-12 {
        Some(phi_sup_sq * d_f - d_product)
    } else {
        None
    };
    ProductRuleSlacks {
        product,
        evaluation,
        vanishing,
    }
}
