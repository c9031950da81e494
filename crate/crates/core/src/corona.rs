//! Corona-condition certification, polynomial Bezout solutions, and the
//! atom-by-atom lifting chain that produces norm-certified solutions in
//! `D(mu)`.
//!
//! The entry point is [`solve`]: certify `inf sum |phi_j|^2` from below,
//! produce a base Bezout solution `Phi E^T = 1`, rescale so the certified
//! multiplier-norm bound of the tuple is 1, then walk the measure's atoms in
//! stored order, replacing `E` at each atom `zeta` by the lifted solution
//! that is small where the measure charges. Every step records the norm
//! estimates that make the growth of the solution checkable after the fact.

use num_complex::Complex64;
use thiserror::Error;

use crate::bounds::{certified_disk_min, min_modulus_closed_disk, sup_circle_default, CertifiedBound};
use crate::dirichlet::{mult_norm_lower, mult_norm_upper};
use crate::measure::{Atom, AtomicMeasure, UnitCirclePoint};
use crate::poly::Polynomial;
use crate::roots::roots;
use crate::tuple::FunctionTuple;

/// Residual tolerance for "is a Bezout solution" preconditions.
const LIFT_RESIDUAL_TOL: f64 = 1e-9;
/// Lower threshold on `|Phi(zeta)|^2` at a lift point.
const LIFT_POINT_TOL_SQ: f64 = 1e-12;
/// Relative chop tolerance in the approximate Euclid gcd.
const GCD_REL_TOL: f64 = 1e-9;
/// Residual below which a Bezout coefficient solve counts as exact.
const EXACT_RESIDUAL_TOL: f64 = 1e-10;
/// Trial degree used for the chain's Rayleigh lower bounds.
const CHAIN_TRIAL_DEGREE: usize = 6;
/// Initial spacing and refinement cap for the disk-minimum grid.
const EPS_GRID_SPACING: f64 = 0.1;
const EPS_GRID_REFINE: usize = 6;

#[derive(Debug, Error)]
pub enum CoronaError {
    #[error("tuple has no entries")]
    EmptyTuple,
    #[error("zero tuple")]
    ZeroTuple,
    #[error("tuple lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("common root inside the closed disk at {root}")]
    CommonRootInDisk { root: Complex64 },
    #[error("no Bezout solution found with entry degrees <= {cap}")]
    DegreeCapExceeded { cap: usize },
    #[error("not a Bezout solution: max residual coefficient {residual:.3e}")]
    NotABezoutSolution { residual: f64 },
    #[error("tuple nearly vanishes at the lift point: |Phi(zeta)|^2 = {value_sq:.3e}")]
    VanishesAtLiftPoint { value_sq: f64 },
    #[error("linear solve failed: {0}")]
    LinearSolve(String),
}

/// Monic approximate gcd of the tuple entries (Euclid with relative chop
/// tolerance [`GCD_REL_TOL`]). Zero entries are ignored; the all-zero tuple
/// gives the zero polynomial, and coprime entries give `1`.
pub fn tuple_gcd(phi: &FunctionTuple) -> Polynomial {
    let mut g = Polynomial::zero();
    for p in phi.entries() {
        if p.is_zero() {
            continue;
        }
        g = if g.is_zero() {
            monic(p)
        } else {
            gcd_pair(&g, p)
        };
        if g.degree() == Some(0) {
            return Polynomial::one();
        }
    }
    g
}

fn monic(p: &Polynomial) -> Polynomial {
    match p.leading_coeff() {
        Some(lead) => p.scale(1.0 / lead),
        None => Polynomial::zero(),
    }
}

fn chop(p: &Polynomial, scale: f64) -> Polynomial {
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| {
            if c.norm() <= GCD_REL_TOL * scale {
                Complex64::new(0.0, 0.0)
            } else {
                *c
            }
        })
        .collect();
    Polynomial::new(coeffs)
}

fn gcd_pair(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (mut x, mut y) = if a.degree() >= b.degree() {
        (monic(a), monic(b))
    } else {
        (monic(b), monic(a))
    };
    while !y.is_zero() {
        let scale = x.max_coeff_abs().max(y.max_coeff_abs()).max(1.0);
        let (_, r) = x.div_rem(&y).expect("nonzero divisor");
        x = y;
        y = monic(&chop(&r, scale));
    }
    x
}

/// A certified lower bound for the corona quantity
/// `inf_{|z| <= 1} sum_j |phi_j(z)|^2`, or the common roots that force it to
/// zero. `eps_sq_lower = 0` with an empty root list means the certification
/// was inconclusive.
#[derive(Debug, Clone)]
pub struct EpsilonCertificate {
    pub eps_sq_lower: f64,
    pub grid_spacing: f64,
    pub gradient_bound: f64,
    pub common_roots_in_disk: Vec<Complex64>,
}

/// Certify the corona condition for a tuple. Computes the approximate gcd;
/// gcd roots in the closed disk are reported as common roots with
/// `eps_sq_lower = 0`. Otherwise a polar grid with Lipschitz correction
/// `min_grid - h * G` is refined (halving `h`, up to [`EPS_GRID_REFINE`]
/// times) until the lower bound is positive and stable, where
/// `G = 2 sum_j (sum_k |c_jk|)(sum_k k |c_jk|)` bounds the gradient of
/// `sum_j |phi_j|^2` on the disk. Single entries that are zero-free on the
/// closed disk contribute `min |phi_j|^2` as an independent floor.
pub fn estimate_epsilon(phi: &FunctionTuple) -> EpsilonCertificate {
    let gradient_bound: f64 = 2.0
        * phi
            .entries()
            .iter()
            .map(|p| p.coeff_abs_sum() * p.deriv_abs_sum())
            .sum::<f64>();

    if phi.entries().iter().all(|p| p.is_zero()) {
        // every point is a common zero; report the origin as witness
        return EpsilonCertificate {
            eps_sq_lower: 0.0,
            grid_spacing: 0.0,
            gradient_bound,
            common_roots_in_disk: vec![Complex64::new(0.0, 0.0)],
        };
    }

    let g = tuple_gcd(phi);
    if g.degree().is_some_and(|d| d > 0) {
        if let Ok(rts) = roots(&g) {
            let inside: Vec<Complex64> = rts.into_iter().filter(|r| r.norm() <= 1.0).collect();
            if !inside.is_empty() {
                return EpsilonCertificate {
                    eps_sq_lower: 0.0,
                    grid_spacing: 0.0,
                    gradient_bound,
                    common_roots_in_disk: inside,
                };
            }
        }
    }

    let dm = certified_disk_min(
        |z| phi.sum_abs_sq_at(z),
        gradient_bound,
        EPS_GRID_SPACING,
        EPS_GRID_REFINE,
    );
    let mut floor = 0.0f64;
    for p in phi.entries() {
        if p.is_zero() {
            continue;
        }
        if let Ok(b) = min_modulus_closed_disk(p) {
            floor = floor.max(b.lower * b.lower);
        }
    }
    EpsilonCertificate {
        eps_sq_lower: dm.lower.max(floor).max(0.0),
        grid_spacing: dm.spacing,
        gradient_bound,
        common_roots_in_disk: Vec::new(),
    }
}

/// How a base Bezout solution was obtained: exactly (coprime tuple, residual
/// below [`EXACT_RESIDUAL_TOL`]), or as a least-squares approximation when
/// the entries share roots outside the closed disk, in which case the
/// certified boundary sup of `Phi E^T - 1` is carried along.
#[derive(Debug, Clone)]
pub enum BezoutMode {
    Exact,
    Approx { boundary_residual: CertifiedBound },
}

impl BezoutMode {
    pub fn is_exact(&self) -> bool {
        matches!(self, BezoutMode::Exact)
    }
}

/// Default degree cap for [`bezout_base`]: twice the maximum entry degree
/// plus four.
pub fn default_degree_cap(phi: &FunctionTuple) -> usize {
    2 * phi.max_degree().unwrap_or(0) + 4
}

/// Solve `sum_j phi_j e_j = 1` for polynomial `e_j` of degree at most
/// `degree_cap` each.
///
/// When the entries are coprime the minimal entry degree `d` is found by
/// escalation and the minimum-norm coefficient solution at that degree is
/// returned ([`BezoutMode::Exact`]). When the gcd is nonconstant but
/// zero-free on the closed disk no polynomial solution exists; the
/// least-squares solution at `degree_cap` is returned with a certified
/// boundary residual ([`BezoutMode::Approx`]). A gcd root in the closed disk
/// is a hard error: the tuple violates the corona condition.
pub fn bezout_base(
    phi: &FunctionTuple,
    degree_cap: usize,
) -> Result<(FunctionTuple, BezoutMode), CoronaError> {
    if phi.is_empty() {
        return Err(CoronaError::EmptyTuple);
    }
    let eps = estimate_epsilon(phi);
    if let Some(root) = eps.common_roots_in_disk.first() {
        return Err(CoronaError::CommonRootInDisk { root: *root });
    }

    let g = tuple_gcd(phi);
    let coprime = g.degree() == Some(0);

    if coprime {
        for d in 0..=degree_cap {
            let e = min_norm_coefficient_solve(phi, d)?;
            let residual = bezout_residual(phi, &e);
            if residual <= EXACT_RESIDUAL_TOL {
                return Ok((e, BezoutMode::Exact));
            }
        }
        Err(CoronaError::DegreeCapExceeded { cap: degree_cap })
    } else {
        let e = min_norm_coefficient_solve(phi, degree_cap)?;
        let defect = &phi.dot_poly(&e) - &Polynomial::one();
        let boundary_residual = sup_circle_default(&defect);
        Ok((e, BezoutMode::Approx { boundary_residual }))
    }
}

/// Minimum-norm least-squares solution of the convolution system
/// `sum_j phi_j e_j = 1` with `deg e_j <= d`.
fn min_norm_coefficient_solve(
    phi: &FunctionTuple,
    d: usize,
) -> Result<FunctionTuple, CoronaError> {
    use nalgebra::{DMatrix, DVector};

    let n = phi.len();
    let max_deg = phi.max_degree().unwrap_or(0);
    let rows = max_deg + d + 1;
    let cols = n * (d + 1);

    let mut a = DMatrix::<Complex64>::zeros(rows, cols);
    for (j, p) in phi.entries().iter().enumerate() {
        for (k, c) in p.coeffs().iter().enumerate() {
            for m in 0..=d {
                a[(k + m, j * (d + 1) + m)] = *c;
            }
        }
    }
    let mut rhs = DVector::<Complex64>::zeros(rows);
    rhs[0] = Complex64::new(1.0, 0.0);

    let svd = a.svd(true, true);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = 1e-10 * sigma_max.max(f64::MIN_POSITIVE);
    let x = svd
        .solve(&rhs, cutoff)
        .map_err(|e| CoronaError::LinearSolve(e.to_string()))?;

    let entries = (0..n)
        .map(|j| {
            let coeffs: Vec<Complex64> = (0..=d).map(|m| x[j * (d + 1) + m]).collect();
            Polynomial::new(coeffs)
        })
        .collect();
    Ok(FunctionTuple::new(entries))
}

fn bezout_residual(phi: &FunctionTuple, e: &FunctionTuple) -> f64 {
    (&phi.dot_poly(e) - &Polynomial::one()).max_coeff_abs()
}

/// Scale a tuple so its certified multiplier-norm upper bound over `mu`
/// becomes 1: returns `(phi / s, s)` with `s = mult_norm_upper(phi,
/// mu).upper`. The bound formula is homogeneous, so normalizing twice gives
/// scale 1.
pub fn normalize(
    phi: &FunctionTuple,
    mu: &AtomicMeasure,
) -> Result<(FunctionTuple, f64), CoronaError> {
    if phi.entries().iter().all(|p| p.is_zero()) {
        return Err(CoronaError::ZeroTuple);
    }
    let s = mult_norm_upper(phi, mu).upper;
    Ok((phi.scale(Complex64::new(1.0 / s, 0.0)), s))
}

fn lift_impl(
    phi: &FunctionTuple,
    e: &FunctionTuple,
    zeta: &UnitCirclePoint,
    residual_tol: f64,
) -> Result<FunctionTuple, CoronaError> {
    if phi.len() != e.len() {
        return Err(CoronaError::LengthMismatch {
            left: phi.len(),
            right: e.len(),
        });
    }
    let residual = bezout_residual(phi, e);
    if residual > residual_tol {
        return Err(CoronaError::NotABezoutSolution { residual });
    }
    let phi_at = phi.eval(zeta.value());
    let s: f64 = phi_at.iter().map(|v| v.norm_sqr()).sum();
    if s < LIFT_POINT_TOL_SQ {
        return Err(CoronaError::VanishesAtLiftPoint { value_sq: s });
    }

    let mut correction = Polynomial::zero();
    for (p, v) in phi.entries().iter().zip(&phi_at) {
        let centered = p - &Polynomial::constant(*v);
        correction = &correction + &centered.scale(v.conj() / s);
    }
    let b = phi_at
        .iter()
        .zip(e.entries())
        .map(|(v, ej)| &Polynomial::constant(v.conj() / s) - &(&correction * ej))
        .collect();
    Ok(FunctionTuple::new(b))
}

/// Replace a Bezout solution by one adapted to the point `zeta`:
///
/// ```text
/// b_j = conj(phi_j(zeta)) / S  -  (sum_i (phi_i - phi_i(zeta)) conj(phi_i(zeta)) / S) e_j
/// ```
///
/// with `S = |Phi(zeta)|^2`. The output again satisfies `Phi B^T = 1`, and
/// each `b_j` takes the value `conj(phi_j(zeta))/S` at `zeta`.
pub fn lift(
    phi: &FunctionTuple,
    e: &FunctionTuple,
    zeta: &UnitCirclePoint,
) -> Result<FunctionTuple, CoronaError> {
    lift_impl(phi, e, zeta, LIFT_RESIDUAL_TOL)
}

/// Alternative single-anchor lift: with `m` the lowest index maximizing
/// `|phi_j(zeta)|`, divide out the anchor entry instead of projecting onto
/// the full tuple:
///
/// ```text
/// d_j = -((phi_m - phi_m(zeta)) / phi_m(zeta)) e_j   (j != m)
/// d_m = 1/phi_m(zeta) - ((phi_m - phi_m(zeta)) / phi_m(zeta)) e_m
/// ```
pub fn lift_anchor(
    phi: &FunctionTuple,
    e: &FunctionTuple,
    zeta: &UnitCirclePoint,
) -> Result<FunctionTuple, CoronaError> {
    if phi.len() != e.len() {
        return Err(CoronaError::LengthMismatch {
            left: phi.len(),
            right: e.len(),
        });
    }
    let residual = bezout_residual(phi, e);
    if residual > LIFT_RESIDUAL_TOL {
        return Err(CoronaError::NotABezoutSolution { residual });
    }
    let phi_at = phi.eval(zeta.value());
    let s: f64 = phi_at.iter().map(|v| v.norm_sqr()).sum();
    if s < LIFT_POINT_TOL_SQ {
        return Err(CoronaError::VanishesAtLiftPoint { value_sq: s });
    }
    let mut m = 0;
    for (j, v) in phi_at.iter().enumerate() {
        if v.norm() > phi_at[m].norm() {
            m = j;
        }
    }
    let anchor = phi_at[m];
    let centered = phi.entry(m) - &Polynomial::constant(anchor);
    let factor = centered.scale(1.0 / anchor);

    let d = (0..phi.len())
        .map(|j| {
            let base = -&(&factor * e.entry(j));
            if j == m {
                &base + &Polynomial::constant(1.0 / anchor)
            } else {
                base
            }
        })
        .collect();
    Ok(FunctionTuple::new(d))
}

/// A corona problem: a polynomial tuple and the atomic measure whose
/// Dirichlet-type space the solution must multiply.
#[derive(Debug, Clone)]
pub struct CoronaProblem {
    pub tuple: FunctionTuple,
    pub measure: AtomicMeasure,
}

impl CoronaProblem {
    pub fn new(tuple: FunctionTuple, measure: AtomicMeasure) -> Result<Self, CoronaError> {
        if tuple.is_empty() {
            return Err(CoronaError::EmptyTuple);
        }
        Ok(CoronaProblem { tuple, measure })
    }
}

/// Per-atom record of the lifting chain, in the order the atoms were
/// processed. `e_norm_upper` bounds the multiplier norm of the incoming
/// solution over the measure prefix before this atom; `b_norm_lower` is a
/// Rayleigh lower estimate for the outgoing solution over the prefix
/// including it; `bound_value` is `(1/eps) sqrt(2 + 16 e_norm_upper^2)`
/// with `eps` the certified corona bound of the scaled tuple (infinite when
/// that certification was inconclusive).
#[derive(Debug, Clone)]
pub struct ChainRecord {
    pub atom: Atom,
    pub phi_at_atom_sq: f64,
    pub e_norm_upper: f64,
    pub b_norm_lower: f64,
    pub bound_value: f64,
}

/// Everything needed to re-check a corona solution: the solution itself, its
/// exact residual, the corona certification of the input tuple, the
/// normalization factor, the per-atom chain records (computed for the
/// scaled tuple), and the base-solution mode.
#[derive(Debug, Clone)]
pub struct CoronaCertificate {
    pub solution: FunctionTuple,
    pub residual_max_coeff: f64,
    pub epsilon: EpsilonCertificate,
    pub scaled_eps_sq_lower: f64,
    pub scaling: f64,
    pub chain: Vec<ChainRecord>,
    pub mode: BezoutMode,
}

/// Full pipeline: certify epsilon, solve the base Bezout equation, normalize
/// the tuple, and lift atom by atom in the measure's stored order.
///
/// The returned solution is for the original (unscaled) tuple. In
/// approximate mode the per-lift residual gate is disabled (the base
/// solution is only approximate); residuals are reported rather than
/// enforced.
pub fn solve(problem: &CoronaProblem, degree_cap: usize) -> Result<CoronaCertificate, CoronaError> {
    let phi = &problem.tuple;
    let mu = &problem.measure;

    let epsilon = estimate_epsilon(phi);
    let (e_base, mode) = bezout_base(phi, degree_cap)?;
    let (phi_scaled, s) = normalize(phi, mu)?;
    let scaled_eps_sq_lower = estimate_epsilon(&phi_scaled).eps_sq_lower;
    let eps_lower = scaled_eps_sq_lower.sqrt();

    let lift_tol = if mode.is_exact() {
        LIFT_RESIDUAL_TOL
    } else {
        f64::INFINITY
    };

    let mut e_current = e_base.scale(Complex64::new(s, 0.0));
    let mut chain = Vec::with_capacity(mu.len());
    for (i, atom) in mu.atoms().iter().enumerate() {
        let before = mu.prefix(i);
        let including = mu.prefix(i + 1);
        let e_norm_upper = mult_norm_upper(&e_current, &before).upper;
        let b = lift_impl(&phi_scaled, &e_current, &atom.zeta, lift_tol)?;
        let b_norm_lower = mult_norm_lower(&b, &including, CHAIN_TRIAL_DEGREE).lower;
        let bound_value = if eps_lower > 0.0 {
            (2.0 + 16.0 * e_norm_upper * e_norm_upper).sqrt() / eps_lower
        } else {
            f64::INFINITY
        };
        chain.push(ChainRecord {
            atom: *atom,
            phi_at_atom_sq: phi_scaled.sum_abs_sq_at(atom.zeta.value()),
            e_norm_upper,
            b_norm_lower,
            bound_value,
        });
        e_current = b;
    }

    let solution = e_current.scale(Complex64::new(1.0 / s, 0.0));
    let residual_max_coeff = bezout_residual(phi, &solution);
    Ok(CoronaCertificate {
        solution,
        residual_max_coeff,
        epsilon,
        scaled_eps_sq_lower,
        scaling: s,
        chain,
        mode,
    })
}

/// Result of re-checking a certificate against its problem. `passed` is the
/// conjunction of the individual checks.
#[derive(Debug, Clone)]
pub struct CertificateReport {
    /// recomputed `max |coeff(Phi B^T - 1)|`
    pub residual_max_coeff: f64,
    /// exact mode: residual below [`LIFT_RESIDUAL_TOL`]; approximate mode:
    /// residual consistent with the certified boundary residual
    pub residual_ok: bool,
    /// smallest `sum_j |phi_j(zeta_i)|^2` over the atoms
    pub min_atom_value: f64,
    /// that minimum clears `eps_sq_lower - 1e-10`
    pub atom_condition_ok: bool,
    /// every chain record has `b_norm_lower <= bound_value + 1e-9`
    pub chain_ok: bool,
    pub passed: bool,
}

/// Recompute the checkable parts of a certificate: the Bezout residual of
/// the stored solution, the corona condition at every atom against the
/// certified `eps_sq_lower`, and the chain inequalities.
pub fn verify_certificate(problem: &CoronaProblem, cert: &CoronaCertificate) -> CertificateReport {
    let residual_max_coeff = bezout_residual(&problem.tuple, &cert.solution);
    let residual_ok = match &cert.mode {
        BezoutMode::Exact => residual_max_coeff <= LIFT_RESIDUAL_TOL,
        // max coefficient <= l2 norm on the circle <= boundary sup
        BezoutMode::Approx { boundary_residual } => {
            residual_max_coeff <= boundary_residual.upper + LIFT_RESIDUAL_TOL
        }
    };

    let mut min_atom_value = f64::INFINITY;
    for atom in problem.measure.atoms() {
        min_atom_value = min_atom_value.min(problem.tuple.sum_abs_sq_at(atom.zeta.value()));
    }
    let atom_condition_ok = problem.measure.is_empty()
        || min_atom_value >= cert.epsilon.eps_sq_lower - 1e-10;

    let chain_ok = cert
        .chain
        .iter()
        .all(|rec| rec.b_norm_lower <= rec.bound_value + 1e-9);

    CertificateReport {
        residual_max_coeff,
        residual_ok,
        min_atom_value,
        atom_condition_ok,
        chain_ok,
        passed: residual_ok && atom_condition_ok && chain_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::koszul_solution_form;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z_and_one_minus_z() -> FunctionTuple {
        FunctionTuple::new(vec![
            Polynomial::from_real(&[0.0, 1.0]),
            Polynomial::from_real(&[1.0, -1.0]),
        ])
    }

    fn delta_one() -> AtomicMeasure {
        AtomicMeasure::unit_at(&[UnitCirclePoint::one()])
    }

    #[test]
    fn gcd_examples() {
        assert!(tuple_gcd(&z_and_one_minus_z()).approx_eq(&Polynomial::one()));

        let z = Polynomial::from_real(&[0.0, 1.0]);
        let z_sq = Polynomial::from_real(&[0.0, 0.0, 1.0]);
        let g = tuple_gcd(&FunctionTuple::new(vec![z.clone(), z_sq]));
        assert!(g.approx_eq(&z));

        // shared factor 1 - z, normalized monic
        let omz = Polynomial::from_real(&[1.0, -1.0]);
        let opz = Polynomial::from_real(&[1.0, 1.0]);
        let g = tuple_gcd(&FunctionTuple::new(vec![&omz * &omz, &omz * &opz]));
        assert_eq!(g.degree(), Some(1));
        assert!(g.eval(c(1.0, 0.0)).norm() < 1e-9);

        assert!(tuple_gcd(&FunctionTuple::new(vec![Polynomial::zero()])).is_zero());
    }

    #[test]
    fn epsilon_certifies_half() {
        let eps = estimate_epsilon(&z_and_one_minus_z());
        // true infimum is 1/2 at z = 1/2; grid certification approaches it
        // from below
        assert!(eps.eps_sq_lower > 0.4 && eps.eps_sq_lower <= 0.5 + 1e-12);
        assert!(eps.common_roots_in_disk.is_empty());
        assert!(eps.gradient_bound > 0.0);
    }

    #[test]
    fn epsilon_entry_floor() {
        let phi = FunctionTuple::new(vec![
            Polynomial::one(),
            Polynomial::from_real(&[0.3, -2.0, 1.1]),
        ]);
        let eps = estimate_epsilon(&phi);
        assert!(eps.eps_sq_lower >= 1.0 - 1e-12);
    }

    #[test]
    fn epsilon_detects_common_root() {
        let phi = FunctionTuple::new(vec![
            Polynomial::from_real(&[0.0, 1.0]),
            Polynomial::from_real(&[0.0, 0.0, 1.0]),
        ]);
        let eps = estimate_epsilon(&phi);
        assert_eq!(eps.eps_sq_lower, 0.0);
        assert_eq!(eps.common_roots_in_disk.len(), 1);
        assert!(eps.common_roots_in_disk[0].norm() < 1e-9);
    }

    #[test]
    fn bezout_degree_zero_solution() {
        let (e, mode) = bezout_base(&z_and_one_minus_z(), 6).unwrap();
        assert!(mode.is_exact());
        let expected = FunctionTuple::new(vec![Polynomial::one(), Polynomial::one()]);
        assert!(e.approx_eq(&expected));
    }

    #[test]
    fn bezout_constant_inverse() {
        let phi = FunctionTuple::new(vec![Polynomial::constant(c(0.0, 2.0))]);
        let (e, mode) = bezout_base(&phi, 4).unwrap();
        assert!(mode.is_exact());
        assert!((e.entry(0).coeff(0) - c(0.0, -0.5)).norm() < 1e-12);
    }

    #[test]
    fn bezout_square_instance() {
        let phi = FunctionTuple::new(vec![
            Polynomial::from_real(&[0.0, 0.0, 1.0]),
            Polynomial::from_real(&[1.0, -1.0]),
        ]);
        let (e, mode) = bezout_base(&phi, 8).unwrap();
        assert!(mode.is_exact());
        let expected = FunctionTuple::new(vec![
            Polynomial::one(),
            Polynomial::from_real(&[1.0, 1.0]),
        ]);
        assert!(e.approx_eq(&expected));
    }

    #[test]
    fn bezout_scaling_covariance() {
        let phi = FunctionTuple::new(vec![
            Polynomial::from_pairs(&[(0.4, 0.2), (0.0, 1.0), (1.0, 0.0)]),
            Polynomial::from_pairs(&[(1.0, -0.3), (-0.7, 0.0)]),
        ]);
        let s = c(1.7, -0.9);
        let (e, _) = bezout_base(&phi, 8).unwrap();
        let (e_scaled, _) = bezout_base(&phi.scale(s), 8).unwrap();
        let back = e_scaled.scale(s);
        assert!(
            e.max_coeff_distance(&back) <= 1e-9,
            "distance {}",
            e.max_coeff_distance(&back)
        );
    }

    #[test]
    fn bezout_rejects_common_disk_root() {
        let phi = FunctionTuple::new(vec![
            Polynomial::from_real(&[0.0, 1.0]),
            Polynomial::from_real(&[0.0, 0.0, 1.0]),
        ]);
        assert!(matches!(
            bezout_base(&phi, 6),
            Err(CoronaError::CommonRootInDisk { .. })
        ));
    }

    #[test]
    fn bezout_cap_exceeded() {
        // z^5 and (1-z)^5 need entry degree 4
        let z = Polynomial::from_real(&[0.0, 1.0]);
        let omz = Polynomial::from_real(&[1.0, -1.0]);
        let pow5 = |p: &Polynomial| {
            let mut acc = Polynomial::one();
            for _ in 0..5 {
                acc = &acc * p;
            }
            acc
        };
        let phi = FunctionTuple::new(vec![pow5(&z), pow5(&omz)]);
        assert!(matches!(
            bezout_base(&phi, 2),
            Err(CoronaError::DegreeCapExceeded { cap: 2 })
        ));
        let (e, mode) = bezout_base(&phi, 6).unwrap();
        assert!(mode.is_exact());
        assert_eq!(e.max_degree(), Some(4));
    }

    #[test]
    fn bezout_approx_mode() {
        // common factor 2 - z is zero-free on the closed disk, so no exact
        // polynomial solution exists
        let tmz = Polynomial::from_real(&[2.0, -1.0]);
        let phi = FunctionTuple::new(vec![
            &tmz * &Polynomial::from_real(&[0.0, 1.0]),
            &tmz * &Polynomial::from_real(&[1.0, -1.0]),
        ]);
        let (e, mode) = bezout_base(&phi, 10).unwrap();
        let BezoutMode::Approx { boundary_residual } = mode else {
            panic!("expected approximate mode");
        };
        assert!(boundary_residual.upper < 0.51, "{boundary_residual:?}");
        assert!(bezout_residual(&phi, &e) < 1.0);
    }

    #[test]
    fn normalize_examples() {
        let mu = delta_one();
        let ones = FunctionTuple::new(vec![Polynomial::one()]);
        let (scaled, s) = normalize(&ones, &mu).unwrap();
        assert!((s - 2.0f64.sqrt()).abs() < 1e-12);
        assert!((scaled.entry(0).coeff(0).re - 1.0 / 2.0f64.sqrt()).abs() < 1e-12);

        let small = FunctionTuple::new(vec![Polynomial::constant(c(0.1, 0.0))]);
        let (_, s_small) = normalize(&small, &mu).unwrap();
        assert!((s_small - 0.1 * 2.0f64.sqrt()).abs() < 1e-12);

        // normalizing the normalized tuple scales by 1
        let (_, s_again) = normalize(&scaled, &mu).unwrap();
        assert!((s_again - 1.0).abs() < 1e-12);

        assert!(matches!(
            normalize(&FunctionTuple::new(vec![Polynomial::zero()]), &mu),
            Err(CoronaError::ZeroTuple)
        ));
    }

    #[test]
    fn lift_worked_example() {
        let phi = z_and_one_minus_z();
        let e = FunctionTuple::new(vec![Polynomial::one(), Polynomial::one()]);
        let b = lift(&phi, &e, &UnitCirclePoint::one()).unwrap();
        let expected = FunctionTuple::new(vec![
            Polynomial::from_real(&[2.0, -1.0]),
            Polynomial::from_real(&[1.0, -1.0]),
        ]);
        assert!(b.approx_eq(&expected));
        assert!(bezout_residual(&phi, &b) < 1e-12);
    }

    #[test]
    fn lift_constant_tuple_is_fixed() {
        let phi = FunctionTuple::new(vec![Polynomial::constant(c(0.0, 3.0))]);
        let e = FunctionTuple::new(vec![Polynomial::constant(c(0.0, -1.0 / 3.0))]);
        let b = lift(&phi, &e, &UnitCirclePoint::from_angle(0.7)).unwrap();
        assert!(b.approx_eq(&e));
    }

    #[test]
    fn lift_two_atom_stage() {
        let phi = z_and_one_minus_z();
        let e = FunctionTuple::new(vec![
            Polynomial::from_real(&[2.0, -1.0]),
            Polynomial::from_real(&[1.0, -1.0]),
        ]);
        let b = lift(&phi, &e, &UnitCirclePoint::new(c(-1.0, 0.0)).unwrap()).unwrap();
        // b1 = 1 + (3/5) z (1 - z), b2 = 1 - (3/5) z^2
        let expected = FunctionTuple::new(vec![
            Polynomial::from_real(&[1.0, 0.6, -0.6]),
            Polynomial::from_real(&[1.0, 0.0, -0.6]),
        ]);
        assert!(
            b.max_coeff_distance(&expected) < 1e-12,
            "{}",
            b.max_coeff_distance(&expected)
        );
        assert!(bezout_residual(&phi, &b) < 1e-12);
    }

    #[test]
    fn lift_rejects_bad_inputs() {
        let phi = z_and_one_minus_z();
        let wrong = FunctionTuple::new(vec![Polynomial::one(), Polynomial::zero()]);
        assert!(matches!(
            lift(&phi, &wrong, &UnitCirclePoint::one()),
            Err(CoronaError::NotABezoutSolution { .. })
        ));

        let tiny = FunctionTuple::new(vec![Polynomial::constant(c(1e-7, 0.0))]);
        let huge = FunctionTuple::new(vec![Polynomial::constant(c(1e7, 0.0))]);
        assert!(matches!(
            lift(&tiny, &huge, &UnitCirclePoint::one()),
            Err(CoronaError::VanishesAtLiftPoint { .. })
        ));

        let short = FunctionTuple::new(vec![Polynomial::one()]);
        assert!(matches!(
            lift(&phi, &short, &UnitCirclePoint::one()),
            Err(CoronaError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn lift_matches_koszul_form() {
        let phi = z_and_one_minus_z();
        let e = FunctionTuple::new(vec![Polynomial::one(), Polynomial::one()]);
        for theta in [0.0, 1.3, -2.1] {
            let zeta = UnitCirclePoint::from_angle(theta);
            let b = lift(&phi, &e, &zeta).unwrap();
            let k = koszul_solution_form(&phi, &e, &zeta).unwrap();
            assert!(b.max_coeff_distance(&k) <= 1e-10);
        }
    }

    #[test]
    fn anchor_lift_examples() {
        let phi = z_and_one_minus_z();
        let e = FunctionTuple::new(vec![Polynomial::one(), Polynomial::one()]);
        let d = lift_anchor(&phi, &e, &UnitCirclePoint::one()).unwrap();
        let expected = FunctionTuple::new(vec![
            Polynomial::from_real(&[2.0, -1.0]),
            Polynomial::from_real(&[1.0, -1.0]),
        ]);
        assert!(d.approx_eq(&expected));

        let phi2 = FunctionTuple::new(vec![
            Polynomial::from_real(&[0.0, 0.0, 1.0]),
            Polynomial::from_real(&[1.0, -1.0]),
        ]);
        let e2 = FunctionTuple::new(vec![
            Polynomial::one(),
            Polynomial::from_real(&[1.0, 1.0]),
        ]);
        let d2 = lift_anchor(&phi2, &e2, &UnitCirclePoint::one()).unwrap();
        // anchor is phi_1 (value 1 at z = 1): d = (2 - z^2, -(z^2-1)(1+z))
        let expected2 = FunctionTuple::new(vec![
            Polynomial::from_real(&[2.0, 0.0, -1.0]),
            Polynomial::from_real(&[1.0, 1.0, -1.0, -1.0]),
        ]);
        assert!(d2.max_coeff_distance(&expected2) < 1e-12);
        assert!(bezout_residual(&phi2, &d2) < 1e-12);

        let phi3 = FunctionTuple::new(vec![Polynomial::constant(c(2.0, 0.0))]);
        let e3 = FunctionTuple::new(vec![Polynomial::constant(c(0.5, 0.0))]);
        let d3 = lift_anchor(&phi3, &e3, &UnitCirclePoint::from_angle(2.2)).unwrap();
        assert!(d3.approx_eq(&e3));
    }

    #[test]
    fn solve_single_atom() {
        let problem = CoronaProblem::new(z_and_one_minus_z(), delta_one()).unwrap();
        let cert = solve(&problem, 6).unwrap();
        let expected = FunctionTuple::new(vec![
            Polynomial::from_real(&[2.0, -1.0]),
            Polynomial::from_real(&[1.0, -1.0]),
        ]);
        assert!(
            cert.solution.max_coeff_distance(&expected) < 1e-12,
            "{}",
            cert.solution.max_coeff_distance(&expected)
        );
        assert!(cert.residual_max_coeff < 1e-12);
        assert!(cert.mode.is_exact());
        assert_eq!(cert.chain.len(), 1);
        assert!(cert.scaled_eps_sq_lower > 0.0);

        let report = verify_certificate(&problem, &cert);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn solve_two_atoms() {
        let mu = AtomicMeasure::new(vec![(c(1.0, 0.0), 1.0), (c(-1.0, 0.0), 1.0)]).unwrap();
        let problem = CoronaProblem::new(z_and_one_minus_z(), mu).unwrap();
        let cert = solve(&problem, 6).unwrap();
        let expected = FunctionTuple::new(vec![
            Polynomial::from_real(&[1.0, 0.6, -0.6]),
            Polynomial::from_real(&[1.0, 0.0, -0.6]),
        ]);
        assert!(cert.solution.max_coeff_distance(&expected) < 1e-10);
        assert!(cert.residual_max_coeff < 1e-10);
        assert_eq!(cert.chain.len(), 2);
        for rec in &cert.chain {
            assert!(rec.b_norm_lower <= rec.bound_value + 1e-9);
            assert!(rec.phi_at_atom_sq > 0.0);
        }
        assert!(verify_certificate(&problem, &cert).passed);
    }

    #[test]
    fn solve_survivor_tuple() {
        let phi = FunctionTuple::new(vec![Polynomial::one(), Polynomial::zero()]);
        let mu = AtomicMeasure::new(vec![(c(0.0, 1.0), 1.5)]).unwrap();
        let problem = CoronaProblem::new(phi.clone(), mu).unwrap();
        let cert = solve(&problem, 4).unwrap();
        assert!(cert.solution.approx_eq(&phi));
        assert!(verify_certificate(&problem, &cert).passed);
    }

    #[test]
    fn tampered_certificate_fails() {
        let problem = CoronaProblem::new(z_and_one_minus_z(), delta_one()).unwrap();
        let mut cert = solve(&problem, 6).unwrap();
        let tampered = cert.solution.entry(0) + &Polynomial::from_real(&[0.0, 0.0, 1.0]);
        cert.solution =
            FunctionTuple::new(vec![tampered, cert.solution.entry(1).clone()]);
        let report = verify_certificate(&problem, &cert);
        assert!(!report.residual_ok);
        assert!(!report.passed);
    }
}
