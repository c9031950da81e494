//! Stable-rank-one reduction of unimodular polynomial pairs.
//!
//! A pair `(f, h)` with `inf_{|z| <= 1} (|f| + |h|) > 0` is reduced by
//! producing a polynomial `y` such that `u = f + y h` has all roots strictly
//! outside the closed disk; `1/u` is then analytic on a larger disk, hence a
//! multiplier of every `D(mu)`. The construction walks the measure's atoms,
//! applying a two-case transform at each, and then searches for a reducer of
//! the final pair under an explicit budget. Failure to find one is reported
//! as a value ([`reduce`] returns `None`), never as a claim that no reducer
//! exists.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bounds::{certified_disk_min, min_modulus_closed_disk, sup_circle_default, CertifiedBound};
use crate::measure::{AtomicMeasure, UnitCirclePoint};
use crate::poly::Polynomial;
use crate::roots::{root_margin, roots};

/// Below this, `|f(zeta)|` counts as vanishing and case 1 is unavailable.
const CASE1_TOL: f64 = 1e-9;
/// Relative remainder gate when dividing an interpolated target by `H`.
const DIVISIBILITY_TOL: f64 = 1e-8;
/// Grid parameters for the eta certification.
const ETA_GRID_SPACING: f64 = 0.1;
const ETA_GRID_REFINE: usize = 6;

#[derive(Debug, Error)]
pub enum StableRankError {
    #[error("f vanishes at the transform point (|f(zeta)| = {value:.3e}); use the case-2 transform")]
    Case1Vanishes { value: f64 },
    #[error("eta lower bound {lower:.3e} is not certified positive")]
    EtaNotCertified { lower: f64 },
    #[error("invalid search budget: {0}")]
    InvalidBudget(String),
}

/// Certified lower bound for `inf_{|z| <= 1} (|f(z)| + |h(z)|)`.
///
/// Combines a polar grid with Lipschitz correction (the gradient of
/// `|f| + |h|` is bounded by the derivative coefficient sums) with per-entry
/// floors from [`min_modulus_closed_disk`], which keep the bound sharp when
/// one entry alone is bounded away from zero. The `upper` field is the
/// smallest grid value seen.
pub fn eta(f: &Polynomial, h: &Polynomial) -> CertifiedBound {
    let lipschitz = f.deriv_abs_sum() + h.deriv_abs_sum();
    let dm = certified_disk_min(
        |z| f.eval(z).norm() + h.eval(z).norm(),
        lipschitz,
        ETA_GRID_SPACING,
        ETA_GRID_REFINE,
    );
    let mut lower = dm.lower.max(0.0);
    for p in [f, h] {
        if p.is_zero() {
            continue;
        }
        if let Ok(b) = min_modulus_closed_disk(p) {
            lower = lower.max(b.lower);
        }
    }
    CertifiedBound::new(lower.min(dm.min_grid), dm.min_grid, "polar grid + entry floors")
}

/// Case-1 transform at a point where `f` does not vanish: the pair becomes
/// `(f, (f - f(zeta)) h)`, which is again unimodular with certified bound
///
/// ```text
/// min( min(1, a) * eta,  max(a, eta - sup_circle|h|) ),   a = |f(zeta)| / 2
/// ```
///
/// Where `|f| >= a` the first entry alone gives `max(a, eta - sup|h|)`;
/// where `|f| < a` the factor `|f - f(zeta)| >= a` restores
/// `min(1, a)(|f| + |h|)`.
pub fn case1_transform(
    f: &Polynomial,
    h: &Polynomial,
    zeta: &UnitCirclePoint,
) -> Result<((Polynomial, Polynomial), f64), StableRankError> {
    let f_at = f.eval(zeta.value());
    let value = f_at.norm();
    if value < CASE1_TOL {
        return Err(StableRankError::Case1Vanishes { value });
    }
    let a = value / 2.0;
    let eta_lower = eta(f, h).lower;
    let sup_h = sup_circle_default(h).upper;
    let certified_eta = (a.min(1.0) * eta_lower).min(a.max(eta_lower - sup_h));

    let centered = f - &Polynomial::constant(f_at);
    Ok(((f.clone(), &centered * h), certified_eta))
}

/// Case-2 transform for a point where `f` vanishes: the pair becomes
/// `(f + h, h)`. A reducer `g` for the new pair converts back via
/// `y = 1 + g`, since `(f + h) + g h = f + (1 + g) h`.
pub fn case2_transform(f: &Polynomial, h: &Polynomial) -> (Polynomial, Polynomial) {
    (f + h, h.clone())
}

/// Budget for [`search_g`]: maximum reducer degree for the stochastic layer,
/// total candidate evaluations, RNG seed, and the root margin a candidate
/// must clear to count as invertible.
#[derive(Debug, Clone)]
pub struct Budget {
    pub max_degree: usize,
    pub max_iters: usize,
    pub seed: u64,
    pub margin: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_degree: 4,
            max_iters: 2000,
            seed: 0x5EED,
            margin: 1e-3,
        }
    }
}

fn validate_budget(budget: &Budget) -> Result<(), StableRankError> {
    if budget.max_iters == 0 {
        return Err(StableRankError::InvalidBudget("max_iters is zero".into()));
    }
    if !(budget.margin > 0.0 && budget.margin.is_finite()) {
        return Err(StableRankError::InvalidBudget(format!(
            "margin {} is not a positive finite number",
            budget.margin
        )));
    }
    Ok(())
}

/// Margin of `F + g H` if it clears the budget's threshold.
fn accept(f_big: &Polynomial, h_big: &Polynomial, g: &Polynomial, min_margin: f64) -> Option<f64> {
    let u = f_big + &(g * h_big);
    if u.is_zero() {
        return None;
    }
    let rts = roots(&u).ok()?;
    let margin = root_margin(&rts);
    (margin >= min_margin).then_some(margin)
}

/// Multiplicity-graded distinct roots: pairs `(root, multiplicity)` from
/// clustering.
fn distinct_roots(p: &Polynomial) -> Option<Vec<(Complex64, usize)>> {
    let clustered = crate::roots::cluster_roots(&roots(p).ok()?);
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for r in clustered {
        match out.last_mut() {
            Some((prev, count)) if (*prev - r).norm() < 1e-6 => *count += 1,
            _ => out.push((r, 1)),
        }
    }
    Some(out)
}

fn binomial_power(c: Complex64, w: Complex64, m: usize) -> Polynomial {
    // c * (1 + z/w)^m
    let lin = Polynomial::new(vec![Complex64::new(1.0, 0.0), 1.0 / w]);
    let mut acc = Polynomial::constant(c);
    for _ in 0..m {
        acc = &acc * &lin;
    }
    acc
}

/// Divide `(target - F)` by `H`, gated on the remainder being negligible
/// relative to the operand scale.
fn quotient_reducer(f_big: &Polynomial, h_big: &Polynomial, target: &Polynomial) -> Option<Polynomial> {
    let diff = target - f_big;
    let (q, r) = diff.div_rem(h_big).ok()?;
    let scale = target.max_coeff_abs().max(f_big.max_coeff_abs()).max(1.0);
    (r.max_coeff_abs() <= DIVISIBILITY_TOL * scale).then_some(q)
}

/// A double root of `H` on the unit circle pins `u'(rho)/u(rho)` to
/// `F'(rho)/F(rho)` for every candidate `u = F + g H`. A polynomial of
/// degree `d` that is zero-free on the closed disk satisfies
/// `Re(rho u'(rho)/u(rho)) < d/2` (each root `r` outside the disk
/// contributes `Re 1/(1 - conj(rho) r) < 1/2`), so if the pinned value
/// reaches half the largest reachable degree the whole search space is
/// empty.
fn ruled_out_by_circle_double_root(
    f_big: &Polynomial,
    h_big: &Polynomial,
    budget: &Budget,
) -> bool {
    let Some(clusters) = distinct_roots(h_big) else {
        return false;
    };
    let deg_h = match h_big.degree() {
        Some(d) => d,
        None => return false,
    };
    let max_u_degree = f_big
        .degree()
        .unwrap_or(0)
        .max(budget.max_degree + deg_h);
    for (rho, mult) in clusters {
        if mult != 2 || (rho.norm() - 1.0).abs() > 1e-8 {
            continue;
        }
        let f_at = f_big.eval(rho);
        if f_at.norm() < CASE1_TOL {
            continue;
        }
        let pinned = (rho * f_big.derivative().eval(rho) / f_at).re;
        if pinned >= max_u_degree as f64 / 2.0 {
            return true;
        }
    }
    false
}

/// Hermite layer: zero-free targets `c (1 + z/w)^m`, `|w| > 1 + margin`,
/// matched to `F` at the roots of `H` so that `target - F` is divisible by
/// `H`.
fn hermite_candidates(
    f_big: &Polynomial,
    h_big: &Polynomial,
    budget: &Budget,
) -> Vec<Polynomial> {
    let mut out = Vec::new();
    let Some(deg_h) = h_big.degree() else {
        return out;
    };

    if deg_h == 0 {
        // any zero-free target works; take the constant 1
        if let Some(g) = quotient_reducer(f_big, h_big, &Polynomial::one()) {
            out.push(g);
        }
        return out;
    }

    let Some(clusters) = distinct_roots(h_big) else {
        return out;
    };
    let m_cap = budget.max_degree + deg_h;
    let min_w = 1.0 + budget.margin;

    let push_target = |c: Complex64, w: Complex64, m: usize, out: &mut Vec<Polynomial>| {
        let w_norm = w.norm();
        if w_norm <= min_w || w_norm.is_nan() || !c.is_finite() || c.norm() == 0.0 {
            return;
        }
        let target = binomial_power(c, w, m);
        if let Some(g) = quotient_reducer(f_big, h_big, &target) {
            out.push(g);
        }
    };

    match clusters.as_slice() {
        [(rho, 1)] => {
            // one matching condition: value at rho; aim the root of the
            // target away from the disk along rho's direction
            let unit = if rho.norm() > 1e-12 {
                rho / rho.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            let f_at = f_big.eval(*rho);
            for m in 1..=m_cap {
                let w = 2.0 * unit;
                let base = Complex64::new(1.0, 0.0) + rho / w;
                if base.norm() < 1e-9 {
                    continue;
                }
                let c = f_at / base.powu(m as u32);
                push_target(c, w, m, &mut out);
            }
        }
        [(rho, 2)] => {
            // two conditions: value and derivative; with s = F'/F at rho the
            // log derivative m/(w + z) forces w = m/s - rho
            let f_at = f_big.eval(*rho);
            if f_at.norm() < CASE1_TOL {
                return out;
            }
            let s = f_big.derivative().eval(*rho) / f_at;
            if s.norm() < 1e-12 {
                return out;
            }
            for m in 2..=m_cap {
                let w = Complex64::new(m as f64, 0.0) / s - rho;
                let base = Complex64::new(1.0, 0.0) + rho / w;
                if base.norm() < 1e-9 {
                    continue;
                }
                let c = f_at / base.powu(m as u32);
                push_target(c, w, m, &mut out);
            }
        }
        [(rho1, 1), (rho2, 1)] => {
            // value conditions at both roots; the ratio fixes
            // ((w + rho1)/(w + rho2))^m, solved over the m-th-root branches
            let f1 = f_big.eval(*rho1);
            let f2 = f_big.eval(*rho2);
            if f1.norm() < CASE1_TOL || f2.norm() < CASE1_TOL {
                return out;
            }
            let ratio = f1 / f2;
            for m in 1..=m_cap {
                let principal = ratio.powf(1.0 / m as f64);
                for k in 0..m {
                    let phase = Complex64::from_polar(
                        1.0,
                        2.0 * std::f64::consts::PI * k as f64 / m as f64,
                    );
                    let q = principal * phase;
                    let denom = Complex64::new(1.0, 0.0) - q;
                    if denom.norm() < 1e-9 {
                        continue;
                    }
                    let w = (q * rho2 - rho1) / denom;
                    let base = Complex64::new(1.0, 0.0) + rho1 / w;
                    if base.norm() < 1e-9 {
                        continue;
                    }
                    let c = f1 / base.powu(m as u32);
                    push_target(c, w, m, &mut out);
                }
            }
        }
        _ => {}
    }
    out
}

/// Search for `g` with all roots of `F + g H` strictly outside the closed
/// disk by margin at least `budget.margin`.
///
/// Layers, cheapest first: `g = 0` and a grid of small complex constants
/// (the grid is skipped when `deg H = 2`, where a product-of-roots argument
/// shows constants cannot work in general); Hermite-interpolated zero-free
/// targets `c (1 + z/w)^m` matched to `F` at the roots of `H`; a seeded
/// hill-climb on the minimum root modulus. Returns `None` when the budget
/// is exhausted; that outcome carries no claim that no reducer exists.
pub fn search_g(
    f_big: &Polynomial,
    h_big: &Polynomial,
    budget: &Budget,
) -> Result<Option<Polynomial>, StableRankError> {
    validate_budget(budget)?;

    if ruled_out_by_circle_double_root(f_big, h_big, budget) {
        return Ok(None);
    }

    if accept(f_big, h_big, &Polynomial::zero(), budget.margin).is_some() {
        return Ok(Some(Polynomial::zero()));
    }

    let quadratic_h = h_big.degree() == Some(2);
    if !quadratic_h {
        let mut steps = Vec::new();
        for k in -8..=8 {
            steps.push(k as f64 * 0.25);
        }
        for &re in &steps {
            for &im in &steps {
                if re == 0.0 && im == 0.0 {
                    continue;
                }
                let g = Polynomial::constant(Complex64::new(re, im));
                if accept(f_big, h_big, &g, budget.margin).is_some() {
                    return Ok(Some(g));
                }
            }
        }
    }

    for g in hermite_candidates(f_big, h_big, budget) {
        if accept(f_big, h_big, &g, budget.margin).is_some() {
            return Ok(Some(g));
        }
    }

    // stochastic layer: hill-climb on the margin objective
    let min_deg = if quadratic_h { 1 } else { 0 };
    if budget.max_degree < min_deg {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut iters = 0usize;
    let margin_of = |g: &Polynomial| -> f64 {
        let u = f_big + &(g * h_big);
        if u.is_zero() {
            return f64::NEG_INFINITY;
        }
        match roots(&u) {
            Ok(rts) => root_margin(&rts),
            Err(_) => f64::NEG_INFINITY,
        }
    };
    let mut degree = min_deg;
    while iters < budget.max_iters {
        let num_coeffs = degree + 1;
        let mut current: Vec<Complex64> = (0..num_coeffs)
            .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            .collect();
        let mut best = margin_of(&Polynomial::new(current.clone()));
        iters += 1;
        if best >= budget.margin {
            return Ok(Some(Polynomial::new(current)));
        }
        let mut step = 1.0;
        for _ in 0..50 {
            if iters >= budget.max_iters {
                break;
            }
            let idx = rng.gen_range(0..num_coeffs);
            let delta = Complex64::new(
                step * rng.gen_range(-1.0..1.0),
                step * rng.gen_range(-1.0..1.0),
            );
            let mut trial = current.clone();
            trial[idx] += delta;
            let value = margin_of(&Polynomial::new(trial.clone()));
            iters += 1;
            if value >= budget.margin {
                return Ok(Some(Polynomial::new(trial)));
            }
            if value > best {
                best = value;
                current = trial;
            }
            step *= 0.93;
        }
        degree = if degree >= budget.max_degree {
            min_deg
        } else {
            degree + 1
        };
    }
    Ok(None)
}

/// Tags recording which transform was applied at which atom, in processing
/// order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CaseTag {
    Case1 { zeta: UnitCirclePoint },
    Case2 { zeta: UnitCirclePoint },
}

/// The output of [`reduce`]: `u = f + y h` is stored explicitly together
/// with its certified root margin and the per-atom case trace.
#[derive(Debug, Clone)]
pub struct ReductionWitness {
    pub y: Polynomial,
    pub u: Polynomial,
    pub root_margin: f64,
    pub case_trace: Vec<CaseTag>,
}

/// A pair certified unimodular over a measure; construction fails when the
/// eta bound cannot be certified positive.
#[derive(Debug, Clone)]
pub struct UnimodularPair {
    pub f: Polynomial,
    pub h: Polynomial,
    pub measure: AtomicMeasure,
    pub eta_lower: CertifiedBound,
}

impl UnimodularPair {
    pub fn new(
        f: Polynomial,
        h: Polynomial,
        measure: AtomicMeasure,
    ) -> Result<Self, StableRankError> {
        let eta_lower = eta(&f, &h);
        if eta_lower.lower <= 0.0 {
            return Err(StableRankError::EtaNotCertified {
                lower: eta_lower.lower,
            });
        }
        Ok(UnimodularPair {
            f,
            h,
            measure,
            eta_lower,
        })
    }

    pub fn reduce(&self, budget: &Budget) -> Result<Option<ReductionWitness>, StableRankError> {
        reduce(&self.f, &self.h, &self.measure, budget)
    }
}

enum Step {
    One { f_at: Complex64, f_step: Polynomial },
    Two,
}

/// Reduce a unimodular pair over the atoms of `mu`: at each atom apply the
/// case-1 transform when `|f(zeta)|` is nonnegligible and the case-2
/// transform otherwise, search for a reducer of the final pair, and compose
/// the transforms back to `y` with `u = f + y h`. `None` means the search
/// budget was exhausted; errors are reserved for an uncertified eta or an
/// invalid budget.
pub fn reduce(
    f: &Polynomial,
    h: &Polynomial,
    mu: &AtomicMeasure,
    budget: &Budget,
) -> Result<Option<ReductionWitness>, StableRankError> {
    validate_budget(budget)?;
    let eta_bound = eta(f, h);
    if eta_bound.lower <= 0.0 {
        return Err(StableRankError::EtaNotCertified {
            lower: eta_bound.lower,
        });
    }

    let mut cur_f = f.clone();
    let mut cur_h = h.clone();
    let mut trace = Vec::with_capacity(mu.len());
    let mut steps = Vec::with_capacity(mu.len());
    for atom in mu.atoms() {
        let zeta = atom.zeta;
        if cur_f.eval(zeta.value()).norm() >= CASE1_TOL {
            let ((next_f, next_h), _certified) = case1_transform(&cur_f, &cur_h, &zeta)?;
            steps.push(Step::One {
                f_at: cur_f.eval(zeta.value()),
                f_step: cur_f.clone(),
            });
            trace.push(CaseTag::Case1 { zeta });
            cur_f = next_f;
            cur_h = next_h;
        } else {
            let (next_f, next_h) = case2_transform(&cur_f, &cur_h);
            steps.push(Step::Two);
            trace.push(CaseTag::Case2 { zeta });
            cur_f = next_f;
            cur_h = next_h;
        }
    }

    let Some(g) = search_g(&cur_f, &cur_h, budget)? else {
        return Ok(None);
    };

    // unwind: case 1 maps a reducer g of (f, (f - f(zeta)) h) to
    // y = g (f - f(zeta)); case 2 maps g of (f + h, h) to y = 1 + g
    let mut y = g;
    for step in steps.iter().rev() {
        y = match step {
            Step::One { f_at, f_step } => &y * &(f_step - &Polynomial::constant(*f_at)),
            Step::Two => &Polynomial::one() + &y,
        };
    }

    let u = f + &(&y * h);
    let margin = match roots(&u) {
        Ok(rts) => root_margin(&rts),
        Err(_) => return Ok(None),
    };
    if margin <= 0.0 {
        return Ok(None);
    }
    Ok(Some(ReductionWitness {
        y,
        u,
        root_margin: margin,
        case_trace: trace,
    }))
}

/// Result of re-checking a witness: the coefficientwise identity
/// `u = f + y h`, the root margin recomputed from the stored `u`, and
/// positivity of the claimed margin.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub identity_distance: f64,
    pub identity_ok: bool,
    pub recomputed_margin: f64,
    pub margin_ok: bool,
    pub margin_positive: bool,
    pub passed: bool,
}

/// Re-verify a reduction witness against the pair it claims to reduce.
pub fn verify_witness(f: &Polynomial, h: &Polynomial, w: &ReductionWitness) -> WitnessReport {
    let recomputed_u = f + &(&w.y * h);
    let identity_distance = recomputed_u.max_coeff_distance(&w.u);
    let identity_ok = identity_distance <= 1e-8;

    let recomputed_margin = match roots(&w.u) {
        Ok(rts) => root_margin(&rts),
        Err(_) => f64::NEG_INFINITY,
    };
    let margin_ok = if recomputed_margin.is_infinite() && w.root_margin.is_infinite() {
        recomputed_margin == w.root_margin
    } else {
        (recomputed_margin - w.root_margin).abs() <= 1e-8
    };
    let margin_positive = w.root_margin > 0.0;

    WitnessReport {
        identity_distance,
        identity_ok,
        recomputed_margin,
        margin_ok,
        margin_positive,
        passed: identity_ok && margin_ok && margin_positive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::AtomicMeasure;

    fn z() -> Polynomial {
        Polynomial::from_real(&[0.0, 1.0])
    }

    fn one_minus_z() -> Polynomial {
        Polynomial::from_real(&[1.0, -1.0])
    }

    fn delta_one() -> AtomicMeasure {
        AtomicMeasure::unit_at(&[UnitCirclePoint::one()])
    }

    #[test]
    fn eta_examples() {
        let b = eta(&z(), &one_minus_z());
        assert!(b.lower > 0.9 && b.lower <= 1.0 + 1e-9, "{b:?}");
        assert!(b.upper >= 1.0 - 1e-9);

        let b = eta(
            &Polynomial::one(),
            &Polynomial::from_real(&[0.3, -1.0, 0.0, 1.0]),
        );
        assert!(b.lower >= 1.0 - 1e-12);

        let b = eta(&z(), &z());
        assert_eq!(b.lower, 0.0);
    }

    #[test]
    fn case1_worked_examples() {
        let ((pf, ph), certified) = case1_transform(&z(), &one_minus_z(), &UnitCirclePoint::one()).unwrap();
        assert!(pf.approx_eq(&z()));
        // (z - 1)(1 - z) = -1 + 2z - z^2
        assert!(ph.approx_eq(&Polynomial::from_real(&[-1.0, 2.0, -1.0])));
        assert!(certified > 0.45 && certified <= 0.5, "{certified}");

        // constant f kills the second entry; the certified bound must drop
        // to |c| (the true infimum), not min(1, |c|/2) * eta
        let ((pf, ph), certified) = case1_transform(
            &Polynomial::constant(Complex64::new(0.2, 0.0)),
            &Polynomial::constant(Complex64::new(3.0, 0.0)),
            &UnitCirclePoint::from_angle(1.0),
        )
        .unwrap();
        assert!(pf.approx_eq(&Polynomial::constant(Complex64::new(0.2, 0.0))));
        assert!(ph.is_zero());
        assert!((certified - 0.2).abs() <= 1e-9, "{certified}");

        let ((_, ph), certified) = case1_transform(
            &Polynomial::from_real(&[2.0, 1.0]),
            &Polynomial::one(),
            &UnitCirclePoint::one(),
        )
        .unwrap();
        assert!(ph.approx_eq(&Polynomial::from_real(&[-1.0, 1.0])));
        assert!((certified - 1.5).abs() <= 1e-9, "{certified}");

        assert!(matches!(
            case1_transform(&one_minus_z(), &Polynomial::one(), &UnitCirclePoint::one()),
            Err(StableRankError::Case1Vanishes { .. })
        ));
    }

    #[test]
    fn case2_examples() {
        let (a, b) = case2_transform(&one_minus_z(), &Polynomial::one());
        assert!(a.approx_eq(&Polynomial::from_real(&[2.0, -1.0])));
        assert!(b.approx_eq(&Polynomial::one()));

        let (a, _) = case2_transform(&Polynomial::zero(), &Polynomial::one());
        assert!(a.approx_eq(&Polynomial::one()));

        let (a, b) = case2_transform(&Polynomial::from_real(&[-1.0, 1.0]), &z());
        assert!(a.approx_eq(&Polynomial::from_real(&[-1.0, 2.0])));
        assert!(b.approx_eq(&z()));
    }

    #[test]
    fn search_finds_hermite_reducer() {
        // H has a double root at 1, so neither g = 0 nor any constant g
        // works; the matched target is (8/27)(1 + z/2)^3
        let h_big = Polynomial::from_real(&[-1.0, 2.0, -1.0]);
        let g = search_g(&z(), &h_big, &Budget::default()).unwrap().unwrap();
        let expected = Polynomial::from_real(&[-8.0 / 27.0, -1.0 / 27.0]);
        assert!(
            g.max_coeff_distance(&expected) <= 1e-9,
            "{}",
            g.max_coeff_distance(&expected)
        );
        let u = &z() + &(&g * &h_big);
        let expected_u = Polynomial::from_real(&[8.0 / 27.0, 12.0 / 27.0, 6.0 / 27.0, 1.0 / 27.0]);
        assert!(u.max_coeff_distance(&expected_u) <= 1e-9);
    }

    #[test]
    fn search_zero_and_constant_layers() {
        let budget = Budget::default();
        let g = search_g(&Polynomial::from_real(&[2.0, -1.0]), &Polynomial::one(), &budget)
            .unwrap()
            .unwrap();
        assert!(g.is_zero());

        let g = search_g(
            &Polynomial::constant(Complex64::new(0.7, 0.0)),
            &Polynomial::from_real(&[0.1, 0.4, 0.0, 1.0]),
            &budget,
        )
        .unwrap()
        .unwrap();
        assert!(g.is_zero());

        // z + g must move the root out of the disk; the first grid constant
        // that does is -2 - 2i
        let g = search_g(&z(), &Polynomial::one(), &budget).unwrap().unwrap();
        assert!(g.approx_eq(&Polynomial::constant(Complex64::new(-2.0, -2.0))));
    }

    #[test]
    fn search_rejects_bad_budget() {
        let budget = Budget {
            max_iters: 0,
            ..Budget::default()
        };
        assert!(matches!(
            search_g(&z(), &Polynomial::one(), &budget),
            Err(StableRankError::InvalidBudget(_))
        ));
        let budget = Budget {
            margin: 0.0,
            ..Budget::default()
        };
        assert!(matches!(
            search_g(&z(), &Polynomial::one(), &budget),
            Err(StableRankError::InvalidBudget(_))
        ));
    }

    #[test]
    fn reduce_worked_example() {
        let w = reduce(&z(), &one_minus_z(), &delta_one(), &Budget::default())
            .unwrap()
            .unwrap();
        // y = -(z + 8)(z - 1)/27 = (8 - 7z - z^2)/27
        let expected_y = Polynomial::from_real(&[8.0 / 27.0, -7.0 / 27.0, -1.0 / 27.0]);
        assert!(
            w.y.max_coeff_distance(&expected_y) <= 1e-9,
            "{}",
            w.y.max_coeff_distance(&expected_y)
        );
        let expected_u = Polynomial::from_real(&[8.0 / 27.0, 12.0 / 27.0, 6.0 / 27.0, 1.0 / 27.0]);
        assert!(w.u.max_coeff_distance(&expected_u) <= 1e-9);
        // triple root at -2: numerical roots scatter by about cbrt(eps),
        // so the margin is 1 only to a few parts in a thousand
        assert!((w.root_margin - 1.0).abs() <= 1e-2, "{}", w.root_margin);
        assert_eq!(w.case_trace.len(), 1);
        assert!(matches!(w.case_trace[0], CaseTag::Case1 { .. }));
        assert!(verify_witness(&z(), &one_minus_z(), &w).passed);
    }

    #[test]
    fn reduce_constant_f() {
        let f = Polynomial::constant(Complex64::new(1.5, -0.5));
        let w = reduce(&f, &z(), &delta_one(), &Budget::default())
            .unwrap()
            .unwrap();
        assert!(w.y.is_zero());
        assert!(w.u.approx_eq(&f));
        assert!(w.root_margin.is_infinite());
        assert!(verify_witness(&f, &z(), &w).passed);
    }

    #[test]
    fn reduce_case2_example() {
        let w = reduce(&one_minus_z(), &Polynomial::one(), &delta_one(), &Budget::default())
            .unwrap()
            .unwrap();
        assert!(w.y.approx_eq(&Polynomial::one()));
        assert!(w.u.approx_eq(&Polynomial::from_real(&[2.0, -1.0])));
        assert!((w.root_margin - 1.0).abs() <= 1e-9);
        assert!(matches!(w.case_trace[0], CaseTag::Case2 { .. }));
        assert!(verify_witness(&one_minus_z(), &Polynomial::one(), &w).passed);
    }

    #[test]
    fn reduce_mixed_trace() {
        let mu = AtomicMeasure::new(vec![
            (Complex64::new(1.0, 0.0), 1.0),
            (Complex64::new(-1.0, 0.0), 1.0),
        ])
        .unwrap();
        let w = reduce(&one_minus_z(), &Polynomial::one(), &mu, &Budget::default())
            .unwrap()
            .unwrap();
        assert!(matches!(w.case_trace[0], CaseTag::Case2 { .. }));
        assert!(matches!(w.case_trace[1], CaseTag::Case1 { .. }));
        assert!(w.root_margin > 0.0);
        assert!(verify_witness(&one_minus_z(), &Polynomial::one(), &w).passed);
    }

    #[test]
    fn reduce_requires_certified_eta() {
        assert!(matches!(
            reduce(&z(), &z(), &delta_one(), &Budget::default()),
            Err(StableRankError::EtaNotCertified { .. })
        ));
    }

    #[test]
    fn reduce_budget_exhaustion_is_honest() {
        // after case 1 at zeta = 1 the pair is (4z - 3, -4(z-1)^2); the
        // double root on the circle pins u'(1)/u(1) = 4, and a zero-free u
        // of degree d needs that below d/2, so degrees up to 6 cannot work
        let f = Polynomial::from_real(&[-3.0, 4.0]);
        let outcome = reduce(&f, &one_minus_z(), &delta_one(), &Budget::default()).unwrap();
        assert!(outcome.is_none());
    }

    #[test]
    fn unimodular_pair_validates() {
        let pair = UnimodularPair::new(z(), one_minus_z(), delta_one()).unwrap();
        assert!(pair.eta_lower.lower > 0.9);
        let w = pair.reduce(&Budget::default()).unwrap().unwrap();
        assert!(verify_witness(&pair.f, &pair.h, &w).passed);

        assert!(matches!(
            UnimodularPair::new(z(), z(), delta_one()),
            Err(StableRankError::EtaNotCertified { .. })
        ));
    }

    #[test]
    fn witness_tampering_detected() {
        let w = reduce(&z(), &one_minus_z(), &delta_one(), &Budget::default())
            .unwrap()
            .unwrap();

        let mut bad = w.clone();
        bad.y = &bad.y + &z();
        assert!(!verify_witness(&z(), &one_minus_z(), &bad).identity_ok);
        assert!(!verify_witness(&z(), &one_minus_z(), &bad).passed);

        let mut bad = w.clone();
        bad.root_margin = 2.0;
        let report = verify_witness(&z(), &one_minus_z(), &bad);
        assert!(report.identity_ok);
        assert!(!report.margin_ok);
        assert!(!report.passed);
    }

    #[test]
    fn search_is_deterministic() {
        // cubic H with three distinct roots: the Hermite layer does not
        // apply, and matching leading/constant coefficients force every
        // constant-g candidate to have unit root product
        let f = Polynomial::from_real(&[0.3, 1.0, 0.0, 0.3]);
        let h = Polynomial::from_real(&[1.0, 1.0, 1.0, 1.0]);
        let budget = Budget::default();
        let first = search_g(&f, &h, &budget).unwrap();
        let second = search_g(&f, &h, &budget).unwrap();
        match (&first, &second) {
            (Some(a), Some(b)) => {
                assert!(a.max_coeff_distance(b) == 0.0);
                let u = &f + &(a * &h);
                assert!(root_margin(&roots(&u).unwrap()) >= budget.margin);
            }
            (None, None) => {}
            _ => panic!("nondeterministic outcomes"),
        }
    }
}
