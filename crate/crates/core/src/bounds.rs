//! Certified enclosures of sup and inf quantities on the circle and the
//! closed disk.
//!
//! Circle bounds come from a uniform grid with a Bernstein-inequality
//! correction: |p'| <= deg(p) * sup|p| on the circle, so the grid max
//! underestimates the true sup by at most a computable factor. Disk minima
//! come from a polar grid with a coefficient-sum Lipschitz correction.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::poly::{Polynomial, PolyError};
use crate::roots;
use crate::tuple::FunctionTuple;

/// A rigorous enclosure lower <= true value <= upper, tagged with the grid
/// and correction that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedBound {
    pub lower: f64,
    pub upper: f64,
    pub method: String,
}

impl CertifiedBound {
    pub fn new(lower: f64, upper: f64, method: impl Into<String>) -> Self {
        assert!(lower.is_finite() && upper.is_finite(), "bound must be finite");
        assert!(lower <= upper, "lower {lower} exceeds upper {upper}");
        CertifiedBound {
            lower,
            upper,
            method: method.into(),
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }
}

/// Grid size used when the caller does not pick one.
pub fn default_resolution(degree: usize) -> usize {
    4096.max(64 * degree)
}

/// Certified sup of |p| over the unit circle. The lower bound is the max
/// over `resolution` uniform points; the upper bound divides out the
/// Bernstein correction 1 - pi*deg/N.
pub fn sup_circle(p: &Polynomial, resolution: usize) -> Result<CertifiedBound, PolyError> {
    let deg = match p.degree() {
        None => {
            return Ok(CertifiedBound::new(0.0, 0.0, "zero polynomial"));
        }
        Some(d) => d,
    };
    let shrink = 1.0 - PI * deg as f64 / resolution as f64;
    if shrink <= 0.0 {
        return Err(PolyError::ResolutionTooSmall {
            resolution,
            degree: deg,
        });
    }
    let mut max_grid = 0.0_f64;
    for k in 0..resolution {
        let theta = 2.0 * PI * k as f64 / resolution as f64;
        let v = p.eval(Complex64::from_polar(1.0, theta)).norm();
        max_grid = max_grid.max(v);
    }
    Ok(CertifiedBound::new(
        max_grid,
        max_grid / shrink,
        format!("circle grid N={resolution}, bernstein deg={deg}"),
    ))
}

/// `sup_circle` at the default resolution for the degree.
pub fn sup_circle_default(p: &Polynomial) -> CertifiedBound {
    let n = default_resolution(p.degree().unwrap_or(0));
    sup_circle(p, n).expect("default resolution exceeds pi*deg")
}

/// Certified sup of sum_j |phi_j|^2 over the unit circle. The sum is a real
/// trigonometric polynomial of degree D = max_j deg(phi_j), so the same
/// grid + Bernstein correction applies with that degree.
pub fn sup_sum_sq_circle(tuple: &FunctionTuple, resolution: usize) -> Result<CertifiedBound, PolyError> {
    let deg = match tuple.max_degree() {
        None => {
            let c: f64 = tuple
                .entries()
                .iter()
                .map(|p| p.coeff(0).norm_sqr())
                .sum();
            return Ok(CertifiedBound::new(c, c, "constant tuple"));
        }
        Some(d) => d,
    };
    let shrink = 1.0 - PI * deg as f64 / resolution as f64;
    if shrink <= 0.0 {
        return Err(PolyError::ResolutionTooSmall {
            resolution,
            degree: deg,
        });
    }
    let mut max_grid = 0.0_f64;
    for k in 0..resolution {
        let theta = 2.0 * PI * k as f64 / resolution as f64;
        let v = tuple.sum_abs_sq_at(Complex64::from_polar(1.0, theta));
        max_grid = max_grid.max(v);
    }
    Ok(CertifiedBound::new(
        max_grid,
        max_grid / shrink,
        format!("circle grid N={resolution}, bernstein trig deg={deg}"),
    ))
}

pub fn sup_sum_sq_circle_default(tuple: &FunctionTuple) -> CertifiedBound {
    let n = default_resolution(tuple.max_degree().unwrap_or(0));
    sup_sum_sq_circle(tuple, n).expect("default resolution exceeds pi*deg")
}

/// Certified enclosure of min over the closed disk of |p|. When p has a root
/// in the closed disk the minimum is 0; otherwise 1/p is analytic on the
/// disk, its maximum-modulus point lies on the boundary, and the boundary
/// minimum is certified by the circle grid.
pub fn min_modulus_closed_disk(p: &Polynomial) -> Result<CertifiedBound, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let rts = roots::roots(p)?;
    let in_disk: Vec<_> = rts.iter().filter(|r| r.norm() <= 1.0).collect();
    if !in_disk.is_empty() {
        let upper = in_disk
            .iter()
            .map(|&&r| p.eval(r).norm())
            .fold(f64::INFINITY, f64::min);
        return Ok(CertifiedBound::new(
            0.0,
            upper,
            format!("{} roots in closed disk", in_disk.len()),
        ));
    }
    let deg = p.degree().unwrap();
    let n = default_resolution(deg);
    let mut min_grid = f64::INFINITY;
    for k in 0..n {
        let theta = 2.0 * PI * k as f64 / n as f64;
        min_grid = min_grid.min(p.eval(Complex64::from_polar(1.0, theta)).norm());
    }
    let sup_upper = sup_circle(p, n)?.upper;
    let correction = PI * deg as f64 / n as f64 * sup_upper;
    Ok(CertifiedBound::new(
        (min_grid - correction).max(0.0),
        min_grid,
        format!("zero-free; circle grid N={n}, correction {correction:.3e}"),
    ))
}

/// Summary of a certified polar-grid disk minimum.
#[derive(Debug, Clone)]
pub struct DiskMin {
    /// min_grid - spacing * lipschitz; may be negative when the grid cannot
    /// separate the infimum from zero.
    pub lower: f64,
    /// Smallest sampled value (a genuine upper bound for the infimum).
    pub min_grid: f64,
    pub spacing: f64,
    pub refinements: usize,
}

/// Certified lower bound for the infimum of `value` over the closed disk.
/// `lipschitz` must dominate the Euclidean Lipschitz constant of `value` on
/// the disk. The polar grid uses ring spacing h and arc spacing <= h, so
/// every disk point is within h of a sample; halving continues until the
/// bound is positive and improves by less than 5%, capped at `max_refine`
/// halvings.
pub fn certified_disk_min(
    value: impl Fn(Complex64) -> f64,
    lipschitz: f64,
    initial_spacing: f64,
    max_refine: usize,
) -> DiskMin {
    let mut best = scan_disk(&value, lipschitz, initial_spacing, 0);
    for t in 1..=max_refine {
        let next = scan_disk(&value, lipschitz, initial_spacing / (1u32 << t) as f64, t);
        let improvement = next.lower - best.lower;
        let converged = next.lower > 0.0 && improvement < 0.05 * next.lower.abs();
        best = next;
        if converged {
            break;
        }
    }
    best
}

fn scan_disk(
    value: &impl Fn(Complex64) -> f64,
    lipschitz: f64,
    h: f64,
    refinements: usize,
) -> DiskMin {
    let rings = (1.0 / h).ceil() as usize;
    let mut min_grid = f64::INFINITY;
    for i in 0..=rings {
        let r = (i as f64 * h).min(1.0);
        let count = ((2.0 * PI * r / h).ceil() as usize).max(1);
        for j in 0..count {
            let theta = 2.0 * PI * j as f64 / count as f64;
            min_grid = min_grid.min(value(Complex64::from_polar(r, theta)));
        }
    }
    DiskMin {
        lower: min_grid - h * lipschitz,
        min_grid,
        spacing: h,
        refinements,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sup_circle_monomial() {
        for d in [1usize, 5, 20] {
            let p = Polynomial::monomial(Complex64::new(1.0, 0.0), d);
            let b = sup_circle_default(&p);
            // |e^{i k theta}| evaluates to 1 up to a few ulps, so allow that
            // much slack on the enclosure
            assert!(b.lower <= 1.0 + 1e-12 && 1.0 <= b.upper, "degree {d}: {b:?}");
            // the width is the Bernstein correction, about pi*d/4096
            assert!(b.width() <= 2.0 * PI * d as f64 / 4096.0, "width {}", b.width());
        }
    }

    #[test]
    fn sup_circle_one_plus_z() {
        let p = Polynomial::from_real(&[1.0, 1.0]);
        let b = sup_circle_default(&p);
        assert!(b.contains(2.0));
        assert!(b.width() < 1e-2);
    }

    #[test]
    fn sup_circle_cube() {
        let p = Polynomial::from_real(&[8.0 / 27.0, 12.0 / 27.0, 6.0 / 27.0, 1.0 / 27.0]);
        let b = sup_circle_default(&p);
        assert!(b.contains(1.0));
    }

    #[test]
    fn sup_circle_resolution_guard() {
        let p = Polynomial::monomial(Complex64::new(1.0, 0.0), 10);
        assert!(matches!(
            sup_circle(&p, 31),
            Err(PolyError::ResolutionTooSmall { .. })
        ));
        assert_eq!(sup_circle(&Polynomial::zero(), 4).unwrap().upper, 0.0);
    }

    #[test]
    fn sum_sq_matches_single_entry() {
        let p = Polynomial::from_real(&[1.0, 1.0]);
        let single = sup_circle_default(&p);
        let tup = FunctionTuple::new(vec![p]);
        let b = sup_sum_sq_circle_default(&tup);
        assert!(b.contains(4.0));
        assert!((b.lower - single.lower * single.lower).abs() < 1e-9);
    }

    #[test]
    fn min_modulus_examples() {
        let b = min_modulus_closed_disk(&Polynomial::from_real(&[2.0, 1.0])).unwrap();
        assert!(b.contains(1.0), "{b:?}");

        let c = min_modulus_closed_disk(&Polynomial::constant(Complex64::new(0.0, -3.0))).unwrap();
        assert!(c.contains(3.0));
        assert!(c.width() < 1e-12);

        let cube = Polynomial::from_real(&[8.0 / 27.0, 12.0 / 27.0, 6.0 / 27.0, 1.0 / 27.0]);
        let b = min_modulus_closed_disk(&cube).unwrap();
        assert!(b.contains(1.0 / 27.0), "{b:?}");

        let zp = min_modulus_closed_disk(&Polynomial::from_real(&[0.0, 1.0])).unwrap();
        assert_eq!(zp.lower, 0.0);
        assert!(zp.upper < 1e-10);

        assert!(min_modulus_closed_disk(&Polynomial::zero()).is_err());
    }

    #[test]
    fn disk_min_simple() {
        // |z - 1/2|^2 has infimum 0 at an interior grid-reachable point
        let f = |z: Complex64| (z - Complex64::new(0.5, 0.0)).norm_sqr();
        let m = certified_disk_min(f, 3.0, 0.1, 6);
        assert!(m.min_grid < 1e-12);
        assert!(m.lower <= 0.0);

        // constant 2: Lipschitz 0, exact at any spacing
        let m = certified_disk_min(|_| 2.0, 0.0, 0.1, 6);
        assert_eq!(m.lower, 2.0);
        assert_eq!(m.refinements, 1);
    }
}
