//! Root finding: simultaneous (Aberth) iteration from perturbed unit-circle
//! starting points, with a companion-matrix eigenvalue fallback.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::poly::{Polynomial, PolyError};

/// Residual acceptance: every returned root r must satisfy
/// |p(r)| <= RESIDUAL_FACTOR * (1 + sum |c_k|).
pub const RESIDUAL_FACTOR: f64 = 1e-8;

/// Roots closer than this are treated as one multiple root and replaced by
/// their centroid.
pub const CLUSTER_RADIUS: f64 = 1e-6;

const MAX_ITERS: usize = 500;

/// All deg(p) roots of `p` with multiplicity, sorted by (re, im). A nonzero
/// constant has no roots; the zero polynomial is an error.
pub fn roots(p: &Polynomial) -> Result<Vec<Complex64>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let deg = p.degree().unwrap();
    if deg == 0 {
        return Ok(Vec::new());
    }

    // Roots at the origin come from leading zero coefficients; peel them off
    // exactly before iterating.
    let k0 = p
        .coeffs()
        .iter()
        .position(|c| c.norm() > 0.0)
        .expect("nonzero polynomial has a nonzero coefficient");
    let reduced = Polynomial::new(p.coeffs()[k0..].to_vec());
    let mut at_origin = vec![Complex64::new(0.0, 0.0); k0];

    if reduced.degree() == Some(0) {
        at_origin.sort_by(cmp_complex);
        return Ok(at_origin);
    }

    let gate = RESIDUAL_FACTOR * (1.0 + p.coeff_abs_sum());
    let accepted = finish(p, &at_origin, aberth(&reduced), gate)
        .or_else(|| finish(p, &at_origin, companion_eigenvalues(&reduced), gate));
    accepted.ok_or(PolyError::RootsNotConverged)
}

/// min |root| - 1; +inf when the polynomial has no roots. Positive margin
/// means all roots lie strictly outside the closed disk.
pub fn root_margin(rts: &[Complex64]) -> f64 {
    rts.iter()
        .map(|r| r.norm())
        .fold(f64::INFINITY, f64::min)
        - 1.0
}

/// Greedy clustering with radius `CLUSTER_RADIUS`: members of a cluster are
/// replaced by their centroid, preserving multiplicity.
pub fn cluster_roots(rts: &[Complex64]) -> Vec<Complex64> {
    let mut sorted = rts.to_vec();
    sorted.sort_by(cmp_complex);
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for &r in &sorted {
        match clusters
            .iter_mut()
            .find(|(centroid, _)| (*centroid - r).norm() <= CLUSTER_RADIUS)
        {
            Some((centroid, count)) => {
                let n = *count as f64;
                *centroid = (*centroid * n + r) / (n + 1.0);
                *count += 1;
            }
            None => clusters.push((r, 1)),
        }
    }
    let mut out = Vec::with_capacity(sorted.len());
    for (centroid, count) in clusters {
        out.extend(std::iter::repeat_n(centroid, count));
    }
    out.sort_by(cmp_complex);
    out
}

fn cmp_complex(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

fn finish(
    p: &Polynomial,
    at_origin: &[Complex64],
    found: Option<Vec<Complex64>>,
    gate: f64,
) -> Option<Vec<Complex64>> {
    let mut rts = found?;
    rts.extend_from_slice(at_origin);
    let clustered = cluster_roots(&rts);
    if passes_gate(p, &clustered, gate) {
        return Some(clustered);
    }
    // Clustering can merge genuinely distinct close roots; fall back to the
    // raw values if the centroids fail the residual gate.
    rts.sort_by(cmp_complex);
    if passes_gate(p, &rts, gate) {
        return Some(rts);
    }
    None
}

fn passes_gate(p: &Polynomial, rts: &[Complex64], gate: f64) -> bool {
    rts.len() == p.degree().unwrap_or(0) && rts.iter().all(|&r| p.eval(r).norm() <= gate)
}

fn aberth(p: &Polynomial) -> Option<Vec<Complex64>> {
    let n = p.degree().unwrap();
    let dp = p.derivative();
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / n as f64 + 0.39;
            let radius = 1.0 + 0.06 * ((j % 5) as f64 + 1.0) / 5.0;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    for _ in 0..MAX_ITERS {
        let mut max_step = 0.0_f64;
        for j in 0..n {
            let pj = p.eval(z[j]);
            if pj.norm() == 0.0 {
                continue;
            }
            let dpj = dp.eval(z[j]);
            let newton = if dpj.norm() > 1e-300 {
                pj / dpj
            } else {
                // stationary point of p; nudge off it
                Complex64::new(1e-3, 1e-3)
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for k in 0..n {
                if k != j {
                    let d = z[j] - z[k];
                    if d.norm() > 1e-300 {
                        repulsion += Complex64::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() > 1e-300 {
                newton / denom
            } else {
                newton
            };
            z[j] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[j].norm()));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    Some(z)
}

fn companion_eigenvalues(p: &Polynomial) -> Option<Vec<Complex64>> {
    let n = p.degree().unwrap();
    let lead = p.leading_coeff().unwrap();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -p.coeff(i) / lead;
    }
    let eig = m.eigenvalues()?;
    Some(eig.iter().copied().collect())
}
