//! Adaptive polar quadrature for the local Dirichlet area integral.
//!
//! The integrand |p'(z)|^2 (1-|z|^2)/|zeta-z|^2 blows up near the boundary
//! point zeta, so cells are split greedily where a 5x5 vs 3x3 Gauss-Legendre
//! comparison reports the largest error. The angular domain is centered on
//! zeta's angle so the singular corner lands on cell edges after the first
//! split rather than inside a cell.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::poly::Polynomial;

/// Hard cap on the number of cells before giving up.
pub const CELL_CAP: usize = 1 << 24;

const GL3_X: [f64; 3] = [-0.7745966692414834, 0.0, 0.7745966692414834];
const GL3_W: [f64; 3] = [
    0.5555555555555556,
    0.8888888888888888,
    0.5555555555555556,
];
const GL5_X: [f64; 5] = [
    -0.906179845938664,
    -0.5384693101056831,
    0.0,
    0.5384693101056831,
    0.906179845938664,
];
const GL5_W: [f64; 5] = [
    0.23692688505618908,
    0.47862867049936647,
    0.5688888888888889,
    0.47862867049936647,
    0.23692688505618908,
];

/// Area integral of |p'|^2 (1-|z|^2)/|zeta-z|^2 over the disk with
/// normalized area measure dA = dx dy / pi, to absolute accuracy `tol`.
/// Returns Err((best, err)) if the cell cap is hit first, carrying the best
/// estimate and its error estimate.
pub fn dirichlet_integral(
    p: &Polynomial,
    zeta: Complex64,
    tol: f64,
) -> Result<f64, (f64, f64)> {
    integrate_with_cap(p, zeta, tol, CELL_CAP)
}

pub(crate) fn integrate_with_cap(
    p: &Polynomial,
    zeta: Complex64,
    tol: f64,
    cell_cap: usize,
) -> Result<f64, (f64, f64)> {
    let dp = p.derivative();
    if dp.is_zero() {
        return Ok(0.0);
    }
    let theta0 = zeta.im.atan2(zeta.re);
    let integrand = move |r: f64, theta: f64| -> f64 {
        let z = Complex64::from_polar(r, theta);
        let dist_sq = (zeta - z).norm_sqr();
        if dist_sq < 1e-300 {
            return 0.0;
        }
        dp.eval(z).norm_sqr() * (1.0 - r * r) / dist_sq * r / PI
    };

    let mut heap: BinaryHeap<Cell> = BinaryHeap::new();
    let mut counter = 0usize;
    let mut push = |heap: &mut BinaryHeap<Cell>, r0: f64, r1: f64, t0: f64, t1: f64| -> f64 {
        let (value, error) = estimate(&integrand, r0, r1, t0, t1);
        counter += 1;
        heap.push(Cell {
            r0,
            r1,
            t0,
            t1,
            value,
            error,
            order: counter,
        });
        error
    };

    let mut total_error = push(&mut heap, 0.0, 1.0, theta0 - PI, theta0 + PI);
    let mut splits = 0usize;
    loop {
        if total_error <= 0.5 * tol {
            return Ok(heap.iter().map(|c| c.value).sum());
        }
        if heap.len() + 3 > cell_cap {
            let best = heap.iter().map(|c| c.value).sum();
            return Err((best, total_error));
        }
        let worst = heap.pop().expect("heap starts nonempty");
        total_error -= worst.error;
        let rm = 0.5 * (worst.r0 + worst.r1);
        let tm = 0.5 * (worst.t0 + worst.t1);
        total_error += push(&mut heap, worst.r0, rm, worst.t0, tm);
        total_error += push(&mut heap, worst.r0, rm, tm, worst.t1);
        total_error += push(&mut heap, rm, worst.r1, worst.t0, tm);
        total_error += push(&mut heap, rm, worst.r1, tm, worst.t1);
        total_error = total_error.max(0.0);
        splits += 1;
        // refresh the running sum occasionally; incremental updates drift
        if splits.is_multiple_of(1024) {
            total_error = heap.iter().map(|c| c.error).sum();
        }
    }
}

struct Cell {
    r0: f64,
    r1: f64,
    t0: f64,
    t1: f64,
    value: f64,
    error: f64,
    order: usize,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.order == other.order
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap on error; break ties by insertion order for determinism
        self.error
            .total_cmp(&other.error)
            .then(other.order.cmp(&self.order))
    }
}

fn estimate(f: &impl Fn(f64, f64) -> f64, r0: f64, r1: f64, t0: f64, t1: f64) -> (f64, f64) {
    let fine = gauss_2d(f, r0, r1, t0, t1, &GL5_X, &GL5_W);
    let coarse = gauss_2d(f, r0, r1, t0, t1, &GL3_X, &GL3_W);
    (fine, (fine - coarse).abs())
}

fn gauss_2d(
    f: &impl Fn(f64, f64) -> f64,
    r0: f64,
    r1: f64,
    t0: f64,
    t1: f64,
    xs: &[f64],
    ws: &[f64],
) -> f64 {
    let rc = 0.5 * (r0 + r1);
    let rh = 0.5 * (r1 - r0);
    let tc = 0.5 * (t0 + t1);
    let th = 0.5 * (t1 - t0);
    let mut acc = 0.0;
    for (i, &xi) in xs.iter().enumerate() {
        let r = rc + rh * xi;
        for (j, &xj) in xs.iter().enumerate() {
            let t = tc + th * xj;
            acc += ws[i] * ws[j] * f(r, t);
        }
    }
    acc * rh * th
}
