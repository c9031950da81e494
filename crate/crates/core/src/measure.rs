//! Atomic measures supported on the unit circle.
//!
//! A measure `mu = sum a_i delta_{zeta_i}` is the data a Dirichlet-type
//! space is built from. Atoms must sit exactly on the circle, so
//! [`UnitCirclePoint`] renormalizes nearby input and rejects anything
//! farther than `OFF_CIRCLE_TOL` from it.

use num_complex::Complex64;
use thiserror::Error;

/// Maximum allowed distance of `|zeta|` from 1 before construction fails.
pub const OFF_CIRCLE_TOL: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum MeasureError {
    #[error("point with |zeta| = {modulus} is not within {OFF_CIRCLE_TOL} of the unit circle")]
    OffCircle { modulus: f64 },
    #[error("atom weight {weight} is not positive")]
    NonPositiveWeight { weight: f64 },
    #[error("nonfinite value in measure data")]
    NonFinite,
}

/// A point on the unit circle, stored with `|zeta| = 1` exactly up to
/// floating point: construction divides by the input modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitCirclePoint {
    zeta: Complex64,
}

impl UnitCirclePoint {
    pub fn new(zeta: Complex64) -> Result<Self, MeasureError> {
        if !(zeta.re.is_finite() && zeta.im.is_finite()) {
            return Err(MeasureError::NonFinite);
        }
        let modulus = zeta.norm();
        if (modulus - 1.0).abs() > OFF_CIRCLE_TOL {
            return Err(MeasureError::OffCircle { modulus });
        }
        Ok(UnitCirclePoint { zeta: zeta / modulus })
    }

    pub fn from_angle(theta: f64) -> Self {
        UnitCirclePoint {
            zeta: Complex64::new(theta.cos(), theta.sin()),
        }
    }

    /// The point `zeta = 1`.
    pub fn one() -> Self {
        UnitCirclePoint {
            zeta: Complex64::new(1.0, 0.0),
        }
    }

    pub fn value(&self) -> Complex64 {
        self.zeta
    }
}

/// One atom `a * delta_zeta` of an atomic measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub zeta: UnitCirclePoint,
    pub weight: f64,
}

/// A finite positive atomic measure on the unit circle. The empty measure is
/// allowed and gives the plain `H^2` norm.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AtomicMeasure {
    atoms: Vec<Atom>,
}

impl AtomicMeasure {
    pub fn empty() -> Self {
        AtomicMeasure { atoms: Vec::new() }
    }

    pub fn new(atoms: Vec<(Complex64, f64)>) -> Result<Self, MeasureError> {
        let mut out = Vec::with_capacity(atoms.len());
        for (zeta, weight) in atoms {
            if !weight.is_finite() {
                return Err(MeasureError::NonFinite);
            }
            if weight <= 0.0 {
                return Err(MeasureError::NonPositiveWeight { weight });
            }
            out.push(Atom {
                zeta: UnitCirclePoint::new(zeta)?,
                weight,
            });
        }
        Ok(AtomicMeasure { atoms: out })
    }

    /// Unit mass at each given point.
    pub fn unit_at(points: &[UnitCirclePoint]) -> Self {
        AtomicMeasure {
            atoms: points
                .iter()
                .map(|&zeta| Atom { zeta, weight: 1.0 })
                .collect(),
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// The measure made of the first `k` atoms, in stored order. `prefix(0)`
    /// is the empty measure; used by induction over atoms.
    pub fn prefix(&self, k: usize) -> AtomicMeasure {
        AtomicMeasure {
            atoms: self.atoms[..k.min(self.atoms.len())].to_vec(),
        }
    }
}
