//! Hyperbolic geometry of the unit disc 𝔻.
//!
//! The Poincaré distance is normalized as `ρ(z, w) = artanh |m(z, w)|` where
//! `m` is the Möbius pseudodistance. With this choice the infinitesimal form
//! of `ρ` is exactly `|X| / (1 − |p|²)`.

use num_complex::Complex64;
use thiserror::Error;

/// Denominator modulus below which a Möbius evaluation is considered degenerate.
pub const MOBIUS_DEGENERACY_TOL: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiscError {
    #[error("point {re}{im:+}i is not in the open unit disc (modulus {modulus})")]
    OutsideDisc { re: f64, im: f64, modulus: f64 },
    #[error("degenerate Möbius map: |1 - conj(w) z| = {0:e}")]
    Degenerate(f64),
}

/// A point of the open unit disc. Construction rejects `|z| ≥ 1` and
/// non-finite input; nothing is clamped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitDiscPoint(Complex64);

impl UnitDiscPoint {
    pub fn new(z: Complex64) -> Result<Self, DiscError> {
        let modulus = z.norm();
        if modulus.is_finite() && modulus < 1.0 {
            Ok(UnitDiscPoint(z))
        } else {
            Err(DiscError::OutsideDisc {
                re: z.re,
                im: z.im,
                modulus,
            })
        }
    }

    pub fn real(x: f64) -> Result<Self, DiscError> {
        Self::new(Complex64::new(x, 0.0))
    }

    pub fn origin() -> Self {
        UnitDiscPoint(Complex64::new(0.0, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }
}

/// The disc automorphism `(z − w) / (1 − w̄ z)` sending `w` to the origin.
pub fn mobius(z: UnitDiscPoint, w: UnitDiscPoint) -> Result<UnitDiscPoint, DiscError> {
    let (z, w) = (z.0, w.0);
    let den = Complex64::new(1.0, 0.0) - w.conj() * z;
    if den.norm() < MOBIUS_DEGENERACY_TOL {
        return Err(DiscError::Degenerate(den.norm()));
    }
    UnitDiscPoint::new((z - w) / den)
}

/// Möbius pseudodistance `|z − w| / |1 − w̄ z|`, in `[0, 1)`.
pub fn pseudo_distance(z: UnitDiscPoint, w: UnitDiscPoint) -> f64 {
    let (z, w) = (z.0, w.0);
    let num = (z - w).norm();
    if num == 0.0 {
        return 0.0;
    }
    // |1 - w̄z| ≥ 1 - |w||z| > 0 for points of the open disc.
    (num / (Complex64::new(1.0, 0.0) - w.conj() * z).norm()).min(1.0)
}

/// Poincaré distance `artanh |m(z, w)|`.
pub fn poincare_distance(z: UnitDiscPoint, w: UnitDiscPoint) -> f64 {
    pseudo_distance(z, w).atanh()
}

/// Infinitesimal Poincaré metric `|X| / (1 − |p|²)`.
pub fn poincare_metric(p: UnitDiscPoint, x: Complex64) -> f64 {
    x.norm() / (1.0 - p.0.norm_sqr())
}
