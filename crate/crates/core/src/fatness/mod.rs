//! Sampled certification of local fatness and (α,β)-coverage, plus the
//! closed-form constants that depend on (α,β).
//!
//! Both certifiers report on a finite sample; a passing report is evidence,
//! not a proof.

mod clip;
mod covered;
mod local;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use clip::{clipped_area, clipped_component_area};
pub use covered::{check_alpha_beta_covered, CoveredReport, WitnessTriangle};
pub use local::{check_locally_fat, DiskWitness, LocalFatReport};

/// Angle tolerance used when re-verifying witness triangles.
pub const ANGLE_TOL: f64 = 1e-6;
/// Length tolerance used when re-verifying witness triangles.
pub const LENGTH_TOL: f64 = 1e-9;

pub const DEFAULT_BOUNDARY_SAMPLES: usize = 512;
pub const DEFAULT_CENTERS: usize = 256;
pub const DEFAULT_DIRECTIONS: usize = 64;

/// Minimum triangle angle `alpha` and side fraction `beta` of the diameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FatnessParams {
    pub alpha: f64,
    pub beta: f64,
}

impl FatnessParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let p = FatnessParams { alpha, beta };
        p.check()?;
        Ok(p)
    }

    pub fn check(&self) -> Result<()> {
        // A triangle's smallest angle never exceeds π/3.
        if !(self.alpha > 0.0 && self.alpha <= PI / 3.0 + 1e-12) {
            return Err(Error::InvalidParameter(format!("alpha = {} must lie in (0, pi/3]", self.alpha)));
        }
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(Error::InvalidParameter(format!("beta = {} must lie in (0, 1]", self.beta)));
        }
        Ok(())
    }
}

/// Grid resolution `g` and doubling-constant bound `c` for (α,β)-covered domains:
/// `g = max(⌈48/sin α⌉, ⌈16/(β sin α)⌉)` and `c = (g + 1)²`.
pub fn doubling_bound_formula(params: FatnessParams) -> Result<(u64, f64)> {
    params.check()?;
    let s = params.alpha.sin();
    let a = (48.0 / s).ceil() as u64;
    let b = (16.0 / (params.beta * s)).ceil() as u64;
    let c = ((a + 1).pow(2)).max((b + 1).pow(2));
    Ok((a.max(b), c as f64))
}

/// Incircle radius of the isosceles triangle with legs `t` and apex angle `phi`.
pub fn fat_triangle_incircle(t: f64, phi: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("leg length {t} must be positive")));
    }
    if !(phi > 0.0 && phi < PI) {
        return Err(Error::InvalidParameter(format!("apex angle {phi} must lie in (0, pi)")));
    }
    Ok(t * t * phi.sin() / (2.0 * t * (1.0 + (phi / 2.0).sin())))
}
