//! Sub-Laplacian and horizontal gradient, plus the closed-form profile of
//! `r lap_b r` and its Cartesian finite-difference oracle.
//!
//! Conventions: `lap_b = (1/2)(X1^2 + X2^2)` and `T = 2 d/dt`, always. The
//! gradient norm carries a scale choice: `1/2` (the norm with
//! `|grad_b u|^2 = 2 u_1 u_1bar`) or `1` (frame norm making `X1, X2`
//! orthonormal, the norm in which `|grad_b r| = 1`). Every report stamps
//! which one it used.
//!
//! In coordinates,
//!
//! ```text
//! lap_b = (1/2)(d11 + d22) + 2 x2 d1t - 2 x1 d2t + 2 (x1^2 + x2^2) dtt.
//! ```
//!
//! The closed-form polar reduction of `r lap_b r` evaluates to
//! `F(phi) = phi sin^2 phi cos phi / (2 (sin phi - phi cos phi))`; its own
//! series gives `F(0+) = 3/2`, while the stated value next to it is 3. The
//! Cartesian expansion also keeps a first-order radial term the polar
//! reduction drops. This module therefore treats the finite-difference
//! Cartesian operator as ground truth, exposes `F` as the closed-form claim,
//! and leaves the verdict to measurement (see the comparison module).

use crate::ccdist;
use crate::error::{HeisError, Result};
use crate::hgroup::{apply_frame, Point, ScalarField};

/// Scale applied to `(X1 f)^2 + (X2 f)^2` in gradient norms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum GradScale {
    /// `1/2`: matches `|grad_b u|^2 = 2 u_alpha u_alphabar`.
    Paper,
    /// `1`: `X1, X2` orthonormal; the eikonal norm of the distance.
    Frame,
}

impl GradScale {
    pub fn factor(self) -> f64 {
        match self {
            GradScale::Paper => 0.5,
            GradScale::Frame => 1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GradScale::Paper => "1/2",
            GradScale::Frame => "1",
        }
    }
}

/// Operator conventions stamped into reports. The Laplacian and T scales are
/// fixed; only the gradient scale is a genuine choice.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct OperatorConventions {
    pub laplacian_scale: f64,
    pub gradient_scale: GradScale,
    pub t_field_scale: f64,
}

impl OperatorConventions {
    pub fn paper() -> Self {
        OperatorConventions {
            laplacian_scale: 0.5,
            gradient_scale: GradScale::Paper,
            t_field_scale: 2.0,
        }
    }

    pub fn frame() -> Self {
        OperatorConventions {
            laplacian_scale: 0.5,
            gradient_scale: GradScale::Frame,
            t_field_scale: 2.0,
        }
    }
}

/// `lap_b f(p) = (1/2)(X1^2 + X2^2) f(p)`.
pub fn sublap(f: &ScalarField, p: Point) -> Result<f64> {
    let b = apply_frame(f, p)?;
    Ok(0.5 * (b.fe1e1 + b.fe2e2))
}

/// `gradient_scale * ((X1 f)^2 + (X2 f)^2)` at `p`.
pub fn hgrad_sq(f: &ScalarField, p: Point, conventions: OperatorConventions) -> Result<f64> {
    let b = apply_frame(f, p)?;
    Ok(conventions.gradient_scale.factor() * (b.fe1 * b.fe1 + b.fe2 * b.fe2))
}

/// The closed-form claim for `r lap_b r` as a function of the angle
/// parameter: `F(phi) = phi sin^2 phi cos phi / (2 (sin phi - phi cos phi))`
/// on `(0, pi)`. Series limit `3/2` at `0+`, zero at `pi/2` and `pi`.
pub fn sublap_r_closed(phi: f64) -> Result<f64> {
    if !(phi > 0.0 && phi < std::f64::consts::PI) {
        return Err(HeisError::Domain(format!("sublap_r_closed: phi = {phi} outside (0, pi)")));
    }
    if phi < 1e-3 {
        let p2 = phi * phi;
        return Ok(1.5 + p2 * (-11.0 / 10.0 + p2 * (277.0 / 1050.0)));
    }
    let (sn, cs) = phi.sin_cos();
    Ok(phi * sn * sn * cs / (2.0 * (sn - phi * cs)))
}

/// Smallest horizontal radius / distance at which the finite-difference
/// oracle for `lap_b r` is trusted; stencils must not straddle the
/// non-smooth center or axis.
pub const SINGULAR_EXCLUSION: f64 = 0.05;

/// Central-difference sub-Laplacian of an arbitrary scalar function.
///
/// Steps follow the second-order rule `h = max(1, |coord|) eps^(1/4)`.
pub fn fd_sublap(f: &dyn Fn(Point) -> Result<f64>, p: Point) -> Result<f64> {
    let h1 = crate::hgroup::fd::h2(p.x1);
    let h2 = crate::hgroup::fd::h2(p.x2);
    let ht = crate::hgroup::fd::h2(p.t);
    let at = |x1: f64, x2: f64, t: f64| f(Point::new(x1, x2, t));
    let f0 = at(p.x1, p.x2, p.t)?;
    let d11 = (at(p.x1 + h1, p.x2, p.t)? - 2.0 * f0 + at(p.x1 - h1, p.x2, p.t)?) / (h1 * h1);
    let d22 = (at(p.x1, p.x2 + h2, p.t)? - 2.0 * f0 + at(p.x1, p.x2 - h2, p.t)?) / (h2 * h2);
    let dtt = (at(p.x1, p.x2, p.t + ht)? - 2.0 * f0 + at(p.x1, p.x2, p.t - ht)?) / (ht * ht);
    let d1t = (at(p.x1 + h1, p.x2, p.t + ht)? - at(p.x1 + h1, p.x2, p.t - ht)?
        - at(p.x1 - h1, p.x2, p.t + ht)?
        + at(p.x1 - h1, p.x2, p.t - ht)?)
        / (4.0 * h1 * ht);
    let d2t = (at(p.x1, p.x2 + h2, p.t + ht)? - at(p.x1, p.x2 + h2, p.t - ht)?
        - at(p.x1, p.x2 - h2, p.t + ht)?
        + at(p.x1, p.x2 - h2, p.t - ht)?)
        / (4.0 * h2 * ht);
    Ok(0.5 * (d11 + d22) + 2.0 * p.x2 * d1t - 2.0 * p.x1 * d2t
        + 2.0 * (p.x1 * p.x1 + p.x2 * p.x2) * dtt)
}

/// Finite-difference `lap_b r` at `p`; the ground-truth side of every
/// comparison involving the closed-form profile.
pub fn sublap_r_numeric(p: Point) -> Result<f64> {
    let s = p.s();
    let r = ccdist::cc_distance(p)?;
    if s <= SINGULAR_EXCLUSION || r <= SINGULAR_EXCLUSION {
        return Err(HeisError::Precondition(format!(
            "sublap_r_numeric needs s > {SINGULAR_EXCLUSION} and r > {SINGULAR_EXCLUSION}, got s={s}, r={r}"
        )));
    }
    fd_sublap(&|q| ccdist::cc_distance(q), p)
}
