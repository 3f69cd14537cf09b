//! Cutoff construction and the subgradient-estimate laboratory.
//!
//! The cutoff profile is `eta(r) = cos^2(pi (r - R)/(2R))` on `[R, 2R]`,
//! one inside, zero outside. Its derivative bounds
//! `-(C/R) eta^(1/2) <= eta' <= 0` and `|eta''| <= C/R^2` are certified by
//! dense sampling with `C = pi^2` (which dominates both: the first holds
//! already with `C = pi`).
//!
//! The estimate under test, specialized to `n = 1` and stated in the
//! `1/2`-scaled gradient norm: for pseudoharmonic `u > 0` on `B(2R)`,
//!
//! ```text
//! |grad_b u|^2/u^2 + b u0^2/u^2  <  ((6 + 2bk)^2/(5 + 2bk)) (k + 2/b + C2/R)
//! ```
//!
//! on `B(R)`, with `k = 0` here, so the right side is `(36/5)(2/b + C2/R)`.
//! The constant `C2` is existential in the statement; this lab always
//! measures the smallest value making the bound hold and re-uses it across
//! the field catalog rather than trusting any particular number.

use crate::bochner;
use crate::ccdist;
use crate::error::{HeisError, Result};
use crate::hgroup::Point;
use crate::sample;
use crate::sublap::{hgrad_sq, OperatorConventions};
use crate::hgroup::ScalarField;

/// Smooth cutoff profile in the distance variable.
#[derive(Clone, Copy, Debug)]
pub struct CutoffFunction {
    /// Inner radius; the profile is 1 on `[0, R]`, 0 beyond `2R`.
    pub r_inner: f64,
    /// Constant certified for both derivative bounds (`pi^2`).
    pub certified_c: f64,
}

impl CutoffFunction {
    pub fn eta(&self, r: f64) -> f64 {
        let rr = self.r_inner;
        if r <= rr {
            1.0
        } else if r >= 2.0 * rr {
            0.0
        } else {
            let theta = std::f64::consts::PI * (r - rr) / (2.0 * rr);
            theta.cos().powi(2)
        }
    }

    pub fn eta_prime(&self, r: f64) -> f64 {
        let rr = self.r_inner;
        if r <= rr || r >= 2.0 * rr {
            0.0
        } else {
            let theta = std::f64::consts::PI * (r - rr) / (2.0 * rr);
            -(std::f64::consts::PI / rr) * theta.cos() * theta.sin()
        }
    }

    pub fn eta_second(&self, r: f64) -> f64 {
        let rr = self.r_inner;
        if r <= rr || r >= 2.0 * rr {
            0.0
        } else {
            let theta = std::f64::consts::PI * (r - rr) / (2.0 * rr);
            -(std::f64::consts::PI * std::f64::consts::PI / (2.0 * rr * rr)) * (2.0 * theta).cos()
        }
    }
}

/// Number of radii sampled by the cutoff certificate.
pub const CUTOFF_CERT_SAMPLES: usize = 10_000;

/// Build the cutoff and certify its derivative bounds on a dense sample.
pub fn build_cutoff(r_inner: f64) -> Result<CutoffFunction> {
    if !(r_inner > 0.0) {
        return Err(HeisError::Domain(format!("cutoff radius must be > 0, got {r_inner}")));
    }
    let cutoff = CutoffFunction { r_inner, certified_c: std::f64::consts::PI.powi(2) };
    let (ok, worst) = certify_cutoff(&cutoff, CUTOFF_CERT_SAMPLES);
    if !ok {
        return Err(HeisError::Precondition(format!(
            "cutoff certificate failed at r = {worst}"
        )));
    }
    Ok(cutoff)
}

/// Check both derivative inequalities at `samples` radii in `[0, 2.5 R]`.
/// Returns the verdict and the first violating radius if any.
pub fn certify_cutoff(cutoff: &CutoffFunction, samples: usize) -> (bool, f64) {
    let c = cutoff.certified_c;
    let rr = cutoff.r_inner;
    for i in 0..samples {
        let r = 2.5 * rr * (i as f64 + 0.5) / samples as f64;
        let e = cutoff.eta(r);
        let ep = cutoff.eta_prime(r);
        let epp = cutoff.eta_second(r);
        let lower = -(c / rr) * e.sqrt();
        if !(ep <= 1e-15 && ep >= lower - 1e-12) {
            return (false, r);
        }
        if epp.abs() > c / (rr * rr) + 1e-12 {
            return (false, r);
        }
    }
    (true, f64::NAN)
}

/// Parameters of the estimate. `n`, `k`, `k1` are carried explicitly even
/// though they are pinned to `1, 0, 0` on this group.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct EstimateParams {
    pub n: u32,
    pub k: f64,
    pub k1: f64,
    pub b: f64,
    pub c2: f64,
    pub radius: f64,
}

impl EstimateParams {
    pub fn flat(b: f64, c2: f64, radius: f64) -> Result<Self> {
        if !(b > 0.0 && radius > 0.0 && c2 >= 0.0) {
            return Err(HeisError::Domain(format!(
                "need b > 0, R > 0, C2 >= 0; got b={b}, R={radius}, C2={c2}"
            )));
        }
        Ok(EstimateParams { n: 1, k: 0.0, k1: 0.0, b, c2, radius })
    }

    /// Right side `((n+5+2bk)^2/(5+2bk)) (k + 2/b + C2/R)`.
    pub fn bound(&self) -> f64 {
        let n = self.n as f64;
        let top = n + 5.0 + 2.0 * self.b * self.k;
        top * top / (5.0 + 2.0 * self.b * self.k)
            * (self.k + 2.0 / self.b + self.c2 / self.radius)
    }
}

/// `|grad_b u|^2/u^2 + b u0^2/u^2` at `p`, in the `1/2` gradient norm.
pub fn gradient_ratio(u: &ScalarField, p: Point, b: f64) -> Result<f64> {
    let val = u.eval(p);
    if !(val > 0.0) {
        return Err(HeisError::NotPositive { name: u.name().to_string(), value: val, point: p });
    }
    let grad = hgrad_sq(u, p, OperatorConventions::paper())?;
    let bundle = crate::hgroup::apply_frame(u, p)?;
    Ok((grad + b * bundle.f0 * bundle.f0) / (val * val))
}

/// Verdict of one estimate evaluation.
#[derive(Clone, Debug)]
pub struct EstimateReport {
    pub sup_ratio: f64,
    pub bound: f64,
    pub argmax_point: Point,
    pub margin: f64,
    pub grid_size: usize,
}

/// Normalized pseudoharmonicity tolerance demanded of estimate subjects.
pub const PHARM_TOL: f64 = 1e-8;

/// Sup of the gradient ratio over a seeded CC-ball grid.
///
/// Preconditions checked on a `B(2R)` sample: positivity of `u` and
/// pseudoharmonicity (`pharm_check` at the catalog tolerance). Points with
/// `r <= R` from the same sample feed the supremum.
pub fn verify_gradient_estimate(
    u: &ScalarField,
    params: &EstimateParams,
    seed: u64,
    count: usize,
) -> Result<EstimateReport> {
    let outer = sample::ball_grid(seed, count, 2.0 * params.radius)?;
    for &p in &outer {
        let v = u.eval(p);
        if !(v > 0.0) {
            return Err(HeisError::NotPositive {
                name: u.name().to_string(),
                value: v,
                point: p,
            });
        }
    }
    let chk = bochner::pharm_check(u, &outer, PHARM_TOL)?;
    if !chk.pass {
        return Err(HeisError::Precondition(format!(
            "field {} is not pseudoharmonic on the sample: normalized sup |lap_b u| = {:e} at {:?}",
            u.name(),
            chk.normalized,
            chk.worst_point
        )));
    }
    let mut sup_ratio = f64::NEG_INFINITY;
    let mut argmax = outer[0];
    let mut inside = 0usize;
    for &p in &outer {
        if ccdist::cc_distance(p)? > params.radius {
            continue;
        }
        inside += 1;
        let ratio = gradient_ratio(u, p, params.b)?;
        if ratio > sup_ratio {
            sup_ratio = ratio;
            argmax = p;
        }
    }
    if inside == 0 {
        return Err(HeisError::Precondition("no sample points landed inside B(R)".into()));
    }
    let bound = params.bound();
    Ok(EstimateReport { sup_ratio, bound, argmax_point: argmax, margin: bound - sup_ratio, grid_size: inside })
}

/// Minimal `C2 >= 0` making the bound hold for every radius in `radii`.
///
/// For `k = 0` the bound is linear in `C2`, so the minimum is the largest
/// `R (5/36) sup_ratio(R) - 2R/b` over the radii, floored at zero; a relative
/// headroom of 1e-9 keeps the strict inequality. Infinite when a sup
/// diverges (it cannot for positive analytic fields).
pub fn calibrate_c2(
    u: &ScalarField,
    b: f64,
    radii: &[f64],
    seed: u64,
    count: usize,
) -> Result<f64> {
    let mut c2 = 0.0f64;
    for &radius in radii {
        let params = EstimateParams::flat(b, 0.0, radius)?;
        let rep = verify_gradient_estimate(u, &params, seed, count)?;
        if !rep.sup_ratio.is_finite() {
            return Ok(f64::INFINITY);
        }
        let need = radius * ((5.0 / 36.0) * rep.sup_ratio - 2.0 / b);
        c2 = c2.max(need);
    }
    Ok(if c2 > 0.0 { c2 * (1.0 + 1e-9) } else { 0.0 })
}

/// The auxiliary functional
/// `F(p, t, R, b) = t (|grad_b f|^2(p) + b t eta(r(p)) f0^2(p))`, `f = ln u`.
pub fn aux_functional(
    u: &ScalarField,
    p: Point,
    t_param: f64,
    radius: f64,
    b: f64,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&t_param) {
        return Err(HeisError::Domain(format!("t parameter {t_param} outside [0, 1]")));
    }
    let val = u.eval(p);
    if !(val > 0.0) {
        return Err(HeisError::NotPositive { name: u.name().to_string(), value: val, point: p });
    }
    let cutoff = build_cutoff(radius)?;
    let jet = u.jet_or_fd(p)?;
    let f_jet = jet.ln();
    let fb = crate::hgroup::bundle_from_jet(&f_jet, p);
    let grad_sq = 0.5 * (fb.fe1 * fb.fe1 + fb.fe2 * fb.fe2);
    let r = ccdist::cc_distance(p)?;
    Ok(t_param * (grad_sq + b * t_param * cutoff.eta(r) * fb.f0 * fb.f0))
}

/// One row of the Liouville trend probe.
#[derive(Clone, Debug)]
pub struct LiouvilleRow {
    pub radius: f64,
    /// Sup of the gradient ratio on `B(R)`, when positivity held there.
    pub sup_ratio: Option<f64>,
    /// Number of sampled points where positivity failed.
    pub positivity_failures: usize,
    pub first_failure: Option<Point>,
}

/// Table of sup ratios versus radius. The Liouville mechanism predicts the
/// ratios sink to zero as `R` then `b` grow, for globally positive
/// pseudoharmonic fields; no nonconstant such field exists on this group
/// (that is the theorem), so probes use locally-positive fields and the
/// rows document exactly where positivity gives out.
pub fn liouville_probe(
    u: &ScalarField,
    radii: &[f64],
    b: f64,
    seed: u64,
    count: usize,
) -> Result<Vec<LiouvilleRow>> {
    let mut rows = Vec::with_capacity(radii.len());
    for &radius in radii {
        let grid = sample::ball_grid(seed, count, radius)?;
        let mut failures = 0usize;
        let mut first_failure = None;
        let mut sup: f64 = 0.0;
        let mut sup_valid = true;
        for &p in &grid {
            if !(u.eval(p) > 0.0) {
                failures += 1;
                if first_failure.is_none() {
                    first_failure = Some(p);
                }
                sup_valid = false;
                continue;
            }
            sup = sup.max(gradient_ratio(u, p, b)?);
        }
        rows.push(LiouvilleRow {
            radius,
            sup_ratio: if sup_valid { Some(sup) } else { None },
            positivity_failures: failures,
            first_failure,
        });
    }
    Ok(rows)
}
