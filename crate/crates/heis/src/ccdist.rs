//! Closed-form Carnot-Caratheodory distance from the origin.
//!
//! With `s = ||x||` and `u = |t|/s^2`, the distance is `r = g(phi) s` where
//! `g(phi) = phi/sin(phi)` and `phi` in `[0, pi)` solves `mu(phi) s^2 = |t|`
//! for the strictly increasing
//!
//! ```text
//! mu(phi) = (phi - sin phi cos phi) / sin^2 phi.
//! ```
//!
//! An equivalent form is `r^2 = nu(phi) (|t| + s^2)` with
//! `nu(z) = z^2 / (z + sin^2 z - sin z cos z)`; both are computed and their
//! agreement is asserted. On the center axis (`s = 0`) the limit is
//! `r = sqrt(pi |t|)`.
//!
//! The t-derivatives reduce to exact trigonometric expressions in `phi`:
//! `dr/dt = sign(t) sin(phi) / (2s)` and
//! `d2r/dt2 = (1/4) r^-3 phi^3 cos(phi) / (sin phi - phi cos phi)`,
//! equivalently `dr/ds = cos(phi)`, which gives the unit frame-norm gradient
//! `(X1 r)^2 + (X2 r)^2 = 1` away from the center and axis.

use crate::error::{HeisError, Result};
use crate::hgroup::{group_inv, group_mul, Point};

/// Below this angle the 0/0 closed forms switch to their Taylor series.
const PHI_SERIES_CUT: f64 = 1e-3;
/// Above this value of `u = |t|/s^2` the root solve runs in `eps = pi - phi`,
/// seeded by the asymptotic `sin(phi) ~ sqrt(pi/|t|) s`.
const U_ASYMPTOTIC: f64 = 1e4;
/// Absolute residual tolerance on `mu(phi) s^2 - |t|`, scaled by `max(1, |t|)`.
const ROOT_TOL: f64 = 1e-12;
/// Iteration cap for bracketing plus polishing.
const MAX_ITERS: usize = 200;
/// Points with `0 < s < AXIS_EPS` are treated by the axis limit.
const AXIS_EPS: f64 = 1e-12;

/// `mu(phi) = (phi - sin phi cos phi)/sin^2 phi`, strictly increasing on
/// `[0, pi)` with `mu(0) = 0` and a `pi/sin^2 phi` blow-up at `pi`.
pub fn mu(phi: f64) -> Result<f64> {
    if !(0.0..std::f64::consts::PI).contains(&phi) {
        return Err(HeisError::Domain(format!("mu: phi = {phi} outside [0, pi)")));
    }
    Ok(mu_unchecked(phi))
}

fn mu_unchecked(phi: f64) -> f64 {
    if phi < PHI_SERIES_CUT {
        let p2 = phi * phi;
        phi * (2.0 / 3.0 + p2 * (4.0 / 45.0 + p2 * (4.0 / 315.0 + p2 * (8.0 / 4725.0))))
    } else {
        let (sn, cs) = phi.sin_cos();
        (phi - sn * cs) / (sn * sn)
    }
}

/// `mu'(phi) = 2 csc^2(phi) (1 - phi cot phi)`.
pub fn mu_prime(phi: f64) -> f64 {
    if phi < PHI_SERIES_CUT {
        let p2 = phi * phi;
        2.0 / 3.0 + p2 * (4.0 / 15.0 + p2 * (4.0 / 63.0 + p2 * (8.0 / 675.0)))
    } else {
        let (sn, cs) = phi.sin_cos();
        2.0 * (1.0 - phi * cs / sn) / (sn * sn)
    }
}

/// `nu(z) = z^2/(z + sin^2 z - sin z cos z)` on `[0, pi]`, with the
/// continuous limit `nu(0) = 1`.
pub fn nu(z: f64) -> Result<f64> {
    if !(0.0..=std::f64::consts::PI).contains(&z) {
        return Err(HeisError::Domain(format!("nu: z = {z} outside [0, pi]")));
    }
    if z < PHI_SERIES_CUT {
        return Ok(1.0
            + z * (-2.0 / 3.0
                + z * (7.0 / 9.0
                    + z * (-82.0 / 135.0
                        + z * (43.0 / 81.0
                            + z * (-3706.0 / 8505.0 + z * (46378.0 / 127575.0)))))));
    }
    let (sn, cs) = z.sin_cos();
    Ok(z * z / (z + sn * sn - sn * cs))
}

/// `g(phi) = phi / sin phi`.
pub fn g_profile(phi: f64) -> f64 {
    if phi == 0.0 {
        1.0
    } else {
        phi / phi.sin()
    }
}

/// `g'(phi) = (sin phi - phi cos phi)/sin^2 phi`.
pub fn g_profile_prime(phi: f64) -> f64 {
    if phi < PHI_SERIES_CUT {
        let p2 = phi * phi;
        phi * (1.0 / 3.0 + p2 * (7.0 / 90.0 + p2 * (31.0 / 2520.0 + p2 * (127.0 / 75600.0))))
    } else {
        let (sn, cs) = phi.sin_cos();
        (sn - phi * cs) / (sn * sn)
    }
}

/// `phi^3 cos phi / (sin phi - phi cos phi)`; the shape factor of
/// `d2r/dt2 = (1/4) r^-3 * q(phi)`. `q(0) = 3`, `q(pi) = -pi^2`.
pub fn rtt_factor(phi: f64) -> f64 {
    if phi < PHI_SERIES_CUT {
        let p2 = phi * phi;
        3.0 - p2 * (6.0 / 5.0 + p2 * (1.0 / 175.0 + p2 * (2.0 / 7875.0)))
    } else {
        let (sn, cs) = phi.sin_cos();
        phi * phi * phi * cs / (sn - phi * cs)
    }
}

/// Solved angle parameter with accurate trigonometric values.
///
/// `sin_phi`/`cos_phi` are carried separately because near `phi = pi` they
/// hold more information than `phi` itself (the solve runs in `pi - phi`
/// there, keeping full relative precision).
#[derive(Clone, Copy, Debug)]
pub struct PhiSolution {
    pub phi: f64,
    pub sin_phi: f64,
    pub cos_phi: f64,
    pub u: f64,
    pub s: f64,
    pub t: f64,
    pub r: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Solve `mu(phi) s^2 = |t|` for `phi` in `[0, pi)`.
///
/// Bisection on the monotone `mu` bracketed in `[0, pi - 1e-3]`, polished by
/// Newton with `mu'`. For `u > 1e4` the solve switches to the reflected
/// variable `eps = pi - phi` seeded by `sin(phi) ~ sqrt(pi/|t|) s`.
pub fn solve_phi(s: f64, t: f64) -> Result<PhiSolution> {
    if !(s.is_finite() && t.is_finite()) || s < 0.0 {
        return Err(HeisError::Domain(format!("solve_phi: bad inputs s={s}, t={t}")));
    }
    if s == 0.0 && t == 0.0 {
        return Err(HeisError::Degenerate("solve_phi at the group identity".into()));
    }
    if s == 0.0 {
        return Err(HeisError::OnAxis);
    }
    let ta = t.abs();
    let u = ta / (s * s);
    if ta == 0.0 {
        return Ok(PhiSolution {
            phi: 0.0,
            sin_phi: 0.0,
            cos_phi: 1.0,
            u,
            s,
            t,
            r: s,
            residual: 0.0,
            iterations: 0,
        });
    }
    // the residual tolerance is scaled to the equation's own magnitude so
    // that the solved angle supports 1e-10-relative distance agreement even
    // when both s^2 and |t| are tiny; Newton below polishes all the way to
    // the floating-point floor and this only gates the error return
    let s2 = s * s;
    let tol = ROOT_TOL * ta.max(s2);

    if u > U_ASYMPTOTIC {
        // reflected solve: mu(pi - eps) = (pi - eps + sin eps cos eps)/sin^2 eps
        let mu_eps = |e: f64| {
            let (sn, cs) = e.sin_cos();
            (std::f64::consts::PI - e + sn * cs) / (sn * sn)
        };
        let mut e = (std::f64::consts::PI / u).sqrt().min(1.0).asin();
        let mut iterations = 0usize;
        let mut best_e = e;
        let mut best_res = f64::INFINITY;
        let mut stall = 0usize;
        while iterations < MAX_ITERS {
            iterations += 1;
            let h = mu_eps(e) * s2 - ta;
            let res = h.abs();
            if res < best_res {
                best_res = res;
                best_e = e;
                stall = 0;
            } else {
                stall += 1;
                if stall >= 3 {
                    break;
                }
            }
            if res == 0.0 {
                break;
            }
            let (sn, cs) = e.sin_cos();
            let phi = std::f64::consts::PI - e;
            // d mu/d eps = -mu'(phi), evaluated in the reflected variables
            let dmu = -2.0 * (1.0 + phi * cs / sn) / (sn * sn);
            let step = h / (dmu * s2);
            let next = e - step;
            let next = if next > 0.0 && next < 0.5 { next } else { 0.5 * e };
            if next == e {
                break;
            }
            e = next;
        }
        if best_res > tol {
            return Err(HeisError::NoConvergence { iterations, s, t, residual: best_res });
        }
        let (sn, cs) = best_e.sin_cos();
        let phi = std::f64::consts::PI - best_e;
        let r = phi / sn * s;
        return Ok(PhiSolution {
            phi,
            sin_phi: sn,
            cos_phi: -cs,
            u,
            s,
            t,
            r,
            residual: best_res,
            iterations,
        });
    }

    // bracketed bisection, then Newton polished to the floating-point floor
    let mut lo = 0.0f64;
    let mut hi = std::f64::consts::PI - PHI_SERIES_CUT;
    debug_assert!(mu_unchecked(hi) * s2 >= ta);
    let mut iterations = 0usize;
    while iterations < 60 && (hi - lo) > 1e-6 {
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        if mu_unchecked(mid) * s2 < ta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut phi = 0.5 * (lo + hi);
    let mut best_phi = phi;
    let mut best_res = f64::INFINITY;
    let mut stall = 0usize;
    while iterations < MAX_ITERS {
        iterations += 1;
        let h = mu_unchecked(phi) * s2 - ta;
        let res = h.abs();
        if res < best_res {
            best_res = res;
            best_phi = phi;
            stall = 0;
        } else {
            stall += 1;
            if stall >= 3 {
                break;
            }
        }
        if res == 0.0 {
            break;
        }
        let step = h / (mu_prime(phi) * s2);
        let next = phi - step;
        let next = if next > lo && next < hi {
            next
        } else {
            // fall back to the bracket midpoint if Newton escapes
            if h > 0.0 {
                hi = phi;
            } else {
                lo = phi;
            }
            0.5 * (lo + hi)
        };
        if next == phi {
            break;
        }
        phi = next;
    }
    if best_res > tol {
        return Err(HeisError::NoConvergence { iterations, s, t, residual: best_res });
    }
    let phi = best_phi;
    let (sn, cs) = phi.sin_cos();
    let r = g_profile(phi) * s;
    Ok(PhiSolution { phi, sin_phi: sn, cos_phi: cs, u, s, t, r, residual: best_res, iterations })
}

/// Everything `cc_distance` knows about a point.
#[derive(Clone, Copy, Debug)]
pub struct DistanceInfo {
    pub r: f64,
    /// `None` on the axis and at the origin.
    pub phi: Option<PhiSolution>,
    /// The `sqrt(nu (|t| + s^2))` route; equals `r` to 1e-10 relative.
    pub r_alt: f64,
    /// Relative gap between the two routes.
    pub gap: f64,
    /// True when the axis limit `sqrt(pi |t|)` was used.
    pub axis_limit: bool,
}

/// Distance from the origin together with the cross-checked alternative form.
pub fn cc_distance_full(p: Point) -> Result<DistanceInfo> {
    if !p.is_finite() {
        return Err(HeisError::Domain("cc_distance: non-finite point".into()));
    }
    let s = p.s();
    let ta = p.t.abs();
    if s == 0.0 && ta == 0.0 {
        return Ok(DistanceInfo { r: 0.0, phi: None, r_alt: 0.0, gap: 0.0, axis_limit: false });
    }
    if s < AXIS_EPS {
        let r = (std::f64::consts::PI * ta).sqrt();
        return Ok(DistanceInfo { r, phi: None, r_alt: r, gap: 0.0, axis_limit: true });
    }
    let sol = solve_phi(s, p.t)?;
    let r = sol.r;
    let nu_val = if sol.phi < PHI_SERIES_CUT {
        nu(sol.phi)?
    } else {
        // reuse the solved trig values so the route stays accurate near pi
        sol.phi * sol.phi / (sol.phi + sol.sin_phi * sol.sin_phi - sol.sin_phi * sol.cos_phi)
    };
    let r_alt = (nu_val * (ta + s * s)).sqrt();
    let gap = (r - r_alt).abs() / r.max(f64::MIN_POSITIVE);
    assert!(
        gap <= 1e-10,
        "closed-form route disagreement: r={r}, alt={r_alt}, gap={gap:e} at {p:?}"
    );
    Ok(DistanceInfo { r, phi: Some(sol), r_alt, gap, axis_limit: false })
}

/// Carnot-Caratheodory distance from the origin.
pub fn cc_distance(p: Point) -> Result<f64> {
    Ok(cc_distance_full(p)?.r)
}

/// Distance between arbitrary points via left-invariance:
/// `d(p, q) = r(q^-1 o p)`.
pub fn cc_distance_between(p: Point, q: Point) -> Result<f64> {
    cc_distance(group_mul(group_inv(q), p))
}

/// Analytic t-derivatives of the distance at a point off the axis.
#[derive(Clone, Copy, Debug)]
pub struct DistanceDerivatives {
    pub r: f64,
    /// `dr/dt`
    pub r_t: f64,
    /// `d2r/dt2`
    pub r_tt: f64,
    /// `Tr = 2 dr/dt`
    pub r0: f64,
    /// `TTr = 4 d2r/dt2`
    pub r00: f64,
}

/// `dr/dt = sign(t) sin(phi)/(2s)` and
/// `d2r/dt2 = (1/4) r^-3 phi^3 cos(phi)/(sin phi - phi cos phi)`.
pub fn distance_derivatives(p: Point) -> Result<DistanceDerivatives> {
    let s = p.s();
    if s < AXIS_EPS {
        return Err(HeisError::OnAxis);
    }
    if p.t == 0.0 {
        let r = s;
        let r_tt = 0.75 / (s * s * s);
        return Ok(DistanceDerivatives { r, r_t: 0.0, r_tt, r0: 0.0, r00: 4.0 * r_tt });
    }
    let sol = solve_phi(s, p.t)?;
    let r = sol.r;
    let r_t = p.t.signum() * sol.sin_phi / (2.0 * s);
    let q = if sol.phi < PHI_SERIES_CUT {
        rtt_factor(sol.phi)
    } else {
        sol.phi * sol.phi * sol.phi * sol.cos_phi / (sol.sin_phi - sol.phi * sol.cos_phi)
    };
    let r_tt = 0.25 * q / (r * r * r);
    Ok(DistanceDerivatives { r, r_t, r_tt, r0: 2.0 * r_t, r00: 4.0 * r_tt })
}

/// `dr/ds = cos(phi)`; radial derivative of the distance in the horizontal
/// plane. Used by the comparison laboratory.
pub fn radial_derivative(p: Point) -> Result<f64> {
    let s = p.s();
    if s < AXIS_EPS {
        return Err(HeisError::OnAxis);
    }
    if p.t == 0.0 {
        return Ok(1.0);
    }
    Ok(solve_phi(s, p.t)?.cos_phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn mu_anchor_values() {
        assert_eq!(mu(0.0).unwrap(), 0.0);
        assert!((mu(PI / 2.0).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!(mu(PI).is_err());
        assert!(mu(-0.1).is_err());
        // blow-up on [3.0, pi)
        let mut prev = mu(3.0).unwrap();
        for k in 1..=6 {
            let phi = PI - (PI - 3.0) / 10f64.powi(k);
            let v = mu(phi).unwrap();
            assert!(v > prev);
            prev = v;
        }
        assert!(prev > 1e10);
    }

    #[test]
    fn mu_series_matches_direct_form() {
        // both branches agree around the switch point
        for phi in [5e-4, 9e-4, 1.1e-3, 2e-3] {
            let series = {
                let p2: f64 = phi * phi;
                phi * (2.0 / 3.0 + p2 * (4.0 / 45.0 + p2 * (4.0 / 315.0 + p2 * (8.0 / 4725.0))))
            };
            let (sn, cs) = f64::sin_cos(phi);
            let direct = (phi - sn * cs) / (sn * sn);
            assert!(
                (series - direct).abs() <= 1e-9 * direct,
                "phi={phi}: series {series} vs direct {direct}"
            );
        }
    }

    #[test]
    fn mu_strictly_increasing_on_samples() {
        let n = 2000;
        let hi = PI - 1e-3;
        let mut prev = -1.0;
        for i in 0..=n {
            let phi = hi * i as f64 / n as f64;
            let v = mu(phi).unwrap();
            assert!(v > prev || i == 0, "mu not increasing at phi={phi}");
            prev = v;
        }
    }

    #[test]
    fn nu_anchor_values() {
        // the displayed formula tends to 1 at 0, not the stated 2; the
        // consistency relation nu(phi)(1 + mu(phi)) = g(phi)^2 forces 1
        assert!((nu(0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((nu(PI).unwrap() - PI).abs() < 1e-13);
        let expect = (PI / 2.0) * (PI / 2.0) / (PI / 2.0 + 1.0);
        assert!((nu(PI / 2.0).unwrap() - expect).abs() < 1e-15);
        assert!(nu(PI + 0.1).is_err());
        // consistency: nu (1 + mu) = g^2 across the range
        for i in 1..100 {
            let z = PI * i as f64 / 100.0 - 1e-9;
            let lhs = nu(z).unwrap() * (1.0 + mu(z).unwrap());
            let g2 = g_profile(z) * g_profile(z);
            assert!((lhs - g2).abs() < 1e-10 * g2, "z={z}");
        }
    }

    #[test]
    fn solve_phi_bisection_oracle() {
        // independent oracle: plain bisection for mu(phi) = 1 on (1.0, 1.3)
        let (mut lo, mut hi) = (1.0f64, 1.3f64);
        assert!(mu(lo).unwrap() < 1.0 && mu(hi).unwrap() > 1.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if mu(mid).unwrap() < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let oracle = 0.5 * (lo + hi);
        let sol = solve_phi(1.0, 1.0).unwrap();
        assert!((sol.phi - oracle).abs() < 1e-10);
        assert!((mu(sol.phi).unwrap() - 1.0).abs() <= 1e-12);
        assert!(sol.residual <= 1e-12);
    }

    #[test]
    fn solve_phi_degenerate_and_axis_cases() {
        assert!(matches!(solve_phi(0.0, 0.0), Err(HeisError::Degenerate(_))));
        assert!(matches!(solve_phi(0.0, 1.0), Err(HeisError::OnAxis)));
        let sol = solve_phi(2.5, 0.0).unwrap();
        assert_eq!(sol.phi, 0.0);
        assert_eq!(sol.r, 2.5);
    }

    #[test]
    fn solve_phi_asymptotic_regime() {
        // sin(phi) ~ sqrt(pi/t) s as u -> infinity
        for (s, t) in [(1e-3, 1.0), (1e-5, 1.0), (1e-3, 1e6), (1e-8, 2.0)] {
            let sol = solve_phi(s, t).unwrap();
            let predicted = (PI / t).sqrt() * s;
            assert!(
                (sol.sin_phi - predicted).abs() < 0.01 * predicted,
                "s={s}, t={t}: sin_phi={} vs {predicted}",
                sol.sin_phi
            );
            assert!(sol.residual <= 1e-12 * t.max(1.0));
            assert!(sol.phi < PI);
        }
    }

    #[test]
    fn distance_anchor_values() {
        assert!((cc_distance(Point::new(3.0, 4.0, 0.0)).unwrap() - 5.0).abs() < 1e-14);
        let axis = cc_distance(Point::new(0.0, 0.0, 1.0)).unwrap();
        assert!((axis - PI.sqrt()).abs() < 1e-14);
        assert_eq!(cc_distance(Point::ORIGIN).unwrap(), 0.0);
    }

    #[test]
    fn distance_between_symmetry_and_triangle() {
        let pts = [
            Point::new(0.3, -0.8, 1.1),
            Point::new(-1.0, 0.2, -0.4),
            Point::new(2.0, 1.5, 3.0),
        ];
        for &p in &pts {
            assert_eq!(cc_distance_between(p, p).unwrap(), 0.0);
            for &q in &pts {
                let d1 = cc_distance_between(p, q).unwrap();
                let d2 = cc_distance_between(q, p).unwrap();
                assert!((d1 - d2).abs() <= 1e-12 * d1.max(1.0), "asymmetry {d1} vs {d2}");
            }
        }
        // d(0, p o q) <= d(0, p) + d(0, q)
        for &p in &pts {
            for &q in &pts {
                let lhs = cc_distance(group_mul(p, q)).unwrap();
                let rhs = cc_distance(p).unwrap() + cc_distance(q).unwrap();
                assert!(lhs <= rhs + 1e-12, "triangle violated: {lhs} > {rhs}");
            }
        }
    }

    #[test]
    fn derivative_identities_match_quotient_forms() {
        // dr/dt as sign(t) g'(phi)/(s mu'(phi)) equals sin(phi)/(2s) exactly
        for (s, t) in [(1.0, 0.7), (0.5, -2.0), (2.0, 0.01), (0.2, 5.0)] {
            let sol = solve_phi(s, t).unwrap();
            let d = distance_derivatives(Point::new(s, 0.0, t)).unwrap();
            let quotient = t.signum() * g_profile_prime(sol.phi) / (s * mu_prime(sol.phi));
            assert!(
                (d.r_t - quotient).abs() <= 1e-10 * quotient.abs().max(1e-300),
                "s={s} t={t}: {} vs {quotient}",
                d.r_t
            );
            // r * dr/dt = sign(t) phi / 2 exactly
            assert!((d.r * d.r_t - t.signum() * sol.phi / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn derivatives_at_t_zero() {
        let d = distance_derivatives(Point::new(2.0, 0.0, 0.0)).unwrap();
        assert_eq!(d.r_t, 0.0);
        assert!((d.r_tt - 0.75 / 8.0).abs() < 1e-15);
        assert!(matches!(distance_derivatives(Point::new(0.0, 0.0, 1.0)), Err(HeisError::OnAxis)));
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for (x1, x2, t) in [(1.0, 0.5, 0.8), (0.6, -0.3, -2.0), (3.0, 0.0, 10.0)] {
            let p = Point::new(x1, x2, t);
            let d = distance_derivatives(p).unwrap();
            // steps scale parabolically with the point (s^2 + |t| ~ r^2)
            let scale = x1 * x1 + x2 * x2 + t.abs();
            let h1 = 5e-6 * scale;
            let rp1 = cc_distance(Point::new(x1, x2, t + h1)).unwrap();
            let rm1 = cc_distance(Point::new(x1, x2, t - h1)).unwrap();
            let fd_t = (rp1 - rm1) / (2.0 * h1);
            assert!(
                (d.r_t - fd_t).abs() <= 1e-6 * fd_t.abs(),
                "r_t vs fd at {p:?}: {} vs {fd_t}",
                d.r_t
            );
            let h2 = 2e-4 * scale;
            let rp2 = cc_distance(Point::new(x1, x2, t + h2)).unwrap();
            let rm2 = cc_distance(Point::new(x1, x2, t - h2)).unwrap();
            let r0 = cc_distance(p).unwrap();
            let fd_tt = (rp2 - 2.0 * r0 + rm2) / (h2 * h2);
            assert!(
                (d.r_tt - fd_tt).abs() <= 1e-6 * fd_tt.abs().max(1.0 / (r0 * r0 * r0)),
                "r_tt vs fd at {p:?}: {} vs {fd_tt}",
                d.r_tt
            );
        }
    }

    #[test]
    fn radial_derivative_is_cos_phi() {
        assert_eq!(radial_derivative(Point::new(1.5, 0.0, 0.0)).unwrap(), 1.0);
        let p = Point::new(1.0, 0.0, 0.9);
        let sol = solve_phi(1.0, 0.9).unwrap();
        let rd = radial_derivative(p).unwrap();
        assert_eq!(rd, sol.cos_phi);
        // cross-check against a finite difference in s
        let h = 1e-6;
        let fd = (cc_distance(Point::new(1.0 + h, 0.0, 0.9)).unwrap()
            - cc_distance(Point::new(1.0 - h, 0.0, 0.9)).unwrap())
            / (2.0 * h);
        assert!((rd - fd).abs() < 1e-8);
    }

    #[test]
    fn dilation_homogeneity() {
        let p = Point::new(0.7, -0.2, 1.9);
        let r = cc_distance(p).unwrap();
        for lam in [0.5, 2.0, 17.0] {
            let rp = cc_distance(crate::hgroup::dilate(p, lam).unwrap()).unwrap();
            assert!((rp - lam * r).abs() <= 1e-12 * (lam * r), "lambda={lam}");
        }
    }
}
