//! The curvature-free CR Bochner identity and its companions.
//!
//! On this group the Ricci and torsion contributions vanish, so for a smooth
//! real `f` (all in the `1/2`-scaled gradient norm, `lap_b = (1/2) sum X_i^2`,
//! `f0 = Tf`):
//!
//! ```text
//! lap_b |grad_b f|^2 = 2 |hess_H f|^2 + 2 <grad_b f, grad_b lap_b f>
//!                      + 4 <J grad_b f, grad_b f0>,
//! ```
//!
//! with `|hess_H f|^2 = 2(|f_11|^2 + |f_11bar|^2)` built from
//! `Z = (X1 - i X2)/2`, and `J e1 = e2`, `J e2 = -e1`. The companion facts
//! verified here: `[lap_b, T] = 0` (the frame coefficients are
//! t-independent), and for pseudoharmonic `u > 0` with `f = ln u`,
//! `lap_b f0 = -2 <grad_b f, grad_b f0>`.
//!
//! The outer Laplacian of `|grad_b f|^2` needs four derivative orders in f.
//! It is taken analytically: the gradient square is assembled as a jet from
//! the field's third-order jet, so its own second derivatives are exact.
//! Numeric-only fields run through difference-quotient jets instead and are
//! flagged for a widened tolerance.

use crate::error::{HeisError, Result};
use crate::hgroup::{bundle_from_jet, Point, ScalarField};
use crate::jet::Jet3;
use crate::sublap::{hgrad_sq, sublap, OperatorConventions};

/// All terms of the identity at one point, in the `1/2` gradient norm.
#[derive(Clone, Copy, Debug)]
pub struct BochnerReport {
    /// `lap_b |grad_b f|^2`
    pub lhs: f64,
    /// `2 |hess_H f|^2 = 4(|f_11|^2 + |f_11bar|^2)`
    pub hess_term: f64,
    /// `2 <grad_b f, grad_b lap_b f>`
    pub transport_term: f64,
    /// Ricci/torsion contribution; identically zero here, carried so the
    /// report shape extends to curved implementations.
    pub curvature_term: f64,
    /// `4 <J grad_b f, grad_b f0>`
    pub j_term: f64,
    /// `lhs - (hess + transport + curvature + j)`
    pub residual: f64,
    pub point: Point,
    /// True when the field had no analytic partials (widened tolerance).
    pub fd_fallback: bool,
}

/// Magnitude against which the residual should be compared.
impl BochnerReport {
    pub fn scale(&self) -> f64 {
        self.lhs
            .abs()
            .max(self.hess_term.abs())
            .max(self.transport_term.abs())
            .max(self.j_term.abs())
            .max(1.0)
    }
}

fn hgrad_sq_jet(j: &Jet3, p: Point) -> Jet3 {
    let d1 = j.deriv(0);
    let d2 = j.deriv(1);
    let dt = j.deriv(2);
    let x1 = Jet3::coord(p.x1, 0);
    let x2 = Jet3::coord(p.x2, 1);
    let a = d1.add(&x2.mul(&dt).scale(2.0));
    let b = d2.sub(&x1.mul(&dt).scale(2.0));
    a.mul(&a).add(&b.mul(&b)).scale(0.5)
}

fn sublap_jet(j: &Jet3, p: Point) -> Jet3 {
    let d1 = j.deriv(0);
    let d2 = j.deriv(1);
    let dt = j.deriv(2);
    let x1 = Jet3::coord(p.x1, 0);
    let x2 = Jet3::coord(p.x2, 1);
    let d11 = d1.deriv(0);
    let d22 = d2.deriv(1);
    let d1t = d1.deriv(2);
    let d2t = d2.deriv(2);
    let dtt = dt.deriv(2);
    let s2 = x1.mul(&x1).add(&x2.mul(&x2));
    d11.add(&d22)
        .scale(0.5)
        .add(&x2.mul(&d1t).scale(2.0))
        .sub(&x1.mul(&d2t).scale(2.0))
        .add(&s2.mul(&dtt).scale(2.0))
}

/// Evaluate `lap_b` of a derived jet from its second-order coefficients.
fn sublap_of_jet_at(w: &Jet3, p: Point) -> f64 {
    let b = bundle_from_jet(w, p);
    0.5 * (b.fe1e1 + b.fe2e2)
}

/// All terms of the CR Bochner identity at `p`.
pub fn bochner_terms(f: &ScalarField, p: Point) -> Result<BochnerReport> {
    let j = f.jet_or_fd(p)?;
    let fd_fallback = !f.has_analytic_partials();
    let b = bundle_from_jet(&j, p);

    let w = hgrad_sq_jet(&j, p);
    let lhs = sublap_of_jet_at(&w, p);

    let lap = 0.5 * (b.fe1e1 + b.fe2e2);
    // f_11 = (1/4)[(fe1e1 - fe2e2) - i(fe1e2 + fe2e1)]
    let f11_re = 0.25 * (b.fe1e1 - b.fe2e2);
    let f11_im = -0.25 * (b.fe1e2 + b.fe2e1);
    let f11_sq = f11_re * f11_re + f11_im * f11_im;
    // f_11bar = (lap_b f + i f0)/2
    let f11b_sq = 0.25 * (lap * lap + b.f0 * b.f0);
    let hess_term = 4.0 * (f11_sq + f11b_sq);

    let lap_jet = sublap_jet(&j, p);
    let lap_bundle = bundle_from_jet(&lap_jet, p);
    let transport_term = b.fe1 * lap_bundle.fe1 + b.fe2 * lap_bundle.fe2;

    let f0_jet = j.deriv(2).scale(2.0);
    let f0_bundle = bundle_from_jet(&f0_jet, p);
    let j_term = 2.0 * (b.fe1 * f0_bundle.fe2 - b.fe2 * f0_bundle.fe1);

    let curvature_term = 0.0;
    let residual = lhs - (hess_term + transport_term + curvature_term + j_term);
    Ok(BochnerReport {
        lhs,
        hess_term,
        transport_term,
        curvature_term,
        j_term,
        residual,
        point: p,
        fd_fallback,
    })
}

/// Ingredients for the directional Bochner inequality at one point.
#[derive(Clone, Copy, Debug)]
pub struct InequalityTerms {
    pub lhs: f64,
    pub f11_sq: f64,
    pub lap: f64,
    pub f0: f64,
    pub transport: f64,
    pub hgrad: f64,
    pub hgrad_f0: f64,
}

/// Everything needed to check, for each `nu > 0`,
/// `lhs >= 4 |f_11|^2 + (lap_b f)^2 + f0^2 + transport
///        - (4/nu) |grad_b f|^2 - 2 nu |grad_b f0|^2`.
pub fn inequality_terms(f: &ScalarField, p: Point) -> Result<InequalityTerms> {
    let rep = bochner_terms(f, p)?;
    let j = f.jet_or_fd(p)?;
    let b = bundle_from_jet(&j, p);
    let lap = 0.5 * (b.fe1e1 + b.fe2e2);
    let f11_re = 0.25 * (b.fe1e1 - b.fe2e2);
    let f11_im = -0.25 * (b.fe1e2 + b.fe2e1);
    let hgrad = 0.5 * (b.fe1 * b.fe1 + b.fe2 * b.fe2);
    let f0_jet = j.deriv(2).scale(2.0);
    let f0b = bundle_from_jet(&f0_jet, p);
    let hgrad_f0 = 0.5 * (f0b.fe1 * f0b.fe1 + f0b.fe2 * f0b.fe2);
    Ok(InequalityTerms {
        lhs: rep.lhs,
        f11_sq: f11_re * f11_re + f11_im * f11_im,
        lap,
        f0: b.f0,
        transport: rep.transport_term,
        hgrad,
        hgrad_f0,
    })
}

impl InequalityTerms {
    /// Right side of the inequality for a given `nu`.
    pub fn rhs(&self, nu: f64) -> f64 {
        4.0 * self.f11_sq + self.lap * self.lap + self.f0 * self.f0 + self.transport
            - (4.0 / nu) * self.hgrad
            - 2.0 * nu * self.hgrad_f0
    }

    pub fn scale(&self) -> f64 {
        self.lhs.abs().max(self.transport.abs()).max(self.hgrad).max(1.0)
    }
}

/// `lap_b(Tf) - T(lap_b f)` at `p`; identically zero on this group.
pub fn commute_t_residual(f: &ScalarField, p: Point) -> Result<f64> {
    let j = f.jet_or_fd(p)?;
    let f0_jet = j.deriv(2).scale(2.0);
    let lap_f0 = sublap_of_jet_at(&f0_jet, p);
    let lap_jet = sublap_jet(&j, p);
    let t_lap = 2.0 * lap_jet.partial(0, 0, 1);
    Ok(lap_f0 - t_lap)
}

/// Result of the logarithmic identity check for pseudoharmonic fields.
#[derive(Clone, Copy, Debug)]
pub struct LogIdentity {
    /// `lap_b f0 + 2 <grad_b f, grad_b f0>` with `f = ln u`.
    pub residual: f64,
    /// `|lap_b u|` at the point, reported alongside (the identity only
    /// holds where u is pseudoharmonic).
    pub sublap_u: f64,
}

/// Check `lap_b f0 = -2 <grad_b f, grad_b f0>` for `f = ln u`, `u > 0`.
pub fn log_identity_residual(u: &ScalarField, p: Point) -> Result<LogIdentity> {
    let uj = u.jet_or_fd(p)?;
    let uval = uj.value();
    if uval <= 0.0 {
        return Err(HeisError::NotPositive { name: u.name().to_string(), value: uval, point: p });
    }
    let fj = uj.ln();
    let fb = bundle_from_jet(&fj, p);
    let f0_jet = fj.deriv(2).scale(2.0);
    let f0b = bundle_from_jet(&f0_jet, p);
    let lap_f0 = sublap_of_jet_at(&f0_jet, p);
    let inner = 0.5 * (fb.fe1 * f0b.fe1 + fb.fe2 * f0b.fe2);
    let sublap_u = sublap(u, p)?.abs();
    Ok(LogIdentity { residual: lap_f0 + 2.0 * inner, sublap_u })
}

/// Pseudoharmonicity scan over a grid.
#[derive(Clone, Debug)]
pub struct PharmCheck {
    pub sup_sublap: f64,
    pub sup_abs_u: f64,
    /// `sup |lap_b u| / sup |u|`
    pub normalized: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub worst_point: Point,
}

/// `sup |lap_b u|` over the grid normalized by `sup |u|`; pass iff the
/// normalized value is at most `tolerance`.
pub fn pharm_check(u: &ScalarField, grid: &[Point], tolerance: f64) -> Result<PharmCheck> {
    if grid.is_empty() {
        return Err(HeisError::Precondition("pharm_check on an empty grid".into()));
    }
    let mut sup_sublap = 0.0f64;
    let mut sup_abs_u = 0.0f64;
    let mut worst = grid[0];
    for &p in grid {
        let lap = sublap(u, p)?.abs();
        if lap > sup_sublap {
            sup_sublap = lap;
            worst = p;
        }
        sup_abs_u = sup_abs_u.max(u.eval(p).abs());
    }
    let normalized = sup_sublap / sup_abs_u.max(f64::MIN_POSITIVE);
    Ok(PharmCheck {
        sup_sublap,
        sup_abs_u,
        normalized,
        tolerance,
        pass: normalized <= tolerance,
        worst_point: worst,
    })
}

/// The ten-field analytic suite exercised by the identity tests: a mix of
/// catalog fields and bump-modulated composites.
pub fn analytic_test_suite() -> Vec<ScalarField> {
    use crate::pharm::{make_field, FieldSpec};
    let specs = vec![
        FieldSpec::CoordinateT,
        FieldSpec::CoordinateX1,
        FieldSpec::AffinePositive { c: 2.0 },
        FieldSpec::Polynomial { name: "x1^2".into(), coeffs: vec![(2, 0, 0, 1.0)] },
        FieldSpec::Polynomial {
            name: "x1x2+t^2".into(),
            coeffs: vec![(1, 1, 0, 1.0), (0, 0, 2, 1.0)],
        },
        FieldSpec::Polynomial {
            name: "x1^3-3x1x2^2+t".into(),
            coeffs: vec![(3, 0, 0, 1.0), (1, 2, 0, -3.0), (0, 0, 1, 1.0)],
        },
        FieldSpec::GaugePower { alpha: 0.5 },
        FieldSpec::BumpModulated {
            base: Box::new(FieldSpec::Polynomial {
                name: "1".into(),
                coeffs: vec![(0, 0, 0, 1.0)],
            }),
            center: Point::new(0.5, -0.3, 0.2),
            width: 1.5,
        },
        FieldSpec::BumpModulated {
            base: Box::new(FieldSpec::Polynomial {
                name: "t^2".into(),
                coeffs: vec![(0, 0, 2, 1.0)],
            }),
            center: Point::new(-0.2, 0.4, -0.1),
            width: 2.0,
        },
        FieldSpec::Translated {
            base: Box::new(FieldSpec::GaugePower { alpha: 0.5 }),
            p: Point::new(3.0, -2.0, 1.0),
        },
    ];
    specs.iter().map(|s| make_field(s).expect("suite specs are valid")).collect()
}

/// Gradient norm helper re-exported for estimate callers.
pub fn paper_hgrad_sq(f: &ScalarField, p: Point) -> Result<f64> {
    hgrad_sq(f, p, OperatorConventions::paper())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pharm::{make_field, FieldSpec};
    use crate::rng::SplitMix64;

    #[test]
    fn exact_anchor_on_t() {
        // f = t: lhs = 4, hess = 4, transport = 0, j = 0
        let f = make_field(&FieldSpec::CoordinateT).unwrap();
        let rep = bochner_terms(&f, Point::new(0.8, -1.3, 2.0)).unwrap();
        assert!((rep.lhs - 4.0).abs() < 1e-10);
        assert!((rep.hess_term - 4.0).abs() < 1e-10);
        assert!(rep.transport_term.abs() < 1e-10);
        assert!(rep.j_term.abs() < 1e-10);
        assert!(rep.residual.abs() < 1e-10);
    }

    #[test]
    fn linear_field_gives_all_zeros() {
        let f = make_field(&FieldSpec::CoordinateX1).unwrap();
        let rep = bochner_terms(&f, Point::new(0.1, 0.2, 0.3)).unwrap();
        assert_eq!(rep.lhs, 0.0);
        assert_eq!(rep.hess_term, 0.0);
        assert_eq!(rep.transport_term, 0.0);
        assert_eq!(rep.j_term, 0.0);
    }

    #[test]
    fn identity_holds_across_analytic_suite() {
        let mut rng = SplitMix64::new(99);
        for f in analytic_test_suite() {
            for _ in 0..20 {
                let p = Point::new(
                    rng.uniform(0.4, 2.0),
                    rng.uniform(0.4, 2.0),
                    rng.uniform(0.4, 2.0),
                );
                let rep = bochner_terms(&f, p).unwrap();
                assert!(
                    rep.residual.abs() <= 1e-5 * rep.scale(),
                    "{} at {p:?}: residual {:e} vs scale {:e}",
                    f.name(),
                    rep.residual,
                    rep.scale()
                );
            }
        }
    }

    #[test]
    fn identity_holds_for_fd_fallback_field() {
        let f = crate::hgroup::ScalarField::from_eval("fd-bump", |q: Point| {
            (-(q.x1 * q.x1 + 0.3 * q.x2 * q.x2 + 0.2 * q.t * q.t)).exp() * (1.0 + q.x1 * q.t)
        });
        let rep = bochner_terms(&f, Point::new(0.5, -0.2, 0.7)).unwrap();
        assert!(rep.fd_fallback);
        assert!(
            rep.residual.abs() <= 1e-3 * rep.scale(),
            "fd residual {:e} scale {:e}",
            rep.residual,
            rep.scale()
        );
    }

    #[test]
    fn commutation_is_exact_on_polynomials() {
        let f = make_field(&FieldSpec::Polynomial {
            name: "t*x1^2".into(),
            coeffs: vec![(2, 0, 1, 1.0)],
        })
        .unwrap();
        let mut rng = SplitMix64::new(5);
        for _ in 0..20 {
            let p =
                Point::new(rng.symmetric(2.0), rng.symmetric(2.0), rng.symmetric(2.0));
            assert_eq!(commute_t_residual(&f, p).unwrap(), 0.0);
        }
    }

    #[test]
    fn commutation_small_on_smooth_fd_field() {
        let f = crate::hgroup::ScalarField::from_eval("fd-smooth", |q: Point| {
            (q.x1 + 0.5 * q.t).sin() * (-(q.x2 * q.x2)).exp()
        });
        let r = commute_t_residual(&f, Point::new(0.3, 0.1, -0.4)).unwrap();
        assert!(r.abs() < 1e-4, "residual {r:e}");
    }

    #[test]
    fn log_identity_cases() {
        // constant: f0 = 0, residual exactly 0
        let c = make_field(&FieldSpec::Polynomial {
            name: "3".into(),
            coeffs: vec![(0, 0, 0, 3.0)],
        })
        .unwrap();
        let li = log_identity_residual(&c, Point::new(1.0, 1.0, 1.0)).unwrap();
        assert_eq!(li.residual, 0.0);

        // u = 2 + x1 where u > 1: t-independent, both sides vanish
        let aff = make_field(&FieldSpec::AffinePositive { c: 2.0 }).unwrap();
        let li = log_identity_residual(&aff, Point::new(0.5, -0.7, 1.2)).unwrap();
        assert!(li.residual.abs() < 1e-5);

        // gauge power off the origin
        let gauge = make_field(&FieldSpec::GaugePower { alpha: 0.5 }).unwrap();
        let p = Point::new(1.2, -0.5, 0.8);
        let li = log_identity_residual(&gauge, p).unwrap();
        assert!(
            li.residual.abs() <= 1e-4 * gauge.eval(p).abs().max(1.0),
            "residual {:e}",
            li.residual
        );
        assert!(li.sublap_u < 1e-10);

        // positivity error surfaces
        let x1 = make_field(&FieldSpec::CoordinateX1).unwrap();
        assert!(matches!(
            log_identity_residual(&x1, Point::new(-1.0, 0.0, 0.0)),
            Err(HeisError::NotPositive { .. })
        ));
    }

    #[test]
    fn pharm_check_cases() {
        let grid = crate::sample::GridSpec::smooth_region(31, 60).generate().unwrap();
        let x1 = make_field(&FieldSpec::CoordinateX1).unwrap();
        let chk = pharm_check(&x1, &grid, 1e-8).unwrap();
        assert!(chk.pass);
        assert_eq!(chk.sup_sublap, 0.0);

        let t = make_field(&FieldSpec::CoordinateT).unwrap();
        assert!(pharm_check(&t, &grid, 1e-8).unwrap().pass);

        let control = make_field(&FieldSpec::BumpModulated {
            base: Box::new(FieldSpec::Polynomial {
                name: "1".into(),
                coeffs: vec![(0, 0, 0, 1.0)],
            }),
            center: Point::new(0.5, -0.3, 0.2),
            width: 1.5,
        })
        .unwrap();
        assert!(!pharm_check(&control, &grid, 1e-8).unwrap().pass);
    }

    #[test]
    fn inequality_direction_on_suite() {
        let mut rng = SplitMix64::new(13);
        for f in analytic_test_suite() {
            for _ in 0..10 {
                let p = Point::new(
                    rng.uniform(0.4, 1.8),
                    rng.uniform(0.4, 1.8),
                    rng.uniform(0.4, 1.8),
                );
                let terms = inequality_terms(&f, p).unwrap();
                for nu in [0.5, 1.0, 2.0] {
                    let slack = terms.lhs - terms.rhs(nu);
                    assert!(
                        slack >= -1e-5 * terms.scale(),
                        "{} nu={nu} at {p:?}: slack {slack:e}",
                        f.name()
                    );
                }
            }
        }
    }
}
