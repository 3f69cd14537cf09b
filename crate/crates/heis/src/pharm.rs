//! Catalog of test scalar fields with analytic derivatives.
//!
//! Pseudoharmonic entries (`lap_b u = 0`): the coordinate fields, positive
//! affine fields `c + x1`, the gauge power `(s^4 + t^2)^-alpha` at the
//! calibrated exponent, its left-translates, and the harmonic cubic
//! `x1^3 - 3 x1 x2^2`. Controls that deliberately fail pseudoharmonicity are
//! included so that estimate tests demonstrably depend on the precondition.
//!
//! The gauge exponent is confirmed by search, not trusted: a wrong frame
//! convention would move it, and everything downstream leans on this family.

use crate::error::{HeisError, Result};
use crate::hgroup::{Point, Provenance, ScalarField};
use crate::jet::Jet3;
use crate::sublap;

/// Version stamp for report headers; bump when the entry list changes.
pub const CATALOG_VERSION: &str = "field-catalog-1";

/// Constructible field specifications.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub enum FieldSpec {
    CoordinateX1,
    CoordinateX2,
    CoordinateT,
    /// `c + x1` with `c > 0`.
    AffinePositive { c: f64 },
    /// `(s^4 + t^2)^(-alpha)` with `alpha > 0`, defined off the origin.
    GaugePower { alpha: f64 },
    /// Base field composed with left translation by `p`.
    Translated { base: Box<FieldSpec>, p: Point },
    /// Sum of monomials `coeff * x1^i x2^j t^k`.
    Polynomial { name: String, coeffs: Vec<(u32, u32, u32, f64)> },
    /// `base * exp(-||q - center||^2 / width^2)` in coordinates.
    BumpModulated { base: Box<FieldSpec>, center: Point, width: f64 },
}

/// Build the evaluatable field (analytic partials through third order).
pub fn make_field(spec: &FieldSpec) -> Result<ScalarField> {
    match spec {
        FieldSpec::CoordinateX1 => Ok(ScalarField::from_jet("x1", Provenance::Polynomial, |p| {
            Jet3::coord(p.x1, 0)
        })),
        FieldSpec::CoordinateX2 => Ok(ScalarField::from_jet("x2", Provenance::Polynomial, |p| {
            Jet3::coord(p.x2, 1)
        })),
        FieldSpec::CoordinateT => Ok(ScalarField::from_jet("t", Provenance::Polynomial, |p| {
            Jet3::coord(p.t, 2)
        })),
        FieldSpec::AffinePositive { c } => {
            if !(*c > 0.0) {
                return Err(HeisError::FieldSpec(format!("affine offset must be > 0, got {c}")));
            }
            let c = *c;
            Ok(ScalarField::from_jet(
                format!("{c}+x1"),
                Provenance::Polynomial,
                move |p| Jet3::coord(p.x1, 0).add_scalar(c),
            ))
        }
        FieldSpec::GaugePower { alpha } => {
            if !(*alpha > 0.0) {
                return Err(HeisError::FieldSpec(format!(
                    "gauge exponent must be > 0, got {alpha}"
                )));
            }
            let a = *alpha;
            Ok(ScalarField::from_jet(
                format!("gauge^-{a}"),
                Provenance::ClosedForm,
                move |p| {
                    let x1 = Jet3::coord(p.x1, 0);
                    let x2 = Jet3::coord(p.x2, 1);
                    let t = Jet3::coord(p.t, 2);
                    let s2 = x1.mul(&x1).add(&x2.mul(&x2));
                    s2.mul(&s2).add(&t.mul(&t)).powf(-a)
                },
            ))
        }
        FieldSpec::Translated { base, p } => {
            let field = make_field(base)?;
            Ok(field.translate(*p))
        }
        FieldSpec::Polynomial { name, coeffs } => {
            let coeffs = coeffs.clone();
            Ok(ScalarField::from_jet(name.clone(), Provenance::Polynomial, move |p| {
                let x1 = Jet3::coord(p.x1, 0);
                let x2 = Jet3::coord(p.x2, 1);
                let t = Jet3::coord(p.t, 2);
                let mut acc = Jet3::zero();
                for &(i, j, k, c) in &coeffs {
                    let m = x1.powi(i).mul(&x2.powi(j)).mul(&t.powi(k)).scale(c);
                    acc = acc.add(&m);
                }
                acc
            }))
        }
        FieldSpec::BumpModulated { base, center, width } => {
            if !(*width > 0.0) {
                return Err(HeisError::FieldSpec(format!("bump width must be > 0, got {width}")));
            }
            let inner = make_field(base)?;
            let name = format!("bump({})", inner.name());
            let (c, w) = (*center, *width);
            let base_jet = move |p: Point| {
                let dx1 = Jet3::coord(p.x1, 0).add_scalar(-c.x1);
                let dx2 = Jet3::coord(p.x2, 1).add_scalar(-c.x2);
                let dt = Jet3::coord(p.t, 2).add_scalar(-c.t);
                let d2 = dx1.mul(&dx1).add(&dx2.mul(&dx2)).add(&dt.mul(&dt));
                d2.scale(-1.0 / (w * w)).exp()
            };
            match inner.jet(Point::ORIGIN) {
                Some(_) => Ok(ScalarField::from_jet(name, Provenance::ClosedForm, move |p| {
                    inner.jet(p).expect("bump base carries a jet").mul(&base_jet(p))
                })),
                None => Err(HeisError::FieldSpec(
                    "bump modulation requires an analytic base field".into(),
                )),
            }
        }
    }
}

/// One catalog row: the spec and whether the field is pseudoharmonic.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub spec: FieldSpec,
    pub pseudoharmonic: bool,
}

/// The fixed default catalog used by every verification suite.
pub fn catalog() -> Vec<CatalogEntry> {
    let gauge = FieldSpec::GaugePower { alpha: 0.5 };
    let mut entries = vec![
        CatalogEntry { spec: FieldSpec::CoordinateX1, pseudoharmonic: true },
        CatalogEntry { spec: FieldSpec::CoordinateX2, pseudoharmonic: true },
        CatalogEntry { spec: FieldSpec::CoordinateT, pseudoharmonic: true },
        CatalogEntry { spec: FieldSpec::AffinePositive { c: 1.0 }, pseudoharmonic: true },
        CatalogEntry { spec: FieldSpec::AffinePositive { c: 2.0 }, pseudoharmonic: true },
        CatalogEntry { spec: FieldSpec::AffinePositive { c: 8.0 }, pseudoharmonic: true },
        CatalogEntry { spec: gauge.clone(), pseudoharmonic: true },
        CatalogEntry {
            spec: FieldSpec::Translated {
                base: Box::new(gauge.clone()),
                p: Point::new(3.0, -2.0, 1.0),
            },
            pseudoharmonic: true,
        },
        CatalogEntry {
            spec: FieldSpec::Translated { base: Box::new(gauge), p: Point::new(-4.0, 1.0, -2.0) },
            pseudoharmonic: true,
        },
    ];
    // controls: positive everywhere but not pseudoharmonic
    entries.push(CatalogEntry {
        spec: FieldSpec::BumpModulated {
            base: Box::new(FieldSpec::Polynomial {
                name: "1".into(),
                coeffs: vec![(0, 0, 0, 1.0)],
            }),
            center: Point::new(0.5, -0.3, 0.2),
            width: 1.5,
        },
        pseudoharmonic: false,
    });
    entries.push(CatalogEntry {
        spec: FieldSpec::BumpModulated {
            base: Box::new(FieldSpec::AffinePositive { c: 2.0 }),
            center: Point::ORIGIN,
            width: 2.0,
        },
        pseudoharmonic: false,
    });
    // calibration polynomials
    entries.push(CatalogEntry {
        spec: FieldSpec::Polynomial { name: "x1^2".into(), coeffs: vec![(2, 0, 0, 1.0)] },
        pseudoharmonic: false,
    });
    entries.push(CatalogEntry {
        spec: FieldSpec::Polynomial {
            name: "s^2".into(),
            coeffs: vec![(2, 0, 0, 1.0), (0, 2, 0, 1.0)],
        },
        pseudoharmonic: false,
    });
    entries.push(CatalogEntry {
        spec: FieldSpec::Polynomial {
            name: "x1^3-3x1x2^2".into(),
            coeffs: vec![(3, 0, 0, 1.0), (1, 2, 0, -3.0)],
        },
        pseudoharmonic: true,
    });
    entries
}

/// Outcome of the gauge-exponent search.
#[derive(Clone, Debug)]
pub struct GaugeCalibration {
    /// Exponent minimizing the normalized residual on the grid.
    pub alpha: f64,
    /// `sup |lap_b u| / sup |u|` at the optimum.
    pub residual: f64,
    /// Admission threshold the residual was held against.
    pub threshold: f64,
    /// Whether the family enters the pseudoharmonic catalog.
    pub admitted: bool,
    /// Sampled residual curve over the search interval, for the report.
    pub curve: Vec<(f64, f64)>,
}

/// Normalized residual `sup |lap_b u_alpha| / sup |u_alpha|` on the grid.
fn gauge_residual(alpha: f64, grid: &[Point]) -> Result<f64> {
    let field = make_field(&FieldSpec::GaugePower { alpha })?;
    let mut sup_lap = 0.0f64;
    let mut sup_u = 0.0f64;
    for &p in grid {
        sup_lap = sup_lap.max(sublap::sublap(&field, p)?.abs());
        sup_u = sup_u.max(field.eval(p).abs());
    }
    Ok(sup_lap / sup_u)
}

/// Golden-section search for the exponent making the gauge power
/// pseudoharmonic on the grid. The minimized residual must come below
/// `1e-8 * sup|u|` for the family to be admitted; otherwise the caller gets
/// the full residual curve and must exclude the family.
pub fn calibrate_gauge_exponent(search: (f64, f64), grid: &[Point]) -> Result<GaugeCalibration> {
    let (mut a, mut b) = search;
    if !(a > 0.0 && b > a) {
        return Err(HeisError::Domain(format!("bad search interval [{a}, {b}]")));
    }
    if grid.is_empty() {
        return Err(HeisError::Precondition("empty calibration grid".into()));
    }
    let curve: Vec<(f64, f64)> = (0..=20)
        .map(|i| {
            let alpha = a + (b - a) * i as f64 / 20.0;
            gauge_residual(alpha, grid).map(|r| (alpha, r))
        })
        .collect::<Result<_>>()?;

    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - (b - a) * INV_PHI;
    let mut d = a + (b - a) * INV_PHI;
    let mut fc = gauge_residual(c, grid)?;
    let mut fd = gauge_residual(d, grid)?;
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * INV_PHI;
            fc = gauge_residual(c, grid)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * INV_PHI;
            fd = gauge_residual(d, grid)?;
        }
        if (b - a) < 1e-12 {
            break;
        }
    }
    let alpha = 0.5 * (a + b);
    let residual = gauge_residual(alpha, grid)?;
    let threshold = 1e-8;
    Ok(GaugeCalibration { alpha, residual, threshold, admitted: residual <= threshold, curve })
}
