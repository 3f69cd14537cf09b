//! The first Heisenberg group: points, group law, left-invariant frame, and
//! derivative evaluation for scalar fields.
//!
//! Coordinates are `(x1, x2, t)`. The frame is
//!
//! ```text
//! X1 = d/dx1 + 2 x2 d/dt,    X2 = d/dx2 - 2 x1 d/dt,    T = 2 d/dt,
//! ```
//!
//! with `[X1, X2] = -4 d/dt = -2T`. Group multiplication is
//! `(x, t) o (y, s) = (x1+y1, x2+y2, t + s + 2(x2 y1 - x1 y2))`, under which
//! `X1`, `X2`, `T` are left-invariant.
//!
//! Derivative conventions used everywhere downstream:
//! * `f0` always means `Tf = 2 df/dt`, never the bare t-partial;
//! * second iterated derivatives are stored covariantly, outer index second:
//!   `fe1e2 = X2 X1 f`, so `fe1e2 - fe2e1 = 2 f0`;
//! * the left-invariant frame is parallel for the Tanaka-Webster connection
//!   on this group, so iterated frame derivatives are the second covariant
//!   derivatives.

use std::sync::Arc;

use crate::error::{HeisError, Result};
use crate::jet::Jet3;

/// A point `(x1, x2, t)` of the group. All operations require finite
/// coordinates; constructors of derived data check this.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Point {
    pub x1: f64,
    pub x2: f64,
    pub t: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x1: 0.0, x2: 0.0, t: 0.0 };

    pub fn new(x1: f64, x2: f64, t: f64) -> Self {
        Point { x1, x2, t }
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.t.is_finite()
    }

    /// Horizontal radius `s = sqrt(x1^2 + x2^2)`.
    pub fn s(&self) -> f64 {
        self.x1.hypot(self.x2)
    }
}

/// Group multiplication (Heisenberg translation).
pub fn group_mul(p: Point, q: Point) -> Point {
    Point {
        x1: p.x1 + q.x1,
        x2: p.x2 + q.x2,
        t: p.t + q.t + 2.0 * (p.x2 * q.x1 - p.x1 * q.x2),
    }
}

/// Group inverse `(x, t)^-1 = (-x, -t)`.
pub fn group_inv(p: Point) -> Point {
    Point { x1: -p.x1, x2: -p.x2, t: -p.t }
}

/// Parabolic dilation `(x1, x2, t) -> (L x1, L x2, L^2 t)`, `L > 0`.
pub fn dilate(p: Point, lambda: f64) -> Result<Point> {
    if !(lambda > 0.0) {
        return Err(HeisError::Domain(format!("dilation factor must be > 0, got {lambda}")));
    }
    Ok(Point { x1: lambda * p.x1, x2: lambda * p.x2, t: lambda * lambda * p.t })
}

/// Where a field's derivatives come from; stamped into verification reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Provenance {
    Polynomial,
    ClosedForm,
    NumericOnly,
}

/// An evaluatable scalar field on the group, optionally with analytic
/// partial derivatives through third order (as a Taylor jet).
#[derive(Clone)]
pub struct ScalarField {
    name: String,
    provenance: Provenance,
    eval_fn: Arc<dyn Fn(Point) -> f64 + Send + Sync>,
    jet_fn: Option<Arc<dyn Fn(Point) -> Jet3 + Send + Sync>>,
}

impl std::fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarField")
            .field("name", &self.name)
            .field("provenance", &self.provenance)
            .field("analytic", &self.jet_fn.is_some())
            .finish()
    }
}

impl ScalarField {
    /// Field defined by a jet function; the plain evaluator is derived.
    pub fn from_jet(
        name: impl Into<String>,
        provenance: Provenance,
        jet: impl Fn(Point) -> Jet3 + Send + Sync + 'static,
    ) -> Self {
        let jet = Arc::new(jet);
        let jet_for_eval = Arc::clone(&jet);
        ScalarField {
            name: name.into(),
            provenance,
            eval_fn: Arc::new(move |p| jet_for_eval(p).value()),
            jet_fn: Some(jet),
        }
    }

    /// Numeric-only field; all derivatives fall back to finite differences.
    pub fn from_eval(
        name: impl Into<String>,
        eval: impl Fn(Point) -> f64 + Send + Sync + 'static,
    ) -> Self {
        ScalarField {
            name: name.into(),
            provenance: Provenance::NumericOnly,
            eval_fn: Arc::new(eval),
            jet_fn: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn has_analytic_partials(&self) -> bool {
        self.jet_fn.is_some()
    }

    pub fn eval(&self, p: Point) -> f64 {
        (self.eval_fn)(p)
    }

    /// Analytic jet at `p`, if the field carries one.
    pub fn jet(&self, p: Point) -> Option<Jet3> {
        self.jet_fn.as_ref().map(|f| f(p))
    }

    /// Jet at `p`: analytic when available, otherwise central finite
    /// differences (first order `h ~ eps^(1/3)`, second order `h ~ eps^(1/4)`,
    /// third order `h ~ eps^(1/5)`, each scaled by the coordinate magnitude).
    pub fn jet_or_fd(&self, p: Point) -> Result<Jet3> {
        match self.jet(p) {
            Some(j) => {
                if !j.value().is_finite() {
                    return Err(HeisError::Evaluation { point: p });
                }
                Ok(j)
            }
            None => fd_jet(&*self.eval_fn, p),
        }
    }

    /// The field composed with left translation by `p`: `q -> f(p o q)`.
    ///
    /// Analytic partials survive: the translation is affine, so its
    /// coordinate increments have exact jets and the base field's jet pulls
    /// back through them.
    pub fn translate(&self, p: Point) -> ScalarField {
        let name = format!("{}@translated", self.name);
        match &self.jet_fn {
            Some(jf) => {
                let jf = Arc::clone(jf);
                ScalarField::from_jet(name, self.provenance, move |q| {
                    let y = group_mul(p, q);
                    let base = jf(y);
                    // increments of L_p(q) as jets in q around y
                    let dy1 = Jet3::coord(0.0, 0);
                    let dy2 = Jet3::coord(0.0, 1);
                    // yt = pt + qt + 2(p2 q1 - p1 q2)
                    let dyt = Jet3::coord(0.0, 2)
                        .add(&Jet3::coord(0.0, 0).scale(2.0 * p.x2))
                        .sub(&Jet3::coord(0.0, 1).scale(2.0 * p.x1));
                    base.compose3(&dy1, &dy2, &dyt)
                })
            }
            None => {
                let eval = Arc::clone(&self.eval_fn);
                ScalarField::from_eval(name, move |q| eval(group_mul(p, q)))
            }
        }
    }
}

/// First and second iterated frame derivatives of a field at a point.
///
/// `f0 = Tf`; `fe1e2 = X2 X1 f` (outer index second), so the flat commutation
/// relation reads `fe1e2 - fe2e1 = 2 f0`.
#[derive(Clone, Copy, Debug)]
pub struct DerivativeBundle {
    pub f: f64,
    pub fe1: f64,
    pub fe2: f64,
    pub f0: f64,
    pub fe1e1: f64,
    pub fe1e2: f64,
    pub fe2e1: f64,
    pub fe2e2: f64,
}

/// Pseudohermitian structure data of the group: identically zero.
#[derive(Clone, Copy, Debug, Default, serde::Serialize)]
pub struct StructureConstants {
    /// Torsion component `A_11` (complex; both parts zero here).
    pub torsion_a11: (f64, f64),
    /// Webster scalar curvature.
    pub curvature_w: f64,
    /// Ricci lower bound parameter `k >= 0`.
    pub ricci_lower_k: f64,
}

impl StructureConstants {
    pub const FLAT: StructureConstants = StructureConstants {
        torsion_a11: (0.0, 0.0),
        curvature_w: 0.0,
        ricci_lower_k: 0.0,
    };
}

/// Machine epsilon powers used by the finite-difference fallback.
pub mod fd {
    /// First-order step factor `eps^(1/3)`.
    pub fn h1(coord: f64) -> f64 {
        coord.abs().max(1.0) * f64::EPSILON.powf(1.0 / 3.0)
    }
    /// Second-order step factor `eps^(1/4)`.
    pub fn h2(coord: f64) -> f64 {
        coord.abs().max(1.0) * f64::EPSILON.powf(1.0 / 4.0)
    }
    /// Third-order step factor `eps^(1/5)`.
    pub fn h3(coord: f64) -> f64 {
        coord.abs().max(1.0) * f64::EPSILON.powf(1.0 / 5.0)
    }
}

fn shift(p: Point, dir: usize, h: f64) -> Point {
    let mut q = p;
    match dir {
        0 => q.x1 += h,
        1 => q.x2 += h,
        _ => q.t += h,
    }
    q
}

fn coord(p: Point, dir: usize) -> f64 {
    match dir {
        0 => p.x1,
        1 => p.x2,
        _ => p.t,
    }
}

/// Central-difference jet for a numeric-only field. Fills first, second and
/// third coordinate partials; accuracy degrades with order (roughly 1e-10,
/// 1e-7, 1e-5 relative).
pub fn fd_jet(f: &(dyn Fn(Point) -> f64 + Send + Sync), p: Point) -> Result<Jet3> {
    let eval = |q: Point| -> Result<f64> {
        let v = f(q);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(HeisError::Evaluation { point: q })
        }
    };
    let f0 = eval(p)?;
    let mut c = [0.0; crate::jet::JET_LEN];
    c[0] = f0;
    let mut j = Jet3 { c };

    let set = |i: u8, jj: u8, k: u8, val: f64, jet: &mut Jet3| {
        let fact = |n: u8| -> f64 { [1.0, 1.0, 2.0, 6.0][n as usize] };
        for (n, &(a, b, d)) in crate::jet::MULTI_INDEX.iter().enumerate() {
            if (a, b, d) == (i, jj, k) {
                jet.c[n] = val / (fact(i) * fact(jj) * fact(k));
            }
        }
    };

    // first and pure-second partials
    for dir in 0..3 {
        let h = fd::h1(coord(p, dir));
        let fp = eval(shift(p, dir, h))?;
        let fm = eval(shift(p, dir, -h))?;
        let d1 = (fp - fm) / (2.0 * h);
        let h2 = fd::h2(coord(p, dir));
        let fp2 = eval(shift(p, dir, h2))?;
        let fm2 = eval(shift(p, dir, -h2))?;
        let d2 = (fp2 - 2.0 * f0 + fm2) / (h2 * h2);
        let (i, jj, k) = match dir {
            0 => (1, 0, 0),
            1 => (0, 1, 0),
            _ => (0, 0, 1),
        };
        set(i, jj, k, d1, &mut j);
        set(2 * i, 2 * jj, 2 * k, d2, &mut j);
    }

    // mixed second partials
    for (da, db, idx) in [(0, 1, (1u8, 1u8, 0u8)), (0, 2, (1, 0, 1)), (1, 2, (0, 1, 1))] {
        let ha = fd::h2(coord(p, da));
        let hb = fd::h2(coord(p, db));
        let pp = eval(shift(shift(p, da, ha), db, hb))?;
        let pm = eval(shift(shift(p, da, ha), db, -hb))?;
        let mp = eval(shift(shift(p, da, -ha), db, hb))?;
        let mm = eval(shift(shift(p, da, -ha), db, -hb))?;
        let d = (pp - pm - mp + mm) / (4.0 * ha * hb);
        set(idx.0, idx.1, idx.2, d, &mut j);
    }

    // third partials: pure via 5-point, mixed via difference of second stencils
    for dir in 0..3 {
        let h = fd::h3(coord(p, dir));
        let f2p = eval(shift(p, dir, 2.0 * h))?;
        let f1p = eval(shift(p, dir, h))?;
        let f1m = eval(shift(p, dir, -h))?;
        let f2m = eval(shift(p, dir, -2.0 * h))?;
        let d3 = (f2p - 2.0 * f1p + 2.0 * f1m - f2m) / (2.0 * h * h * h);
        let (i, jj, k) = match dir {
            0 => (3, 0, 0),
            1 => (0, 3, 0),
            _ => (0, 0, 3),
        };
        set(i, jj, k, d3, &mut j);
    }
    let mixed3: [(usize, usize, usize, (u8, u8, u8)); 7] = [
        (0, 0, 1, (2, 1, 0)),
        (0, 0, 2, (2, 0, 1)),
        (1, 1, 0, (1, 2, 0)),
        (1, 1, 2, (0, 2, 1)),
        (2, 2, 0, (1, 0, 2)),
        (2, 2, 1, (0, 1, 2)),
        (0, 1, 2, (1, 1, 1)),
    ];
    for (da, db, dc, idx) in mixed3 {
        let d = if da == db {
            // d^2/da^2 of (central d/dc)
            let h = fd::h3(coord(p, da));
            let hc = fd::h3(coord(p, dc));
            let g = |q: Point| -> Result<f64> {
                Ok((eval(shift(q, dc, hc))? - eval(shift(q, dc, -hc))?) / (2.0 * hc))
            };
            (g(shift(p, da, h))? - 2.0 * g(p)? + g(shift(p, da, -h))?) / (h * h)
        } else {
            // fully mixed d3/da db dc via nested central differences
            let ha = fd::h3(coord(p, da));
            let hb = fd::h3(coord(p, db));
            let hc = fd::h3(coord(p, dc));
            let g = |q: Point| -> Result<f64> {
                Ok((eval(shift(q, dc, hc))? - eval(shift(q, dc, -hc))?) / (2.0 * hc))
            };
            let gb = |q: Point| -> Result<f64> {
                Ok((g(shift(q, db, hb))? - g(shift(q, db, -hb))?) / (2.0 * hb))
            };
            (gb(shift(p, da, ha))? - gb(shift(p, da, -ha))?) / (2.0 * ha)
        };
        set(idx.0, idx.1, idx.2, d, &mut j);
    }
    Ok(j)
}

/// Frame derivatives extracted from a coordinate jet at `p`.
///
/// Second frame derivatives are assembled from expanded coordinate partials
/// (e.g. `X2 X1 f = f_12 + 2 f_t + 2 x2 f_2t - 2 x1 f_1t - 4 x1 x2 f_tt`),
/// never by nesting noisy difference quotients.
pub fn bundle_from_jet(j: &Jet3, p: Point) -> DerivativeBundle {
    let f1 = j.partial(1, 0, 0);
    let f2 = j.partial(0, 1, 0);
    let ft = j.partial(0, 0, 1);
    let f11 = j.partial(2, 0, 0);
    let f12 = j.partial(1, 1, 0);
    let f22 = j.partial(0, 2, 0);
    let f1t = j.partial(1, 0, 1);
    let f2t = j.partial(0, 1, 1);
    let ftt = j.partial(0, 0, 2);
    let (x1, x2) = (p.x1, p.x2);

    let fe1 = f1 + 2.0 * x2 * ft;
    let fe2 = f2 - 2.0 * x1 * ft;
    let f0 = 2.0 * ft;
    // X1^2 = d11 + 4 x2 d1t + 4 x2^2 dtt
    let fe1e1 = f11 + 4.0 * x2 * f1t + 4.0 * x2 * x2 * ftt;
    // X2^2 = d22 - 4 x1 d2t + 4 x1^2 dtt
    let fe2e2 = f22 - 4.0 * x1 * f2t + 4.0 * x1 * x1 * ftt;
    // X2 X1 f
    let fe1e2 = f12 + 2.0 * ft + 2.0 * x2 * f2t - 2.0 * x1 * f1t - 4.0 * x1 * x2 * ftt;
    // X1 X2 f
    let fe2e1 = f12 - 2.0 * ft + 2.0 * x2 * f2t - 2.0 * x1 * f1t - 4.0 * x1 * x2 * ftt;

    DerivativeBundle { f: j.value(), fe1, fe2, f0, fe1e1, fe1e2, fe2e1, fe2e2 }
}

/// All first and second iterated frame derivatives of `f` at `p`.
pub fn apply_frame(f: &ScalarField, p: Point) -> Result<DerivativeBundle> {
    let j = f.jet_or_fd(p)?;
    Ok(bundle_from_jet(&j, p))
}

/// `(X1 X2 - X2 X1) f (p) + 4 df/dt (p)`; zero for smooth fields.
pub fn bracket_residual(f: &ScalarField, p: Point) -> Result<f64> {
    let b = apply_frame(f, p)?;
    Ok(b.fe2e1 - b.fe1e2 + 2.0 * b.f0)
}
