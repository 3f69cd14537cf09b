//! Seeded point samplers for grids and Carnot-Caratheodory balls.
//!
//! CC balls have no closed-form parametrization here, so ball grids come
//! from rejection sampling in a covering coordinate box with distance
//! filtering; identical seeds give identical grids.

use crate::ccdist;
use crate::error::{HeisError, Result};
use crate::hgroup::Point;
use crate::rng::SplitMix64;

/// Box sampler with exclusion radii. `min_s` keeps points off the center
/// axis, `min_r`/`max_r` bound the distance from the origin
/// (`max_r = inf` disables the ball filter).
#[derive(Clone, Debug, serde::Serialize)]
pub struct GridSpec {
    pub seed: u64,
    pub count: usize,
    pub x1: (f64, f64),
    pub x2: (f64, f64),
    pub t: (f64, f64),
    pub min_s: f64,
    pub min_r: f64,
    pub max_r: f64,
}

impl GridSpec {
    /// Smooth-region default: unit-to-moderate scale, away from center/axis.
    pub fn smooth_region(seed: u64, count: usize) -> Self {
        GridSpec {
            seed,
            count,
            x1: (-3.0, 3.0),
            x2: (-3.0, 3.0),
            t: (-6.0, 6.0),
            min_s: 0.1,
            min_r: 0.1,
            max_r: f64::INFINITY,
        }
    }

    /// Rejection-sample points satisfying all the filters.
    pub fn generate(&self) -> Result<Vec<Point>> {
        let mut rng = SplitMix64::new(self.seed);
        let mut pts = Vec::with_capacity(self.count);
        let mut attempts = 0usize;
        let cap = self.count.max(1) * 10_000;
        while pts.len() < self.count {
            attempts += 1;
            if attempts > cap {
                return Err(HeisError::Precondition(format!(
                    "grid rejection sampling stalled after {attempts} draws; filters too tight: {self:?}"
                )));
            }
            let p = Point::new(
                rng.uniform(self.x1.0, self.x1.1),
                rng.uniform(self.x2.0, self.x2.1),
                rng.uniform(self.t.0, self.t.1),
            );
            if p.s() < self.min_s {
                continue;
            }
            if self.min_r > 0.0 || self.max_r.is_finite() {
                let r = ccdist::cc_distance(p)?;
                if r < self.min_r || r > self.max_r {
                    continue;
                }
            }
            pts.push(p);
        }
        Ok(pts)
    }
}

/// Seeded sample of the CC ball `B(radius)`, avoiding the singular center.
pub fn ball_grid(seed: u64, count: usize, radius: f64) -> Result<Vec<Point>> {
    GridSpec {
        seed,
        count,
        x1: (-radius, radius),
        x2: (-radius, radius),
        t: (-radius * radius / std::f64::consts::PI, radius * radius / std::f64::consts::PI),
        min_s: 0.0,
        min_r: 0.01 * radius,
        max_r: radius,
    }
    .generate()
}

/// Deterministic log-spaced lattice in `(s, |t|)` with both t-signs and a
/// rotating horizontal direction. Covers the whole angle-parameter range,
/// including the near-axis corner, so suprema taken over it are stable
/// under refinement.
pub fn st_lattice(
    s_range: (f64, f64),
    t_range: (f64, f64),
    ns: usize,
    nt: usize,
) -> Vec<Point> {
    let mut pts = Vec::with_capacity(ns * nt);
    for i in 0..ns {
        let fs = i as f64 / (ns - 1) as f64;
        let s = s_range.0 * (s_range.1 / s_range.0).powf(fs);
        for j in 0..nt {
            let ft = j as f64 / (nt - 1) as f64;
            let ta = t_range.0 * (t_range.1 / t_range.0).powf(ft);
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            let ang = 2.399963229728653 * (i * nt + j) as f64; // golden angle
            pts.push(Point::new(s * ang.cos(), s * ang.sin(), sign * ta));
        }
    }
    pts
}

/// Deterministic log-spaced lattice in `(s, |t|)` with both t-signs, used by
/// the closed-form consistency sweep: `s in [1e-3, 1e3]`,
/// `|t| in [1e-6, 1e6]`, `ns * nt` points.
pub fn log_lattice(ns: usize, nt: usize) -> Vec<Point> {
    let mut pts = Vec::with_capacity(ns * nt);
    for i in 0..ns {
        let fs = i as f64 / (ns - 1) as f64;
        let s = 10f64.powf(-3.0 + 6.0 * fs);
        for j in 0..nt {
            let ft = j as f64 / (nt - 1) as f64;
            let t = 10f64.powf(-6.0 + 12.0 * ft);
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            pts.push(Point::new(s, 0.0, sign * t));
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_are_deterministic() {
        let spec = GridSpec::smooth_region(7, 100);
        let a = spec.generate().unwrap();
        let b = spec.generate().unwrap();
        assert_eq!(a.len(), 100);
        for (p, q) in a.iter().zip(b.iter()) {
            assert_eq!(p, q);
        }
    }

    #[test]
    fn filters_hold() {
        let pts = ball_grid(3, 200, 2.0).unwrap();
        for &p in &pts {
            let r = ccdist::cc_distance(p).unwrap();
            assert!(r <= 2.0 && r >= 0.02);
        }
        let smooth = GridSpec::smooth_region(5, 100).generate().unwrap();
        for &p in &smooth {
            assert!(p.s() >= 0.1);
        }
    }

    #[test]
    fn lattice_has_expected_size() {
        let pts = log_lattice(100, 100);
        assert_eq!(pts.len(), 10_000);
        assert!(pts.iter().all(|p| p.s() >= 1e-3 && p.t.abs() >= 1e-6));
    }
}
