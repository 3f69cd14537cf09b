//! Acceptance suite: every quantitative gate the library promises, one test
//! per criterion, each printing a pass/fail line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use std::time::Instant;

use heis::bochner;
use heis::ccdist;
use heis::comparison;
use heis::estimates;
use heis::geodesy;
use heis::hgroup::{dilate, Point};
use heis::pharm::{self, FieldSpec};
use heis::report::Tolerances;
use heis::rng::SplitMix64;
use heis::sample;
use heis::sublap;
use heis::suites;

fn gate(name: &str, pass: bool, detail: &str) {
    println!("ACCEPTANCE {name}: {} — {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{name}: {detail}");
}

/// 1. Both closed forms of the distance agree to 1e-10 relative on a
///    10^4-point log grid.
#[test]
fn criterion_01_closed_form_self_consistency() {
    let mut worst = 0.0f64;
    for p in sample::log_lattice(100, 100) {
        let info = ccdist::cc_distance_full(p).unwrap();
        worst = worst.max(info.gap);
    }
    gate(
        "1 closed-form consistency",
        worst <= 1e-10,
        &format!("max relative route gap {worst:.3e} on 10000 points (tolerance 1e-10)"),
    );
}

/// 2. Twenty seeded targets with r in [0.5, 3]: trajectory-optimized length
///    within 1% of the closed form; the axis target within 1% of sqrt(pi);
///    total runtime under five minutes.
#[test]
fn criterion_02_geodesic_oracle_equivalence() {
    let start = Instant::now();
    let seed = 20260809u64;
    let mut rng = SplitMix64::new(seed);
    let mut targets = Vec::new();
    while targets.len() < 20 {
        let p = Point::new(rng.symmetric(2.0), rng.symmetric(2.0), rng.symmetric(4.0));
        let r = ccdist::cc_distance(p).unwrap();
        if (0.5..=3.0).contains(&r) {
            targets.push((p, r));
        }
    }
    let mut worst = 0.0f64;
    for (i, &(target, closed)) in targets.iter().enumerate() {
        let res = geodesy::optimize_geodesic(target, 256, 8, seed + i as u64).unwrap();
        worst = worst.max((res.length - closed).abs() / closed);
    }
    let axis = geodesy::optimize_geodesic(Point::new(0.0, 0.0, 1.0), 256, 8, seed).unwrap();
    let axis_gap = (axis.length - std::f64::consts::PI.sqrt()) / std::f64::consts::PI.sqrt();
    let elapsed = start.elapsed();
    gate(
        "2 geodesic oracle",
        worst <= 0.01 && axis_gap.abs() <= 0.01 && elapsed.as_secs() < 300,
        &format!(
            "20/20 targets within 1% (worst {worst:.3e}), axis gap {axis_gap:.3e}, {elapsed:.2?}"
        ),
    );
}

/// 3. Exact calibration anchors: lap_b(x1^2) = 1, lap_b(t) = 0,
///    lap_b(s^2) = 2 to 1e-8; the f = t Bochner identity gives
///    lhs = rhs = 4 to 1e-10.
#[test]
fn criterion_03_exact_calibration_anchors() {
    let x1sq = pharm::make_field(&FieldSpec::Polynomial {
        name: "x1^2".into(),
        coeffs: vec![(2, 0, 0, 1.0)],
    })
    .unwrap();
    let t = pharm::make_field(&FieldSpec::CoordinateT).unwrap();
    let s2 = pharm::make_field(&FieldSpec::Polynomial {
        name: "s^2".into(),
        coeffs: vec![(2, 0, 0, 1.0), (0, 2, 0, 1.0)],
    })
    .unwrap();
    let mut worst = 0.0f64;
    let mut rng = SplitMix64::new(3);
    for _ in 0..50 {
        let p = Point::new(rng.symmetric(3.0), rng.symmetric(3.0), rng.symmetric(3.0));
        worst = worst.max((sublap::sublap(&x1sq, p).unwrap() - 1.0).abs());
        worst = worst.max(sublap::sublap(&t, p).unwrap().abs());
        worst = worst.max((sublap::sublap(&s2, p).unwrap() - 2.0).abs());
    }
    let anchor = bochner::bochner_terms(&t, Point::new(0.8, -1.3, 2.0)).unwrap();
    let anchor_gap = (anchor.lhs - 4.0)
        .abs()
        .max((anchor.hess_term - 4.0).abs())
        .max(anchor.residual.abs());
    gate(
        "3 calibration anchors",
        worst <= 1e-8 && anchor_gap <= 1e-10,
        &format!("laplacian anchors within {worst:.3e}, Bochner t-anchor within {anchor_gap:.3e}"),
    );
}

/// 4. Bochner identity residual at most 1e-5 of scale across the ten-field
///    suite and 100 seeded points; the directional inequality holds for
///    nu in {0.5, 1, 2} with slack at most 1e-5 of scale.
#[test]
fn criterion_04_bochner_suite() {
    let mut rng = SplitMix64::new(77);
    let points: Vec<Point> = (0..100)
        .map(|_| Point::new(rng.uniform(0.3, 2.0), rng.uniform(0.3, 2.0), rng.uniform(0.3, 2.0)))
        .collect();
    let fields = bochner::analytic_test_suite();
    assert_eq!(fields.len(), 10);
    let mut worst_res = 0.0f64;
    let mut worst_slack = 0.0f64;
    for field in &fields {
        for &p in &points {
            let rep = bochner::bochner_terms(field, p).unwrap();
            worst_res = worst_res.max(rep.residual.abs() / rep.scale());
            let terms = bochner::inequality_terms(field, p).unwrap();
            for nu in [0.5, 1.0, 2.0] {
                worst_slack = worst_slack.max((terms.rhs(nu) - terms.lhs) / terms.scale());
            }
        }
    }
    gate(
        "4 Bochner suite",
        worst_res <= 1e-5 && worst_slack <= 1e-5,
        &format!(
            "identity residual {worst_res:.3e}, inequality slack {:.3e} over 10 fields x 100 points",
            worst_slack.max(0.0)
        ),
    );
}

/// 5. Commutation residuals: at most 1e-10 on polynomial fields, 1e-5 on
///    difference-quotient fields.
#[test]
fn criterion_05_commutation_suite() {
    let rep = suites::commutation_suite(7, &Tolerances::default()).unwrap();
    let failed: Vec<_> = rep.entries.iter().filter(|e| !e.pass).collect();
    gate(
        "5 commutation suite",
        rep.all_pass(),
        &format!("{}/{} checks pass{}", rep.passed(), rep.entries.len(), if failed.is_empty() { String::new() } else { format!("; failures {failed:?}") }),
    );
}

/// 6. The measured comparison constant sup r lap_b r is finite,
///    dilation-invariant to 1e-4, stable within 5% under grid refinement,
///    and reported against the claimed 3 and the profile-series 3/2 without
///    asserting either.
#[test]
fn criterion_06_comparison_measurement() {
    let grid = sample::GridSpec::smooth_region(5, 200).generate().unwrap();
    let m = comparison::measure_comparison_constant(&grid).unwrap();
    let dilated: Vec<Point> = grid.iter().map(|&p| dilate(p, 2.0).unwrap()).collect();
    let m_dil = comparison::measure_comparison_constant(&dilated).unwrap();
    let fine = sample::GridSpec::smooth_region(5, 800).generate().unwrap();
    let m_fine = comparison::measure_comparison_constant(&fine).unwrap();
    let dil_gap = (m.sup - m_dil.sup).abs() / m.sup;
    let ref_gap = (m.sup - m_fine.sup).abs() / m.sup;
    gate(
        "6 comparison constant",
        m.sup.is_finite() && dil_gap <= 1e-4 && ref_gap <= 0.05,
        &format!(
            "measured sup = {:.6} (claimed 3, series 3/2); dilation gap {dil_gap:.2e}, refinement gap {ref_gap:.2e}",
            m.sup
        ),
    );
}

/// 7. Analytic dr/dt and d2r/dt2 match difference quotients of the distance
///    to 1e-6 relative off-axis; the products |r0| r and |r00| r^3 have
///    finite suprema stable within 5% under refinement; r0 vanishes
///    identically on the t = 0 plane.
#[test]
fn criterion_07_l31_suite() {
    let coarse = sample::st_lattice((0.05, 3.0), (1e-3, 30.0), 16, 16);
    let fine = sample::st_lattice((0.05, 3.0), (1e-3, 30.0), 32, 32);
    let a = comparison::verify_l31_bounds(&coarse).unwrap();
    let b = comparison::verify_l31_bounds(&fine).unwrap();
    let stable = (a.sup_r0_r - b.sup_r0_r).abs() / a.sup_r0_r <= 0.05
        && (a.sup_r00_r3 - b.sup_r00_r3).abs() / a.sup_r00_r3 <= 0.05;
    gate(
        "7 derivative bounds",
        a.max_rel_err_rt <= 1e-6
            && a.max_rel_err_rtt <= 1e-6
            && a.sup_r0_r.is_finite()
            && a.sup_r00_r3.is_finite()
            && stable
            && a.r0_on_plane_max == 0.0,
        &format!(
            "fd gaps ({:.2e}, {:.2e}); sup|r0|r = {:.4}, sup|r00|r^3 = {:.4}; plane r0 = {}",
            a.max_rel_err_rt, a.max_rel_err_rtt, a.sup_r0_r, a.sup_r00_r3, a.r0_on_plane_max
        ),
    );
}

/// 8. Riccati lab: the flat exact solution is reproduced to 1e-8; m1(0) and
///    m1(1) hit 1/2 and 1 with defining-equation residual at most 1e-14;
///    domination by the bound families holds for
///    (l, k2) in {0,1,4} x {-1,0,1} on their validity ranges.
#[test]
fn criterion_08_riccati_comparison() {
    let flat = comparison::ComparisonParams::new(0.0, 0.0, 0.5, 0.5).unwrap();
    let sol = comparison::riccati_integrate(&flat, 0.5 / 0.1, 0.1, 10.0, 10_000).unwrap();
    let mut flat_err = 0.0f64;
    for (&r, &y) in sol.rs.iter().zip(sol.ys.iter()) {
        flat_err = flat_err.max((y - 0.5 / r).abs() / (0.5 / r));
    }
    let m_anchor = (comparison::m1_of_l(0.0).unwrap() - 0.5)
        .abs()
        .max((comparison::m1_of_l(1.0).unwrap() - 1.0).abs());
    let mut root_res = 0.0f64;
    for l in [0.0, 1.0, 4.0] {
        let m = comparison::m1_of_l(l).unwrap();
        root_res = root_res.max((2.0 * m * m - m - l).abs());
    }
    let mut all_dominated = true;
    let mut worst_violation = f64::NEG_INFINITY;
    for &l in &[0.0, 1.0, 4.0] {
        for &k2 in &[-1.0, 0.0, 1.0] {
            let params = comparison::ComparisonParams::new(k2, l, 0.5, 0.5).unwrap();
            let validity = params.validity_radius();
            let (family, range) = if k2 > 0.0 {
                let big_k = 0.5 * k2;
                let pole = std::f64::consts::PI / big_k.sqrt();
                (
                    comparison::BoundFamily::positive(1.0, big_k).unwrap(),
                    (validity.max(0.1), 0.98 * pole),
                )
            } else if k2 < 0.0 {
                let big_k = 1.5 * k2.abs();
                (
                    comparison::BoundFamily::negative(1.0, big_k).unwrap(),
                    (validity.max(0.1), 20.0),
                )
            } else {
                (
                    comparison::BoundFamily::flat(comparison::m1_of_l(l).unwrap()).unwrap(),
                    (0.1, 20.0),
                )
            };
            let v = comparison::verify_comparison(&params, &family, range, 20_000).unwrap();
            all_dominated &= v.dominated;
            worst_violation = worst_violation.max(v.max_violation);
        }
    }
    gate(
        "8 Riccati comparison",
        flat_err <= 1e-8 && m_anchor <= 1e-14 && root_res <= 1e-14 && all_dominated,
        &format!(
            "flat error {flat_err:.2e}, root residual {root_res:.2e}, 9/9 dominated (worst violation {worst_violation:.2e})"
        ),
    );
}

/// 9. Cutoff certificate: both derivative inequalities hold with the
///    certified constant at 10^4 sampled radii for R in {1, 10, 100}.
#[test]
fn criterion_09_cutoff_certificate() {
    let mut all = true;
    for r_inner in [1.0, 10.0, 100.0] {
        let c = estimates::build_cutoff(r_inner).unwrap();
        let (ok, _) = estimates::certify_cutoff(&c, estimates::CUTOFF_CERT_SAMPLES);
        all &= ok && c.certified_c == std::f64::consts::PI.powi(2);
    }
    gate(
        "9 cutoff certificate",
        all,
        "both inequalities certified with C = pi^2 at 10^4 radii for R in {1, 10, 100}",
    );
}

/// 10. Gradient estimate: every pseudoharmonic catalog field positive on the
///     test ball satisfies sup_ratio < (36/5)(2/b + C2/R) with one shared
///     calibrated C2, for b in {0.5, 1, 4} and R in {1, 2, 4}; constant
///     fields give exactly zero; controls are rejected by precondition.
#[test]
fn criterion_10_gradient_estimate() {
    let rep = suites::gradient_estimate_suite(7, &Tolerances::default()).unwrap();
    let failed: Vec<_> = rep.entries.iter().filter(|e| !e.pass).collect();
    let estimate_checks = rep.entries.iter().filter(|e| e.name.starts_with("estimate[")).count();
    let controls = rep.entries.iter().filter(|e| e.name.starts_with("control_rejected")).count();
    gate(
        "10 gradient estimate",
        rep.all_pass() && estimate_checks > 0 && controls > 0,
        &format!(
            "{} estimate checks and {} control rejections, {}/{} pass{}",
            estimate_checks,
            controls,
            rep.passed(),
            rep.entries.len(),
            if failed.is_empty() { String::new() } else { format!("; failures {failed:?}") }
        ),
    );
}

/// 11. The gauge-power exponent search reaches a normalized residual of at
///     most 1e-8 (admitting the family), or the family is excluded with a
///     published residual curve. Silent hard-coding is the one disallowed
///     outcome; the search must actually locate the optimum.
#[test]
fn criterion_11_pseudoharmonic_calibration() {
    let grid = sample::GridSpec::smooth_region(17, 80).generate().unwrap();
    let cal = pharm::calibrate_gauge_exponent((0.3, 0.7), &grid).unwrap();
    let outcome_valid = if cal.admitted {
        cal.residual <= 1e-8
    } else {
        // exclusion is acceptance-valid only with the residual curve attached
        cal.curve.len() >= 10
    };
    gate(
        "11 gauge calibration",
        outcome_valid,
        &format!(
            "alpha* = {:.9}, normalized residual {:.3e}, admitted = {}",
            cal.alpha, cal.residual, cal.admitted
        ),
    );
}
