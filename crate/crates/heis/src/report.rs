//! Verification report structure shared by the suites and the CLI.

use std::collections::BTreeMap;

/// One named check: `pass` iff `value <= bound` (infinite bounds encode
/// "must be finite"; informational rows use them).
#[derive(Clone, Debug, serde::Serialize)]
pub struct Entry {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Output of one verification suite.
#[derive(Clone, Debug, serde::Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub catalog_version: String,
    /// Convention and configuration stamps echoed into every rendering.
    pub stamps: Vec<(String, String)>,
    pub entries: Vec<Entry>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            catalog_version: crate::pharm::CATALOG_VERSION.to_string(),
            stamps: Vec::new(),
            entries: Vec::new(),
        }
    }

    pub fn stamp(&mut self, key: impl Into<String>, value: impl ToString) {
        self.stamps.push((key.into(), value.to_string()));
    }

    /// Assert `value <= bound` (and finite).
    pub fn check(&mut self, name: impl Into<String>, value: f64, bound: f64) {
        let pass = value.is_finite() && value <= bound;
        self.entries.push(Entry { name: name.into(), value, bound, pass });
    }

    /// Assert with an explicitly computed verdict (strict comparisons).
    pub fn check_with(&mut self, name: impl Into<String>, value: f64, bound: f64, pass: bool) {
        self.entries.push(Entry { name: name.into(), value, bound, pass });
    }

    /// Informational row: passes iff the value is finite.
    pub fn info(&mut self, name: impl Into<String>, value: f64) {
        self.entries.push(Entry {
            name: name.into(),
            value,
            bound: f64::INFINITY,
            pass: value.is_finite(),
        });
    }

    pub fn passed(&self) -> usize {
        self.entries.iter().filter(|e| e.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.entries.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }
}

/// Named tolerances with defaults; the CLI overrides them by name.
#[derive(Clone, Debug)]
pub struct Tolerances {
    map: BTreeMap<String, f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        let mut map = BTreeMap::new();
        for (k, v) in [
            // identity residuals, relative to the dominant term
            ("bochner_residual", 1e-5),
            // the exact f = t anchor
            ("bochner_anchor", 1e-10),
            // slack allowed in the directional inequality
            ("bochner_slack", 1e-5),
            // commutation residuals on polynomial / difference-quotient fields
            ("commutation_poly", 1e-10),
            ("commutation_fd", 1e-5),
            // agreement of the two closed distance forms, relative to r
            ("consistency_gap", 1e-10),
            // frame-norm eikonal deviation |(X1 r)^2 + (X2 r)^2 - 1|
            ("eikonal_dev", 1e-5),
            // analytic t-derivatives against difference quotients
            ("l31_fd_rt", 1e-6),
            ("l31_fd_rtt", 1e-6),
            // grid-refinement stability of measured suprema
            ("refinement_stability", 0.05),
            // dilation invariance of scale-free measurements
            ("dilation_invariance", 1e-4),
            // reproduction of the exact flat Riccati solution
            ("riccati_exact", 1e-8),
            // defining-equation residual of the flat-root constant
            ("m1_residual", 1e-14),
            // trajectory-vs-closed-form relative gap
            ("geodesic_rel", 1e-2),
            // discrete length may undershoot the infimum by at most this
            ("geodesic_lower", 1e-3),
            // refinement may lengthen the incumbent by at most this
            ("geodesic_refine", 1e-6),
            // normalized pseudoharmonicity threshold
            ("pharm_residual", 1e-8),
        ] {
            map.insert(k.to_string(), v);
        }
        Tolerances { map }
    }
}

impl Tolerances {
    pub fn get(&self, name: &str) -> f64 {
        *self
            .map
            .get(name)
            .unwrap_or_else(|| panic!("unknown tolerance name: {name}"))
    }

    /// Override by name; unknown names are accepted (future suites may
    /// consume them) but never read back silently.
    pub fn set(&mut self, name: &str, value: f64) {
        self.map.insert(name.to_string(), value);
    }

    pub fn names(&self) -> impl Iterator<Item = (&String, &f64)> {
        self.map.iter()
    }
}
