//! Verification reports: one record per checked value, serialized to stable
//! JSON.

use ncfourier_core::quadrature::QuadratureSpec;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    /// What the case checks, in words.
    pub reference: String,
    pub expected: f64,
    pub computed: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Case {
    /// `passed` is derived: a NaN residual never passes.
    pub fn new(
        id: impl Into<String>,
        reference: impl Into<String>,
        expected: f64,
        computed: f64,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            id: id.into(),
            reference: reference.into(),
            expected,
            computed,
            residual,
            tolerance,
            passed: residual <= tolerance,
        }
    }

    /// Absolute difference as the residual.
    pub fn absolute(id: impl Into<String>, reference: impl Into<String>, expected: f64, computed: f64, tol: f64) -> Self {
        Self::new(id, reference, expected, computed, (computed - expected).abs(), tol)
    }

    /// Difference divided by `scale`.
    pub fn relative(
        id: impl Into<String>,
        reference: impl Into<String>,
        expected: f64,
        computed: f64,
        scale: f64,
        tol: f64,
    ) -> Self {
        Self::new(id, reference, expected, computed, (computed - expected).abs() / scale, tol)
    }

    /// A case for an operation that failed outright.
    pub fn errored(id: impl Into<String>, reference: impl Into<String>, tol: f64, err: &dyn std::fmt::Display) -> Self {
        let reference = format!("{}; error: {err}", reference.into());
        Self::new(id, reference, f64::NAN, f64::NAN, f64::NAN, tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureMeta {
    pub radial_order: usize,
    pub angular_orders: (usize, usize),
    pub box_orders: Vec<usize>,
    pub cutoff_radius: f64,
    pub target_rel_tol: f64,
}

impl From<&QuadratureSpec> for QuadratureMeta {
    fn from(q: &QuadratureSpec) -> Self {
        Self {
            radial_order: q.radial_order,
            angular_orders: q.angular_orders,
            box_orders: q.box_orders.clone(),
            cutoff_radius: q.cutoff_radius,
            target_rel_tol: q.target_rel_tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub criterion: String,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub quadrature: QuadratureMeta,
    pub seed: u64,
    /// Only present when requested, so that default reports are reproducible
    /// byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: u32,
    pub suite: String,
    pub cases: Vec<Case>,
    pub meta: Meta,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only plain data")
    }

    /// `id,reference,expected,computed,residual,tolerance,passed` rows.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "reference", "expected", "computed", "residual", "tolerance", "passed"])
            .expect("in-memory writer");
        for c in &self.cases {
            w.write_record([
                c.id.clone(),
                c.reference.clone(),
                format!("{:?}", c.expected),
                format!("{:?}", c.computed),
                format!("{:?}", c.residual),
                format!("{:?}", c.tolerance),
                c.passed.to_string(),
            ])
            .expect("in-memory writer");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv output is utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passed_follows_the_residual() {
        assert!(Case::absolute("a", "x", 1.0, 1.0 + 1e-13, 1e-12).passed);
        assert!(!Case::absolute("a", "x", 1.0, 1.1, 1e-12).passed);
        assert!(!Case::new("a", "x", 0.0, f64::NAN, f64::NAN, 1.0).passed);
        assert!(Case::absolute("a", "x", 1.0, 1.0, 0.0).passed);
    }

    #[test]
    fn floats_use_shortest_round_trip_form() {
        let r = VerificationReport {
            version: SCHEMA_VERSION,
            suite: "t".into(),
            cases: vec![Case::absolute("a", "x", 0.1, 1.0 / 3.0, 1.0)],
            meta: Meta { quadrature: (&QuadratureSpec::default()).into(), seed: 1, timings: None },
        };
        let text = r.to_json();
        assert!(text.contains("\"expected\": 0.1,"));
        assert!(text.contains("0.3333333333333333"));
        assert!(!text.contains("timings"));
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
