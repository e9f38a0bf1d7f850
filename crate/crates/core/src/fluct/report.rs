use std::collections::BTreeMap;

use serde::Serialize;

/// One pass/fail assertion with the value and the accepted band.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateCheck {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub band: [f64; 2],
}

/// Result of one seeded experiment: named estimates with standard errors and
/// the gates evaluated on them.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub seed: u64,
    #[serde(rename = "N")]
    pub n: usize,
    pub samples: usize,
    pub estimates: BTreeMap<String, f64>,
    pub stderr: BTreeMap<String, f64>,
    pub asserts: Vec<GateCheck>,
}

impl ExperimentReport {
    pub fn new(experiment: impl Into<String>, seed: u64, n: usize, samples: usize) -> Self {
        Self {
            experiment: experiment.into(),
            seed,
            n,
            samples,
            estimates: BTreeMap::new(),
            stderr: BTreeMap::new(),
            asserts: Vec::new(),
        }
    }

    pub fn estimate(&mut self, name: impl Into<String>, value: f64) {
        self.estimates.insert(name.into(), value);
    }

    pub fn estimate_with_se(&mut self, name: impl Into<String>, value: f64, se: f64) {
        assert!(se.is_finite() && se > 0.0, "standard error must be finite and positive");
        let name = name.into();
        self.estimates.insert(name.clone(), value);
        self.stderr.insert(name, se);
    }

    /// Record a gate `lo ≤ value ≤ hi`; returns whether it passed.
    pub fn gate(&mut self, name: impl Into<String>, value: f64, lo: f64, hi: f64) -> bool {
        let pass = value >= lo && value <= hi;
        self.asserts.push(GateCheck { name: name.into(), pass, value, band: [lo, hi] });
        pass
    }

    pub fn all_pass(&self) -> bool {
        self.asserts.iter().all(|a| a.pass)
    }

    pub fn failed_gates(&self) -> impl Iterator<Item = &GateCheck> {
        self.asserts.iter().filter(|a| !a.pass)
    }
}
