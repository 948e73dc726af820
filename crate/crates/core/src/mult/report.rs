//! Report rows and their JSON and CSV forms.

use serde::{Deserialize, Serialize};

use super::Method;
use crate::error::{Error, Result};

/// What a row was computed from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportInputs {
    pub q: u64,
    /// Size of the ambient general linear group.
    pub n: usize,
    pub theta_orbit_rep: Option<u64>,
    pub chi1: Option<u64>,
    pub chi2: Option<u64>,
    pub specs: Vec<String>,
    pub subgroup: String,
    /// Hash of the tower descriptor.
    pub tower: String,
}

/// One computed case, optionally compared with a prediction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultReport {
    pub verifier: String,
    pub inputs: ReportInputs,
    pub method: Option<Method>,
    pub m: Option<u64>,
    #[serde(rename = "m_E")]
    pub m_e: Option<u64>,
    pub m_tilde: Option<u64>,
    pub predicted: String,
    pub computed: String,
    pub pass: bool,
    /// Outside the hypotheses of the statement being checked: reported, but
    /// not counted against the sweep.
    pub finding: bool,
    pub counterexamples: Vec<String>,
    pub wall_ms: u64,
}

impl MultReport {
    pub fn new(verifier: &str, inputs: ReportInputs) -> Self {
        MultReport {
            verifier: verifier.to_string(),
            inputs,
            method: None,
            m: None,
            m_e: None,
            m_tilde: None,
            predicted: String::new(),
            computed: String::new(),
            pass: false,
            finding: false,
            counterexamples: Vec::new(),
            wall_ms: 0,
        }
    }
}

pub const CSV_HEADER: [&str; 10] =
    ["verifier", "q", "n", "theta_orbit_rep", "chi1", "chi2", "predicted", "computed", "pass", "wall_ms"];

/// The rows of one verifier run, in deterministic order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub verifier: String,
    pub rows: Vec<MultReport>,
}

impl Sweep {
    pub fn new(verifier: &str, rows: Vec<MultReport>) -> Self {
        Sweep { verifier: verifier.to_string(), rows }
    }

    /// Every row that is not a finding passed.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass || r.finding)
    }

    pub fn failures(&self) -> Vec<&MultReport> {
        self.rows.iter().filter(|r| !r.pass && !r.finding).collect()
    }

    pub fn findings(&self) -> Vec<&MultReport> {
        self.rows.iter().filter(|r| r.finding).collect()
    }

    /// `Ok` when [`Sweep::passed`], else a mismatch carrying the first
    /// failing row.
    pub fn into_result(self) -> Result<Self> {
        match self.failures().first() {
            None => Ok(self),
            Some(r) => Err(Error::PredictorMismatch(format!(
                "{}: predicted {} but computed {} for {:?}",
                r.verifier, r.predicted, r.computed, r.inputs.specs
            ))),
        }
    }

    pub fn extend(&mut self, other: Sweep) {
        self.rows.extend(other.rows);
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_csv(&self) -> Result<String> {
        let opt = |x: Option<u64>| x.map(|v| v.to_string()).unwrap_or_default();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).map_err(csv_error)?;
        for r in &self.rows {
            w.write_record([
                r.verifier.clone(),
                r.inputs.q.to_string(),
                r.inputs.n.to_string(),
                opt(r.inputs.theta_orbit_rep),
                opt(r.inputs.chi1),
                opt(r.inputs.chi2),
                r.predicted.clone(),
                r.computed.clone(),
                r.pass.to_string(),
                r.wall_ms.to_string(),
            ])
            .map_err(csv_error)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_shapes() {
        let mut r = MultReport::new("linear-periods", ReportInputs { q: 2, n: 4, theta_orbit_rep: Some(3), ..Default::default() });
        r.predicted = "1".into();
        r.computed = "1".into();
        r.pass = true;
        let s = Sweep::new("linear-periods", vec![r]);
        assert_eq!(
            s.to_csv().unwrap(),
            "verifier,q,n,theta_orbit_rep,chi1,chi2,predicted,computed,pass,wall_ms\nlinear-periods,2,4,3,,,1,1,true,0\n"
        );
        let v: serde_json::Value = serde_json::from_str(&s.to_json().unwrap()).unwrap();
        let row = &v["rows"][0];
        for key in ["inputs", "m", "m_E", "m_tilde", "predicted", "computed", "pass", "counterexamples", "wall_ms"] {
            assert!(row.get(key).is_some(), "{key}");
        }
        assert!(s.passed());
        let back: Sweep = serde_json::from_str(&s.to_json().unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn findings_do_not_fail() {
        let mut r = MultReport::new("x", ReportInputs::default());
        r.finding = true;
        let mut s = Sweep::new("x", vec![r.clone()]);
        assert!(s.passed());
        r.finding = false;
        s.rows.push(r);
        assert!(!s.passed());
        assert!(matches!(s.into_result(), Err(Error::PredictorMismatch(_))));
    }
}
