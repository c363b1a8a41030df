//! JSON run reports.
//!
//! Reports are deterministic for identical invocations apart from the
//! `timings_ms` block; consumers comparing runs should drop that key.
//! Every reported number carries its provenance: `closed_form` values are
//! exact, `sampled` values come from grids and refinement, `user` values
//! were supplied on the command line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use univalence::suite::SuiteRow;
use univalence::{Certificate, CollisionReport, KEstimate, KSource};

pub const SCHEMA: &str = "univalence-report/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    Sampled,
    User,
}

impl From<KSource> for Provenance {
    fn from(source: KSource) -> Self {
        match source {
            KSource::ClosedForm => Provenance::ClosedForm,
            KSource::GridRefined => Provenance::Sampled,
            KSource::UserSupplied => Provenance::User,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProvenancedValue {
    pub value: f64,
    pub provenance: Provenance,
}

impl ProvenancedValue {
    pub fn new(value: f64, provenance: Provenance) -> Self {
        Self { value, provenance }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ResultEntry {
    KEstimate {
        /// Preferred value: the closed form when one exists, else the grid
        /// estimate.
        headline: ProvenancedValue,
        grid: KEstimate,
        #[serde(skip_serializing_if = "Option::is_none")]
        closed_form: Option<ProvenancedValue>,
        /// Set when grid and closed form disagree by more than 1e-4.
        disagreement: bool,
    },
    Certificate {
        #[serde(flatten)]
        certificate: Certificate,
    },
    Collision {
        #[serde(flatten)]
        report: CollisionReport,
    },
    EnclosingDisk {
        c: ProvenancedValue,
    },
    Zeta {
        p: f64,
        value: ProvenancedValue,
    },
    Plot {
        path: String,
        rings: usize,
        spokes: usize,
        width: u32,
        height: u32,
    },
    Demo {
        all_passed: bool,
        rows: Vec<SuiteRow>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub tool_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub results: Vec<ResultEntry>,
    pub warnings: Vec<String>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: Vec::new(),
            warnings: Vec::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn timing(&mut self, stage: &str, millis: f64) {
        self.timings_ms.insert(stage.to_string(), millis);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
