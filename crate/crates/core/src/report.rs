//! Machine-readable check records: one JSON object per verified identity,
//! with a witness on success and a counterexample on failure.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub params: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
}

impl CheckRecord {
    pub fn new(check: &str, params: serde_json::Value, passed: bool) -> Self {
        CheckRecord {
            check: check.to_string(),
            params,
            samples: None,
            seed: None,
            status: if passed {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            witness: None,
            counterexample: None,
        }
    }

    pub fn with_sampling(mut self, samples: u64, seed: u64) -> Self {
        self.samples = Some(samples);
        self.seed = Some(seed);
        self
    }

    pub fn with_witness(mut self, witness: serde_json::Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_counterexample(mut self, counterexample: serde_json::Value) -> Self {
        self.counterexample = Some(counterexample);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}
