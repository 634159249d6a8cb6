//! Structured outcomes of theorem checks.

use std::fmt;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClaimId {
    Formula1,
    #[serde(rename = "Thm2.1")]
    Thm2_1,
    #[serde(rename = "Thm2.2")]
    Thm2_2,
    Eq3,
    Eq6,
    #[serde(rename = "Thm3.1")]
    Thm3_1,
    #[serde(rename = "Thm4.1")]
    Thm4_1,
    #[serde(rename = "Cor4.2")]
    Cor4_2,
    ToricDecomp,
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClaimId::Formula1 => "Formula1",
            ClaimId::Thm2_1 => "Thm2.1",
            ClaimId::Thm2_2 => "Thm2.2",
            ClaimId::Eq3 => "Eq3",
            ClaimId::Eq6 => "Eq6",
            ClaimId::Thm3_1 => "Thm3.1",
            ClaimId::Thm4_1 => "Thm4.1",
            ClaimId::Cor4_2 => "Cor4.2",
            ClaimId::ToricDecomp => "ToricDecomp",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub satisfied: bool,
    pub detail: String,
}

impl Hypothesis {
    pub fn new(name: &str, satisfied: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            satisfied,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum Verdict {
    Verified,
    Falsified,
    Skipped {
        hypothesis: String,
    },
    /// A check run with failed hypotheses because the caller forced it.
    Exploratory {
        identity_holds: bool,
    },
}

impl Verdict {
    /// Short label used in summaries.
    pub fn label(&self) -> String {
        match self {
            Verdict::Verified => "Verified".into(),
            Verdict::Falsified => "Falsified".into(),
            Verdict::Skipped { hypothesis } => format!("Skipped({hypothesis})"),
            Verdict::Exploratory { identity_holds } => format!("Exploratory({identity_holds})"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim_id: ClaimId,
    pub params: Map<String, Value>,
    pub hypotheses: Vec<Hypothesis>,
    pub lhs: Value,
    pub rhs: Value,
    /// Further computed objects (Newton polygons, alternate orientations, ...).
    pub details: Map<String, Value>,
    pub verdict: Verdict,
    /// Number of series terms or extension degrees the verdict rests on.
    pub truncation: Option<usize>,
    pub notes: Vec<String>,
    pub wall_ms: u64,
}

impl VerificationReport {
    pub fn new(claim_id: ClaimId) -> Self {
        Self {
            claim_id,
            params: Map::new(),
            hypotheses: Vec::new(),
            lhs: Value::Null,
            rhs: Value::Null,
            details: Map::new(),
            verdict: Verdict::Skipped {
                hypothesis: "NotRun".into(),
            },
            truncation: None,
            notes: Vec::new(),
            wall_ms: 0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.params
            .insert(key.into(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.details
            .insert(key.into(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn hypothesis(&mut self, h: Hypothesis) -> &mut Self {
        self.hypotheses.push(h);
        self
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.satisfied)
    }

    pub fn first_failed(&self) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| !h.satisfied)
    }

    /// Marks the report skipped on its first failed hypothesis.
    pub fn skip(&mut self) {
        let name = self
            .first_failed()
            .map(|h| h.name.clone())
            .unwrap_or_else(|| "Unknown".into());
        self.verdict = Verdict::Skipped { hypothesis: name };
    }

    /// Sets the verdict from the outcome of the identity check.
    pub fn conclude(&mut self, identity_holds: bool) {
        self.verdict = if !self.hypotheses_hold() {
            Verdict::Exploratory { identity_holds }
        } else if identity_holds {
            Verdict::Verified
        } else {
            Verdict::Falsified
        };
    }
}
