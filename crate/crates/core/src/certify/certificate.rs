use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::exact::{rat_to_string, QuadElem};
use crate::galois::IrreducibilityStatus;
use crate::model::{BaseField, Curve};

use super::citation::Citation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HypothesisStatus {
    Verified,
    Assumed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisRecord {
    pub description: String,
    pub status: HypothesisStatus,
    pub evidence: Value,
}

impl HypothesisRecord {
    pub fn verified(description: impl Into<String>, evidence: Value) -> Self {
        HypothesisRecord { description: description.into(), status: HypothesisStatus::Verified, evidence }
    }

    pub fn assumed(description: impl Into<String>, evidence: Value) -> Self {
        HypothesisRecord { description: description.into(), status: HypothesisStatus::Assumed, evidence }
    }

    /// Irreducibility hypothesis backed by a status; `None` unless the status
    /// is Irreducible.
    pub fn irreducible(p: u64, status: &IrreducibilityStatus) -> Option<Self> {
        if !status.is_irreducible() {
            return None;
        }
        let desc = format!("residual representation mod {p} is irreducible");
        Some(if status.is_assumed() {
            HypothesisRecord::assumed(desc, json!({ "flag": format!("irreducible-{p}") }))
        } else {
            HypothesisRecord::verified(desc, status.to_json())
        })
    }

    pub fn reducible(p: u64, status: &IrreducibilityStatus) -> Option<Self> {
        if !status.is_reducible() {
            return None;
        }
        let desc = format!("residual representation mod {p} is reducible");
        Some(if status.is_assumed() {
            HypothesisRecord::assumed(desc, json!({ "flag": format!("reducible-{p}") }))
        } else {
            HypothesisRecord::verified(desc, status.to_json())
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertStep {
    pub claim: String,
    pub citation: String,
    pub hypotheses: Vec<HypothesisRecord>,
}

impl CertStep {
    pub fn new(claim: impl Into<String>, citation: Citation, hypotheses: Vec<HypothesisRecord>) -> Self {
        CertStep { claim: claim.into(), citation: citation.to_string(), hypotheses }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Modular,
    /// `p = 5`, potentially supersingular, `v(j) ≡ 1 mod 3`.
    ExceptionalCase1,
    /// `p = 7`, potentially ordinary, `v(j) ≡ 2 mod 3`.
    ExceptionalCase2,
    Inconclusive(String),
}

impl Verdict {
    /// Process exit status for a verdict.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Inconclusive(_) => 2,
            _ => 0,
        }
    }

    pub fn is_modular(&self) -> bool {
        *self == Verdict::Modular
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Modular => f.write_str("Modular"),
            Verdict::ExceptionalCase1 => f.write_str("Exceptional Case 1"),
            Verdict::ExceptionalCase2 => f.write_str("Exceptional Case 2"),
            Verdict::Inconclusive(r) => write!(f, "Inconclusive({r})"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "Modular" => Ok(Verdict::Modular),
            "Exceptional Case 1" => Ok(Verdict::ExceptionalCase1),
            "Exceptional Case 2" => Ok(Verdict::ExceptionalCase2),
            _ => s
                .strip_prefix("Inconclusive(")
                .and_then(|r| r.strip_suffix(')'))
                .map(|r| Verdict::Inconclusive(r.to_string()))
                .ok_or_else(|| serde::de::Error::custom(format!("unknown verdict {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub curve: Value,
    pub field: Value,
    pub steps: Vec<CertStep>,
    pub verdict: Verdict,
    pub assumptions: Vec<String>,
}

impl Certificate {
    /// Canonical JSON: sorted keys, two-space indent, trailing newline.
    pub fn to_json_string(&self) -> String {
        let v = serde_json::to_value(self).expect("certificate serialises");
        let mut s = serde_json::to_string_pretty(&v).expect("value serialises");
        s.push('\n');
        s
    }

    pub fn hypotheses(&self) -> impl Iterator<Item = &HypothesisRecord> {
        self.steps.iter().flat_map(|s| s.hypotheses.iter())
    }

    /// Every hypothesis of a Modular verdict is Verified or Assumed, and each
    /// assumed one traces back to a declared assumption.
    pub fn passes_soundness_gate(&self) -> bool {
        if !self.verdict.is_modular() {
            return true;
        }
        !self.steps.is_empty()
            && self.steps.iter().all(|s| !s.citation.is_empty())
            && self.hypotheses().all(|h| match h.status {
                HypothesisStatus::Verified => true,
                HypothesisStatus::Assumed => !self.assumptions.is_empty(),
            })
    }
}

pub fn quad_json(x: &QuadElem) -> Value {
    if x.radicand().is_none() {
        Value::String(rat_to_string(x.x()))
    } else {
        json!({ "x": rat_to_string(x.x()), "y": rat_to_string(x.y()) })
    }
}

pub fn field_json(field: &BaseField) -> Value {
    match field {
        BaseField::Rationals => json!({ "type": "rational" }),
        BaseField::RealQuadratic(d) => json!({ "type": "real_quadratic", "d": d }),
        BaseField::External { label, assumptions } => {
            json!({ "type": "external", "label": label, "assumptions": assumptions })
        }
    }
}

/// Coefficients over `ℚ(√d)` always echo as `{x, y}` pairs.
fn coeff_json(field: &BaseField, x: &QuadElem) -> Value {
    match field {
        BaseField::RealQuadratic(_) => json!({ "x": rat_to_string(x.x()), "y": rat_to_string(x.y()) }),
        _ => quad_json(x),
    }
}

pub fn curve_json(curve: &Curve) -> Value {
    let f = curve.field();
    json!({
        "a": curve.a().iter().map(|c| coeff_json(f, c)).collect::<Vec<_>>(),
        "j": coeff_json(f, &curve.j()),
        "disc": coeff_json(f, &curve.disc()),
    })
}
