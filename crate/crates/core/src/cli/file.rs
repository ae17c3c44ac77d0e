//! The JSON curve-file format.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::certify::{ExternalCurve, ExternalLocal, ExternalTwist};
use crate::exact::{parse_rat, rat_to_string, QuadElem};
use crate::galois::{AssumeFlag, Assumptions};
use crate::model::{BaseField, Curve, FieldAssumptions};

use super::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldSpec {
    Rational,
    RealQuadratic {
        d: i64,
    },
    External {
        label: String,
        #[serde(default)]
        assumptions: FieldAssumptions,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadCoeff {
    pub x: String,
    pub y: String,
}

/// `"n/d"` for a rational, `{"x": .., "y": ..}` for `x + y√d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Rational(String),
    Quadratic(QuadCoeff),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Coeff>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assume: Vec<AssumeFlag>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub j_zero: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub local: Vec<ExternalLocal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<ExternalTwist>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurveInput {
    Computable(Box<Curve>),
    External(ExternalCurve),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParsedCurve {
    pub name: Option<String>,
    pub curve: CurveInput,
    pub assumptions: Assumptions,
}

fn coeff(c: &Coeff, i: usize, d: Option<i64>) -> Result<QuadElem, CliError> {
    let ctx = |e: crate::exact::ExactError| CliError::Input(format!("a[{i}]: {e}"));
    match (c, d) {
        (Coeff::Rational(s), _) => Ok(QuadElem::from_rat(parse_rat(s).map_err(ctx)?)),
        (Coeff::Quadratic(q), Some(d)) => {
            Ok(QuadElem::new(parse_rat(&q.x).map_err(ctx)?, parse_rat(&q.y).map_err(ctx)?, d))
        }
        (Coeff::Quadratic(_), None) => {
            Err(CliError::Input(format!("a[{i}]: {{x, y}} pairs need a real quadratic field")))
        }
    }
}

impl CurveFile {
    pub fn parse(text: &str) -> Result<CurveFile, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("curve file: {e}")))
    }

    pub fn into_curve(self) -> Result<ParsedCurve, CliError> {
        let assumptions = Assumptions::new(self.assume.iter().copied());
        for p in [5, 7] {
            assumptions.for_prime(p).map_err(|e| CliError::Input(e.to_string()))?;
        }
        let external_only = self.j_zero || !self.local.is_empty() || self.twist.is_some();
        let curve = match self.field {
            FieldSpec::External { label, assumptions: fa } => {
                if self.a.is_some() {
                    return Err(CliError::Input("external fields take local data, not a-invariants".into()));
                }
                CurveInput::External(ExternalCurve {
                    label,
                    assumptions: fa,
                    j_zero: self.j_zero,
                    local: self.local,
                    twist: self.twist,
                })
            }
            spec => {
                if external_only {
                    return Err(CliError::Input("j_zero, local and twist are only for external fields".into()));
                }
                let field = match spec {
                    FieldSpec::Rational => BaseField::Rationals,
                    FieldSpec::RealQuadratic { d } => {
                        BaseField::real_quadratic(d).map_err(|e| CliError::Input(format!("field.d: {e}")))?
                    }
                    FieldSpec::External { .. } => unreachable!(),
                };
                let a = self.a.ok_or_else(|| CliError::Input("missing a-invariants".into()))?;
                if a.len() != 5 {
                    return Err(CliError::Input(format!("expected 5 a-invariants, got {}", a.len())));
                }
                let d = field.radicand();
                let coeffs: Vec<QuadElem> =
                    a.iter().enumerate().map(|(i, c)| coeff(c, i, d)).collect::<Result<_, _>>()?;
                let arr: [QuadElem; 5] = coeffs.try_into().expect("length checked");
                let c = Curve::new(field, arr).map_err(|e| CliError::Input(format!("a: {e}")))?;
                CurveInput::Computable(Box::new(c))
            }
        };
        Ok(ParsedCurve { name: self.name, curve, assumptions })
    }

    /// The canonical file for a parsed curve.
    pub fn from_parsed(p: &ParsedCurve) -> CurveFile {
        let assume: Vec<AssumeFlag> = p.assumptions.flags.iter().copied().collect();
        match &p.curve {
            CurveInput::Computable(c) => {
                let quadratic = c.field().radicand().is_some();
                let a = c
                    .a()
                    .iter()
                    .map(|x| {
                        if quadratic {
                            Coeff::Quadratic(QuadCoeff { x: rat_to_string(x.x()), y: rat_to_string(x.y()) })
                        } else {
                            Coeff::Rational(rat_to_string(x.x()))
                        }
                    })
                    .collect();
                let field = match c.field() {
                    BaseField::RealQuadratic(d) => FieldSpec::RealQuadratic { d: *d },
                    _ => FieldSpec::Rational,
                };
                CurveFile {
                    name: p.name.clone(),
                    field,
                    a: Some(a),
                    assume,
                    j_zero: false,
                    local: Vec::new(),
                    twist: None,
                }
            }
            CurveInput::External(e) => CurveFile {
                name: p.name.clone(),
                field: FieldSpec::External { label: e.label.clone(), assumptions: e.assumptions.clone() },
                a: None,
                assume,
                j_zero: e.j_zero,
                local: e.local.clone(),
                twist: e.twist.clone(),
            },
        }
    }

    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("curve file serialises");
        s.push('\n');
        s
    }
}

pub fn parse_curve_str(text: &str) -> Result<ParsedCurve, CliError> {
    CurveFile::parse(text)?.into_curve()
}

pub fn parse_curve_file(path: &Path) -> Result<ParsedCurve, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_curve_str(&text).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}
