//! The decision engine: local analysis at 5 and 7, the mod 7 dispatch, and
//! the global pipeline with its semistabilising-twist branch.

mod certificate;
pub mod citation;
mod external;
mod local;
mod twist;

use serde_json::json;
use thiserror::Error;

pub use certificate::{
    curve_json, field_json, quad_json, CertStep, Certificate, HypothesisRecord, HypothesisStatus, Verdict,
};
pub use citation::Citation;
pub use external::{certify_external, external_local_analysis, ExternalCurve, ExternalLocal, ExternalTwist};
pub use local::{certify_at_7, local_modularity_analysis, ExceptionalCase, LocalAnalysis, LocalOutcome};
pub use twist::{find_semistabilizing_twist, TwistResult};

use crate::exact::ExactError;
use crate::galois::{irreducibility_status, Assumptions, GaloisError, IrreducibilityStatus, DEFAULT_L_BOUND};
use crate::grouptheory::{cached_audit, GroupError};
use crate::inertia::InertiaError;
use crate::localred::LocalError;
use crate::model::{BaseField, Curve, ModelError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("semistable reduction at {0}: use semistable branch")]
    UseSemistableBranch(String),
    #[error("hypothesis failure: {0}")]
    HypothesisFailure(String),
    #[error("irreducibility mod {0} not established")]
    NotIrreducible(u64),
    #[error("no semistabilising twist: {0}")]
    TwistNotFound(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Inertia(#[from] InertiaError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Largest residue-field norm scanned for Frobenius witnesses.
    pub l_bound: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { l_bound: DEFAULT_L_BOUND }
    }
}

/// `None` when the field satisfies the hypotheses; otherwise the reason.
pub fn unsupported_field(field: &BaseField) -> Option<String> {
    let d = match field {
        BaseField::Rationals => return None,
        BaseField::RealQuadratic(d) => *d,
        BaseField::External { .. } => return Some("external field needs supplied local data".into()),
    };
    let ramified: Vec<String> = [3, 5, 7].iter().filter(|&&p| d % p == 0).map(|p| p.to_string()).collect();
    if ramified.is_empty() {
        return None;
    }
    let mut reason = format!("unsupported field: ramified at {}", ramified.join(", "));
    if d == 5 {
        reason.push_str(", √5 ∈ K");
    }
    Some(reason)
}

fn field_record(field: &BaseField) -> HypothesisRecord {
    HypothesisRecord::verified(
        "K is totally real, abelian over Q and unramified at 3, 5 and 7",
        json!({ "field": field.to_string(), "discriminant": field.discriminant() }),
    )
}

fn assumption_strings(a: &Assumptions) -> Vec<String> {
    a.flags.iter().map(|f| f.to_string()).collect()
}

fn certificate(curve: &Curve, steps: Vec<CertStep>, verdict: Verdict, a: &Assumptions) -> Certificate {
    Certificate {
        curve: curve_json(curve),
        field: field_json(curve.field()),
        steps,
        verdict,
        assumptions: assumption_strings(a),
    }
}

fn bound_text(s: &IrreducibilityStatus, p: u64) -> String {
    match s {
        IrreducibilityStatus::Unknown { search_bound, reason } => {
            format!("mod {p} unknown (Frobenius norm bound {search_bound}; {reason})")
        }
        IrreducibilityStatus::Irreducible { .. } => format!("mod {p} irreducible"),
        IrreducibilityStatus::Reducible { .. } => format!("mod {p} reducible"),
    }
}

/// The group-theoretic steps of the both-reducible branch, backed by the
/// Borel audit.
pub fn group_argument_steps(s5: &IrreducibilityStatus, s7: &IrreducibilityStatus) -> Vec<CertStep> {
    let audit = cached_audit();
    let mut reducible: Vec<HypothesisRecord> = Vec::new();
    reducible.extend(HypothesisRecord::reducible(5, s5));
    reducible.extend(HypothesisRecord::reducible(7, s7));
    vec![
        CertStep::new(
            "both residual representations land in Borel subgroups, of orders 80 and 252",
            Citation::BorelOrders,
            {
                let mut h = reducible;
                h.push(HypothesisRecord::verified(
                    "Borel subgroup orders by enumeration",
                    json!({ "borel_order_5": audit.borel_order_5, "borel_order_7": audit.borel_order_7 }),
                ));
                h
            },
        ),
        CertStep::new(
            "the inertia image at a prime above 3 is the same for E[5] and E[7], so its order divides gcd(80, 252) = 4",
            Citation::InertiaIndependence,
            vec![HypothesisRecord::verified("gcd of Borel orders", json!({ "gcd": audit.gcd_value }))],
        ),
        CertStep::new(
            "B(F_7) has no element of order 4, so the inertia image is not cyclic of order 4 and a twist by a uniformizer is semistable locally",
            Citation::BorelOrders,
            vec![HypothesisRecord::verified(
                "order-4 elements of B(F_7)",
                json!({ "order4_elements_in_b7": audit.order4_elements_in_b7, "order4_cyclic_count_in_b7": audit.order4_cyclic_count_in_b7 }),
            )],
        ),
    ]
}

/// Runs the pipeline on a curve over ℚ or a real quadratic field.
pub fn certify(curve: &Curve, assumptions: &Assumptions, opts: &CertifyOptions) -> Result<Certificate, CertifyError> {
    if let Some(reason) = unsupported_field(curve.field()) {
        return Ok(certificate(curve, Vec::new(), Verdict::Inconclusive(reason), assumptions));
    }
    let field = field_record(curve.field());
    let j = curve.j();

    if j.is_zero() {
        let steps = vec![CertStep::new(
            "j(E) = 0, so E is modular after descending a solvable base change",
            Citation::CmBaseChange,
            vec![field, HypothesisRecord::verified("j(E) = 0", json!({ "j": quad_json(&j) }))],
        )];
        return Ok(certificate(curve, steps, Verdict::Modular, assumptions));
    }

    let s7 = irreducibility_status(curve, 7, assumptions, opts.l_bound)?;
    if s7.is_irreducible() {
        let mut steps = certify_at_7(curve, &s7)?;
        steps.insert(0, CertStep::new("base field hypotheses", Citation::FieldHypotheses, vec![field]));
        return Ok(certificate(curve, steps, Verdict::Modular, assumptions));
    }

    let s5 = irreducibility_status(curve, 5, assumptions, opts.l_bound)?;
    if s5.is_irreducible() {
        let irr = HypothesisRecord::irreducible(5, &s5).expect("irreducible");
        let steps = vec![
            CertStep::new("base field hypotheses", Citation::FieldHypotheses, vec![field.clone()]),
            CertStep::new(
                "E is modular",
                Citation::Thorne,
                vec![
                    irr,
                    field,
                    HypothesisRecord::verified(
                        "√5 ∉ K",
                        json!({ "field": curve.field().to_string(), "reason": "K is unramified at 5" }),
                    ),
                ],
            ),
        ];
        return Ok(certificate(curve, steps, Verdict::Modular, assumptions));
    }

    if s5.is_reducible() && s7.is_reducible() {
        let mut steps = vec![CertStep::new("base field hypotheses", Citation::FieldHypotheses, vec![field.clone()])];
        steps.extend(group_argument_steps(&s5, &s7));
        let tw = match find_semistabilizing_twist(curve) {
            Ok(t) => t,
            Err(CertifyError::TwistNotFound(why)) => {
                return Ok(certificate(
                    curve,
                    steps,
                    Verdict::Inconclusive(format!("both representations reducible but {why}")),
                    assumptions,
                ))
            }
            Err(e) => return Err(e),
        };
        let d = quad_json(&tw.d);
        steps.push(CertStep::new(
            "the twist E^(d) is semistable at every prime above 3",
            Citation::SemistableTwist,
            vec![HypothesisRecord::verified("Tate's algorithm on E^(d) gives I_n above 3", tw.to_json())],
        ));
        steps.push(CertStep::new(
            "E^(d) is modular",
            Citation::Freitas,
            vec![
                field,
                HypothesisRecord::verified("E^(d) semistable above 3", json!({ "d": d.clone() })),
            ],
        ));
        steps.push(CertStep::new(
            "E is modular",
            Citation::TwistInvariance,
            vec![HypothesisRecord::verified("E is the twist of E^(d) by d", json!({ "d": d }))],
        ));
        return Ok(certificate(curve, steps, Verdict::Modular, assumptions));
    }

    let reason = format!("{}; {}", bound_text(&s7, 7), bound_text(&s5, 5));
    Ok(certificate(curve, Vec::new(), Verdict::Inconclusive(reason), assumptions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::AssumeFlag;

    #[test]
    fn field_support() {
        assert_eq!(unsupported_field(&BaseField::Rationals), None);
        assert_eq!(unsupported_field(&BaseField::RealQuadratic(2)), None);
        assert_eq!(
            unsupported_field(&BaseField::RealQuadratic(5)).unwrap(),
            "unsupported field: ramified at 5, √5 ∈ K"
        );
        assert!(unsupported_field(&BaseField::RealQuadratic(21)).unwrap().contains("3, 7"));
    }

    #[test]
    fn e37a1_goes_through_semistable_seven() {
        let c = Curve::from_ints(BaseField::Rationals, [0, 0, 1, -1, 0]).unwrap();
        let cert = certify(&c, &Assumptions::default(), &CertifyOptions::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Modular);
        assert!(cert.steps[1].citation.starts_with(Citation::SemistableAtSeven.label()));
        assert!(cert.passes_soundness_gate());
    }

    #[test]
    fn quadratic_field_with_both_flags() {
        let c = Curve::from_ints(BaseField::RealQuadratic(2), [0, 0, 0, 9, 27]).unwrap();
        let a = Assumptions::new([AssumeFlag::Reducible5, AssumeFlag::Reducible7]);
        let cert = certify(&c, &a, &CertifyOptions::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Modular);
        let assumed = cert.hypotheses().filter(|h| h.status == HypothesisStatus::Assumed).count();
        assert_eq!(assumed, 2);
        assert!(cert.steps.iter().any(|s| s.citation.starts_with(Citation::Freitas.label())));
    }

    #[test]
    fn sqrt5_field_is_inconclusive() {
        let c = Curve::from_ints(BaseField::RealQuadratic(5), [0, 0, 1, -1, 0]).unwrap();
        let cert = certify(&c, &Assumptions::default(), &CertifyOptions::default()).unwrap();
        assert!(matches!(cert.verdict, Verdict::Inconclusive(ref r) if r.contains("√5 ∈ K")));
    }
}
