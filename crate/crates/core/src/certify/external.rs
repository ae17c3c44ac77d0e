//! Fields the engine cannot compute in: local data and field properties are
//! supplied by the user and enter every certificate as Assumed.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::exact::Val;
use crate::galois::{Assumptions, IrreducibilityStatus};
use crate::localred::{is_semistable, KodairaType, LocalInvariants, PotentialGood, SlotInfo};
use crate::model::{BaseField, FieldAssumptions};

use super::certificate::{field_json, CertStep, Certificate, HypothesisRecord, HypothesisStatus, Verdict};
use super::citation::Citation;
use super::local::{analyze, field_context, ExceptionalCase, LocalAnalysis, LocalContext, LocalOutcome};
use super::{group_argument_steps, CertifyError};

/// Minimal-model data at one prime, as supplied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExternalLocal {
    pub slot: SlotInfo,
    pub kodaira: KodairaType,
    pub v_c4: Val,
    pub v_c6: Val,
    pub v_disc: Val,
    pub v_j: Val,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential_good: Option<PotentialGood>,
    /// Valuations of `A`, `B` in a minimal `y² = x³ + Ax + B`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_a: Option<Val>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_b: Option<Val>,
}

impl ExternalLocal {
    pub fn invariants(&self) -> LocalInvariants {
        LocalInvariants {
            slot: self.slot.clone(),
            kodaira: self.kodaira,
            v_c4: self.v_c4,
            v_c6: self.v_c6,
            v_disc: self.v_disc,
            v_j: self.v_j,
            j_residue: None,
            declared: self.potential_good,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExternalTwist {
    /// Description of `d`; never interpreted.
    pub d: String,
    /// Local data of the twisted curve at every prime above 3.
    pub local: Vec<ExternalLocal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExternalCurve {
    pub label: String,
    #[serde(default)]
    pub assumptions: FieldAssumptions,
    #[serde(default)]
    pub j_zero: bool,
    #[serde(default)]
    pub local: Vec<ExternalLocal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<ExternalTwist>,
}

impl ExternalCurve {
    pub fn field(&self) -> BaseField {
        BaseField::External { label: self.label.clone(), assumptions: self.assumptions.clone() }
    }

    fn echo(&self) -> Value {
        json!({ "label": self.label, "j_zero": self.j_zero, "local": self.local, "twist": self.twist })
    }

    fn slots_above(&self, p: u64) -> impl Iterator<Item = &ExternalLocal> {
        self.local.iter().filter(move |l| l.slot.p == p)
    }

    fn validate(&self) -> Result<(), CertifyError> {
        let twisted = self.twist.iter().flat_map(|t| t.local.iter());
        for l in self.local.iter().chain(twisted) {
            l.invariants().check_consistency()?;
        }
        Ok(())
    }
}

fn supplied(description: impl Into<String>, evidence: Value) -> HypothesisRecord {
    HypothesisRecord::assumed(description, evidence)
}

fn status_from_flags(a: &Assumptions, p: u64) -> Result<IrreducibilityStatus, CertifyError> {
    Ok(match a.for_prime(p)? {
        Some(true) => IrreducibilityStatus::Reducible { witness_t: None, assumed: true },
        Some(false) => IrreducibilityStatus::Irreducible { frobenius: None, isogeny_checked: false, assumed: true },
        None => IrreducibilityStatus::Unknown {
            search_bound: 0,
            reason: format!("external field: no irreducible-{p} or reducible-{p} flag"),
        },
    })
}

/// `None` if `K ∩ ℚ(ζ_p) = ℚ` is asserted directly or follows from an
/// asserted lack of ramification at `p`.
fn cyclotomic_gap(fa: &FieldAssumptions, p: u64) -> Option<String> {
    (!fa.cyclotomic_disjoint.contains(&p) && !fa.unramified_at.contains(&p))
        .then(|| format!("K ∩ Q(zeta_{p}) = Q not asserted"))
}

/// Local analysis of every supplied additive slot above `p`.
pub fn external_local_analysis(
    ext: &ExternalCurve,
    p: u64,
    assumptions: &Assumptions,
) -> Result<Vec<LocalAnalysis>, CertifyError> {
    ext.validate()?;
    let status = status_from_flags(assumptions, p)?;
    let irreducible = HypothesisRecord::irreducible(p, &status).ok_or(CertifyError::NotIrreducible(p))?;
    let field = ext.field();
    let (totally_real, cyclotomic) = field_context(&field, p);
    let mut out = Vec::new();
    for l in ext.slots_above(p).filter(|l| l.kodaira.is_additive()) {
        let (Some(v_a), Some(v_b)) = (l.v_a, l.v_b) else {
            return Err(CertifyError::HypothesisFailure(format!("{}: v_a and v_b are required", l.slot.label)));
        };
        let ctx = LocalContext {
            irreducible: irreducible.clone(),
            cyclotomic: cyclotomic.clone(),
            totally_real: totally_real.clone(),
            data_status: HypothesisStatus::Assumed,
            j_is_zero: ext.j_zero,
        };
        out.push(analyze(p, l.invariants(), v_a, v_b, ctx)?);
    }
    Ok(out)
}

fn mod7_branch(ext: &ExternalCurve, s7: &IrreducibilityStatus, a: &Assumptions) -> Result<Result<Vec<CertStep>, String>, CertifyError> {
    let fa = &ext.assumptions;
    if !fa.unramified_at.contains(&7) {
        return Ok(Err("mod 7 branch needs K unramified at 7".into()));
    }
    let irr = HypothesisRecord::irreducible(7, s7).expect("irreducible");
    let (tr, _) = field_context(&ext.field(), 7);
    let unram = supplied("K is unramified at 7", json!({ "source": "field assumptions" }));
    let dispatch = |why: &str| {
        CertStep::new(format!("E is modular ({why})"), Citation::ModSevenDispatch, vec![irr.clone(), tr.clone(), unram.clone()])
    };
    let above: Vec<&ExternalLocal> = ext.slots_above(7).collect();
    if above.is_empty() {
        return Ok(Err("no local data above 7".into()));
    }
    if let Some(l) = above.iter().find(|l| is_semistable(&l.invariants())) {
        return Ok(Ok(vec![
            CertStep::new(
                format!("E is semistable at {}", l.slot.label),
                Citation::SemistableAtSeven,
                vec![irr.clone(), tr.clone(), supplied("Kodaira type I_n at a prime above 7", l.invariants().to_json())],
            ),
            dispatch("semistable above 7"),
        ]));
    }
    if let Some(gap) = cyclotomic_gap(fa, 7) {
        return Ok(Err(gap));
    }
    let mut hyps = vec![irr.clone(), tr.clone()];
    for an in external_local_analysis(ext, 7, a)? {
        match an.outcome {
            LocalOutcome::Modular(mut steps) => {
                steps.push(dispatch("local inertia exclusion above 7"));
                return Ok(Ok(steps));
            }
            LocalOutcome::Exceptional(ExceptionalCase::Case2) => hyps.push(supplied(
                format!("additive potentially good ordinary reduction at {}", an.local.slot.label),
                an.report_json(),
            )),
            LocalOutcome::Exceptional(ExceptionalCase::Case1) => {
                return Err(CertifyError::Internal("exceptional case 1 above 7".into()))
            }
        }
    }
    Ok(Ok(vec![
        CertStep::new("every supplied prime above 7 is potentially ordinary: E is modular", Citation::SkinnerWiles, hyps),
        dispatch("potentially ordinary above 7"),
    ]))
}

/// The pipeline with every field property and local datum taken on trust.
pub fn certify_external(ext: &ExternalCurve, assumptions: &Assumptions) -> Result<Certificate, CertifyError> {
    ext.validate()?;
    let fa = &ext.assumptions;
    let mut trusted: Vec<String> = assumptions.flags.iter().map(|f| f.to_string()).collect();
    trusted.push(format!("field {}: {}", ext.label, serde_json::to_string(fa).expect("serialises")));
    if !ext.local.is_empty() || ext.twist.is_some() {
        trusted.push("supplied local data".into());
    }
    let done = |steps: Vec<CertStep>, verdict: Verdict| Certificate {
        curve: ext.echo(),
        field: field_json(&ext.field()),
        steps,
        verdict,
        assumptions: trusted.clone(),
    };
    if !fa.totally_real {
        return Ok(done(Vec::new(), Verdict::Inconclusive("external field not asserted totally real".into())));
    }
    let (tr, _) = field_context(&ext.field(), 7);

    if ext.j_zero {
        let steps = vec![CertStep::new(
            "j(E) = 0, so E is modular after descending a solvable base change",
            Citation::CmBaseChange,
            vec![tr, supplied("j(E) = 0", json!({ "source": "curve file" }))],
        )];
        return Ok(done(steps, Verdict::Modular));
    }

    let s7 = status_from_flags(assumptions, 7)?;
    let mut notes = Vec::new();
    if s7.is_irreducible() {
        match mod7_branch(ext, &s7, assumptions)? {
            Ok(steps) => return Ok(done(steps, Verdict::Modular)),
            Err(why) => notes.push(why),
        }
    }

    let s5 = status_from_flags(assumptions, 5)?;
    if s5.is_irreducible() {
        if fa.sqrt5_not_in_field {
            let steps = vec![CertStep::new(
                "E is modular",
                Citation::Thorne,
                vec![
                    HypothesisRecord::irreducible(5, &s5).expect("irreducible"),
                    tr,
                    supplied("√5 ∉ K", json!({ "source": "field assumptions" })),
                ],
            )];
            return Ok(done(steps, Verdict::Modular));
        }
        notes.push("√5 ∉ K not asserted".into());
    }

    if s5.is_reducible() && s7.is_reducible() {
        let mut steps = group_argument_steps(&s5, &s7);
        let twist_ok = fa.abelian
            && fa.unramified_at.contains(&3)
            && ext.twist.as_ref().is_some_and(|t| {
                !t.local.is_empty() && t.local.iter().all(|l| l.slot.p == 3 && is_semistable(&l.invariants()))
            });
        if !twist_ok {
            notes.push("twist branch needs an abelian field unramified at 3 and I_n data above 3 for the twist".into());
            return Ok(done(steps, Verdict::Inconclusive(notes.join("; "))));
        }
        let tw = ext.twist.as_ref().expect("checked");
        let locals: Vec<Value> = tw.local.iter().map(|l| l.invariants().to_json()).collect();
        steps.push(CertStep::new(
            "the twist E^(d) is semistable at every prime above 3",
            Citation::SemistableTwist,
            vec![supplied("supplied local data of E^(d) above 3", json!({ "d": tw.d, "slots_above_3": locals }))],
        ));
        steps.push(CertStep::new(
            "E^(d) is modular",
            Citation::Freitas,
            vec![
                tr,
                supplied("K is abelian and unramified at 3", json!({ "source": "field assumptions" })),
            ],
        ));
        steps.push(CertStep::new(
            "E is modular",
            Citation::TwistInvariance,
            vec![supplied("E is the twist of E^(d) by d", json!({ "d": tw.d }))],
        ));
        return Ok(done(steps, Verdict::Modular));
    }

    for (p, s) in [(7, &s7), (5, &s5)] {
        if let IrreducibilityStatus::Unknown { reason, .. } = s {
            notes.push(format!("mod {p}: {reason}"));
        }
    }
    Ok(done(Vec::new(), Verdict::Inconclusive(notes.join("; "))))
}
