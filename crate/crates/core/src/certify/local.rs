//! Additive reduction at a prime above `p ∈ {5, 7}`: either a chain of
//! steps ending in modularity, or one of the two exceptional cases.

use serde_json::{json, Value};

use crate::exact::{slots_above, PrimeSlot, Val};
use crate::galois::IrreducibilityStatus;
use crate::grouptheory::{exceptional_images, exceptional_threshold};
use crate::inertia::{kraus_descriptor, CyclicBound, InertiaDescriptor};
use crate::localred::{classify_reduction, is_semistable, tate, LocalInvariants, ReductionClass};
use crate::model::{BaseField, Curve};

use super::certificate::{CertStep, HypothesisRecord, HypothesisStatus, Verdict};
use super::citation::Citation;
use super::CertifyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExceptionalCase {
    /// `p = 5`, potentially supersingular, `v(Δ) ≡ 2 mod 3`.
    Case1,
    /// `p = 7`, potentially ordinary, `v(Δ) ≡ 1 mod 3`.
    Case2,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LocalOutcome {
    Modular(Vec<CertStep>),
    Exceptional(ExceptionalCase),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalAnalysis {
    pub p: u64,
    pub local: LocalInvariants,
    pub class: ReductionClass,
    pub v_a: Val,
    pub v_b: Val,
    pub descriptor: InertiaDescriptor,
    pub threshold: u64,
    pub outcome: LocalOutcome,
}

impl LocalAnalysis {
    pub fn verdict(&self) -> Verdict {
        match self.outcome {
            LocalOutcome::Modular(_) => Verdict::Modular,
            LocalOutcome::Exceptional(ExceptionalCase::Case1) => Verdict::ExceptionalCase1,
            LocalOutcome::Exceptional(ExceptionalCase::Case2) => Verdict::ExceptionalCase2,
        }
    }

    pub fn v_j_mod_3(&self) -> Option<i64> {
        self.local.v_j.finite().map(|v| v.rem_euclid(3))
    }

    pub fn report_json(&self) -> Value {
        let steps = match &self.outcome {
            LocalOutcome::Modular(s) => s.clone(),
            LocalOutcome::Exceptional(_) => Vec::new(),
        };
        json!({
            "prime": self.p,
            "slot": self.local.slot.label,
            "local": self.local.to_json(),
            "class": self.class,
            "class_text": self.class.to_string(),
            "short_model_valuations": { "v_disc": self.local.v_disc, "v_A": self.v_a, "v_B": self.v_b },
            "inertia": self.descriptor,
            "threshold": self.threshold,
            "v_j_mod_3": self.v_j_mod_3(),
            "verdict": self.verdict().to_string(),
            "steps": steps,
        })
    }
}

/// Hypotheses about the base field and representation that every local
/// chain at `p` relies on.
pub(crate) struct LocalContext {
    pub irreducible: HypothesisRecord,
    pub cyclotomic: HypothesisRecord,
    pub totally_real: HypothesisRecord,
    /// Verified when the local data was computed, Assumed when supplied.
    pub data_status: HypothesisStatus,
    pub j_is_zero: bool,
}

pub(crate) fn field_context(field: &BaseField, p: u64) -> (HypothesisRecord, HypothesisRecord) {
    match field {
        BaseField::External { assumptions, .. } => {
            let tr = if assumptions.totally_real {
                HypothesisRecord::assumed("base field is totally real", json!({ "source": "field assumptions" }))
            } else {
                HypothesisRecord::assumed("base field is totally real", json!({ "source": "not asserted" }))
            };
            let cy = HypothesisRecord::assumed(
                format!("K meets Q(zeta_{p}) only in Q"),
                json!({ "source": "field assumptions", "asserted": assumptions.cyclotomic_disjoint.contains(&p) }),
            );
            (tr, cy)
        }
        _ => (
            HypothesisRecord::verified("base field is totally real", json!({ "field": field.to_string() })),
            HypothesisRecord::verified(
                format!("K meets Q(zeta_{p}) only in Q"),
                json!({ "field": field.to_string(), "discriminant": field.discriminant(), "reason": format!("K is unramified at {p}") }),
            ),
        ),
    }
}

fn kraus_citation(class: ReductionClass) -> Citation {
    match class {
        ReductionClass::AdditivePotMultiplicative => Citation::KrausPotMult,
        ReductionClass::AdditivePotGoodOrdinary => Citation::KrausOrdinary,
        _ => Citation::KrausSupersingular,
    }
}

fn threshold_evidence(p: u64) -> Result<Value, CertifyError> {
    let groups: Vec<Value> = exceptional_images(p)?
        .iter()
        .map(|g| json!({ "group": g.name, "order": g.elements.len(), "element_orders": g.element_orders() }))
        .collect();
    Ok(json!({ "p": p, "threshold": exceptional_threshold(p)?, "exceptional_images": groups }))
}

/// Shared core for computed and supplied local data.
pub(crate) fn analyze(
    p: u64,
    local: LocalInvariants,
    v_a: Val,
    v_b: Val,
    ctx: LocalContext,
) -> Result<LocalAnalysis, CertifyError> {
    if p != 5 && p != 7 {
        return Err(CertifyError::HypothesisFailure(format!("local analysis needs p = 5 or 7, got {p}")));
    }
    if local.slot.e != 1 {
        return Err(CertifyError::HypothesisFailure(format!(
            "{} is ramified over Q (e = {}); the inertia classification needs e = 1",
            local.slot.label, local.slot.e
        )));
    }
    let class = classify_reduction(&local)?;
    if !class.is_additive() {
        return Err(CertifyError::UseSemistableBranch(local.slot.label.clone()));
    }
    let v_disc = local
        .v_disc
        .finite()
        .ok_or_else(|| CertifyError::HypothesisFailure("infinite v(Δ)".into()))?;
    let descriptor = kraus_descriptor(p, class, local.slot.e, v_disc, v_a, v_b)?;
    let threshold = exceptional_threshold(p)?;

    let outcome = if descriptor.proj_cyclic_bound.meets(threshold) {
        let record = |desc: &str, ev: Value| HypothesisRecord {
            description: desc.to_string(),
            status: ctx.data_status,
            evidence: ev,
        };
        let bound = match descriptor.proj_cyclic_bound {
            CyclicBound::Order(n) => json!(n),
            CyclicBound::ContainsPGroup => json!("contains_p_group"),
        };
        LocalOutcome::Modular(vec![
            CertStep::new(
                format!(
                    "inertia at {} forces a cyclic subgroup of order {} in the projective image mod {p}",
                    local.slot.label, descriptor.proj_cyclic_bound
                ),
                kraus_citation(class),
                vec![
                    record("prime is absolutely unramified (e = 1)", json!({ "slot": local.slot })),
                    record("additive reduction of the stated class", json!({ "local": local.to_json(), "class": class })),
                    record(
                        "minimal short model valuations",
                        json!({ "v_disc": v_disc, "v_A": v_a, "v_B": v_b, "inertia": descriptor, "bound": bound }),
                    ),
                ],
            ),
            CertStep::new(
                format!(
                    "order {} >= {threshold}: no exceptional projective image, so the representation stays absolutely irreducible over K(zeta_{p})",
                    descriptor.proj_cyclic_bound
                ),
                Citation::ExceptionalImages,
                vec![
                    ctx.irreducible.clone(),
                    ctx.cyclotomic.clone(),
                    HypothesisRecord::verified("threshold from element orders of the exceptional images", threshold_evidence(p)?),
                ],
            ),
            CertStep::new("E is modular", Citation::ResidualLifting, vec![ctx.totally_real.clone()]),
        ])
    } else if ctx.j_is_zero {
        LocalOutcome::Modular(vec![CertStep::new(
            "j(E) = 0, so E is modular after descending a solvable base change",
            Citation::CmBaseChange,
            vec![HypothesisRecord { description: "j(E) = 0".into(), status: ctx.data_status, evidence: json!({ "v_j": local.v_j }) }],
        )])
    } else {
        let vd3 = v_disc.rem_euclid(3);
        let vj3 = local.v_j.finite().map(|v| v.rem_euclid(3));
        match (p, class) {
            (5, ReductionClass::AdditivePotGoodSupersingular) if vd3 == 2 && vj3 == Some(1) => {
                LocalOutcome::Exceptional(ExceptionalCase::Case1)
            }
            (7, ReductionClass::AdditivePotGoodOrdinary) if vd3 == 1 && vj3 == Some(2) => {
                LocalOutcome::Exceptional(ExceptionalCase::Case2)
            }
            _ => {
                return Err(CertifyError::Internal(format!(
                    "bound {} below threshold outside the exceptional cases (p = {p}, {class}, v(Δ) = {v_disc})",
                    descriptor.proj_cyclic_bound
                )))
            }
        }
    };
    Ok(LocalAnalysis { p, local, class, v_a, v_b, descriptor, threshold, outcome })
}

/// Local analysis at an additive slot above `p ∈ {5, 7}` of a computable
/// field.
pub fn local_modularity_analysis(
    curve: &Curve,
    slot: &PrimeSlot,
    irred: &IrreducibilityStatus,
) -> Result<LocalAnalysis, CertifyError> {
    let p = slot.p();
    let irreducible = HypothesisRecord::irreducible(p, irred).ok_or(CertifyError::NotIrreducible(p))?;
    if slot.e() != 1 {
        return Err(CertifyError::HypothesisFailure(format!("{} is ramified (e = {})", slot.label(), slot.e())));
    }
    let tr = tate(curve, slot)?;
    let (totally_real, cyclotomic) = field_context(curve.field(), p);
    let j_is_zero = curve.j().is_zero();
    if !tr.local.kodaira.is_additive() {
        return Err(CertifyError::UseSemistableBranch(slot.label()));
    }
    let short = tr.minimal.short_model_at(slot)?;
    analyze(
        p,
        tr.local,
        short.v_a,
        short.v_b,
        LocalContext { irreducible, cyclotomic, totally_real, data_status: HypothesisStatus::Verified, j_is_zero },
    )
}

/// The mod 7 branch: semistable somewhere above 7, else a local chain, else
/// every slot is potentially ordinary and the residually reducible lifting
/// theorem applies.
pub fn certify_at_7(curve: &Curve, irred: &IrreducibilityStatus) -> Result<Vec<CertStep>, CertifyError> {
    let irreducible = HypothesisRecord::irreducible(7, irred).ok_or(CertifyError::NotIrreducible(7))?;
    let slots = slots_above(curve.radicand(), 7)?;
    let (totally_real, _) = field_context(curve.field(), 7);
    let unramified = HypothesisRecord::verified(
        "K is unramified at 7",
        json!({ "field": curve.field().to_string(), "discriminant": curve.field().discriminant() }),
    );
    let dispatch = |reason: &str| {
        CertStep::new(
            format!("E is modular ({reason})"),
            Citation::ModSevenDispatch,
            vec![irreducible.clone(), totally_real.clone(), unramified.clone()],
        )
    };

    for slot in &slots {
        let tr = tate(curve, slot)?;
        if is_semistable(&tr.local) {
            return Ok(vec![
                CertStep::new(
                    format!("E is semistable at {}", slot.label()),
                    Citation::SemistableAtSeven,
                    vec![
                        irreducible.clone(),
                        totally_real.clone(),
                        HypothesisRecord::verified("Kodaira type I_n at a prime above 7", tr.local.to_json()),
                    ],
                ),
                dispatch("semistable above 7"),
            ]);
        }
    }

    let mut exceptional = Vec::new();
    for slot in &slots {
        let a = local_modularity_analysis(curve, slot, irred)?;
        match a.outcome {
            LocalOutcome::Modular(mut steps) => {
                steps.push(dispatch("local inertia exclusion above 7"));
                return Ok(steps);
            }
            LocalOutcome::Exceptional(case) => {
                if case != ExceptionalCase::Case2 {
                    return Err(CertifyError::Internal("exceptional case 1 above 7".into()));
                }
                exceptional.push(HypothesisRecord::verified(
                    format!("additive potentially good ordinary reduction at {}", a.local.slot.label),
                    a.report_json(),
                ));
            }
        }
    }
    let mut hyps = vec![irreducible.clone(), totally_real.clone()];
    hyps.extend(exceptional);
    Ok(vec![
        CertStep::new("every prime above 7 is potentially ordinary: E is modular", Citation::SkinnerWiles, hyps),
        dispatch("potentially ordinary above 7"),
    ])
}
