//! Search for `d ∈ K^×` with `E^{(d)}` semistable at every prime above 3.
//!
//! Candidates are `u·∏ πᵢ^{εᵢ}` with `u = ±1` and `πᵢ` a uniformizer at the
//! `i`-th slot that is a unit at the others; every hit is confirmed by
//! re-running Tate's algorithm on the twisted model.

use serde_json::{json, Value};

use crate::exact::{rat, slots_above, PrimeSlot, QuadElem, Splitting};
use crate::localred::{is_semistable, tate, LocalInvariants};
use crate::model::Curve;

use super::certificate::curve_json;
use super::CertifyError;

#[derive(Clone, Debug, PartialEq)]
pub struct TwistResult {
    pub d: QuadElem,
    pub twisted: Curve,
    /// Tate output for the twisted curve at every slot above 3.
    pub locals: Vec<LocalInvariants>,
    pub uniformizers: Vec<QuadElem>,
    pub candidates_tried: usize,
}

impl TwistResult {
    pub fn to_json(&self) -> Value {
        json!({
            "d": super::certificate::quad_json(&self.d),
            "twisted_curve": curve_json(&self.twisted),
            "slots_above_3": self.locals.iter().map(LocalInvariants::to_json).collect::<Vec<_>>(),
            "uniformizers": self.uniformizers.iter().map(super::certificate::quad_json).collect::<Vec<_>>(),
            "candidates_tried": self.candidates_tried,
        })
    }
}

const SPLIT_SEARCH: i64 = 30;

/// An element of valuation 1 at `slots[i]` and 0 at the other slots.
fn separating_uniformizer(slots: &[PrimeSlot], i: usize) -> Result<QuadElem, CertifyError> {
    let slot = &slots[i];
    match slot.splitting() {
        Splitting::Rational | Splitting::Inert => return Ok(QuadElem::from_int(3)),
        Splitting::Ramified => {
            return Err(CertifyError::HypothesisFailure(format!("{} is ramified", slot.label())))
        }
        Splitting::Split { .. } => {}
    }
    let d = slot.radicand().expect("split slot lies in a quadratic field");
    // small a + b√d ordered by max(|a|, |b|)
    for r in 1..=SPLIT_SEARCH {
        for a in -r..=r {
            for b in (-r..=r).filter(|b| a.abs().max(b.abs()) == r) {
                let x = QuadElem::new(rat(a), rat(b), d);
                let ok = slots
                    .iter()
                    .enumerate()
                    .all(|(k, s)| s.val(&x) == if k == i { 1 } else { 0 });
                if ok {
                    return Ok(x);
                }
            }
        }
    }
    Err(CertifyError::TwistNotFound(format!("no uniformizer of {} with height ≤ {SPLIT_SEARCH}", slot.label())))
}

fn semistable_everywhere(curve: &Curve, slots: &[PrimeSlot]) -> Result<Option<Vec<LocalInvariants>>, CertifyError> {
    let mut out = Vec::new();
    for s in slots {
        let tr = tate(curve, s)?;
        if !is_semistable(&tr.local) {
            return Ok(None);
        }
        out.push(tr.local);
    }
    Ok(Some(out))
}

/// `d = 1` when `E` is already semistable above 3.
pub fn find_semistabilizing_twist(curve: &Curve) -> Result<TwistResult, CertifyError> {
    let slots = slots_above(curve.radicand(), 3)?;
    let uniformizers: Vec<QuadElem> =
        (0..slots.len()).map(|i| separating_uniformizer(&slots, i)).collect::<Result<_, _>>()?;
    let mut tried = 0;
    for mask in 0u32..(1 << slots.len()) {
        let prod = uniformizers
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .fold(QuadElem::one(), |acc, (_, u)| acc * u);
        for sign in [1, -1] {
            let d = QuadElem::from_int(sign) * &prod;
            tried += 1;
            let twisted = if d.is_one() { curve.clone() } else { curve.quadratic_twist(&d)? };
            if let Some(locals) = semistable_everywhere(&twisted, &slots)? {
                return Ok(TwistResult { d, twisted, locals, uniformizers, candidates_tried: tried });
            }
        }
    }
    Err(CertifyError::TwistNotFound(format!(
        "none of {tried} candidates u·∏π_i^e_i is semistable at every prime above 3"
    )))
}
