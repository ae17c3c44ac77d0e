//! (Ir)reducibility of `ρ̄_{E,p}` for `p ∈ {5, 7}` with explicit witnesses.
//!
//! The fibre search of [`jmap`] decides the question for `j ∉ {0, 1728}`;
//! the Frobenius scan is a fast corroborating certificate and the only
//! evidence accepted at `j = 1728`.

mod frobenius;
pub mod jmap;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

pub use frobenius::{find_witness, frobenius_trace, FrobeniusWitness};
pub use jmap::{j_map, jmap_fibre, jmap_numerator};

use crate::exact::{ExactError, QuadElem};
use crate::model::{BaseField, Curve, ModelError};

pub const DEFAULT_L_BOUND: u64 = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("unsupported prime {0}: only 5 and 7")]
    UnsupportedPrime(u64),
    #[error("CM-ambiguous, use dedicated branch (j = {0})")]
    CmAmbiguous(String),
    #[error("no auxiliary prime below {0} with simple residue roots")]
    NoAuxiliaryPrime(u64),
    #[error("soundness violation: {0}")]
    SoundnessViolation(String),
    #[error("contradictory assumption flags for p = {0}")]
    ContradictoryFlags(u64),
    #[error("unknown assumption flag {0:?}")]
    UnknownFlag(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub(crate) fn legendre_symbol(a: i64, q: u64) -> i64 {
    let a = a.rem_euclid(q as i64) as u128;
    if a == 0 {
        return 0;
    }
    let (mut r, mut b, mut e) = (1u128, a, (q - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q as u128;
        }
        b = b * b % q as u128;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// A user-supplied assertion about `ρ̄_{E,p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AssumeFlag {
    #[serde(rename = "reducible-5")]
    Reducible5,
    #[serde(rename = "reducible-7")]
    Reducible7,
    #[serde(rename = "irreducible-5")]
    Irreducible5,
    #[serde(rename = "irreducible-7")]
    Irreducible7,
}

impl AssumeFlag {
    pub const ALL: [AssumeFlag; 4] =
        [AssumeFlag::Reducible5, AssumeFlag::Reducible7, AssumeFlag::Irreducible5, AssumeFlag::Irreducible7];

    pub fn prime(self) -> u64 {
        match self {
            AssumeFlag::Reducible5 | AssumeFlag::Irreducible5 => 5,
            AssumeFlag::Reducible7 | AssumeFlag::Irreducible7 => 7,
        }
    }

    pub fn reducible(self) -> bool {
        matches!(self, AssumeFlag::Reducible5 | AssumeFlag::Reducible7)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AssumeFlag::Reducible5 => "reducible-5",
            AssumeFlag::Reducible7 => "reducible-7",
            AssumeFlag::Irreducible5 => "irreducible-5",
            AssumeFlag::Irreducible7 => "irreducible-7",
        }
    }
}

impl fmt::Display for AssumeFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AssumeFlag {
    type Err = GaloisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AssumeFlag::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| GaloisError::UnknownFlag(s.to_string()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assumptions {
    pub flags: BTreeSet<AssumeFlag>,
}

impl Assumptions {
    pub fn new(flags: impl IntoIterator<Item = AssumeFlag>) -> Self {
        Assumptions { flags: flags.into_iter().collect() }
    }

    /// `Some(true)` if `ρ̄_{E,p}` is assumed reducible.
    pub fn for_prime(&self, p: u64) -> Result<Option<bool>, GaloisError> {
        let mut hits = self.flags.iter().filter(|f| f.prime() == p);
        match (hits.next(), hits.next()) {
            (None, _) => Ok(None),
            (Some(f), None) => Ok(Some(f.reducible())),
            (Some(_), Some(_)) => Err(GaloisError::ContradictoryFlags(p)),
        }
    }

    pub fn without(&self, flag: AssumeFlag) -> Assumptions {
        Assumptions { flags: self.flags.iter().copied().filter(|f| *f != flag).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibilityStatus {
    Irreducible { frobenius: Option<FrobeniusWitness>, isogeny_checked: bool, assumed: bool },
    /// `witness_t` satisfies `F_p(witness_t) = j`, `witness_t ≠ 0`.
    Reducible { witness_t: Option<QuadElem>, assumed: bool },
    Unknown { search_bound: u64, reason: String },
}

impl IrreducibilityStatus {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, IrreducibilityStatus::Irreducible { .. })
    }

    pub fn is_reducible(&self) -> bool {
        matches!(self, IrreducibilityStatus::Reducible { .. })
    }

    pub fn is_assumed(&self) -> bool {
        matches!(
            self,
            IrreducibilityStatus::Irreducible { assumed: true, .. }
                | IrreducibilityStatus::Reducible { assumed: true, .. }
        )
    }

    pub fn to_json(&self) -> Value {
        match self {
            IrreducibilityStatus::Irreducible { frobenius, isogeny_checked, assumed } => json!({
                "status": "irreducible",
                "frobenius": frobenius,
                "isogeny_fibre_empty": isogeny_checked,
                "assumed": assumed,
            }),
            IrreducibilityStatus::Reducible { witness_t, assumed } => json!({
                "status": "reducible",
                "witness_t": witness_t.as_ref().map(|t| t.to_string()),
                "assumed": assumed,
            }),
            IrreducibilityStatus::Unknown { search_bound, reason } => json!({
                "status": "unknown",
                "search_bound": search_bound,
                "reason": reason,
            }),
        }
    }
}

fn check_prime(p: u64) -> Result<(), GaloisError> {
    if p == 5 || p == 7 {
        Ok(())
    } else {
        Err(GaloisError::UnsupportedPrime(p))
    }
}

/// Irreducible with a Frobenius witness, or Unknown.
pub fn frobenius_irreducibility(
    curve: &Curve,
    p: u64,
    l_bound: u64,
) -> Result<IrreducibilityStatus, GaloisError> {
    check_prime(p)?;
    if matches!(curve.field(), BaseField::External { .. }) {
        return Ok(IrreducibilityStatus::Unknown {
            search_bound: 0,
            reason: "no Frobenius data over an external field".into(),
        });
    }
    Ok(match find_witness(curve, p, l_bound)? {
        Some(w) => IrreducibilityStatus::Irreducible { frobenius: Some(w), isogeny_checked: false, assumed: false },
        None => IrreducibilityStatus::Unknown {
            search_bound: l_bound,
            reason: format!("no Frobenius witness with norm ≤ {l_bound}"),
        },
    })
}

/// Reducible with a fibre point, or Irreducible when the fibre is empty.
pub fn isogeny_reducibility(curve: &Curve, p: u64) -> Result<IrreducibilityStatus, GaloisError> {
    check_prime(p)?;
    let j = curve.j();
    if j.is_zero() || j == QuadElem::from_int(1728) {
        return Err(GaloisError::CmAmbiguous(j.to_string()));
    }
    let fibre = jmap_fibre(p, &j, curve.radicand())?;
    Ok(match fibre.into_iter().next() {
        Some(t) => IrreducibilityStatus::Reducible { witness_t: Some(t), assumed: false },
        None => IrreducibilityStatus::Irreducible { frobenius: None, isogeny_checked: true, assumed: false },
    })
}

/// Assumption flags first, then the fibre search cross-checked against the
/// Frobenius scan.
pub fn irreducibility_status(
    curve: &Curve,
    p: u64,
    assumptions: &Assumptions,
    l_bound: u64,
) -> Result<IrreducibilityStatus, GaloisError> {
    check_prime(p)?;
    match assumptions.for_prime(p)? {
        Some(true) => return Ok(IrreducibilityStatus::Reducible { witness_t: None, assumed: true }),
        Some(false) => {
            return Ok(IrreducibilityStatus::Irreducible { frobenius: None, isogeny_checked: false, assumed: true })
        }
        None => {}
    }
    if matches!(curve.field(), BaseField::External { .. }) {
        return Ok(IrreducibilityStatus::Unknown {
            search_bound: 0,
            reason: "external field: supply an assumption flag".into(),
        });
    }
    let j = curve.j();
    if j.is_zero() {
        return Ok(IrreducibilityStatus::Unknown {
            search_bound: 0,
            reason: "j = 0 is decided by the base-change branch".into(),
        });
    }
    let frob = frobenius_irreducibility(curve, p, l_bound)?;
    if j == QuadElem::from_int(1728) {
        return Ok(match frob {
            IrreducibilityStatus::Unknown { search_bound, .. } => IrreducibilityStatus::Unknown {
                search_bound,
                reason: format!("j = 1728 and no Frobenius witness with norm ≤ {search_bound}"),
            },
            s => s,
        });
    }
    let witness = match frob {
        IrreducibilityStatus::Irreducible { frobenius, .. } => frobenius,
        _ => None,
    };
    match isogeny_reducibility(curve, p)? {
        IrreducibilityStatus::Reducible { witness_t, .. } => {
            if let Some(w) = witness {
                return Err(GaloisError::SoundnessViolation(format!(
                    "p = {p}: fibre point {} but Frobenius witness at {}",
                    witness_t.map(|t| t.to_string()).unwrap_or_default(),
                    w.slot
                )));
            }
            Ok(IrreducibilityStatus::Reducible { witness_t, assumed: false })
        }
        _ => Ok(IrreducibilityStatus::Irreducible { frobenius: witness, isogeny_checked: true, assumed: false }),
    }
}

/// `y² = x³ + 3j(1728 − j)x + 2j(1728 − j)²`, a model with invariant `j`
/// for `j ∉ {0, 1728}`.
pub fn curve_with_j_invariant(field: BaseField, j: &QuadElem) -> Result<Curve, GaloisError> {
    let c = QuadElem::from_int(1728) - j;
    if j.is_zero() || c.is_zero() {
        return Err(GaloisError::CmAmbiguous(j.to_string()));
    }
    let a = QuadElem::from_int(3) * j * &c;
    let b = QuadElem::from_int(2) * j * c.pow(2);
    Ok(Curve::short(field, a, b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn e37a1() -> Curve {
        Curve::from_ints(BaseField::Rationals, [0, 0, 1, -1, 0]).unwrap()
    }

    #[test]
    fn frobenius_witnesses_for_37a1() {
        let c = e37a1();
        let IrreducibilityStatus::Irreducible { frobenius: Some(w), .. } =
            frobenius_irreducibility(&c, 5, 1000).unwrap()
        else {
            panic!("expected witness")
        };
        assert_eq!((w.ell, w.a, w.disc_mod_p), (3, -3, 2));
        let IrreducibilityStatus::Irreducible { frobenius: Some(w), .. } =
            frobenius_irreducibility(&c, 7, 1000).unwrap()
        else {
            panic!("expected witness")
        };
        assert_eq!((w.ell, w.a, w.disc_mod_p), (5, -2, 5));
        assert!(matches!(
            frobenius_irreducibility(&c, 5, 1).unwrap(),
            IrreducibilityStatus::Unknown { search_bound: 1, .. }
        ));
    }

    #[test]
    fn combined_status_for_37a1() {
        let s = irreducibility_status(&e37a1(), 5, &Assumptions::default(), 1000).unwrap();
        let IrreducibilityStatus::Irreducible { frobenius: Some(w), isogeny_checked: true, assumed: false } = s else {
            panic!("{s:?}")
        };
        assert_eq!(w.ell, 3);
    }

    #[test]
    fn reducible_curve_with_j_3376_cubed() {
        let j = QuadElem::from_int(3376).pow(3);
        let c = curve_with_j_invariant(BaseField::Rationals, &j).unwrap();
        assert_eq!(c.j(), j);
        let s = isogeny_reducibility(&c, 5).unwrap();
        assert_eq!(s, IrreducibilityStatus::Reducible { witness_t: Some(QuadElem::from_int(1)), assumed: false });
        let s = irreducibility_status(&c, 5, &Assumptions::default(), 1000).unwrap();
        assert!(s.is_reducible());
    }

    #[test]
    fn assumption_passthrough() {
        let a = Assumptions::new([AssumeFlag::Reducible7]);
        let s = irreducibility_status(&e37a1(), 7, &a, 1000).unwrap();
        assert_eq!(s, IrreducibilityStatus::Reducible { witness_t: None, assumed: true });
        let a = Assumptions::new([AssumeFlag::Reducible7, AssumeFlag::Irreducible7]);
        assert_eq!(irreducibility_status(&e37a1(), 7, &a, 1000), Err(GaloisError::ContradictoryFlags(7)));
    }

    #[test]
    fn cm_curves() {
        let j0 = Curve::from_ints(BaseField::Rationals, [0, 0, 1, 0, 0]).unwrap();
        assert!(isogeny_reducibility(&j0, 5).is_err());
        let s = irreducibility_status(&j0, 5, &Assumptions::default(), 1000).unwrap();
        assert!(matches!(s, IrreducibilityStatus::Unknown { .. }));
        // y² = x³ − x has j = 1728
        let j1728 = Curve::from_ints(BaseField::Rationals, [0, 0, 0, -1, 0]).unwrap();
        assert_eq!(j1728.j(), QuadElem::from_rat(rat(1728)));
        let s = irreducibility_status(&j1728, 7, &Assumptions::default(), 1000).unwrap();
        assert!(!s.is_reducible());
    }

    #[test]
    fn flag_parsing() {
        assert_eq!("reducible-5".parse::<AssumeFlag>().unwrap(), AssumeFlag::Reducible5);
        assert!("reducible-11".parse::<AssumeFlag>().is_err());
    }

    #[test]
    fn legendre() {
        assert_eq!(legendre_symbol(2, 5), -1);
        assert_eq!(legendre_symbol(4, 5), 1);
        assert_eq!(legendre_symbol(5, 7), -1);
        assert_eq!(legendre_symbol(14, 7), 0);
    }
}
