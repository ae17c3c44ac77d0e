//! Local reduction: Tate's algorithm at a prime of odd residue
//! characteristic, the supersingular j-invariants, and the
//! good/multiplicative/additive classification.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ff_trace, ExactError, FfCurve, FfElem, FiniteField, PrimeSlot, QuadElem, Val};
use crate::model::{Curve, ModelError, Transform};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error("malformed local data: {0}")]
    Malformed(String),
    #[error("residue characteristic 2 is not supported")]
    ResidueCharTwo,
    #[error("supersingular test needs p >= 5, got {0}")]
    SmallPrime(u64),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KodairaType {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IIStar,
    IIIStar,
    IVStar,
}

impl KodairaType {
    pub fn is_good(self) -> bool {
        self == KodairaType::I(0)
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(self, KodairaType::I(n) if n > 0)
    }

    pub fn is_additive(self) -> bool {
        !matches!(self, KodairaType::I(_))
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IIStar => write!(f, "II*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IVStar => write!(f, "IV*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = LocalError;
    fn from_str(s: &str) -> Result<Self, LocalError> {
        let bad = || LocalError::Malformed(format!("unknown Kodaira symbol {s:?}"));
        Ok(match s {
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "II*" => KodairaType::IIStar,
            "III*" => KodairaType::IIIStar,
            "IV*" => KodairaType::IVStar,
            _ => {
                let rest = s.strip_prefix('I').ok_or_else(bad)?;
                match rest.strip_suffix('*') {
                    Some(n) => KodairaType::IStar(n.parse().map_err(|_| bad())?),
                    None => KodairaType::I(rest.parse().map_err(|_| bad())?),
                }
            }
        })
    }
}

impl Serialize for KodairaType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for KodairaType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Potential-good reduction type of the special fibre after base change.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialGood {
    Ordinary,
    Supersingular,
}

/// The shape of a prime that local data refers to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlotInfo {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    pub label: String,
}

impl From<&PrimeSlot> for SlotInfo {
    fn from(s: &PrimeSlot) -> Self {
        SlotInfo { p: s.p(), e: s.e(), f: s.f(), label: s.label() }
    }
}

/// Minimal-model data at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalInvariants {
    pub slot: SlotInfo,
    pub kodaira: KodairaType,
    pub v_c4: Val,
    pub v_c6: Val,
    pub v_disc: Val,
    /// `+∞` when `j = 0`.
    pub v_j: Val,
    /// Reduction of `j` when `v_j ≥ 0` and it was computed.
    pub j_residue: Option<FfElem>,
    /// Potential-good type asserted by the caller instead of computed.
    pub declared: Option<PotentialGood>,
}

impl LocalInvariants {
    /// Snapshot for certificates; keys sort deterministically.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "slot": self.slot,
            "kodaira": self.kodaira,
            "v_c4": self.v_c4,
            "v_c6": self.v_c6,
            "v_disc": self.v_disc,
            "v_j": self.v_j,
            "j_residue": self.j_residue.map(|j| j.to_string()),
            "declared": self.declared,
        })
    }

    /// Checks the valuation identities every minimal model satisfies.
    pub fn check_consistency(&self) -> Result<(), LocalError> {
        let bad = |m: String| Err(LocalError::Malformed(format!("{}: {m}", self.slot.label)));
        let vd = match self.v_disc {
            Val::Finite(v) if v >= 0 => v,
            other => return bad(format!("v(Δ) = {other} must be a non-negative integer")),
        };
        match (self.v_c4, self.v_j) {
            (Val::Infinite, Val::Infinite) => {}
            (Val::Finite(c), Val::Finite(j)) if j == 3 * c - vd => {}
            (c4, j) => return bad(format!("v(j) = {j} but 3·v(c4) − v(Δ) with v(c4) = {c4}")),
        }
        if self.slot.p >= 5 && vd >= 12 && self.v_c4 >= 4 {
            return bad("model is not minimal".into());
        }
        match self.kodaira {
            KodairaType::I(0) if vd != 0 => return bad("I0 needs v(Δ) = 0".into()),
            KodairaType::I(n) if n > 0 && (self.v_c4 != 0 || vd != n as i64) => {
                return bad(format!("I{n} needs v(c4) = 0 and v(Δ) = {n}"))
            }
            k if k.is_additive() && vd == 0 => return bad(format!("{k} with unit discriminant")),
            _ => {}
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReductionClass {
    Good,
    Multiplicative,
    AdditivePotMultiplicative,
    AdditivePotGoodOrdinary,
    AdditivePotGoodSupersingular,
}

impl ReductionClass {
    pub fn is_additive(self) -> bool {
        matches!(
            self,
            ReductionClass::AdditivePotMultiplicative
                | ReductionClass::AdditivePotGoodOrdinary
                | ReductionClass::AdditivePotGoodSupersingular
        )
    }
}

impl fmt::Display for ReductionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReductionClass::Good => "good",
            ReductionClass::Multiplicative => "multiplicative",
            ReductionClass::AdditivePotMultiplicative => "additive, potentially multiplicative",
            ReductionClass::AdditivePotGoodOrdinary => "additive, potentially good ordinary",
            ReductionClass::AdditivePotGoodSupersingular => {
                "additive, potentially good supersingular"
            }
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateResult {
    pub minimal: Curve,
    pub local: LocalInvariants,
    /// Changes of variables applied, in order, to reach `minimal`.
    pub transforms: Vec<Transform>,
    /// The slot is ramified over ℚ; downstream inertia analysis refuses it.
    pub ramified: bool,
}

/// Local state of Tate's algorithm: the current model and its history.
struct Tate<'a> {
    slot: &'a PrimeSlot,
    pi: QuadElem,
    k: FiniteField,
    curve: Curve,
    transforms: Vec<Transform>,
}

impl Tate<'_> {
    fn v(&self, x: &QuadElem) -> Val {
        self.slot.val(x)
    }

    fn a(&self, i: usize) -> QuadElem {
        self.curve.a()[i].clone()
    }

    fn apply(&mut self, w: Transform) {
        self.curve = self.curve.transform(&w);
        self.transforms.push(w);
    }

    fn shift_x(&mut self, r: QuadElem) {
        if !r.is_zero() {
            self.apply(Transform::rst(r, QuadElem::zero(), QuadElem::zero()));
        }
    }

    /// Residue of `x / π^n`.
    fn red(&self, x: &QuadElem, n: i64) -> Result<FfElem, LocalError> {
        Ok(self.slot.reduce(&(x / self.pi.powi(n)))?)
    }

    /// A root of multiplicity ≥ 2 of `T³ + c2T² + c1T + c0`, with a flag for
    /// multiplicity three.
    fn multiple_root(&self, c2: FfElem, c1: FfElem, c0: FfElem) -> Option<(FfElem, bool)> {
        let three = self.k.from_int(3);
        let two = self.k.from_int(2);
        self.k.elements().find_map(|r| {
            let p = r * r * r + c2 * r * r + c1 * r + c0;
            let dp = three * r * r + two * c2 * r + c1;
            (p.is_zero() && dp.is_zero()).then(|| (r, (three * r + c2).is_zero()))
        })
    }
}

/// Tate's algorithm at `slot`: a minimal model and its Kodaira type.
pub fn tate(curve: &Curve, slot: &PrimeSlot) -> Result<TateResult, LocalError> {
    if slot.p() == 2 {
        return Err(LocalError::ResidueCharTwo);
    }
    let mut st = Tate {
        slot,
        pi: slot.uniformizer(),
        k: slot.residue_field(),
        curve: curve.clone(),
        transforms: Vec::new(),
    };

    // integral model
    let weights = [1i64, 2, 3, 4, 6];
    let mut scale = 0i64;
    for (c, w) in st.curve.a().iter().zip(weights) {
        if let Val::Finite(v) = st.v(c) {
            if v < 0 {
                scale = scale.max((-v + w - 1) / w);
            }
        }
    }
    if scale > 0 {
        st.apply(Transform::scale(st.pi.powi(-scale)));
    }
    // 2 is a unit: complete the square so that a1 = a3 = 0
    let (a1, a3) = (st.a(0), st.a(2));
    if !a1.is_zero() || !a3.is_zero() {
        let half = QuadElem::from_rat(crate::exact::rat_frac(-1, 2));
        st.apply(Transform::rst(QuadElem::zero(), &a1 * &half, &a3 * &half));
    }

    let kodaira = loop {
        let vd = st.v(&st.curve.disc()).finite().expect("nonsingular");
        if vd == 0 {
            break KodairaType::I(0);
        }
        // move the singular point (x0, 0) to the origin
        let (c2, c1, c0) = (st.red(&st.a(1), 0)?, st.red(&st.a(3), 0)?, st.red(&st.a(4), 0)?);
        let (x0, _) = st
            .multiple_root(c2, c1, c0)
            .ok_or_else(|| LocalError::Malformed("no singular point on reduction".into()))?;
        let r = slot.lift(&x0);
        st.shift_x(r);
        let (a2, a4, a6) = (st.a(1), st.a(3), st.a(4));
        if st.v(&a2) == 0 {
            break KodairaType::I(vd as u32);
        }
        if st.v(&a6) < 2 {
            break KodairaType::II;
        }
        let b8 = QuadElem::from_int(4) * &a2 * &a6 - &a4 * &a4;
        if st.v(&b8) < 3 {
            break KodairaType::III;
        }
        if st.v(&a6) < 3 {
            break KodairaType::IV;
        }
        // now π | a2, π² | a4, π³ | a6
        let (c2, c1, c0) = (st.red(&a2, 1)?, st.red(&a4, 2)?, st.red(&a6, 3)?);
        match st.multiple_root(c2, c1, c0) {
            None => break KodairaType::IStar(0),
            Some((r0, false)) => {
                let r = &st.pi * &slot.lift(&r0);
                st.shift_x(r);
                break KodairaType::IStar(tate_istar_subprocedure(&mut st)?);
            }
            Some((r0, true)) => {
                let r = &st.pi * &slot.lift(&r0);
                st.shift_x(r);
                let (a4, a6) = (st.a(3), st.a(4));
                if st.v(&a6) < 5 {
                    break KodairaType::IVStar;
                }
                if st.v(&a4) < 4 {
                    break KodairaType::IIIStar;
                }
                if st.v(&a6) < 6 {
                    break KodairaType::IIStar;
                }
                // not minimal
                let pi = st.pi.clone();
                st.apply(Transform::scale(pi));
            }
        }
    };

    let minimal = st.curve.clone();
    let v_c4 = slot.val(&minimal.c4());
    let v_disc = slot.val(&minimal.disc());
    let v_j = match v_c4 {
        Val::Infinite => Val::Infinite,
        Val::Finite(c) => Val::Finite(3 * c - v_disc.finite().expect("nonsingular")),
    };
    let j_residue = if v_j >= 0 { Some(slot.reduce(&minimal.j())?) } else { None };
    let local = LocalInvariants {
        slot: SlotInfo::from(slot),
        kodaira,
        v_c4,
        v_c6: slot.val(&minimal.c6()),
        v_disc,
        v_j,
        j_residue,
        declared: None,
    };
    debug_assert_eq!(local.check_consistency(), Ok(()));
    Ok(TateResult { minimal, local, transforms: st.transforms, ramified: slot.e() > 1 })
}

/// Subprocedure for `I_n*`: with `a1 = a3 = 0` the `y`-quadratics never
/// need translating, so only the `x`-steps move the model.
fn tate_istar_subprocedure(st: &mut Tate<'_>) -> Result<u32, LocalError> {
    let mut k = 2i64;
    loop {
        // Y² − a6/π^{2k}
        if st.red(&st.a(4), 2 * k)? != st.k.zero() {
            return Ok((2 * k - 3) as u32);
        }
        // (a2/π)X² + (a4/π^{k+1})X + a6/π^{2k+1}
        let q2 = st.red(&st.a(1), 1)?;
        let q1 = st.red(&st.a(3), k + 1)?;
        let q0 = st.red(&st.a(4), 2 * k + 1)?;
        let four = st.k.from_int(4);
        if !(q1 * q1 - four * q2 * q0).is_zero() {
            return Ok((2 * k - 2) as u32);
        }
        let x0 = -(q1 / (st.k.from_int(2) * q2));
        let r = st.pi.powi(k) * st.slot.lift(&x0);
        st.shift_x(r);
        k += 1;
    }
}

/// Kodaira type from `(v(c4), v(Δ))` of a minimal model, residue char ≥ 5.
pub fn kodaira_from_valuations(v_c4: Val, v_disc: i64) -> Option<KodairaType> {
    use KodairaType::*;
    if v_disc == 0 {
        return Some(I(0));
    }
    if v_c4 == 0 {
        return Some(I(v_disc as u32));
    }
    if v_c4 == 2 && v_disc > 6 {
        return Some(IStar((v_disc - 6) as u32));
    }
    match v_disc {
        2 => Some(II),
        3 => Some(III),
        4 => Some(IV),
        6 => Some(IStar(0)),
        8 => Some(IVStar),
        9 => Some(IIIStar),
        10 => Some(IIStar),
        _ => None,
    }
}

/// `y²` model over a finite field whose j-invariant is `j` (char ≥ 5).
pub fn curve_with_j(j: FfElem) -> FfCurve {
    let k = j.field();
    let z = k.zero();
    let c1728 = k.from_int(1728);
    if j.is_zero() {
        [z, z, z, z, k.one()]
    } else if j == c1728 {
        [z, z, z, k.one(), z]
    } else {
        let t = j / (c1728 - j);
        [z, z, z, k.from_int(3) * t, k.from_int(2) * t]
    }
}

/// Whether `j` is a supersingular j-invariant in its field's characteristic.
pub fn is_supersingular_j(j: FfElem) -> Result<bool, LocalError> {
    let p = j.field().characteristic();
    if p < 5 {
        return Err(LocalError::SmallPrime(p));
    }
    let trace = ff_trace(&curve_with_j(j))?;
    Ok(trace.rem_euclid(p as i64) == 0)
}

type SsCache = Mutex<HashMap<FiniteField, Arc<BTreeSet<FfElem>>>>;

fn ss_cache() -> &'static SsCache {
    static CACHE: OnceLock<SsCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Supersingular j-invariants lying in `field`, by exhaustive point counting.
pub fn supersingular_j_set_in(field: FiniteField) -> Result<Arc<BTreeSet<FfElem>>, LocalError> {
    if let Some(hit) = ss_cache().lock().expect("cache poisoned").get(&field) {
        return Ok(hit.clone());
    }
    let mut set = BTreeSet::new();
    for j in field.elements() {
        if is_supersingular_j(j)? {
            set.insert(j);
        }
    }
    let set = Arc::new(set);
    ss_cache().lock().expect("cache poisoned").insert(field, set.clone());
    Ok(set)
}

/// Supersingular j-invariants in `𝔽_p`, for a prime `5 ≤ p ≤ 1000`.
pub fn supersingular_j_set(p: u64) -> Result<Arc<BTreeSet<FfElem>>, LocalError> {
    if p < 5 {
        return Err(LocalError::SmallPrime(p));
    }
    supersingular_j_set_in(FiniteField::prime(p)?)
}

/// Sorts local data into the classes of the additive-reduction case split.
pub fn classify_reduction(local: &LocalInvariants) -> Result<ReductionClass, LocalError> {
    local.check_consistency()?;
    match local.kodaira {
        KodairaType::I(0) => return Ok(ReductionClass::Good),
        KodairaType::I(_) => return Ok(ReductionClass::Multiplicative),
        _ => {}
    }
    if local.v_j < 0 {
        return Ok(ReductionClass::AdditivePotMultiplicative);
    }
    let p = local.slot.p;
    if p < 5 {
        return Err(LocalError::SmallPrime(p));
    }
    let ss = if let Some(decl) = local.declared {
        decl == PotentialGood::Supersingular
    } else if local.v_j > 0 {
        // j ≡ 0
        supersingular_j_set(p)?.contains(&FiniteField::prime(p)?.zero())
    } else {
        let j = local
            .j_residue
            .ok_or_else(|| LocalError::Malformed("v(j) = 0 without a residue of j".into()))?;
        supersingular_j_set_in(j.field())?.contains(&j)
    };
    Ok(if ss {
        ReductionClass::AdditivePotGoodSupersingular
    } else {
        ReductionClass::AdditivePotGoodOrdinary
    })
}

pub fn is_semistable(local: &LocalInvariants) -> bool {
    matches!(local.kodaira, KodairaType::I(_))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{prime_split, val_p};
    use crate::model::BaseField;

    fn over_q(a: [i64; 5]) -> Curve {
        Curve::from_ints(BaseField::Rationals, a).unwrap()
    }

    fn at(p: u64) -> PrimeSlot {
        PrimeSlot::rational(p).unwrap()
    }

    #[test]
    fn tate_examples() {
        let r = tate(&over_q([0, 0, 0, 0, 1]), &at(5)).unwrap();
        assert_eq!((r.local.kodaira, r.local.v_disc), (KodairaType::I(0), Val::Finite(0)));
        let r = tate(&over_q([0, 1, 0, 0, 5]), &at(5)).unwrap();
        assert_eq!(r.local.kodaira, KodairaType::I(1));
        assert_eq!((r.local.v_c4, r.local.v_disc), (Val::Finite(0), Val::Finite(1)));
        let r = tate(&over_q([0, 0, 0, 625, 625]), &at(5)).unwrap();
        assert_eq!(r.local.kodaira, KodairaType::IVStar);
        assert_eq!((r.local.v_c4, r.local.v_disc), (Val::Finite(4), Val::Finite(8)));
    }

    #[test]
    fn non_minimal_model_is_reduced() {
        // y² = x³ + 5⁴·x + 5⁶ · 3 is 5-non-minimal scaling of y² = x³ + x + 3
        let e = over_q([0, 0, 0, 625, 3 * 15625]);
        let r = tate(&e, &at(5)).unwrap();
        let base = tate(&over_q([0, 0, 0, 1, 3]), &at(5)).unwrap();
        assert_eq!(r.local.v_disc, base.local.v_disc);
        assert_eq!(r.local.kodaira, base.local.kodaira);
        let vin = val_p(e.disc().as_rat().unwrap(), 5).finite().unwrap();
        assert_eq!((vin - r.local.v_disc.finite().unwrap()) % 12, 0);
    }

    #[test]
    fn non_integral_model_is_scaled() {
        let e = Curve::short(
            BaseField::Rationals,
            QuadElem::from_rat(crate::exact::rat_frac(1, 25)),
            QuadElem::from_int(1),
        )
        .unwrap();
        let r = tate(&e, &at(5)).unwrap();
        assert!(r.minimal.is_integral_at(&at(5)));
    }

    #[test]
    fn twist_by_five_is_potentially_multiplicative() {
        let e = over_q([0, 1, 0, 0, 5]).quadratic_twist(&QuadElem::from_int(5)).unwrap();
        let r = tate(&e, &at(5)).unwrap();
        assert_eq!((r.local.v_c4, r.local.v_disc, r.local.v_j), (
            Val::Finite(2),
            Val::Finite(7),
            Val::Finite(-1)
        ));
        assert_eq!(r.local.kodaira, KodairaType::IStar(1));
        assert_eq!(classify_reduction(&r.local).unwrap(), ReductionClass::AdditivePotMultiplicative);
    }

    #[test]
    fn classification_examples() {
        let r = tate(&over_q([0, 0, 0, 625, 625]), &at(5)).unwrap();
        assert_eq!(
            classify_reduction(&r.local).unwrap(),
            ReductionClass::AdditivePotGoodSupersingular
        );
        let r = tate(&over_q([0, 0, 0, 49, 49]), &at(7)).unwrap();
        assert_eq!(r.local.v_j, Val::Finite(2));
        assert_eq!(classify_reduction(&r.local).unwrap(), ReductionClass::AdditivePotGoodOrdinary);
    }

    #[test]
    fn supersingular_sets() {
        let f = |p| {
            supersingular_j_set(p).unwrap().iter().map(|j| j.coeffs().0).collect::<Vec<_>>()
        };
        assert_eq!(f(5), vec![0]);
        assert_eq!(f(7), vec![6]);
        assert_eq!(f(13), vec![5]);
        assert!(supersingular_j_set(3).is_err());
    }

    #[test]
    fn supersingular_set_over_quadratic_extension_matches_prime_field() {
        for p in [5u64, 7] {
            let big = supersingular_j_set_in(FiniteField::quadratic(p).unwrap()).unwrap();
            let small = supersingular_j_set(p).unwrap();
            let big: Vec<_> = big.iter().map(|j| j.coeffs()).collect();
            let small: Vec<_> = small.iter().map(|j| j.coeffs()).collect();
            assert_eq!(big, small);
        }
        // p = 13: 5 ∈ 𝔽_p, and nothing new appears in 𝔽_{169}
        let big = supersingular_j_set_in(FiniteField::quadratic(13).unwrap()).unwrap();
        assert_eq!(big.len(), 1);
    }

    #[test]
    fn deuring_bound() {
        for p in crate::exact::primes_up_to(100).filter(|&p| p >= 5) {
            let n = supersingular_j_set(p).unwrap().len() as u64;
            assert!(n >= 1 && n <= p / 12 + 2, "p = {p}: {n}");
        }
    }

    #[test]
    fn semistable_predicate() {
        let mut l = tate(&over_q([0, 0, 0, 0, 1]), &at(5)).unwrap().local;
        assert!(is_semistable(&l));
        l.kodaira = KodairaType::I(5);
        assert!(is_semistable(&l));
        l.kodaira = KodairaType::IVStar;
        assert!(!is_semistable(&l));
    }

    #[test]
    fn kodaira_symbols_round_trip() {
        for k in [
            KodairaType::I(0),
            KodairaType::I(12),
            KodairaType::II,
            KodairaType::IIIStar,
            KodairaType::IStar(3),
        ] {
            assert_eq!(k.to_string().parse::<KodairaType>().unwrap(), k);
        }
        assert!("V".parse::<KodairaType>().is_err());
    }

    #[test]
    fn residue_characteristic_three() {
        // y² = x³ + 9x + 27: the 3-twist of y² = x³ + x + 1 (good at 3)
        let r = tate(&over_q([0, 0, 0, 9, 27]), &at(3)).unwrap();
        assert!(r.local.kodaira.is_additive());
        assert_eq!(r.local.kodaira, KodairaType::IStar(0));
        // 37a1 is good at 3
        let r = tate(&over_q([0, 0, 1, -1, 0]), &at(3)).unwrap();
        assert_eq!(r.local.kodaira, KodairaType::I(0));
    }

    #[test]
    fn inert_and_split_slots() {
        let k = BaseField::real_quadratic(2).unwrap();
        let e = Curve::from_ints(k, [0, 0, 0, 9, 27]).unwrap();
        let inert = &prime_split(2, 3).unwrap()[0];
        let r = tate(&e, inert).unwrap();
        assert_eq!(r.local.kodaira, KodairaType::IStar(0));
        let tw = e.quadratic_twist(&QuadElem::from_int(3)).unwrap();
        assert_eq!(tate(&tw, inert).unwrap().local.kodaira, KodairaType::I(0));
    }

    #[test]
    fn malformed_local_data_is_rejected() {
        let mut l = tate(&over_q([0, 0, 0, 625, 625]), &at(5)).unwrap().local;
        l.v_j = Val::Finite(3);
        assert!(matches!(classify_reduction(&l), Err(LocalError::Malformed(_))));
    }
}
