//! Weierstrass models over ℚ and real quadratic fields.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{is_squarefree, ExactError, FfCurve, PrimeSlot, QuadElem, Val};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("singular model: discriminant is zero")]
    Singular,
    #[error("twist parameter must be nonzero")]
    ZeroTwist,
    #[error("short form not unit-equivalent at residue characteristic {0}")]
    ShortFormChar(u64),
    #[error("coefficient {0} does not lie in {1}")]
    NotInField(String, String),
    #[error("curves over external fields carry no coefficients")]
    ExternalField,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Hypotheses a user asserts about a field the engine cannot compute in.
/// None of these are checked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldAssumptions {
    #[serde(default)]
    pub totally_real: bool,
    #[serde(default)]
    pub abelian: bool,
    /// Rational primes at which the field is asserted unramified.
    #[serde(default)]
    pub unramified_at: Vec<u64>,
    #[serde(default)]
    pub sqrt5_not_in_field: bool,
    /// Primes `p` with `K ∩ ℚ(ζ_p) = ℚ` asserted.
    #[serde(default)]
    pub cyclotomic_disjoint: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseField {
    Rationals,
    /// `ℚ(√d)` with `d > 1` squarefree.
    RealQuadratic(i64),
    External { label: String, assumptions: FieldAssumptions },
}

impl BaseField {
    pub fn real_quadratic(d: i64) -> Result<Self, ModelError> {
        if d <= 1 || !is_squarefree(d) {
            return Err(ExactError::NotSquarefree(d).into());
        }
        Ok(BaseField::RealQuadratic(d))
    }

    pub fn radicand(&self) -> Option<i64> {
        match self {
            BaseField::RealQuadratic(d) => Some(*d),
            _ => None,
        }
    }

    /// Field discriminant, for the two computable cases.
    pub fn discriminant(&self) -> Option<i64> {
        match self {
            BaseField::Rationals => Some(1),
            BaseField::RealQuadratic(d) if d.rem_euclid(4) == 1 => Some(*d),
            BaseField::RealQuadratic(d) => Some(4 * d),
            BaseField::External { .. } => None,
        }
    }

    pub fn contains(&self, x: &QuadElem) -> bool {
        match (self, x.radicand()) {
            (_, None) => true,
            (BaseField::RealQuadratic(d), Some(e)) => *d == e,
            _ => false,
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::RealQuadratic(d) => write!(f, "Q(√{d})"),
            BaseField::External { label, .. } => write!(f, "{label}"),
        }
    }
}

/// A change of variables `x = u²x' + r`, `y = u³y' + s·u²x' + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transform {
    pub u: QuadElem,
    pub r: QuadElem,
    pub s: QuadElem,
    pub t: QuadElem,
}

impl Transform {
    pub fn identity() -> Self {
        Transform::rst(QuadElem::zero(), QuadElem::zero(), QuadElem::zero())
    }

    pub fn rst(r: QuadElem, s: QuadElem, t: QuadElem) -> Self {
        Transform { u: QuadElem::one(), r, s, t }
    }

    pub fn scale(u: QuadElem) -> Self {
        Transform { u, r: QuadElem::zero(), s: QuadElem::zero(), t: QuadElem::zero() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: QuadElem,
    pub b4: QuadElem,
    pub b6: QuadElem,
    pub b8: QuadElem,
    pub c4: QuadElem,
    pub c6: QuadElem,
    pub disc: QuadElem,
    pub j: QuadElem,
}

/// `y² + a1xy + a3y = x³ + a2x² + a4x + a6` over ℚ or `ℚ(√d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    field: BaseField,
    a: [QuadElem; 5],
}

fn q(n: i64) -> QuadElem {
    QuadElem::from_int(n)
}

impl Curve {
    pub fn new(field: BaseField, a: [QuadElem; 5]) -> Result<Self, ModelError> {
        if matches!(field, BaseField::External { .. }) {
            return Err(ModelError::ExternalField);
        }
        if let Some(bad) = a.iter().find(|c| !field.contains(c)) {
            return Err(ModelError::NotInField(bad.to_string(), field.to_string()));
        }
        let curve = Curve { field, a };
        if curve.disc().is_zero() {
            return Err(ModelError::Singular);
        }
        Ok(curve)
    }

    pub fn from_ints(field: BaseField, a: [i64; 5]) -> Result<Self, ModelError> {
        Self::new(field, a.map(q))
    }

    /// `y² = x³ + Ax + B`.
    pub fn short(field: BaseField, a: QuadElem, b: QuadElem) -> Result<Self, ModelError> {
        Self::new(field, [q(0), q(0), q(0), a, b])
    }

    pub fn field(&self) -> &BaseField {
        &self.field
    }

    pub fn a(&self) -> &[QuadElem; 5] {
        &self.a
    }

    pub fn radicand(&self) -> Option<i64> {
        self.field.radicand()
    }

    pub fn b2(&self) -> QuadElem {
        let [a1, a2, ..] = &self.a;
        a1 * a1 + q(4) * a2
    }

    pub fn b4(&self) -> QuadElem {
        let [a1, _, a3, a4, _] = &self.a;
        a1 * a3 + q(2) * a4
    }

    pub fn b6(&self) -> QuadElem {
        let [_, _, a3, _, a6] = &self.a;
        a3 * a3 + q(4) * a6
    }

    pub fn b8(&self) -> QuadElem {
        let [a1, a2, a3, a4, a6] = &self.a;
        a1 * a1 * a6 + q(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    }

    pub fn c4(&self) -> QuadElem {
        let b2 = self.b2();
        &b2 * &b2 - q(24) * self.b4()
    }

    pub fn c6(&self) -> QuadElem {
        let (b2, b4, b6) = (self.b2(), self.b4(), self.b6());
        -(&b2 * &b2 * &b2) + q(36) * &b2 * &b4 - q(216) * b6
    }

    pub fn disc(&self) -> QuadElem {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * &b8) - q(8) * &b4 * &b4 * &b4 - q(27) * &b6 * &b6 + q(9) * &b2 * &b4 * &b6
    }

    pub fn j(&self) -> QuadElem {
        self.c4().pow(3) / self.disc()
    }

    pub fn invariants(&self) -> Invariants {
        let inv = Invariants {
            b2: self.b2(),
            b4: self.b4(),
            b6: self.b6(),
            b8: self.b8(),
            c4: self.c4(),
            c6: self.c6(),
            disc: self.disc(),
            j: self.j(),
        };
        debug_assert_eq!(
            inv.c4.pow(3) - inv.c6.pow(2),
            q(1728) * &inv.disc,
            "c4³ − c6² = 1728Δ"
        );
        inv
    }

    /// The model obtained by the given change of variables.
    pub fn transform(&self, w: &Transform) -> Curve {
        let [a1, a2, a3, a4, a6] = &self.a;
        let Transform { u, r, s, t } = w;
        let a1n = (a1 + q(2) * s) / u;
        let a2n = (a2 - s * a1 + q(3) * r - s * s) / u.pow(2);
        let a3n = (a3 + r * a1 + q(2) * t) / u.pow(3);
        let a4n = (a4 - s * a3 + q(2) * r * a2 - (t + r * s) * a1 + q(3) * r * r - q(2) * s * t)
            / u.pow(4);
        let a6n = (a6 + r * a4 + r * r * a2 + r.pow(3) - t * a3 - t * t - r * t * a1) / u.pow(6);
        Curve { field: self.field.clone(), a: [a1n, a2n, a3n, a4n, a6n] }
    }

    /// The quadratic twist by `d`: `y² = x³ + d·b2/4·x² + d²·b4/2·x + d³·b6/4`.
    pub fn quadratic_twist(&self, d: &QuadElem) -> Result<Curve, ModelError> {
        if d.is_zero() {
            return Err(ModelError::ZeroTwist);
        }
        if !self.field.contains(d) {
            return Err(ModelError::NotInField(d.to_string(), self.field.to_string()));
        }
        let a2 = d * self.b2() / q(4);
        let a4 = d.pow(2) * self.b4() / q(2);
        let a6 = d.pow(3) * self.b6() / q(4);
        Curve::new(self.field.clone(), [q(0), a2, q(0), a4, a6])
    }

    /// Coefficients reduced into the residue field of `slot`.
    pub fn reduce_at(&self, slot: &PrimeSlot) -> Result<FfCurve, ExactError> {
        let r: Vec<_> = self.a.iter().map(|c| slot.reduce(c)).collect::<Result<_, _>>()?;
        Ok([r[0], r[1], r[2], r[3], r[4]])
    }

    /// Whether every coefficient is integral at `slot`.
    pub fn is_integral_at(&self, slot: &PrimeSlot) -> bool {
        self.a.iter().all(|c| slot.val(c) >= 0)
    }

    /// `y² = x³ + Ax + B` with `A = −c4/48`, `B = −c6/864`, for a model
    /// already minimal at a slot of residue characteristic ≥ 5.
    pub fn short_model_at(&self, slot: &PrimeSlot) -> Result<ShortModel, ModelError> {
        if slot.p() < 5 {
            return Err(ModelError::ShortFormChar(slot.p()));
        }
        let a = -(self.c4() / q(48));
        let b = -(self.c6() / q(864));
        let curve = Curve::short(self.field.clone(), a.clone(), b.clone())?;
        Ok(ShortModel {
            v_a: slot.val(&a),
            v_b: slot.val(&b),
            v_disc: slot.val(&curve.disc()),
            a,
            b,
            curve,
        })
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.a;
        write!(f, "[{a1}, {a2}, {a3}, {a4}, {a6}] over {}", self.field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortModel {
    pub a: QuadElem,
    pub b: QuadElem,
    pub v_a: Val,
    pub v_b: Val,
    pub v_disc: Val,
    pub curve: Curve,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{prime_split, rat, rat_frac};

    fn over_q(a: [i64; 5]) -> Curve {
        Curve::from_ints(BaseField::Rationals, a).unwrap()
    }

    #[test]
    fn invariants_examples() {
        let e = over_q([0, 0, 0, 1, 1]);
        assert_eq!(e.disc(), q(-496));
        assert_eq!(e.j(), QuadElem::from_rat(rat_frac(6912, 31)));
        let e = over_q([0, 1, 0, 0, 5]);
        assert_eq!(e.disc(), q(-11120));
        assert_eq!(e.c4(), q(16));
        let e = over_q([0, 0, 0, -1, 0]);
        assert_eq!(e.disc(), q(64));
        assert_eq!(e.j(), q(1728));
        assert!(e.c6().is_zero());
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(
            Curve::from_ints(BaseField::Rationals, [0, 0, 0, 0, 0]),
            Err(ModelError::Singular)
        );
        assert_eq!(
            Curve::from_ints(BaseField::Rationals, [0, 0, 0, -3, 2]),
            Err(ModelError::Singular)
        );
    }

    #[test]
    fn twist_examples() {
        let e = over_q([0, 0, 0, 1, 1]);
        let t = e.quadratic_twist(&q(5)).unwrap();
        assert_eq!(t, over_q([0, 0, 0, 25, 125]));
        assert_eq!(t.disc(), q(5).pow(6) * q(-496));
        assert_eq!(t.j(), e.j());
        assert_eq!(e.quadratic_twist(&q(1)).unwrap().invariants(), e.invariants());
        assert_eq!(e.quadratic_twist(&q(0)), Err(ModelError::ZeroTwist));
    }

    #[test]
    fn twist_of_general_model_scales_invariants() {
        let e = over_q([1, -1, 1, -3, 7]);
        let d = q(-7);
        let t = e.quadratic_twist(&d).unwrap();
        assert_eq!(t.c4(), d.pow(2) * e.c4());
        assert_eq!(t.c6(), d.pow(3) * e.c6());
        assert_eq!(t.disc(), d.pow(6) * e.disc());
        // twisting twice is isomorphic via u = d
        let tt = t.quadratic_twist(&d).unwrap();
        assert_eq!(tt.c4(), d.pow(4) * e.c4());
        assert_eq!(tt.j(), e.j());
    }

    #[test]
    fn transform_scales_discriminant() {
        let e = over_q([1, -1, 1, -3, 7]);
        let w = Transform { u: q(2), r: q(3), s: q(-1), t: q(5) };
        let f = e.transform(&w);
        assert_eq!(f.disc(), e.disc() / q(2).pow(12));
        assert_eq!(f.c4(), e.c4() / q(2).pow(4));
        assert_eq!(f.j(), e.j());
    }

    #[test]
    fn quadratic_coefficients() {
        let k = BaseField::real_quadratic(2).unwrap();
        let s2 = QuadElem::sqrt_d(2);
        let e = Curve::new(k.clone(), [q(0), q(0), q(0), &s2 + &q(1), q(3)]).unwrap();
        let inv = e.invariants();
        assert_eq!(inv.j, e.j());
        assert!(Curve::new(k, [q(0), q(0), q(0), QuadElem::sqrt_d(3), q(1)]).is_err());
        assert!(BaseField::real_quadratic(8).is_err());
        assert!(BaseField::real_quadratic(-1).is_err());
    }

    #[test]
    fn short_model_examples() {
        let s5 = PrimeSlot::rational(5).unwrap();
        let e = over_q([0, 0, 0, 625, 625]);
        let m = e.short_model_at(&s5).unwrap();
        assert_eq!((m.v_disc, m.v_a, m.v_b), (Val::Finite(8), Val::Finite(4), Val::Finite(4)));
        assert_eq!((m.a.clone(), m.b.clone()), (q(625), q(625)));
        let s7 = PrimeSlot::rational(7).unwrap();
        let m = over_q([0, 0, 0, 49, 49]).short_model_at(&s7).unwrap();
        assert_eq!((m.v_disc, m.v_a, m.v_b), (Val::Finite(4), Val::Finite(2), Val::Finite(2)));
        let m = over_q([0, 0, 0, 0, 1]).short_model_at(&s7).unwrap();
        assert_eq!(m.v_a, Val::Infinite);
        let s3 = PrimeSlot::rational(3).unwrap();
        assert_eq!(e.short_model_at(&s3), Err(ModelError::ShortFormChar(3)));
    }

    #[test]
    fn short_model_preserves_valuations_over_quadratic_field() {
        let k = BaseField::real_quadratic(2).unwrap();
        let e = Curve::new(
            k,
            [q(1), q(0), QuadElem::sqrt_d(2), q(7), QuadElem::new(rat(0), rat(14), 2)],
        )
        .unwrap();
        for slot in prime_split(2, 7).unwrap() {
            let m = e.short_model_at(&slot).unwrap();
            assert_eq!(m.v_disc, slot.val(&e.disc()));
            assert_eq!(m.v_a, slot.val(&e.c4()));
            assert_eq!(m.v_b, slot.val(&e.c6()));
            assert_eq!(m.curve.j(), e.j());
        }
    }
}
