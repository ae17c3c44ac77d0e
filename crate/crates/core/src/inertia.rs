//! Action of inertia on `E[p]` for additive reduction over an absolutely
//! unramified base (Kraus), and the cyclic subgroup order it forces in the
//! projective image of `ρ̄_{E,p}`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{is_prime, ExactError, FiniteField, Val};
use crate::grouptheory::{element_order, Mat2};
use crate::localred::{PotentialGood, ReductionClass};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InertiaError {
    #[error("Kraus requires absolutely unramified base (e = {0})")]
    Ramified(u32),
    #[error("inconsistent local data: {0}")]
    Inconsistent(String),
    #[error("reduction class {0} is not additive")]
    NotAdditive(ReductionClass),
    #[error("unsupported prime {0}")]
    UnsupportedPrime(u64),
    #[error("wild descriptor has no diagonal to realise")]
    Wild,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `(v(Δ), v(A), v(B))` for a minimal `y² = x³ + Ax + B` at which the
/// supersingular case is wildly ramified.
pub const WILD_TRIPLES: [(i64, i64, i64); 6] =
    [(2, 1, 1), (3, 1, 2), (4, 2, 2), (8, 3, 4), (9, 3, 5), (10, 4, 5)];

/// Guaranteed cyclic subgroup of the projective image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CyclicBound {
    Order(u64),
    /// The image contains an element of order `p`.
    ContainsPGroup,
}

impl CyclicBound {
    /// Whether a cyclic subgroup this large rules out every group whose
    /// element orders are all below `threshold`.
    pub fn meets(self, threshold: u64) -> bool {
        match self {
            CyclicBound::Order(n) => n >= threshold,
            CyclicBound::ContainsPGroup => true,
        }
    }
}

impl fmt::Display for CyclicBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclicBound::Order(n) => write!(f, "{n}"),
            CyclicBound::ContainsPGroup => write!(f, "contains a p-group"),
        }
    }
}

impl Serialize for CyclicBound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CyclicBound::Order(n) => s.serialize_u64(*n),
            CyclicBound::ContainsPGroup => s.serialize_str("contains_p_group"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InertiaKind {
    /// Upper triangular with diagonal `ω₁^upper`, `ω₁^lower`.
    Tame1 { upper_exp: u64, lower_exp: u64, alpha: Option<i64> },
    /// Diagonal `ω₂^α ω₂'^{p−α}` and its conjugate; `exp` is the exponent of
    /// the first entry as a power of `ω₂`.
    Tame2 { exp: u64, alpha: i64 },
    Wild { triple: (i64, i64, i64) },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InertiaDescriptor {
    pub p: u64,
    #[serde(flatten)]
    pub kind: InertiaKind,
    pub proj_cyclic_bound: CyclicBound,
}

fn exact_alpha(num: i64, v_disc: i64, what: &str) -> Result<i64, InertiaError> {
    if (num * v_disc) % 12 != 0 {
        return Err(InertiaError::Inconsistent(format!(
            "{what}: α = {num}·{v_disc}/12 is not an integer (misclassified reduction?)"
        )));
    }
    Ok(num * v_disc / 12)
}

/// Inertia descriptor for additive reduction at an unramified prime over
/// `p ≥ 5`.
pub fn kraus_descriptor(
    p: u64,
    class: ReductionClass,
    e: u32,
    v_disc: i64,
    v_a: Val,
    v_b: Val,
) -> Result<InertiaDescriptor, InertiaError> {
    if e != 1 {
        return Err(InertiaError::Ramified(e));
    }
    if p < 5 || !is_prime(p) {
        return Err(InertiaError::UnsupportedPrime(p));
    }
    let pi = p as i64;
    let (kind, bound) = match class {
        ReductionClass::AdditivePotMultiplicative => (
            InertiaKind::Tame1 { upper_exp: p.div_ceil(2), lower_exp: (p - 1) / 2, alpha: None },
            CyclicBound::Order(p - 1),
        ),
        ReductionClass::AdditivePotGoodOrdinary => {
            let alpha = exact_alpha(pi - 1, v_disc, "potentially ordinary")?;
            let m = (pi - 1) / (pi - 1).gcd(&(1 - 2 * alpha));
            (
                InertiaKind::Tame1 {
                    upper_exp: (1 - alpha).rem_euclid(pi - 1) as u64,
                    lower_exp: alpha.rem_euclid(pi - 1) as u64,
                    alpha: Some(alpha),
                },
                CyclicBound::Order(m as u64),
            )
        }
        ReductionClass::AdditivePotGoodSupersingular => {
            let triple = (v_disc, v_a, v_b);
            let wild = WILD_TRIPLES
                .iter()
                .any(|&(d, a, b)| triple == (d, Val::Finite(a), Val::Finite(b)));
            if wild {
                let (Val::Finite(a), Val::Finite(b)) = (v_a, v_b) else { unreachable!() };
                (InertiaKind::Wild { triple: (v_disc, a, b) }, CyclicBound::ContainsPGroup)
            } else {
                let alpha = exact_alpha(pi + 1, v_disc, "potentially supersingular")?;
                let n = (pi + 1) / (pi + 1).gcd(&(2 * alpha + 1));
                let exp = (alpha + pi * (pi - alpha)).rem_euclid(pi * pi - 1) as u64;
                (InertiaKind::Tame2 { exp, alpha }, CyclicBound::Order(n as u64))
            }
        }
        other => return Err(InertiaError::NotAdditive(other)),
    };
    Ok(InertiaDescriptor { p, kind, proj_cyclic_bound: bound })
}

/// Projective cyclic bound for every admissible `v(Δ) ∈ 1..=11` in a
/// potential-good class, ignoring the wild triples.
pub fn order_table(p: u64, class: PotentialGood) -> Result<BTreeMap<i64, u64>, InertiaError> {
    let rc = match class {
        PotentialGood::Ordinary => ReductionClass::AdditivePotGoodOrdinary,
        PotentialGood::Supersingular => ReductionClass::AdditivePotGoodSupersingular,
    };
    let mut out = BTreeMap::new();
    for v in 1..=11 {
        // v(A), v(B) = ∞ never match a wild triple
        match kraus_descriptor(p, rc, 1, v, Val::Infinite, Val::Infinite) {
            Ok(d) => {
                let CyclicBound::Order(n) = d.proj_cyclic_bound else { unreachable!() };
                out.insert(v, n);
            }
            Err(InertiaError::Inconsistent(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Projective order of the diagonal part of a tame descriptor, computed by
/// building the matrix over `𝔽_p` or `𝔽_{p²}` with a primitive element in
/// place of the fundamental character.
pub fn matrix_order_oracle(desc: &InertiaDescriptor) -> Result<u64, InertiaError> {
    let p = desc.p;
    let m = match &desc.kind {
        InertiaKind::Tame1 { upper_exp, lower_exp, .. } => {
            let k = FiniteField::prime(p)?;
            let g = k.generator();
            Mat2::diag(g.pow(*upper_exp), g.pow(*lower_exp))
        }
        InertiaKind::Tame2 { alpha, .. } => {
            let k = FiniteField::quadratic(p)?;
            let n = (k.order() - 1) as i64;
            let w2 = k.generator();
            let w2c = w2.pow(p);
            let pow = |x: crate::exact::FfElem, e: i64| x.pow(e.rem_euclid(n) as u64);
            let pi = p as i64;
            let top = pow(w2, *alpha) * pow(w2c, pi - alpha);
            let bottom = pow(w2c, *alpha) * pow(w2, pi - alpha);
            Mat2::diag(top, bottom)
        }
        InertiaKind::Wild { .. } => return Err(InertiaError::Wild),
    };
    Ok(element_order(&m, true))
}
