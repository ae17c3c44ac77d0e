use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactError;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rat = BigRational;

/// A discrete valuation value: an integer, or `+∞` for zero.
///
/// `Finite(_) < Infinite` under the derived ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Finite(i64),
    Infinite,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Val::Infinite)
    }

    /// Finite value, or `None` for infinity, with an integer scale applied.
    pub fn scaled(self, k: i64) -> Val {
        match self {
            Val::Finite(v) => Val::Finite(v * k),
            Val::Infinite => Val::Infinite,
        }
    }

    pub fn min(self, other: Val) -> Val {
        std::cmp::min(self, other)
    }
}

impl Add for Val {
    type Output = Val;
    fn add(self, rhs: Val) -> Val {
        match (self, rhs) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinite,
        }
    }
}

impl Add<i64> for Val {
    type Output = Val;
    fn add(self, rhs: i64) -> Val {
        self + Val::Finite(rhs)
    }
}

impl PartialEq<i64> for Val {
    fn eq(&self, other: &i64) -> bool {
        *self == Val::Finite(*other)
    }
}

impl PartialOrd<i64> for Val {
    fn partial_cmp(&self, other: &i64) -> Option<std::cmp::Ordering> {
        Some(self.cmp(&Val::Finite(*other)))
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => write!(f, "{v}"),
            Val::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Val {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Val::Finite(v) => s.serialize_i64(*v),
            Val::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Val {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Val::Finite(v)),
            Raw::Str(s) if s == "inf" => Ok(Val::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected integer or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// `v_p(n)` for an integer `n`.
pub fn val_int(n: &BigInt, p: u64) -> Val {
    if n.is_zero() {
        return Val::Infinite;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Val::Finite(v);
        }
        n = q;
        v += 1;
    }
}

/// `v_p(x)` for a rational `x`; `v_p(0) = +∞`.
pub fn val_p(x: &Rat, p: u64) -> Val {
    if x.is_zero() {
        return Val::Infinite;
    }
    let num = val_int(x.numer(), p).finite().unwrap_or(0);
    let den = val_int(x.denom(), p).finite().unwrap_or(0);
    Val::Finite(num - den)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"` or `"n/d"` exactly.
pub fn parse_rat(s: &str) -> Result<Rat, ExactError> {
    let t = s.trim();
    let bad = || ExactError::MalformedRational(s.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Canonical string: `"n"` for integers, `"n/d"` otherwise.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Reduction of a p-integral rational into `0..p`.
pub fn rat_mod_p(x: &Rat, p: u64) -> Option<u64> {
    if val_p(x, p) < 0 {
        return None;
    }
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb);
    let d = x.denom().mod_floor(&pb);
    let dinv = mod_inverse(&d, &pb)?;
    (n * dinv).mod_floor(&pb).to_u64()
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.mod_floor(m).extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

pub fn primes_up_to(bound: u64) -> impl Iterator<Item = u64> {
    (2..=bound).filter(|&n| is_prime(n))
}

pub fn is_squarefree(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let n = d.unsigned_abs();
    let mut i = 2u64;
    while i * i <= n {
        if n.is_multiple_of(i * i) {
            return false;
        }
        i += 1;
    }
    true
}
