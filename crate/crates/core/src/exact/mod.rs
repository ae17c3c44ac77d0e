//! Exact arithmetic: rationals, real quadratic fields, primes of those
//! fields, and small finite fields.

mod ff;
mod quad;
mod rational;
mod slot;

pub use ff::{ff_discriminant, ff_point_count, ff_trace, FfCurve, FfElem, FiniteField};
pub use quad::QuadElem;
pub use rational::{
    is_prime, is_squarefree, mod_inverse, parse_rat, primes_up_to, rat, rat_frac, rat_mod_p,
    rat_to_string, val_int, val_p, Rat, Val,
};
pub use slot::{prime_split, slots_above, val_frak, PrimeSlot, Splitting};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("d must be squarefree and > 1, got {0}")]
    NotSquarefree(i64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not integral at {1}")]
    NotIntegral(String, String),
    #[error("bad reduction input: singular curve over the finite field")]
    BadReduction,
    #[error("unsupported: {0}")]
    Unsupported(String),
}
