//! Irreducibility certificates from a single Frobenius: if
//! `x² − a_𝔩 x + N𝔩` is irreducible over `𝔽_p` then so is `ρ̄_{E,p}`.

use serde::Serialize;

use crate::exact::{ff_trace, primes_up_to, slots_above, PrimeSlot, Splitting};
use crate::model::Curve;

use super::{legendre_symbol, GaloisError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusWitness {
    /// Rational prime below the slot.
    pub ell: u64,
    pub slot: String,
    pub norm: u64,
    pub a: i64,
    /// `a² − 4N𝔩 mod p`, a nonresidue.
    pub disc_mod_p: u64,
}

/// Slots of good reduction with odd residue characteristic `≠ p` and norm at
/// most `bound`, smallest norm first.
pub(crate) fn good_slots(curve: &Curve, p: u64, bound: u64) -> Result<Vec<PrimeSlot>, GaloisError> {
    let mut out = Vec::new();
    for ell in primes_up_to(bound).filter(|&l| l != 2 && l != p) {
        for slot in slots_above(curve.radicand(), ell)? {
            if slot.splitting() == Splitting::Ramified || slot.norm() > bound {
                continue;
            }
            if curve.is_integral_at(&slot) && slot.val(&curve.disc()) == 0 {
                out.push(slot);
            }
        }
    }
    // stable: equal norms keep prime then slot order
    out.sort_by_key(PrimeSlot::norm);
    Ok(out)
}

/// Trace of Frobenius at a slot of good reduction for the given model.
pub fn frobenius_trace(curve: &Curve, slot: &PrimeSlot) -> Result<i64, GaloisError> {
    Ok(ff_trace(&curve.reduce_at(slot)?)?)
}

/// First slot whose Frobenius polynomial is irreducible mod `p`.
pub fn find_witness(curve: &Curve, p: u64, l_bound: u64) -> Result<Option<FrobeniusWitness>, GaloisError> {
    for slot in good_slots(curve, p, l_bound)? {
        let a = frobenius_trace(curve, &slot)?;
        let n = slot.norm() as i64;
        let disc = (a * a - 4 * n).rem_euclid(p as i64);
        if legendre_symbol(disc, p) == -1 {
            return Ok(Some(FrobeniusWitness {
                ell: slot.p(),
                slot: slot.label(),
                norm: slot.norm(),
                a,
                disc_mod_p: disc as u64,
            }));
        }
    }
    Ok(None)
}
