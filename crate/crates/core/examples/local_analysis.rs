//! The two exceptional local cases and a potentially multiplicative chain.

use modcert::certify::local_modularity_analysis;
use modcert::exact::{PrimeSlot, QuadElem};
use modcert::galois::IrreducibilityStatus;
use modcert::model::{BaseField, Curve};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let irr = IrreducibilityStatus::Irreducible { frobenius: None, isogeny_checked: false, assumed: true };
    let potmult = Curve::from_ints(BaseField::Rationals, [0, 1, 0, 0, 7])?.quadratic_twist(&QuadElem::from_int(7))?;
    let cases = [
        (Curve::from_ints(BaseField::Rationals, [0, 0, 0, 625, 625])?, 5),
        (Curve::from_ints(BaseField::Rationals, [0, 0, 0, 49, 49])?, 7),
        (potmult, 7),
    ];
    for (c, p) in cases {
        let a = local_modularity_analysis(&c, &PrimeSlot::rational(p)?, &irr)?;
        println!("{c} at {p}: {} ({}, bound {}, v(j) mod 3 = {:?})", a.verdict(), a.class, a.descriptor.proj_cyclic_bound, a.v_j_mod_3());
    }
    Ok(())
}
