//! Frobenius witnesses and j-map fibres for p = 5 and 7.

use modcert::exact::QuadElem;
use modcert::galois::{curve_with_j_invariant, frobenius_irreducibility, irreducibility_status, Assumptions};
use modcert::model::{BaseField, Curve};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = Curve::from_ints(BaseField::Rationals, [0, 0, 1, -1, 0])?;
    for p in [5, 7] {
        println!("37a1 mod {p}: {}", frobenius_irreducibility(&e, p, 1000)?.to_json());
    }
    let r = curve_with_j_invariant(BaseField::Rationals, &QuadElem::from_int(3376).pow(3))?;
    println!("j = 3376^3 mod 5: {}", irreducibility_status(&r, 5, &Assumptions::default(), 1000)?.to_json());
    Ok(())
}
