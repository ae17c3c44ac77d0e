//! Semistabilising quadratic twists at the primes above 3.

use modcert::certify::find_semistabilizing_twist;
use modcert::model::{BaseField, Curve};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for field in [BaseField::Rationals, BaseField::RealQuadratic(2), BaseField::RealQuadratic(13)] {
        let c = Curve::from_ints(field, [0, 0, 0, 9, 27])?;
        let t = find_semistabilizing_twist(&c)?;
        let types: Vec<String> = t.locals.iter().map(|l| format!("{}: {}", l.slot.label, l.kodaira)).collect();
        println!("{c}: d = {}, {}", t.d, types.join(", "));
    }
    Ok(())
}
