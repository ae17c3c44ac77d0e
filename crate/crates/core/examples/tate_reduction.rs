//! Tate's algorithm over ℚ and at an inert prime of ℚ(√2).

use modcert::exact::{slots_above, QuadElem};
use modcert::localred::{classify_reduction, tate};
use modcert::model::{BaseField, Curve};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = Curve::from_ints(BaseField::Rationals, [0, 0, 0, 9, 27])?;
    let twisted = Curve::from_ints(BaseField::Rationals, [0, 0, 0, -1, 1])?.quadratic_twist(&QuadElem::from_int(5))?;
    for (name, c, p) in [("9x+27", &e, 3), ("twist of x^3-x+1 by 5", &twisted, 5)] {
        for slot in slots_above(None, p)? {
            let r = tate(c, &slot)?;
            // the potential-good split is only defined for p ≥ 5
            let class = if p >= 5 { classify_reduction(&r.local)?.to_string() } else { "-".into() };
            println!("{name} at {slot}: {} (v(Δ) = {}, class {class})", r.local.kodaira, r.local.v_disc);
        }
    }
    let k = Curve::from_ints(BaseField::RealQuadratic(2), [0, 0, 0, 9, 27])?;
    for slot in slots_above(Some(2), 3)? {
        println!("9x+27 over Q(√2) at {slot}: {}", tate(&k, &slot)?.local.kodaira);
    }
    Ok(())
}
