//! Exact arithmetic in ℚ(√2), prime decomposition and reduction maps.

use modcert::exact::{ff_point_count, slots_above, FiniteField, QuadElem, Rat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = QuadElem::new(Rat::new(1.into(), 2.into()), Rat::from_integer(3.into()), 2);
    println!("x = {x}, N(x) = {}, Tr(x) = {}", x.norm(), x.trace());
    println!("1/x = {}", x.inv().expect("nonzero"));

    for p in [3, 7] {
        for slot in slots_above(Some(2), p)? {
            println!("{slot}: norm {}, v(x) = {}, x mod slot = {}", slot.norm(), slot.val(&x), slot.reduce(&(x.clone() * QuadElem::from_int(2)))?);
        }
    }

    let k = FiniteField::quadratic(3)?;
    let curve = [0, 0, 1, -1, 0].map(|c| k.from_int(c));
    println!("#E(F_9) for 37a1 = {}", ff_point_count(&curve)?);
    Ok(())
}
