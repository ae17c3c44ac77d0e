//! Cyclic bounds on the projective inertia image, checked against explicit
//! diagonal matrices.

use modcert::inertia::{kraus_descriptor, matrix_order_oracle, order_table};
use modcert::exact::Val;
use modcert::localred::{PotentialGood, ReductionClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in [5, 7] {
        for class in [PotentialGood::Ordinary, PotentialGood::Supersingular] {
            println!("p = {p}, {class:?}: {:?}", order_table(p, class)?);
        }
    }
    let d = kraus_descriptor(5, ReductionClass::AdditivePotGoodSupersingular, 1, 8, Val::Finite(4), Val::Finite(4))?;
    println!("{}", serde_json::to_string(&d)?);
    println!("matrix oracle: {}", matrix_order_oracle(&d)?);
    Ok(())
}
