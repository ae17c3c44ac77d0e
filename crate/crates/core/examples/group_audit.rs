//! Borel subgroup orders and exceptional-image thresholds.

use modcert::grouptheory::{audit_borel, klein_order16_witness};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = audit_borel()?;
    println!("{}", serde_json::to_string_pretty(&r)?);
    if let Some(g) = klein_order16_witness()? {
        println!("order-16 subgroup of GL2(F5) with Klein projective image, e.g. {}", g[1]);
    }
    Ok(())
}
