//! Full certificates for a curve over ℚ and a flagged curve over ℚ(√2).

use modcert::certify::{certify, CertifyOptions};
use modcert::galois::{AssumeFlag, Assumptions};
use modcert::model::{BaseField, Curve};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = CertifyOptions::default();
    let e = Curve::from_ints(BaseField::Rationals, [0, 0, 1, -1, 0])?;
    print!("{}", certify(&e, &Assumptions::default(), &opts)?.to_json_string());

    let k = Curve::from_ints(BaseField::RealQuadratic(2), [0, 0, 0, 9, 27])?;
    let flags = Assumptions::new([AssumeFlag::Reducible5, AssumeFlag::Reducible7]);
    let cert = certify(&k, &flags, &opts)?;
    for s in &cert.steps {
        println!("- {} [{}]", s.claim, s.citation);
    }
    println!("verdict: {}", cert.verdict);
    Ok(())
}
