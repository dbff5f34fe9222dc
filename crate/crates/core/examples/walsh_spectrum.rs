//! Walsh spectrum, bentness and dual of a small binomial function.
//!
//!     cargo run --example walsh_spectrum

use bentforge::boolfun::{dual, is_bent, walsh_at, walsh_transform};
use bentforge::mesnager::Family;
use bentforge::registry::FieldRegistry;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let family = Family::from_registry(&FieldRegistry::builtin(), 2)?;
    let a = family.search_bent(1)?[0];
    let f = family.f1(a)?;
    println!("f_(a,1) on GF(16), a = {a:#x}, truth table {}", f.to_hex());

    let spectrum = walsh_transform(&f);
    for b in family.ctx().elements() {
        assert_eq!(spectrum.get(b) as i64, walsh_at(&f, b));
    }
    println!("spectrum {:?}", spectrum.values);
    println!("histogram {:?}", spectrum.histogram());
    println!("Parseval: {}", spectrum.satisfies_parseval());

    if is_bent(&f)? {
        let d = dual(&f)?;
        println!("bent; dual {} (bent: {})", d.to_hex(), is_bent(&d)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
