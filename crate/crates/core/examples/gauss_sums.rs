//! Gauss sums of GF(64) in Z_q / 2^M: Teichmuller lifts, the leading 2-adic
//! digit of each G(k), and the Davenport-Hasse relation with GF(8).
//!
//!     cargo run --example gauss_sums

use bentforge::expsums::weight_mod;
use bentforge::padic::{davenport_hasse_check, stickelberger_check, GaussTable, PadicCtx};
use bentforge::registry::FieldRegistry;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let field = FieldRegistry::builtin().ctx(6)?;
    let ring = PadicCtx::new(field.clone(), 12)?;
    println!(
        "Z_q / 2^{} over GF(64); lifted modulus {:?}",
        ring.precision(),
        ring.lifted_modulus()
    );

    let g = field.generator();
    let omega = ring.teichmuller(g)?;
    assert_eq!(ring.pow(&omega, field.group_order()), ring.one());
    assert_eq!(ring.reduce(&omega), g);
    println!("omega(g) = {:?}", omega.coeffs);

    let table = GaussTable::new(&ring);
    println!("{:>4} {:>6} {:>10}", "k", "wt(k)", "v_2(G(k))");
    for k in 0..12 {
        let v = ring.valuation(table.get(k));
        println!("{k:>4} {:>6} {v:>10}", weight_mod(k as i128, 6));
        assert_eq!(v, weight_mod(k as i128, 6));
    }
    println!(
        "Stickelberger congruence for all k: {}",
        stickelberger_check(&ring, &table)
    );
    println!(
        "Davenport-Hasse with GF(8): {}",
        davenport_hasse_check(&ring, &table)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
