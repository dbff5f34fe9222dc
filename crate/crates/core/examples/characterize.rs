//! Scan every a in GF(2^(2m))^* and compare bentness of f_(a,1) with K = 4.
//!
//!     cargo run --release --example characterize -- 4

use std::collections::BTreeMap;

use bentforge::mesnager::Family;
use bentforge::registry::FieldRegistry;

pub fn run_with(m: u32) -> Result<(), Box<dyn std::error::Error>> {
    let family = Family::from_registry(&FieldRegistry::builtin(), m)?;
    let rows = family.characterize()?;
    let mut by_k: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    for r in &rows {
        let e = by_k.entry(r.kloosterman).or_default();
        e.0 += 1;
        e.1 += r.bent as usize;
    }
    println!("m = {m}: {} values of a", rows.len());
    println!("{:>6} {:>6} {:>6}", "K", "count", "bent");
    for (k, (count, bent)) in &by_k {
        println!("{k:>6} {count:>6} {bent:>6}");
    }
    let consistent = rows.iter().all(|r| r.consistent);
    println!("bent exactly when K = 4: {consistent}");
    assert!(consistent);
    Ok(())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    run_with(4)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(4);
    run_with(m)
}
