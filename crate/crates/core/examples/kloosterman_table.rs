//! Distribution of Kloosterman sums over GF(2^m) and the values K_m(a^(2^m+1)).
//!
//!     cargo run --example kloosterman_table -- 6

use std::collections::BTreeMap;

use bentforge::expsums::{kloosterman, kloosterman_of_norm, kloosterman_value};
use bentforge::registry::FieldRegistry;

pub fn table(m: u32) -> Result<BTreeMap<i64, usize>, Box<dyn std::error::Error>> {
    let registry = FieldRegistry::builtin();
    let field = registry.ctx(m)?;
    let mut counts = BTreeMap::new();
    for a in field.nonzero() {
        let v = kloosterman_value(&field, a);
        assert!(v.is_sane(), "{v:?}");
        *counts.entry(v.value).or_insert(0) += 1;
    }
    Ok(counts)
}

pub fn run_with(m: u32) -> Result<(), Box<dyn std::error::Error>> {
    let counts = table(m)?;
    println!("K_{m}(a) over GF(2^{m})^*");
    println!("{:>6} {:>6}", "K", "count");
    for (k, c) in &counts {
        println!("{k:>6} {c:>6}");
    }
    if m.is_multiple_of(2) {
        let registry = FieldRegistry::builtin();
        let big = registry.ctx(2 * m)?;
        let hits = big
            .nonzero()
            .filter(|&a| matches!(kloosterman_of_norm(&big, a), Ok(4)))
            .count();
        println!("a in GF(2^{})^* with K_{m}(a^(2^{m}+1)) = 4: {hits}", 2 * m);
    }
    if m == 6 {
        let small = FieldRegistry::builtin().ctx(6)?;
        println!("K_6(z^3) = {}", kloosterman(&small, small.pow(0b10, 3)));
    }
    Ok(())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    run_with(6)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(6);
    run_with(m)
}
