//! The worked m = 6 instance: a = z^3 in GF(64), f_(a,1) on GF(4096).
//!
//!     cargo run --release --example mesnager_example

use bentforge::mesnager::reproduce_example;
use bentforge::registry::FieldRegistry;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let report = reproduce_example(&FieldRegistry::builtin())?;
    println!(
        "moduli {} / {}, embedding z -> {} ({} tried)",
        report.modulus_6, report.modulus_12, report.embedding_root, report.conjugates_tried
    );
    for check in &report.manifest.checks {
        println!(
            "{}  {}: {}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        );
    }
    assert!(report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
