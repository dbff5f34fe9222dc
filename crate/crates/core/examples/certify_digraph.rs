//! Build the 72-vertex carry digraph, isolate its large strong component and
//! certify that it has no negative cycle.
//!
//!     cargo run --example certify_digraph -- graph.json

use bentforge::certigraph::{analyze, verify_certificate, Analysis, Certification};

pub fn run_to(out: Option<&std::path::Path>) -> Result<(), Box<dyn std::error::Error>> {
    let Analysis {
        component: h,
        certification: cert,
        report,
        ..
    } = analyze();
    println!(
        "{} vertices, {} arcs, {} strong components",
        report.vertices, report.arcs, report.components
    );
    println!("component sizes {:?}", &report.component_sizes[..4]);
    println!("arc weights in H: {:?}", report.histogram);
    match &cert {
        Certification::Certified(c) => {
            assert!(verify_certificate(&h, c)?);
            let lowest = c
                .potentials
                .iter()
                .min_by_key(|(_, p)| **p)
                .map(|(v, p)| format!("{v} -> {p}"));
            println!("certified; lowest potential {}", lowest.unwrap_or_default());
            if let Some(path) = out {
                std::fs::write(
                    path,
                    serde_json::to_string_pretty(&h.to_json(None, Some(c)))?,
                )?;
                println!("wrote {}", path.display());
            }
        }
        Certification::Counterexample(cycle) => {
            println!("negative cycle of weight {}", cycle.weight)
        }
    }
    println!("minimum cycle mean {:?}", report.min_cycle_mean);
    Ok(())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    run_to(None)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).map(std::path::PathBuf::from);
    run_to(out.as_deref())
}
