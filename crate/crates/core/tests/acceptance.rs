//! Acceptance run: one line per criterion, each under its own time limit.
//! Exits non-zero if any criterion fails or overruns.

use std::process::ExitCode;
use std::time::Instant;

use bentforge::certigraph::{build_graph, scc_decompose, weight_histogram};
use bentforge::registry::FieldRegistry;
use bentforge::suites::SUITES;

fn main() -> ExitCode {
    let registry = FieldRegistry::builtin();
    let started = Instant::now();
    let mut failed = 0;
    for suite in &SUITES {
        let report = suite.run(&registry);
        let ok = report.passed() && report.within_limit();
        println!(
            "criterion {}: {}  {} ({} checks, {} ms, limit {} ms)",
            report.id,
            if ok { "PASS" } else { "FAIL" },
            report.name,
            report.checks.len(),
            report.elapsed_ms,
            report.limit_ms
        );
        for c in report.failures() {
            println!("    failed: {} ({})", c.name, c.detail);
        }
        if !report.within_limit() {
            println!("    over time limit");
        }
        failed += (!ok) as usize;
    }

    // The suites share code with the library; recount the digraph shape from
    // the raw arc list as an independent cross-check.
    let g = build_graph();
    let comps = scc_decompose(&g);
    let big: Vec<usize> = comps
        .iter()
        .find(|c| c.len() == 40)
        .cloned()
        .unwrap_or_default();
    let in_big = |v: usize| big.contains(&v);
    let mut raw = std::collections::BTreeMap::new();
    for a in g.arcs.iter().filter(|a| in_big(a.tail) && in_big(a.head)) {
        *raw.entry(a.weight).or_insert(0usize) += 1;
    }
    let cross = raw == weight_histogram(&g.induced(&big)) && g.arcs.len() == 288;
    println!(
        "cross-check digraph arc count and weights: {}",
        if cross { "PASS" } else { "FAIL" }
    );
    failed += (!cross) as usize;

    println!(
        "acceptance: {} failing, {} ms total",
        failed,
        started.elapsed().as_millis()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
