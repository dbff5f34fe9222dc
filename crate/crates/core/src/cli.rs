//! Command-line front door. Exit codes: 0 success, 1 a check failed,
//! 2 usage or input error.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::boolfun::{
    dual_from_spectrum, first_non_bent_decimation, spectrum_is_bent, walsh_transform,
    BooleanFunction,
};
use crate::certigraph::{analyze, Analysis, Certification};
use crate::expsums::kloosterman_of_norm;
use crate::mesnager::{binomial_f1, reproduce_example, Family};
use crate::padic::{
    davenport_hasse_check, interpolation_check, kloosterman_gauss_check, stickelberger_check,
    stickelberger_valuation_check, GaussTable, PadicCtx,
};
use crate::registry::{CheckOutcome, FieldRegistry, RunManifest};
use crate::suites::{carry_batch, run_all, SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bentforge",
    version,
    about = "Exact checks for binomial bent functions over GF(2^n)"
)]
pub struct Cli {
    /// JSON file mapping degree to hex modulus (falls back to $BENTFORGE_REGISTRY)
    #[arg(long, global = true, value_name = "PATH")]
    pub field_registry: Option<PathBuf>,
    /// Emit JSON instead of aligned text
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for scans (0 = all cores)
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe GF(2^n) and optionally one element
    Field {
        /// Extension degree n
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a_hex: Option<String>,
    },
    /// Walsh spectrum of f_(a,1) or of a hex truth table on GF(2^(2m))
    Walsh(FunctionArgs),
    /// Bentness, dual and hyper-bentness of f_(a,1) or a hex truth table
    Bent {
        #[command(flatten)]
        function: FunctionArgs,
        /// Also scan every coprime decimation
        #[arg(long)]
        hyper: bool,
    },
    /// Table of (a, K_m(a^(2^m+1)), bent) for a in GF(2^(2m))^*
    Kloosterman {
        #[arg(long)]
        m: u32,
        /// Stop after this many rows (0 = all)
        #[arg(long, default_value_t = 0)]
        limit: usize,
        /// CSV instead of aligned text
        #[arg(long)]
        csv: bool,
    },
    /// Gauss sum congruences and identities in Z_q / 2^M, q = 2^(2m)
    PadicCheck {
        #[arg(long)]
        m: u32,
        /// Working precision M (default 2m + 4)
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Random carry systems; pass/fail counts as JSON
    CarryCheck {
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
        #[arg(long, default_value_t = 16)]
        max_n: usize,
        #[arg(long, default_value_t = SEED)]
        seed: u64,
    },
    /// Build and certify the 72-vertex carry digraph
    GraphCertify {
        /// Write graph, SCC labels and potentials as JSON
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// The binomial family f_(a,b)
    Mesnager {
        #[command(subcommand)]
        action: MesnagerCommand,
    },
    /// Run every check suite
    VerifyPaper,
}

#[derive(Debug, Args)]
pub struct FunctionArgs {
    /// Half degree m (the field is GF(2^(2m)))
    #[arg(long)]
    pub m: u32,
    /// Coefficient a of f_(a,1)
    #[arg(long, conflicts_with = "table_hex")]
    pub a_hex: Option<String>,
    /// Truth table, byte k holding f(8k..8k+8) least significant bit first
    #[arg(long)]
    pub table_hex: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum MesnagerCommand {
    /// Compare bentness with K = 4 for every a
    Characterize {
        #[arg(long)]
        m: u32,
        /// Write the rows as JSON
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Sample this many a instead of scanning all (required for 2m > 16)
        #[arg(long, default_value_t = 0)]
        limit: usize,
    },
    /// Reproduce the worked m = 6 instance
    Example,
    /// List values a with K = 4, each confirmed bent
    Search {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
}

/// Error carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: e.to_string(),
    }
}

fn parse_hex(text: &str) -> Result<u32, Failure> {
    let t = text.trim();
    let t = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t);
    u32::from_str_radix(t, 16).map_err(|_| usage(format!("not a hex field element: {text}")))
}

struct Context<'a> {
    registry: FieldRegistry,
    json: bool,
    out: &'a mut (dyn Write + Send),
}

impl Context<'_> {
    fn emit(&mut self, value: &serde_json::Value) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(value).map_err(usage)?;
        writeln!(self.out, "{text}").map_err(usage)
    }

    fn line(&mut self, text: impl std::fmt::Display) -> Result<(), Failure> {
        writeln!(self.out, "{text}").map_err(usage)
    }

    fn finish(
        &mut self,
        mut manifest: RunManifest,
        started: Instant,
        extra: serde_json::Value,
    ) -> Result<i32, Failure> {
        manifest.wall_clock_ms = started.elapsed().as_millis();
        let ok = manifest.all_passed();
        if self.json {
            let mut body = json!({ "manifest": manifest });
            if let (Some(obj), serde_json::Value::Object(more)) = (body.as_object_mut(), extra) {
                obj.extend(more);
            }
            self.emit(&body)?;
        } else {
            for c in &manifest.checks {
                let verdict = if c.passed { "PASS" } else { "FAIL" };
                self.line(format_args!("{verdict}  {:<58} {}", c.name, c.detail))?;
            }
            self.line(format_args!(
                "{}  ({} checks, {} ms)",
                if ok { "PASS" } else { "FAIL" },
                manifest.checks.len(),
                manifest.wall_clock_ms
            ))?;
        }
        Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
    }

    fn function(&self, args: &FunctionArgs) -> Result<(BooleanFunction, String), Failure> {
        if args.m == 0 {
            return Err(usage("--m must be positive"));
        }
        let ctx = self.registry.ctx(2 * args.m).map_err(usage)?;
        match (&args.a_hex, &args.table_hex) {
            (Some(a), None) => {
                let a = parse_hex(a)?;
                let f = binomial_f1(&ctx, a).map_err(usage)?;
                Ok((f, format!("f_(a,1), a = {a:#x}")))
            }
            (None, Some(t)) => {
                let f = BooleanFunction::from_hex(ctx, t).map_err(usage)?;
                Ok((f, "truth table".into()))
            }
            _ => Err(usage("give exactly one of --a-hex or --table-hex")),
        }
    }
}

/// Parse `args` (including the program name) and run. Output goes to `out`,
/// diagnostics and usage text to `err`.
pub fn dispatch<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let registry = match FieldRegistry::resolve(cli.field_registry.as_deref()) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let threads = cli.threads;
    let mut ctx = Context {
        registry,
        json: cli.json,
        out,
    };
    let result = crate::par::with_threads(threads, || run(&mut ctx, cli.command, threads));
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary: real argv and standard streams.
pub fn main_exit() -> i32 {
    dispatch(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    )
}

fn run(c: &mut Context<'_>, command: Command, threads: usize) -> Result<i32, Failure> {
    let started = Instant::now();
    match command {
        Command::Field { n, a_hex } => {
            let field = c.registry.ctx(n).map_err(usage)?;
            let mut info = json!({
                "degree": n,
                "modulus": format!("{:#x}", field.spec().modulus()),
                "generator": format!("{:#x}", field.generator()),
                "trace_mask": format!("{:#x}", field.trace_mask()),
            });
            if let Some(a) = a_hex {
                let a = field.check(parse_hex(&a)? as u64).map_err(usage)?;
                info["element"] = json!({
                    "value": format!("{a:#x}"),
                    "trace": field.trace(a),
                    "order": field.element_order(a).ok(),
                    "log": field.log(a),
                    "inverse": field.inv(a).ok().map(|v| format!("{v:#x}")),
                    "square": format!("{:#x}", field.square(a)),
                });
            }
            if c.json {
                c.emit(&info)?;
            } else if let serde_json::Value::Object(map) = &info {
                for (k, v) in map {
                    c.line(format_args!("{k:<12} {v}"))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Walsh(args) => {
            let (f, label) = c.function(&args)?;
            let spectrum = walsh_transform(&f);
            if c.json {
                c.emit(&spectrum.to_json())?;
            } else {
                c.line(format_args!("{label} on GF(2^{})", 2 * args.m))?;
                c.line(format_args!("{:>8} {:>8}", "W", "count"))?;
                for (v, count) in spectrum.histogram() {
                    c.line(format_args!("{v:>8} {count:>8}"))?;
                }
                c.line(format_args!(
                    "Parseval {}",
                    if spectrum.satisfies_parseval() {
                        "ok"
                    } else {
                        "VIOLATED"
                    }
                ))?;
            }
            Ok(if spectrum.satisfies_parseval() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Bent { function, hyper } => {
            let (f, label) = c.function(&function)?;
            let m = function.m;
            let spectrum = walsh_transform(&f);
            let bent = spectrum_is_bent(&spectrum, m);
            let dual = if bent {
                Some(
                    dual_from_spectrum(f.ctx().clone(), &spectrum, m)
                        .map_err(usage)?
                        .to_hex(),
                )
            } else {
                None
            };
            let witness = if hyper && bent {
                Some(first_non_bent_decimation(&f).map_err(usage)?)
            } else {
                None
            };
            if c.json {
                c.emit(&json!({
                    "function": label,
                    "bent": bent,
                    "dual_hex": dual,
                    "hyper_bent": witness.map(|w| w.is_none()),
                    "non_bent_decimation": witness.flatten(),
                }))?;
            } else {
                c.line(format_args!(
                    "{label}: {}",
                    if bent { "bent" } else { "not bent" }
                ))?;
                if let Some(d) = &dual {
                    c.line(format_args!("dual {d}"))?;
                }
                match witness {
                    Some(None) => c.line("hyper-bent")?,
                    Some(Some(k)) => {
                        c.line(format_args!("not hyper-bent: x^{k} decimation is not bent"))?
                    }
                    None => {}
                }
            }
            Ok(EXIT_OK)
        }
        Command::Kloosterman { m, limit, csv } => {
            let fam = Family::from_registry(&c.registry, m).map_err(usage)?;
            let mut rows = Vec::new();
            for a in fam.ctx().nonzero() {
                if limit > 0 && rows.len() == limit {
                    break;
                }
                let k = kloosterman_of_norm(fam.ctx(), a).map_err(usage)?;
                let bent = spectrum_is_bent(&walsh_transform(&fam.f1(a).map_err(usage)?), m);
                rows.push((a, k, bent));
            }
            let consistent = rows.iter().all(|&(_, k, bent)| bent == (k == 4));
            if c.json {
                let body: Vec<_> = rows
                    .iter()
                    .map(|&(a, k, bent)| json!({"a": format!("{a:#x}"), "kloosterman": k, "bent": bent}))
                    .collect();
                c.emit(&json!(body))?;
            } else if csv {
                c.line("a,kloosterman,bent")?;
                for (a, k, bent) in rows {
                    c.line(format_args!("{a:#x},{k},{bent}"))?;
                }
            } else {
                c.line(format_args!("{:>8} {:>6} {:>6}", "a", "K", "bent"))?;
                for (a, k, bent) in rows {
                    c.line(format_args!("{:>8} {k:>6} {bent:>6}", format!("{a:#x}")))?;
                }
            }
            Ok(if consistent {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::PadicCheck { m, precision } => {
            if m == 0 {
                return Err(usage("--m must be positive"));
            }
            let n = 2 * m;
            let field = c.registry.ctx(n).map_err(usage)?;
            let precision = precision.unwrap_or(n + 4);
            let ring = PadicCtx::new(field, precision).map_err(usage)?;
            let table = GaussTable::new(&ring);
            let mut manifest = RunManifest::new(&c.registry, "padic-check");
            manifest.param("m", m).param("precision", precision);
            manifest.checks.push(CheckOutcome::new(
                "G(0) = -1",
                table.get(0) == &ring.from_int(-1),
                "",
            ));
            manifest.checks.push(CheckOutcome::new(
                "Stickelberger congruence",
                stickelberger_check(&ring, &table),
                format!("{} exponents", ring.field().group_order()),
            ));
            manifest.checks.push(CheckOutcome::new(
                "valuation of G(k) equals wt(k)",
                stickelberger_valuation_check(&ring, &table),
                "",
            ));
            manifest.checks.push(CheckOutcome::new(
                "Gauss sum interpolation",
                interpolation_check(&ring, &table),
                "",
            ));
            manifest.checks.push(CheckOutcome::new(
                "Davenport-Hasse lifting",
                davenport_hasse_check(&ring, &table).map_err(usage)?,
                "",
            ));
            let units = ring.field().subfield_nonzero(m).map_err(usage)?;
            let mut kg = true;
            for &a in &units {
                kg &= kloosterman_gauss_check(&ring, &table, a).map_err(usage)?;
            }
            manifest.checks.push(CheckOutcome::new(
                "Kloosterman sums via subfield Gauss sums",
                kg,
                format!("{} subfield elements", units.len()),
            ));
            c.finish(manifest, started, json!({}))
        }
        Command::CarryCheck { limit, max_n, seed } => {
            if !(2..=62).contains(&max_n) {
                return Err(usage("--max-n must lie in 2..=62"));
            }
            let batch = carry_batch(limit, max_n, seed);
            let ok = batch.all_pass() || limit == 0;
            let mut manifest = RunManifest::new(&c.registry, "carry-check");
            manifest
                .param("limit", limit)
                .param("max_n", max_n)
                .param("seed", seed);
            manifest
                .checks
                .push(CheckOutcome::new("carry batch", ok, format!("{batch:?}")));
            manifest.wall_clock_ms = started.elapsed().as_millis();
            c.emit(&json!({ "counts": batch, "passed": ok, "manifest": manifest }))?;
            Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::GraphCertify { out } => {
            let Analysis {
                graph: g,
                components: comps,
                component: h,
                certification: cert,
                report,
            } = analyze();
            if let Some(path) = out {
                let potentials = match &cert {
                    Certification::Certified(p) => Some(p),
                    Certification::Counterexample(_) => None,
                };
                let body = json!({
                    "graph": g.to_json(Some(&comps), None),
                    "component": h.to_json(None, potentials),
                    "report": report,
                });
                let text = serde_json::to_string_pretty(&body).map_err(usage)?;
                std::fs::write(&path, text).map_err(usage)?;
            }
            let ok = report.certified && report.certificate_verified;
            if c.json {
                c.emit(&json!({ "report": report, "certified": ok }))?;
            } else {
                c.line(format_args!("{:<28} {}", "vertices", report.vertices))?;
                c.line(format_args!("{:<28} {}", "arcs", report.arcs))?;
                c.line(format_args!(
                    "{:<28} {}",
                    "strong components", report.components
                ))?;
                c.line(format_args!(
                    "{:<28} {}",
                    "largest component", report.largest_component
                ))?;
                let hist: Vec<String> = report
                    .histogram
                    .iter()
                    .map(|(w, k)| format!("{w}:{k}"))
                    .collect();
                c.line(format_args!(
                    "{:<28} {}",
                    "arc weights in H",
                    hist.join(" ")
                ))?;
                if let Some(mean) = &report.min_cycle_mean {
                    c.line(format_args!("{:<28} {mean}", "minimum cycle mean"))?;
                }
                if let Certification::Counterexample(cycle) = &cert {
                    let path: Vec<String> = cycle.vertices.iter().map(|v| v.to_string()).collect();
                    c.line(format_args!(
                        "negative cycle ({}) {}",
                        cycle.weight,
                        path.join(" -> ")
                    ))?;
                }
                c.line(if ok { "CERTIFIED" } else { "NOT CERTIFIED" })?;
            }
            Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Mesnager { action } => mesnager(c, action, started, threads),
        Command::VerifyPaper => {
            let reports = run_all(&c.registry);
            let ok = reports.iter().all(|r| r.passed());
            if c.json {
                let mut manifest = RunManifest::new(&c.registry, "verify-paper");
                manifest.checks = reports.iter().flat_map(|r| r.checks.clone()).collect();
                manifest.wall_clock_ms = started.elapsed().as_millis();
                c.emit(&json!({ "manifest": manifest, "suites": reports }))?;
            } else {
                for r in &reports {
                    for check in &r.checks {
                        let verdict = if check.passed { "PASS" } else { "FAIL" };
                        c.line(format_args!(
                            "{verdict}  [{}] {:<56} {}",
                            r.id, check.name, check.detail
                        ))?;
                    }
                }
                for r in &reports {
                    let verdict = if r.passed() { "PASS" } else { "FAIL" };
                    c.line(format_args!(
                        "suite {} {:<28} {verdict} ({} ms)",
                        r.id, r.name, r.elapsed_ms
                    ))?;
                }
            }
            Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

fn mesnager(
    c: &mut Context<'_>,
    action: MesnagerCommand,
    started: Instant,
    threads: usize,
) -> Result<i32, Failure> {
    match action {
        MesnagerCommand::Characterize { m, out, limit } => {
            let fam = Family::from_registry(&c.registry, m).map_err(usage)?;
            let rows = if limit > 0 {
                fam.characterize_sampled(limit, SEED)
            } else {
                fam.characterize()
            }
            .map_err(usage)?;
            let bent = rows.iter().filter(|r| r.bent).count();
            let k4 = rows.iter().filter(|r| r.kloosterman == 4).count();
            let inconsistent: Vec<&str> = rows
                .iter()
                .filter(|r| !r.consistent)
                .map(|r| r.a_hex.as_str())
                .collect();
            let mut manifest = RunManifest::new(&c.registry, "mesnager characterize");
            manifest
                .param("m", m)
                .param("modulus", format!("{:#x}", fam.ctx().spec().modulus()))
                .param("limit", limit)
                .param("threads", threads);
            manifest.checks.push(CheckOutcome::new(
                "bent iff K = 4",
                inconsistent.is_empty(),
                format!(
                    "{} rows, {bent} bent, {k4} with K = 4, inconsistent {inconsistent:?}",
                    rows.len()
                ),
            ));
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&rows).map_err(usage)?;
                std::fs::write(&path, text).map_err(usage)?;
            }
            let extra = if c.json {
                json!({ "rows": rows })
            } else {
                json!({})
            };
            c.finish(manifest, started, extra)
        }
        MesnagerCommand::Example => {
            let report = reproduce_example(&c.registry).map_err(usage)?;
            let mut manifest = report.manifest.clone();
            manifest.param("embedding_root", &report.embedding_root);
            let extra = json!({
                "kloosterman": report.kloosterman,
                "embedding_root": report.embedding_root,
                "conjugates_tried": report.conjugates_tried,
                "decimated_values": report.decimated_values,
                "non_bent_decimation": report.hyper_bent_witness,
            });
            c.finish(manifest, started, extra)
        }
        MesnagerCommand::Search { m, limit } => {
            let fam = Family::from_registry(&c.registry, m).map_err(usage)?;
            let mut manifest = RunManifest::new(&c.registry, "mesnager search");
            manifest.param("m", m).param("limit", limit);
            match fam.search_bent(limit) {
                Ok(hits) => {
                    let listed: Vec<String> = hits.iter().map(|a| format!("{a:#x}")).collect();
                    manifest.checks.push(CheckOutcome::new(
                        "every K = 4 candidate is bent",
                        true,
                        format!("{} found: {}", hits.len(), listed.join(" ")),
                    ));
                    c.finish(manifest, started, json!({ "bent": listed }))
                }
                Err(crate::mesnager::MesnagerError::Counterexample(a)) => {
                    manifest.checks.push(CheckOutcome::new(
                        "every K = 4 candidate is bent",
                        false,
                        format!("a = {a:#x} has K = 4 but is not bent"),
                    ));
                    c.finish(manifest, started, json!({}))
                }
                Err(e) => Err(usage(e)),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("bentforge").chain(args.iter().copied());
        let code = dispatch(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn no_arguments_is_usage_error() {
        let (code, out, err) = call(&[]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("Usage"));
    }

    #[test]
    fn unknown_subcommand() {
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("Usage"));
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify-paper"));
    }

    #[test]
    fn field_json() {
        let (code, out, _) = call(&["--json", "field", "--n", "6", "--a-hex", "0x8"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["modulus"], "0x5b");
        assert_eq!(v["element"]["value"], "0x8");
    }

    #[test]
    fn bad_element_is_usage_error() {
        let (code, _, err) = call(&["field", "--n", "4", "--a-hex", "zz"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("zz"));
        let (code, _, _) = call(&["field", "--n", "4", "--a-hex", "0x10"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn kloosterman_csv() {
        let (code, out, _) = call(&["kloosterman", "--m", "2", "--csv"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 16);
        assert_eq!(out.lines().next().unwrap(), "a,kloosterman,bent");
    }

    #[test]
    fn odd_m_rejected() {
        let (code, _, err) = call(&["kloosterman", "--m", "3"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("even"));
    }

    #[test]
    fn graph_certify_text() {
        let (code, out, _) = call(&["graph-certify"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("72"));
        assert!(out.contains("33"));
        assert!(out.contains("40"));
        assert!(out.contains("-1:8 0:32 1:80 2:32 3:8"));
        assert!(out.trim_end().ends_with("CERTIFIED"));
    }

    #[test]
    fn reducible_registry_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.json");
        std::fs::write(&p, r#"{"6": "0x41"}"#).unwrap();
        let (code, _, err) = call(&["--field-registry", p.to_str().unwrap(), "field", "--n", "6"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("degree 6"));
    }

    #[test]
    fn carry_check_counts() {
        let (code, out, _) = call(&["carry-check", "--limit", "300"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["counts"]["instances"], 300);
        assert_eq!(v["counts"]["unique"], 300);
    }
}
