//! The nine end-to-end check suites. `verify-paper` runs all of them and
//! the acceptance test runs each under its time budget.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boolfun::{
    is_bent, is_bent_mod, spectrum_is_bent, walsh_at, walsh_transform, BooleanFunction,
};
use crate::carry::{solve_carries, PeriodicBitSeq};
use crate::certigraph::{analyze, walk_correspondence};
use crate::expsums::{
    dillon_sum, kloosterman_of_norm, string_inequality_oracle, walsh_congruence_check,
};
use crate::field::FieldCtx;
use crate::mesnager::{reproduce_example, Family};
use crate::padic::{
    davenport_hasse_check, dillon_gauss_identity_check, interpolation_check,
    kloosterman_gauss_check, stickelberger_check, stickelberger_valuation_check, GaussTable,
    PadicCtx,
};
use crate::registry::{CheckOutcome, FieldRegistry};

/// Fixed seed for every sampled suite.
pub const SEED: u64 = 0x5eed_b0e7;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub id: u32,
    pub name: &'static str,
    pub modules: &'static [&'static str],
    pub checks: Vec<CheckOutcome>,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn within_limit(&self) -> bool {
        self.elapsed_ms < self.limit_ms
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

pub struct Suite {
    pub id: u32,
    pub name: &'static str,
    pub modules: &'static [&'static str],
    pub limit: Duration,
    run: fn(&FieldRegistry) -> Vec<CheckOutcome>,
}

impl Suite {
    pub fn run(&self, registry: &FieldRegistry) -> SuiteReport {
        let started = Instant::now();
        let checks = (self.run)(registry);
        SuiteReport {
            id: self.id,
            name: self.name,
            modules: self.modules,
            checks,
            elapsed_ms: started.elapsed().as_millis(),
            limit_ms: self.limit.as_millis(),
        }
    }
}

pub const SUITES: [Suite; 9] = [
    Suite {
        id: 1,
        name: "digraph certification",
        modules: &["certigraph"],
        limit: Duration::from_secs(1),
        run: digraph,
    },
    Suite {
        id: 2,
        name: "weight inequality",
        modules: &["expsums", "carry", "certigraph"],
        limit: Duration::from_secs(60),
        run: weight_inequality,
    },
    Suite {
        id: 3,
        name: "worked example m = 6",
        modules: &["field", "boolfun", "expsums", "mesnager"],
        limit: Duration::from_secs(120),
        run: worked_example,
    },
    Suite {
        id: 4,
        name: "characterization m = 2, 4",
        modules: &["mesnager", "expsums", "boolfun"],
        limit: Duration::from_secs(30),
        run: characterization,
    },
    Suite {
        id: 5,
        name: "Stickelberger congruence",
        modules: &["padic"],
        limit: Duration::from_secs(30),
        run: stickelberger,
    },
    Suite {
        id: 6,
        name: "Gauss sum identities",
        modules: &["padic", "expsums"],
        limit: Duration::from_secs(60),
        run: identities,
    },
    Suite {
        id: 7,
        name: "congruences",
        modules: &["expsums", "mesnager"],
        limit: Duration::from_secs(60),
        run: congruences,
    },
    Suite {
        id: 8,
        name: "carry sequences",
        modules: &["carry"],
        limit: Duration::from_secs(10),
        run: carry_properties,
    },
    Suite {
        id: 9,
        name: "spectral properties",
        modules: &["boolfun", "field"],
        limit: Duration::from_secs(30),
        run: spectral,
    },
];

pub fn suite(id: u32) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.id == id)
}

pub fn run_all(registry: &FieldRegistry) -> Vec<SuiteReport> {
    SUITES.iter().map(|s| s.run(registry)).collect()
}

fn fail(name: &str, err: impl std::fmt::Display) -> CheckOutcome {
    CheckOutcome::new(name, false, format!("error: {err}"))
}

fn digraph(_: &FieldRegistry) -> Vec<CheckOutcome> {
    let report = analyze().report;
    let expected: BTreeMap<i64, usize> = [(-1, 8), (0, 32), (1, 80), (2, 32), (3, 8)].into();
    let mut sizes = vec![40];
    sizes.extend(std::iter::repeat_n(1, 32));
    vec![
        CheckOutcome::new(
            "72 vertices, all out-degrees 4",
            report.vertices == 72 && report.out_degrees_all_four,
            format!("{} vertices, {} arcs", report.vertices, report.arcs),
        ),
        CheckOutcome::new(
            "33 components: one of size 40, 32 singletons",
            report.components == 33 && report.component_sizes == sizes,
            format!(
                "{} components, largest {}",
                report.components, report.largest_component
            ),
        ),
        CheckOutcome::new(
            "weight histogram of H",
            report.histogram == expected,
            format!("{:?}", report.histogram),
        ),
        CheckOutcome::new(
            "potential certificate verified",
            report.certified && report.certificate_verified,
            format!("minimum cycle mean {:?}", report.min_cycle_mean),
        ),
    ]
}

fn weight_inequality(_: &FieldRegistry) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for m in 1..=5u32 {
        let modulus = (1i128 << (2 * m)) - 1;
        let mut bad = None;
        'scan: for u in 0..2u8 {
            for a in 0..modulus {
                for b in 0..modulus {
                    if !string_inequality_oracle(m, u, a, b) {
                        bad = Some((u, a, b));
                        break 'scan;
                    }
                }
            }
        }
        out.push(CheckOutcome::new(
            format!("weight inequality exhaustive, m = {m}"),
            bad.is_none(),
            match bad {
                None => format!("{} instances", 2 * modulus * modulus),
                Some(t) => format!("violated at (u, a, b) = {t:?}"),
            },
        ));
    }
    for m in 1..=4u32 {
        let name = format!("walks match carry sums, m = {m}");
        out.push(match walk_correspondence(m) {
            Ok(r) => CheckOutcome::new(
                name,
                r.all_pass(),
                format!(
                    "{} instances, {} closed, {} weight matches, {} nonnegative",
                    r.instances, r.closed_walks, r.weight_matches, r.nonnegative
                ),
            ),
            Err(e) => fail(&name, e),
        });
    }
    out
}

fn worked_example(registry: &FieldRegistry) -> Vec<CheckOutcome> {
    match reproduce_example(registry) {
        Ok(report) => report.manifest.checks,
        Err(e) => vec![fail("worked example", e)],
    }
}

fn characterization(registry: &FieldRegistry) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for m in [2u32, 4] {
        let name = format!("bent iff K = 4, all a, m = {m}");
        let rows = Family::from_registry(registry, m).and_then(|f| f.characterize());
        out.push(match rows {
            Ok(rows) => {
                let bent = rows.iter().filter(|r| r.bent).count();
                let bad: Vec<String> = rows
                    .iter()
                    .filter(|r| !r.consistent)
                    .map(|r| r.a_hex.clone())
                    .collect();
                CheckOutcome::new(
                    name,
                    bad.is_empty(),
                    format!(
                        "{} values of a, {} bent, inconsistent {:?}",
                        rows.len(),
                        bent,
                        bad
                    ),
                )
            }
            Err(e) => fail(&name, e),
        });
    }
    let name = "bentness independent of b, m = 2";
    let check = || -> Result<(bool, usize), crate::mesnager::MesnagerError> {
        let fam = Family::from_registry(registry, 2)?;
        let mut count = 0;
        for a in fam.ctx().nonzero() {
            let reference = is_bent(&fam.f1(a)?)?;
            for b in fam.f4_units() {
                count += 1;
                if is_bent(&fam.build_f(&fam.spec(a, b)?)?)? != reference {
                    return Ok((false, count));
                }
            }
        }
        Ok((true, count))
    };
    out.push(match check() {
        Ok((ok, count)) => CheckOutcome::new(name, ok, format!("{count} pairs (a, b)")),
        Err(e) => fail(name, e),
    });
    out
}

fn stickelberger(registry: &FieldRegistry) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for n in [4u32, 6, 8] {
        let name = format!("G(k) = 2^wt(k) mod 2^(wt(k)+1), n = {n}, M = {}", n + 4);
        let result = registry
            .ctx(n)
            .map_err(|e| e.to_string())
            .and_then(|f| PadicCtx::new(f, n + 4).map_err(|e| e.to_string()));
        out.push(match result {
            Ok(ctx) => {
                let table = GaussTable::new(&ctx);
                let congruence = stickelberger_check(&ctx, &table);
                let valuation = stickelberger_valuation_check(&ctx, &table);
                let g0 = table.get(0) == &ctx.from_int(-1);
                CheckOutcome::new(
                    name,
                    congruence && valuation && g0,
                    format!("congruence {congruence}, valuation {valuation}, G(0) = -1 {g0}"),
                )
            }
            Err(e) => fail(&name, e),
        });
    }
    out
}

fn identities(registry: &FieldRegistry) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let padic = |n: u32, precision: u32| -> Result<(PadicCtx, GaussTable), String> {
        let ctx = PadicCtx::new(registry.ctx(n).map_err(|e| e.to_string())?, precision)
            .map_err(|e| e.to_string())?;
        let table = GaussTable::new(&ctx);
        Ok((ctx, table))
    };
    for n in [4u32, 6] {
        let name = format!("interpolation, q = {}", 1u32 << n);
        out.push(match padic(n, 12) {
            Ok((ctx, table)) => {
                CheckOutcome::new(name, interpolation_check(&ctx, &table), "M = 12")
            }
            Err(e) => fail(&name, e),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (m, samples) in [(2u32, None), (3, Some(24usize))] {
        let name = format!("Dillon sum via Gauss sums, m = {m}");
        let mut run = || -> Result<(bool, usize), String> {
            let (ctx, table) = padic(2 * m, 16)?;
            let top = ctx.field().group_order() as u32;
            let pairs: Vec<(u32, u32)> = match samples {
                None => (1..=top)
                    .flat_map(|a| (1..=top).map(move |c| (a, c)))
                    .collect(),
                Some(s) => (0..s)
                    .map(|_| (rng.gen_range(1..=top), rng.gen_range(1..=top)))
                    .collect(),
            };
            for &(a, c) in &pairs {
                if !dillon_gauss_identity_check(&ctx, &table, a, c).map_err(|e| e.to_string())? {
                    return Ok((false, pairs.len()));
                }
            }
            Ok((true, pairs.len()))
        };
        out.push(match run() {
            Ok((ok, count)) => CheckOutcome::new(name, ok, format!("{count} pairs (a, c), M = 16")),
            Err(e) => fail(&name, e),
        });
    }
    for m in [2u32, 3] {
        let name = format!("Davenport-Hasse lifting, m = {m}");
        out.push(match padic(2 * m, 16) {
            Ok((ctx, table)) => match davenport_hasse_check(&ctx, &table) {
                Ok(ok) => CheckOutcome::new(name, ok, "all i mod 2^m - 1"),
                Err(e) => fail(&name, e),
            },
            Err(e) => fail(&name, e),
        });
        let name = format!("Kloosterman sums via subfield Gauss sums, m = {m}");
        let run = || -> Result<(bool, usize), String> {
            let (ctx, table) = padic(2 * m, 16)?;
            let units = ctx.field().subfield_nonzero(m).map_err(|e| e.to_string())?;
            for &a in &units {
                if !kloosterman_gauss_check(&ctx, &table, a).map_err(|e| e.to_string())? {
                    return Ok((false, units.len()));
                }
            }
            Ok((true, units.len()))
        };
        out.push(match run() {
            Ok((ok, count)) => CheckOutcome::new(name, ok, format!("{count} subfield elements")),
            Err(e) => fail(&name, e),
        });
    }
    out
}

/// `B(a, c) = K_m(a^(2^m+1)) + 2^m - 1 (mod 2^(m+1))`.
pub fn dillon_congruence_holds(
    ctx: &FieldCtx,
    a: u32,
    c: u32,
) -> Result<bool, crate::expsums::ExpSumError> {
    let m = ctx.degree() / 2;
    let modulus = 1i64 << (m + 1);
    let b = dillon_sum(ctx, a, c)?;
    let k = kloosterman_of_norm(ctx, a)?;
    Ok((b - k - (1i64 << m) + 1).rem_euclid(modulus) == 0)
}

fn congruences(registry: &FieldRegistry) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    for m in 2..=5u32 {
        let name = format!("Dillon sum = K + 2^m - 1 mod 2^(m+1), m = {m}");
        let run = |rng: &mut ChaCha8Rng| -> Result<bool, String> {
            let ctx = registry.ctx(2 * m).map_err(|e| e.to_string())?;
            let top = ctx.group_order() as u32;
            for _ in 0..100 {
                let (a, c) = (rng.gen_range(1..=top), rng.gen_range(1..=top));
                if !dillon_congruence_holds(&ctx, a, c).map_err(|e| e.to_string())? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        out.push(match run(&mut rng) {
            Ok(ok) => CheckOutcome::new(name, ok, "100 random (a, c)"),
            Err(e) => fail(&name, e),
        });
    }
    for (m, samples) in [(2u32, None), (4, Some(50usize))] {
        let name = format!("Walsh coefficient congruence, m = {m}");
        let run = |rng: &mut ChaCha8Rng| -> Result<(bool, usize), String> {
            let ctx = registry.ctx(2 * m).map_err(|e| e.to_string())?;
            let top = ctx.group_order() as u32;
            let pairs: Vec<(u32, u32)> = match samples {
                None => (1..=top)
                    .flat_map(|a| (1..=top).map(move |c| (a, c)))
                    .collect(),
                Some(s) => (0..s)
                    .map(|_| (rng.gen_range(1..=top), rng.gen_range(1..=top)))
                    .collect(),
            };
            for &(a, c) in &pairs {
                if !walsh_congruence_check(&ctx, a, c).map_err(|e| e.to_string())? {
                    return Ok((false, pairs.len()));
                }
            }
            Ok((true, pairs.len()))
        };
        out.push(match run(&mut rng) {
            Ok((ok, count)) => CheckOutcome::new(name, ok, format!("{count} pairs (a, c)")),
            Err(e) => fail(&name, e),
        });
    }
    out
}

/// Counts from the random carry-instance batch.
#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct CarryBatch {
    pub instances: usize,
    pub solved: usize,
    pub digits_sound: usize,
    pub within_bounds: usize,
    pub sum_identity: usize,
    pub unique: usize,
}

impl CarryBatch {
    pub fn all_pass(&self) -> bool {
        self.instances > 0
            && [
                self.solved,
                self.digits_sound,
                self.within_bounds,
                self.sum_identity,
                self.unique,
            ]
            .iter()
            .all(|&c| c == self.instances)
    }
}

/// `instances` random systems with period `2..=max_n`, one to three
/// sequences and coefficients in `[-3, 3] \ {0}`.
pub fn carry_batch(instances: usize, max_n: usize, seed: u64) -> CarryBatch {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut batch = CarryBatch::default();
    while batch.instances < instances {
        let n = rng.gen_range(2..=max_n);
        let k = rng.gen_range(1..=3);
        let coeffs: Vec<i64> = (0..k)
            .map(|_| {
                let t = rng.gen_range(1..=3i64);
                if rng.gen() {
                    t
                } else {
                    -t
                }
            })
            .collect();
        let seqs: Vec<PeriodicBitSeq> = (0..k)
            .map(|_| PeriodicBitSeq::new((0..n).map(|_| rng.gen_range(0..=1u8)).collect()))
            .collect();
        if seqs.iter().all(PeriodicBitSeq::is_constant) {
            continue;
        }
        batch.instances += 1;
        let Ok(sol) = solve_carries(n, &coeffs, &seqs) else {
            continue;
        };
        batch.solved += 1;
        batch.digits_sound += sol.digits_sound(&coeffs, &seqs) as usize;
        batch.within_bounds += sol.within_bounds() as usize;
        batch.sum_identity += sol.sum_identity(&coeffs, &seqs) as usize;
        let j = rng.gen_range(0..n);
        let others: Vec<i64> = (sol.t_minus..sol.t_plus)
            .filter(|&v| v != sol.carries[j])
            .collect();
        let unique = others
            .iter()
            .all(|&v| sol.perturb_and_propagate(&coeffs, &seqs, j, v).is_none());
        batch.unique += unique as usize;
    }
    batch
}

fn carry_properties(_: &FieldRegistry) -> Vec<CheckOutcome> {
    let b = carry_batch(10_000, 16, SEED);
    let detail = |count: usize| format!("{count} / {}", b.instances);
    vec![
        CheckOutcome::new(
            "carry systems solved",
            b.solved == b.instances,
            detail(b.solved),
        ),
        CheckOutcome::new(
            "digit soundness",
            b.digits_sound == b.instances,
            detail(b.digits_sound),
        ),
        CheckOutcome::new(
            "carry bounds",
            b.within_bounds == b.instances,
            detail(b.within_bounds),
        ),
        CheckOutcome::new(
            "carry sum identity",
            b.sum_identity == b.instances,
            detail(b.sum_identity),
        ),
        CheckOutcome::new(
            "uniqueness probe",
            b.unique == b.instances,
            detail(b.unique),
        ),
    ]
}

fn random_function(ctx: &std::sync::Arc<FieldCtx>, rng: &mut ChaCha8Rng) -> BooleanFunction {
    BooleanFunction::from_fn(ctx.clone(), |_| rng.gen())
}

fn spectral(registry: &FieldRegistry) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut spectra = 0usize;
    let mut parseval = true;
    let mut agree = true;
    let mut pairs = 0usize;
    for n in 1..=10u32 {
        let ctx = match registry.ctx(n) {
            Ok(c) => c,
            Err(e) => return vec![fail("spectral suite", e)],
        };
        let mut cached: Option<(BooleanFunction, crate::boolfun::WalshSpectrum)> = None;
        for i in 0..100 {
            if i % 10 == 0 {
                let f = random_function(&ctx, &mut rng);
                let s = walsh_transform(&f);
                spectra += 1;
                parseval &= s.satisfies_parseval();
                cached = Some((f, s));
            }
            let (f, s) = cached.as_ref().expect("set on first pass");
            let b = rng.gen_range(0..ctx.order()) as u32;
            pairs += 1;
            agree &= walsh_at(f, b) == s.get(b) as i64;
        }
    }
    out.push(CheckOutcome::new(
        "fast and direct Walsh coefficients agree, n = 1..10",
        agree,
        format!("{pairs} pairs (f, b)"),
    ));
    let ctx4 = match registry.ctx(4) {
        Ok(c) => c,
        Err(e) => return vec![fail("spectral suite", e)],
    };
    let mut same = true;
    let mut bent = 0;
    for _ in 0..10_000 {
        let f = random_function(&ctx4, &mut rng);
        let s = walsh_transform(&f);
        spectra += 1;
        parseval &= s.satisfies_parseval();
        let exact = spectrum_is_bent(&s, 2);
        bent += exact as usize;
        same &= is_bent(&f).ok() == Some(exact) && is_bent_mod(&f).ok() == Some(exact);
    }
    out.push(CheckOutcome::new(
        "bent iff bent modulo 2^(m+1), 10^4 random n = 4 functions",
        same,
        format!("{bent} bent"),
    ));
    out.push(CheckOutcome::new(
        "Parseval on every computed spectrum",
        parseval,
        format!("{spectra} spectra"),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_cover_every_module() {
        let mut covered: Vec<&str> = SUITES
            .iter()
            .flat_map(|s| s.modules.iter().copied())
            .collect();
        covered.sort_unstable();
        covered.dedup();
        assert_eq!(
            covered,
            [
                "boolfun",
                "carry",
                "certigraph",
                "expsums",
                "field",
                "mesnager",
                "padic"
            ]
        );
    }

    #[test]
    fn carry_batch_is_deterministic() {
        assert_eq!(carry_batch(200, 12, 3), carry_batch(200, 12, 3));
        assert!(carry_batch(200, 12, 3).all_pass());
    }

    #[test]
    fn dillon_congruence_m2_exhaustive() {
        let ctx = FieldRegistry::builtin().ctx(4).unwrap();
        for a in ctx.nonzero() {
            for c in ctx.nonzero() {
                assert!(dillon_congruence_holds(&ctx, a, c).unwrap());
            }
        }
    }
}
