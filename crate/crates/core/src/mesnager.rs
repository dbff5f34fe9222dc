//! The binomial family `f_{a,b}(x) = Tr^n_1(a x^(2^m-1)) + Tr^2_1(b x^((2^n-1)/3))`,
//! `n = 2m`, and the pipeline comparing its bentness with `K_m(a^(2^m+1)) = 4`.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::boolfun::{
    decimate, dual_from_spectrum, first_non_bent_decimation, gcd, spectrum_is_bent,
    walsh_transform, BoolFunError, BooleanFunction, TracePolynomial, WalshSpectrum,
};
use crate::expsums::{kloosterman, kloosterman_of_norm, ExpSumError};
use crate::field::{all_embeddings, make_embedding, Embedding, FieldCtx, FieldError};
use crate::registry::{CheckOutcome, FieldRegistry, RegistryError, RunManifest};

#[derive(Debug, Error)]
pub enum MesnagerError {
    #[error("m = {0} must be a positive even integer")]
    OddM(u32),
    #[error("field degree {0} is odd")]
    OddDegree(u32),
    #[error("a must be nonzero")]
    ZeroA,
    #[error("b = {0:#x} is not a nonzero element of the embedded GF(4)")]
    BadB(u32),
    #[error("exhaustive characterization limited to 2m <= 16 (got m = {0}); use sampling")]
    TooLarge(u32),
    #[error("a = {0:#x} has K = 4 but f_(a,1) is not bent")]
    Counterexample(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    BoolFun(#[from] BoolFunError),
    #[error(transparent)]
    ExpSum(#[from] ExpSumError),
    #[error(transparent)]
    Registry(#[from] RegistryError),
}

/// `Tr^2_1(x^((2^n-1)/3))` for every `x`; computed once per field.
fn cube_part_table(ctx: &FieldCtx) -> Vec<u32> {
    let e = ctx.group_order() / 3;
    ctx.elements().map(|x| ctx.pow(x, e)).collect()
}

/// `f_{a,1}` on the field of `ctx` (even degree, any `m`).
pub fn binomial_f1(ctx: &Arc<FieldCtx>, a: u32) -> Result<BooleanFunction, MesnagerError> {
    let n = ctx.degree();
    if n % 2 == 1 {
        return Err(MesnagerError::OddDegree(n));
    }
    if a == 0 {
        return Err(MesnagerError::ZeroA);
    }
    ctx.check(a as u64)?;
    let cubes = cube_part_table(ctx);
    let e = (1u64 << (n / 2)) - 1;
    let c = ctx.clone();
    Ok(BooleanFunction::from_fn(ctx.clone(), move |x| {
        let dillon = c.trace(c.mul(a, c.pow(x, e)));
        let cube = c
            .trace_rel(cubes[x as usize], 2)
            .expect("cube-root values lie in GF(4)");
        dillon ^ cube == 1
    }))
}

/// Validated family parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BinomialSpec {
    pub m: u32,
    pub a: u32,
    pub b: u32,
}

/// The family over one field: the ambient `GF(2^(2m))`, its `GF(4)`
/// embedding and the table of `x^((2^n-1)/3)`.
pub struct Family {
    ctx: Arc<FieldCtx>,
    f4: Embedding,
    cube_powers: Vec<u32>,
}

impl Family {
    pub fn new(ctx: Arc<FieldCtx>) -> Result<Self, MesnagerError> {
        let n = ctx.degree();
        if n % 2 == 1 {
            return Err(MesnagerError::OddDegree(n));
        }
        let f4 = FieldCtx::with_modulus(2, 0b111)?;
        let embedding = make_embedding(&f4, &ctx)?;
        let cube_powers = cube_part_table(&ctx);
        Ok(Self {
            ctx,
            f4: embedding,
            cube_powers,
        })
    }

    /// Family over the registry's field of degree `2m`.
    pub fn from_registry(registry: &FieldRegistry, m: u32) -> Result<Self, MesnagerError> {
        if m == 0 || m % 2 == 1 {
            return Err(MesnagerError::OddM(m));
        }
        Self::new(registry.ctx(2 * m)?)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn m(&self) -> u32 {
        self.ctx.degree() / 2
    }

    /// Nonzero elements of the embedded `GF(4)`: `1, w, w + 1`.
    pub fn f4_units(&self) -> [u32; 3] {
        [self.f4.apply(1), self.f4.apply(0b10), self.f4.apply(0b11)]
    }

    pub fn spec(&self, a: u32, b: u32) -> Result<BinomialSpec, MesnagerError> {
        let m = self.m();
        if m % 2 == 1 {
            return Err(MesnagerError::OddM(m));
        }
        if a == 0 {
            return Err(MesnagerError::ZeroA);
        }
        self.ctx.check(a as u64)?;
        if !self.f4_units().contains(&b) {
            return Err(MesnagerError::BadB(b));
        }
        Ok(BinomialSpec { m, a, b })
    }

    pub fn build_f(&self, spec: &BinomialSpec) -> Result<BooleanFunction, MesnagerError> {
        let spec = self.spec(spec.a, spec.b)?;
        Ok(self.build_unchecked(spec.a, spec.b))
    }

    fn build_unchecked(&self, a: u32, b: u32) -> BooleanFunction {
        let ctx = &self.ctx;
        let e = (1u64 << self.m()) - 1;
        BooleanFunction::from_fn_par(ctx.clone(), |x| {
            let dillon = ctx.trace(ctx.mul(a, ctx.pow(x, e)));
            let y = ctx.mul(b, self.cube_powers[x as usize]);
            let cube = ctx.trace_rel(y, 2).expect("b and x^((q-1)/3) lie in GF(4)");
            dillon ^ cube == 1
        })
    }

    /// `f_{a,1}`.
    pub fn f1(&self, a: u32) -> Result<BooleanFunction, MesnagerError> {
        self.build_f(&BinomialSpec {
            m: self.m(),
            a,
            b: 1,
        })
    }

    /// `K_m(a^(2^m+1))`.
    pub fn kloosterman(&self, a: u32) -> Result<i64, MesnagerError> {
        Ok(kloosterman_of_norm(&self.ctx, a)?)
    }

    pub fn row(&self, a: u32) -> Result<CharacterizationRow, MesnagerError> {
        let k = self.kloosterman(a)?;
        let spectrum = walsh_transform(&self.f1(a)?);
        let bent = spectrum_is_bent(&spectrum, self.m());
        Ok(CharacterizationRow {
            a,
            a_hex: format!("{a:#x}"),
            kloosterman: k,
            bent,
            consistent: bent == (k == 4),
            spectrum_summary: spectrum.histogram(),
        })
    }

    /// One row per `a` in `GF(2^n)^*` (requires `n <= 16`).
    pub fn characterize(&self) -> Result<Vec<CharacterizationRow>, MesnagerError> {
        let m = self.m();
        if m % 2 == 1 {
            return Err(MesnagerError::OddM(m));
        }
        if 2 * m > 16 {
            return Err(MesnagerError::TooLarge(m));
        }
        let all: Vec<u32> = self.ctx.nonzero().collect();
        all.par_iter().map(|&a| self.row(a)).collect()
    }

    /// Rows for `samples` values of `a` drawn with a seeded generator, sorted.
    pub fn characterize_sampled(
        &self,
        samples: usize,
        seed: u64,
    ) -> Result<Vec<CharacterizationRow>, MesnagerError> {
        let m = self.m();
        if m % 2 == 1 {
            return Err(MesnagerError::OddM(m));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let top = self.ctx.group_order() as u32;
        let mut picks: Vec<u32> = (0..samples).map(|_| rng.gen_range(1..=top)).collect();
        picks.sort_unstable();
        picks.dedup();
        picks.par_iter().map(|&a| self.row(a)).collect()
    }

    /// Up to `limit` values `a` (increasing encoding) with `K_m(a^(2^m+1)) = 4`,
    /// each confirmed bent by its full spectrum.
    pub fn search_bent(&self, limit: usize) -> Result<Vec<u32>, MesnagerError> {
        let m = self.m();
        if m % 2 == 1 {
            return Err(MesnagerError::OddM(m));
        }
        let mut hits = Vec::new();
        if limit == 0 {
            return Ok(hits);
        }
        for a in self.ctx.nonzero() {
            if self.kloosterman(a)? != 4 {
                continue;
            }
            let spectrum = walsh_transform(&self.f1(a)?);
            if !spectrum_is_bent(&spectrum, m) {
                return Err(MesnagerError::Counterexample(a));
            }
            hits.push(a);
            if hits.len() == limit {
                break;
            }
        }
        Ok(hits)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterizationRow {
    pub a: u32,
    pub a_hex: String,
    pub kloosterman: i64,
    pub bent: bool,
    /// `bent == (K == 4)`.
    pub consistent: bool,
    pub spectrum_summary: BTreeMap<i32, usize>,
}

/// Exhaustive characterization over the registry field of degree `2m`.
pub fn characterize(
    registry: &FieldRegistry,
    m: u32,
) -> Result<Vec<CharacterizationRow>, MesnagerError> {
    Family::from_registry(registry, m)?.characterize()
}

pub fn search_bent(
    registry: &FieldRegistry,
    m: u32,
    limit: usize,
) -> Result<Vec<u32>, MesnagerError> {
    Family::from_registry(registry, m)?.search_bent(limit)
}

/// Exponent of `z` for the element `a`, and the seven-term dual, for the
/// worked `m = 6` instance.
pub const EXAMPLE_A_EXPONENT: u64 = 3;
pub const EXAMPLE_DECIMATION: u64 = 11;
pub const EXAMPLE_DECIMATED_VALUES: [i32; 11] =
    [-160, -128, -96, -64, -32, 0, 32, 64, 96, 128, 160];

/// `(z-exponent of the coefficient, exponent of x, subfield degree)`; `None`
/// marks coefficient 1.
pub const EXAMPLE_DUAL_TERMS: [(Option<u64>, u64, u32); 7] = [
    (Some(48), 357, 12),
    (Some(28), 147, 12),
    (Some(3), 63, 12),
    (Some(62), 21, 12),
    (Some(60), 105, 12),
    (None, 273, 4),
    (None, 1365, 2),
];

/// The explicit dual as a trace polynomial under the embedding `e`.
pub fn example_dual_polynomial(small: &FieldCtx, big: &FieldCtx, e: &Embedding) -> TracePolynomial {
    let mut p = TracePolynomial::default();
    for (z_exp, x_exp, d) in EXAMPLE_DUAL_TERMS {
        let coeff = match z_exp {
            Some(k) => e.apply(small.pow(0b10, k)),
            None => 1,
        };
        debug_assert!(big.contains(coeff as u64));
        p.push(coeff, x_exp, d);
    }
    p
}

#[derive(Debug, Clone, Serialize)]
pub struct ExampleReport {
    pub manifest: RunManifest,
    pub modulus_6: String,
    pub modulus_12: String,
    pub embedding_root: String,
    pub conjugates_tried: usize,
    pub kloosterman: i64,
    pub decimated_values: Vec<i32>,
    pub hyper_bent_witness: Option<u64>,
}

impl ExampleReport {
    pub fn passed(&self) -> bool {
        self.manifest.all_passed()
    }
}

fn first_difference(f: &BooleanFunction, g: &BooleanFunction) -> Option<u32> {
    f.ctx().elements().find(|&x| f.get(x) != g.get(x))
}

/// Reproduce the `m = 6`, `a = z^3` instance over `GF(2^12)`:
/// (i) `K_6(z^3) = 4`; (ii) `f_{a,1}` is bent; (iii) its dual equals the
/// seven-term trace polynomial; (iv) the spectrum of `f_{a,1}(x^11)` takes
/// exactly the values `0, +-32, ..., +-160`; (v) `f_{a,1}` is not hyper-bent.
pub fn reproduce_example(registry: &FieldRegistry) -> Result<ExampleReport, MesnagerError> {
    let started = Instant::now();
    let mut manifest = RunManifest::new(registry, "mesnager example");
    let small = registry.ctx(6)?;
    let big = registry.ctx(12)?;
    manifest
        .param("modulus_6", format!("{:#x}", small.spec().modulus()))
        .param("modulus_12", format!("{:#x}", big.spec().modulus()));

    let z3 = small.pow(0b10, EXAMPLE_A_EXPONENT);
    let k = kloosterman(&small, z3);
    manifest.checks.push(CheckOutcome::new(
        "K_6(z^3) = 4",
        k == 4,
        format!("K = {k}"),
    ));

    let embeddings = all_embeddings(&small, &big)?;
    let m = 6;
    let mut chosen = None;
    let mut tried = 0;
    let mut mismatch = String::new();
    for e in &embeddings {
        tried += 1;
        let a = e.apply(z3);
        let f = binomial_f1(&big, a)?;
        let spectrum = walsh_transform(&f);
        let polynomial = example_dual_polynomial(&small, &big, e).to_function(big.clone())?;
        let dual = if spectrum_is_bent(&spectrum, m) {
            Some(dual_from_spectrum(big.clone(), &spectrum, m)?)
        } else {
            None
        };
        let diff = dual.as_ref().map(|d| first_difference(d, &polynomial));
        match diff {
            Some(None) => {
                chosen = Some((e.clone(), f, spectrum));
                break;
            }
            Some(Some(x)) => {
                mismatch = format!(
                    "root {:#x}: first differing input {x:#x}",
                    e.image_of_generator()
                );
            }
            None => mismatch = format!("root {:#x}: not bent", e.image_of_generator()),
        }
    }
    let dual_ok = chosen.is_some();
    let (e, f, spectrum) = match chosen {
        Some(c) => c,
        None => {
            let e = embeddings[0].clone();
            let f = binomial_f1(&big, e.apply(z3))?;
            let s = walsh_transform(&f);
            (e, f, s)
        }
    };

    let bent = spectrum_is_bent(&spectrum, m);
    manifest.checks.push(CheckOutcome::new(
        "f_(a,1) bent on GF(2^12), all |W| = 64",
        bent,
        format!("abs values {:?}", abs_values(&spectrum)),
    ));
    manifest.checks.push(CheckOutcome::new(
        "dual equals the seven-term trace polynomial",
        dual_ok,
        if dual_ok {
            format!(
                "agree on all 4096 inputs (root {:#x}, {} tried)",
                e.image_of_generator(),
                tried
            )
        } else {
            mismatch
        },
    ));

    let g = decimate(&f, EXAMPLE_DECIMATION)?;
    let values = walsh_transform(&g).value_set();
    manifest.checks.push(CheckOutcome::new(
        "spectrum of f_(a,1)(x^11) = {0, +-32, ..., +-160}",
        values == EXAMPLE_DECIMATED_VALUES,
        format!("{values:?}"),
    ));

    let coprime = gcd(EXAMPLE_DECIMATION, big.group_order()) == 1;
    let witness = first_non_bent_decimation(&f)?;
    manifest.checks.push(CheckOutcome::new(
        "gcd(11, 4095) = 1 and f_(a,1) not hyper-bent",
        coprime && witness.is_some(),
        format!("non-bent decimation k = {witness:?}"),
    ));

    manifest.wall_clock_ms = started.elapsed().as_millis();
    Ok(ExampleReport {
        manifest,
        modulus_6: format!("{:#x}", small.spec().modulus()),
        modulus_12: format!("{:#x}", big.spec().modulus()),
        embedding_root: format!("{:#x}", e.image_of_generator()),
        conjugates_tried: tried,
        kloosterman: k,
        decimated_values: values,
        hyper_bent_witness: witness,
    })
}

fn abs_values(s: &WalshSpectrum) -> Vec<u32> {
    let mut v = s.abs_multiset();
    v.dedup();
    v
}
