//! Boolean functions `GF(2^n) -> GF(2)` as packed truth tables.
//!
//! The Walsh coefficient at `b` is `W_f(b) = sum_x (-1)^(f(x) + Tr(b x))`.
//! [`walsh_at`] evaluates that sum literally; [`walsh_transform`] runs a
//! butterfly over coordinate vectors and relabels indices through the
//! inverse of the trace Gram matrix `G_ij = Tr(z^i z^j)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldCtx, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoolFunError {
    #[error("bentness is only defined for even n (got n = {0})")]
    OddDegree(u32),
    #[error("function is not bent")]
    NotBent,
    #[error("gcd({k}, 2^{n} - 1) != 1")]
    NotCoprime { k: u64, n: u32 },
    #[error("truth table has {got} entries, expected {expected}")]
    TableLength { got: usize, expected: usize },
    #[error("invalid hex truth table: {0}")]
    Hex(String),
    #[error("dual self-check failed at b = {b:#x}: W = {value}")]
    DualCongruence { b: u32, value: i32 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Truth table of `f` indexed by the integer encoding of field elements.
#[derive(Clone)]
pub struct BooleanFunction {
    ctx: Arc<FieldCtx>,
    words: Vec<u64>,
}

impl std::fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "BooleanFunction(n={}, {})",
            self.ctx.degree(),
            self.to_hex()
        )
    }
}

impl PartialEq for BooleanFunction {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.spec() == other.ctx.spec() && self.words == other.words
    }
}

impl Eq for BooleanFunction {}

impl BooleanFunction {
    pub fn zero(ctx: Arc<FieldCtx>) -> Self {
        let len = Self::word_count(&ctx);
        Self {
            ctx,
            words: vec![0; len],
        }
    }

    fn word_count(ctx: &FieldCtx) -> usize {
        (ctx.order() as usize).div_ceil(64)
    }

    pub fn from_fn(ctx: Arc<FieldCtx>, mut f: impl FnMut(u32) -> bool) -> Self {
        let mut out = Self::zero(ctx);
        for x in out.ctx.elements() {
            if f(x) {
                out.set(x, true);
            }
        }
        out
    }

    /// Same as [`Self::from_fn`] but evaluates in parallel.
    pub fn from_fn_par(ctx: Arc<FieldCtx>, f: impl Fn(u32) -> bool + Sync) -> Self {
        let size = ctx.order() as usize;
        let words = (0..Self::word_count(&ctx))
            .into_par_iter()
            .map(|w| {
                let base = w * 64;
                (0..64.min(size - base)).fold(0u64, |acc, i| {
                    if f((base + i) as u32) {
                        acc | 1 << i
                    } else {
                        acc
                    }
                })
            })
            .collect();
        Self { ctx, words }
    }

    pub fn from_bits(ctx: Arc<FieldCtx>, bits: &[bool]) -> Result<Self, BoolFunError> {
        let expected = ctx.order() as usize;
        if bits.len() != expected {
            return Err(BoolFunError::TableLength {
                got: bits.len(),
                expected,
            });
        }
        Ok(Self::from_fn(ctx, |x| bits[x as usize]))
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.ctx.order() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, x: u32) -> bool {
        self.words[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    pub fn set(&mut self, x: u32, value: bool) {
        let w = &mut self.words[(x >> 6) as usize];
        if value {
            *w |= 1 << (x & 63);
        } else {
            *w &= !(1 << (x & 63));
        }
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Hex export: byte `k` carries `f(8k..8k+8)`, least significant bit
    /// first; bytes are written in increasing `k`.
    pub fn to_hex(&self) -> String {
        let bytes = self.len().div_ceil(8);
        let raw: Vec<u8> = (0..bytes)
            .map(|k| (self.words[k / 8] >> (8 * (k % 8))) as u8)
            .collect();
        hex::encode(raw)
    }

    pub fn from_hex(ctx: Arc<FieldCtx>, text: &str) -> Result<Self, BoolFunError> {
        let raw = hex::decode(text.trim()).map_err(|e| BoolFunError::Hex(e.to_string()))?;
        let size = ctx.order() as usize;
        let expected = size.div_ceil(8);
        if raw.len() != expected {
            return Err(BoolFunError::TableLength {
                got: raw.len() * 8,
                expected: size,
            });
        }
        if size < 8 && raw[0] >> size != 0 {
            return Err(BoolFunError::Hex("bits set beyond the table".into()));
        }
        Ok(Self::from_fn(ctx, |x| {
            raw[(x / 8) as usize] >> (x % 8) & 1 == 1
        }))
    }

    /// `(-1)^f(x)` as a dense vector.
    fn signs(&self) -> Vec<i32> {
        (0..self.len() as u32)
            .map(|x| if self.get(x) { -1 } else { 1 })
            .collect()
    }
}

/// Exact Walsh spectrum, `values[b] = W_f(b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalshSpectrum {
    pub values: Vec<i32>,
}

impl WalshSpectrum {
    pub fn get(&self, b: u32) -> i32 {
        self.values[b as usize]
    }

    pub fn parseval_sum(&self) -> u64 {
        self.values
            .iter()
            .map(|&v| (v as i64 * v as i64) as u64)
            .sum()
    }

    /// Whether `sum W^2 = 2^(2n)` and every value is even (`n >= 1`).
    pub fn satisfies_parseval(&self) -> bool {
        let size = self.values.len() as u64;
        self.parseval_sum() == size * size && self.values.iter().all(|v| v % 2 == 0)
    }

    pub fn histogram(&self) -> BTreeMap<i32, usize> {
        let mut h = BTreeMap::new();
        for &v in &self.values {
            *h.entry(v).or_insert(0) += 1;
        }
        h
    }

    /// Sorted set of attained values.
    pub fn value_set(&self) -> Vec<i32> {
        self.histogram().into_keys().collect()
    }

    /// Multiset of absolute values, sorted.
    pub fn abs_multiset(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.values.iter().map(|x| x.unsigned_abs()).collect();
        v.sort_unstable();
        v
    }

    /// JSON export: the raw values and a value histogram.
    pub fn to_json(&self) -> serde_json::Value {
        let histogram: BTreeMap<String, usize> = self
            .histogram()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        serde_json::json!({
            "values": self.values,
            "histogram": histogram,
        })
    }
}

/// Literal evaluation of `W_f(b)`.
pub fn walsh_at(f: &BooleanFunction, b: u32) -> i64 {
    let ctx = f.ctx();
    ctx.elements()
        .map(|x| {
            let bit = f.get(x) as u8 ^ ctx.trace(ctx.mul(b, x));
            if bit == 0 {
                1
            } else {
                -1
            }
        })
        .sum()
}

/// In-place unnormalized Walsh-Hadamard butterfly.
pub fn fwht(values: &mut [i32]) {
    let len = values.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in values.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*x, *y);
                *x = a + b;
                *y = a - b;
            }
        }
        h *= 2;
    }
}

/// Rows of the trace Gram matrix `G_ij = Tr(z^(i+j))`, row `i` packed as
/// bits `j`.
pub fn trace_gram(ctx: &FieldCtx) -> Vec<u32> {
    let n = ctx.degree();
    (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| ctx.trace(ctx.mul(1 << i, 1 << j)) == 1)
                .fold(0u32, |row, j| row | 1 << j)
        })
        .collect()
}

/// Apply a packed-row binary matrix to a bit vector.
pub fn apply_matrix(rows: &[u32], v: u32) -> u32 {
    rows.iter().enumerate().fold(0, |acc, (i, &row)| {
        acc | (((row & v).count_ones() & 1) << i)
    })
}

/// Inverse of a packed-row binary matrix by Gauss-Jordan elimination.
pub fn invert_matrix(rows: &[u32]) -> Option<Vec<u32>> {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut inv: Vec<u32> = (0..n).map(|i| 1 << i).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r] >> col & 1 == 1)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..n {
            if r != col && a[r] >> col & 1 == 1 {
                a[r] ^= a[col];
                inv[r] ^= inv[col];
            }
        }
    }
    Some(inv)
}

/// All `2^n` Walsh coefficients.
///
/// With `x`, `b` in polynomial coordinates, `Tr(bx) = b^T G x`, so the
/// butterfly output at `v = G b` is `W_f(b)`; equivalently
/// `W_f(G^-1 v) = H[v]`.
pub fn walsh_transform(f: &BooleanFunction) -> WalshSpectrum {
    let ctx = f.ctx();
    let mut h = f.signs();
    fwht(&mut h);
    let gram = trace_gram(ctx);
    let gram_inv = invert_matrix(&gram).expect("trace form is nondegenerate");
    let mut values = vec![0i32; h.len()];
    for (v, &w) in h.iter().enumerate() {
        values[apply_matrix(&gram_inv, v as u32) as usize] = w;
    }
    WalshSpectrum { values }
}

fn half_degree(f: &BooleanFunction) -> Result<u32, BoolFunError> {
    let n = f.ctx().degree();
    if n % 2 == 1 {
        return Err(BoolFunError::OddDegree(n));
    }
    Ok(n / 2)
}

/// Every coefficient is `+-2^(n/2)`.
pub fn is_bent(f: &BooleanFunction) -> Result<bool, BoolFunError> {
    let m = half_degree(f)?;
    Ok(spectrum_is_bent(&walsh_transform(f), m))
}

pub fn spectrum_is_bent(spectrum: &WalshSpectrum, m: u32) -> bool {
    spectrum.values.iter().all(|v| v.unsigned_abs() == 1 << m)
}

/// `W_f(b) = 2^m (mod 2^(m+1))` for every `b != 0`; `W_f(0)` is not consulted.
pub fn is_bent_mod(f: &BooleanFunction) -> Result<bool, BoolFunError> {
    let m = half_degree(f)?;
    Ok(spectrum_is_bent_mod(&walsh_transform(f), m))
}

pub fn spectrum_is_bent_mod(spectrum: &WalshSpectrum, m: u32) -> bool {
    let modulus = 1i32 << (m + 1);
    spectrum.values[1..]
        .iter()
        .all(|v| v.rem_euclid(modulus) == 1 << m)
}

/// Dual `f~` with `W_f(b) = 2^m (-1)^f~(b)`.
pub fn dual(f: &BooleanFunction) -> Result<BooleanFunction, BoolFunError> {
    let m = half_degree(f)?;
    let spectrum = walsh_transform(f);
    dual_from_spectrum(f.ctx().clone(), &spectrum, m)
}

pub fn dual_from_spectrum(
    ctx: Arc<FieldCtx>,
    spectrum: &WalshSpectrum,
    m: u32,
) -> Result<BooleanFunction, BoolFunError> {
    if !spectrum_is_bent(spectrum, m) {
        return Err(BoolFunError::NotBent);
    }
    let out = BooleanFunction::from_fn(ctx, |b| spectrum.get(b) < 0);
    // W = (-1)^dual 2^m (mod 2^(m+2))
    let modulus = 1i64 << (m + 2);
    for b in out.ctx().elements() {
        let sign = if out.get(b) { -1i64 } else { 1 };
        let w = spectrum.get(b) as i64;
        if (w - sign * (1i64 << m)).rem_euclid(modulus) != 0 {
            return Err(BoolFunError::DualCongruence {
                b,
                value: spectrum.get(b),
            });
        }
    }
    Ok(out)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `g(x) = f(x^k)` for `k` coprime to `2^n - 1`.
pub fn decimate(f: &BooleanFunction, k: u64) -> Result<BooleanFunction, BoolFunError> {
    let ctx = f.ctx().clone();
    let n = ctx.degree();
    if gcd(k, ctx.group_order()) != 1 {
        return Err(BoolFunError::NotCoprime { k, n });
    }
    let c = ctx.clone();
    Ok(BooleanFunction::from_fn(ctx, |x| f.get(c.pow(x, k))))
}

/// One representative (the minimum) per cyclotomic coset `{k, 2k, 4k, ...}`
/// of the units modulo `2^n - 1`.
pub fn unit_coset_representatives(n: u32) -> Vec<u64> {
    let modulus = (1u64 << n) - 1;
    if modulus == 1 {
        return vec![1];
    }
    let mut seen = vec![false; modulus as usize];
    let mut reps = Vec::new();
    for k in 1..modulus {
        if seen[k as usize] || gcd(k, modulus) != 1 {
            continue;
        }
        reps.push(k);
        let mut j = k;
        loop {
            seen[j as usize] = true;
            j = j * 2 % modulus;
            if j == k {
                break;
            }
        }
    }
    reps
}

/// First coset representative `k` for which `f(x^k)` is not bent, if any.
pub fn first_non_bent_decimation(f: &BooleanFunction) -> Result<Option<u64>, BoolFunError> {
    let m = half_degree(f)?;
    if !spectrum_is_bent(&walsh_transform(f), m) {
        return Ok(Some(1));
    }
    let reps = unit_coset_representatives(f.ctx().degree());
    let verdicts: Vec<Option<u64>> = reps
        .par_iter()
        .map(|&k| {
            let g = decimate(f, k).expect("coset representatives are units");
            (!spectrum_is_bent(&walsh_transform(&g), m)).then_some(k)
        })
        .collect();
    Ok(verdicts.into_iter().flatten().next())
}

pub fn is_hyper_bent(f: &BooleanFunction) -> Result<bool, BoolFunError> {
    Ok(first_non_bent_decimation(f)?.is_none())
}

/// `Tr^2_1(x^((2^n-1)/3))`: 0 iff `x` is zero or a cube.
pub fn cube_coset_indicator(ctx: &FieldCtx, x: u32) -> Result<u8, BoolFunError> {
    let n = ctx.degree();
    if n % 2 == 1 {
        return Err(BoolFunError::OddDegree(n));
    }
    if x == 0 {
        return Ok(0);
    }
    let y = ctx.pow(x, ctx.group_order() / 3);
    Ok(ctx.trace_rel(y, 2)?)
}

/// One summand `Tr^d_1(coeff * x^exponent)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceTerm {
    pub coeff: u32,
    pub exponent: u64,
    pub subfield_degree: u32,
}

/// `f(x) = sum Tr^d_1(coeff * x^exponent)`; each term must land in its
/// subfield for every `x`, which evaluation checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracePolynomial {
    pub terms: Vec<TraceTerm>,
}

impl TracePolynomial {
    pub fn new(terms: Vec<TraceTerm>) -> Self {
        Self { terms }
    }

    pub fn push(&mut self, coeff: u32, exponent: u64, subfield_degree: u32) -> &mut Self {
        self.terms.push(TraceTerm {
            coeff,
            exponent,
            subfield_degree,
        });
        self
    }

    pub fn eval(&self, ctx: &FieldCtx, x: u32) -> Result<u8, BoolFunError> {
        let mut acc = 0u8;
        for t in &self.terms {
            let y = ctx.mul(t.coeff, ctx.pow(x, t.exponent));
            acc ^= ctx.trace_rel(y, t.subfield_degree)?;
        }
        Ok(acc)
    }

    pub fn to_function(&self, ctx: Arc<FieldCtx>) -> Result<BooleanFunction, BoolFunError> {
        let mut out = BooleanFunction::zero(ctx.clone());
        for x in ctx.elements() {
            out.set(x, self.eval(&ctx, x)? == 1);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(n: u32) -> Arc<FieldCtx> {
        FieldCtx::from_spec(FieldSpec::default_for(n).unwrap())
    }

    fn random_function(ctx: &Arc<FieldCtx>, rng: &mut impl Rng) -> BooleanFunction {
        BooleanFunction::from_fn(ctx.clone(), |_| rng.gen())
    }

    #[test]
    fn constant_zero_spectrum() {
        for n in 1..=8 {
            let k = ctx(n);
            let f = BooleanFunction::zero(k.clone());
            assert_eq!(walsh_at(&f, 0), 1 << n);
            assert_eq!(walsh_at(&f, 1), 0);
            let s = walsh_transform(&f);
            assert_eq!(s.values[0], 1 << n);
            assert!(s.values[1..].iter().all(|&v| v == 0));
        }
        let f = BooleanFunction::zero(ctx(4));
        assert!(!is_bent(&f).unwrap());
        assert!(!is_bent_mod(&f).unwrap());
    }

    #[test]
    fn fast_matches_slow() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=10 {
            let k = ctx(n);
            let f = random_function(&k, &mut rng);
            let s = walsh_transform(&f);
            assert!(s.satisfies_parseval());
            for b in k.elements() {
                assert_eq!(s.get(b) as i64, walsh_at(&f, b), "n={n} b={b}");
            }
        }
    }

    #[test]
    fn gram_inverse() {
        for n in 1..=12 {
            let k = ctx(n);
            let g = trace_gram(&k);
            let gi = invert_matrix(&g).unwrap();
            for i in 0..n {
                assert_eq!(apply_matrix(&g, apply_matrix(&gi, 1 << i)), 1 << i);
            }
        }
        assert!(invert_matrix(&[0b11, 0b11]).is_none());
    }

    #[test]
    fn odd_degree_rejected() {
        let f = BooleanFunction::zero(ctx(3));
        assert_eq!(is_bent(&f), Err(BoolFunError::OddDegree(3)));
        assert_eq!(is_bent_mod(&f), Err(BoolFunError::OddDegree(3)));
        assert_eq!(is_hyper_bent(&f), Err(BoolFunError::OddDegree(3)));
        assert!(cube_coset_indicator(&ctx(3), 1).is_err());
    }

    #[test]
    fn all_functions_on_f4() {
        let k = ctx(2);
        let mut bent_count = 0;
        for table in 0u32..16 {
            let f = BooleanFunction::from_fn(k.clone(), |x| table >> x & 1 == 1);
            let a = is_bent(&f).unwrap();
            assert_eq!(a, is_bent_mod(&f).unwrap(), "table {table:04b}");
            if a {
                bent_count += 1;
            }
        }
        // functions of odd weight on 2 variables
        assert_eq!(bent_count, 8);
    }

    #[test]
    fn dual_involution_n4() {
        let k = ctx(4);
        let mut found = 0;
        for table in 0u32..1 << 16 {
            let f = BooleanFunction::from_fn(k.clone(), |x| table >> x & 1 == 1);
            let s = walsh_transform(&f);
            if !spectrum_is_bent(&s, 2) {
                continue;
            }
            found += 1;
            let d = dual_from_spectrum(k.clone(), &s, 2).unwrap();
            assert_eq!(d.get(0), s.values[0] < 0);
            assert_eq!(dual(&d).unwrap(), f);
        }
        // number of bent functions in 4 variables
        assert_eq!(found, 896);
    }

    #[test]
    fn dual_rejects_non_bent() {
        let f = BooleanFunction::zero(ctx(4));
        assert_eq!(dual(&f), Err(BoolFunError::NotBent));
    }

    #[test]
    fn decimation() {
        let k = ctx(4);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let f = random_function(&k, &mut rng);
            assert_eq!(decimate(&f, 1).unwrap(), f);
            let s = walsh_transform(&f);
            for j in 0..4 {
                let g = decimate(&f, 1 << j).unwrap();
                let sg = walsh_transform(&g);
                assert_eq!(sg.abs_multiset(), s.abs_multiset());
                assert_eq!(is_bent(&g).unwrap(), is_bent(&f).unwrap());
            }
        }
        assert_eq!(
            decimate(&BooleanFunction::zero(k), 3),
            Err(BoolFunError::NotCoprime { k: 3, n: 4 })
        );
    }

    #[test]
    fn coset_representatives() {
        assert_eq!(unit_coset_representatives(12).len(), 144);
        assert_eq!(unit_coset_representatives(4), vec![1, 7]);
        let reps = unit_coset_representatives(8);
        // phi(255) / 8
        assert_eq!(reps.len(), 16);
    }

    #[test]
    fn non_bent_is_not_hyper_bent() {
        let f = BooleanFunction::zero(ctx(4));
        assert_eq!(first_non_bent_decimation(&f).unwrap(), Some(1));
    }

    #[test]
    fn cube_indicator() {
        let k = ctx(4);
        assert_eq!(cube_coset_indicator(&k, 0).unwrap(), 0);
        assert_eq!(cube_coset_indicator(&k, 1).unwrap(), 0);
        let cubes: std::collections::BTreeSet<u32> = k.nonzero().map(|x| k.pow(x, 3)).collect();
        assert_eq!(cubes.len(), 5);
        for x in k.nonzero() {
            let expected = if cubes.contains(&x) { 0 } else { 1 };
            assert_eq!(cube_coset_indicator(&k, x).unwrap(), expected);
            for y in k.nonzero() {
                let shifted = k.mul(x, k.pow(y, 3));
                assert_eq!(
                    cube_coset_indicator(&k, shifted).unwrap(),
                    cube_coset_indicator(&k, x).unwrap()
                );
            }
        }
    }

    #[test]
    fn hex_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2, 3, 4, 9] {
            let k = ctx(n);
            let f = random_function(&k, &mut rng);
            let text = f.to_hex();
            assert_eq!(BooleanFunction::from_hex(k.clone(), &text).unwrap(), f);
        }
        let k = ctx(4);
        let f = BooleanFunction::from_fn(k.clone(), |x| x == 0 || x == 9);
        assert_eq!(f.to_hex(), "0102");
        assert!(BooleanFunction::from_hex(k.clone(), "01").is_err());
        assert!(BooleanFunction::from_hex(k, "zz02").is_err());
        assert!(BooleanFunction::from_hex(ctx(2), "10").is_err());
    }

    #[test]
    fn trace_polynomial_linear_term() {
        let k = ctx(6);
        let mut p = TracePolynomial::default();
        p.push(5, 1, 6);
        let f = p.to_function(k.clone()).unwrap();
        for x in k.elements() {
            assert_eq!(f.get(x), k.trace(k.mul(5, x)) == 1);
        }
        // x^(63/3) lies in GF(4), not GF(2)
        let mut bad = TracePolynomial::default();
        bad.push(1, 21, 1);
        assert!(bad.to_function(k).is_err());
    }

    #[test]
    fn spectrum_json() {
        let f = BooleanFunction::zero(ctx(2));
        let j = walsh_transform(&f).to_json();
        assert_eq!(j["values"], serde_json::json!([4, 0, 0, 0]));
        assert_eq!(j["histogram"]["0"], 3);
    }
}
