//! Truncated unramified 2-adic rings `Z_q / 2^M`, `q = 2^n`.
//!
//! `Z_q` is realized as `(Z/2^M)[X] / (P(X))` where `P` is the field
//! modulus read with 0/1 integer coefficients. Coefficients live in `u64`
//! with wrapping arithmetic masked to `M <= 64` bits, so reduction mod 2 of
//! any ring operation is the corresponding `GF(2^n)` operation.
//!
//! With `zeta_2 = -1` the Gauss sum is
//! `G(k) = sum_{x != 0} omega(x)^(-k) (-1)^Tr(x)`, `omega` the Teichmuller
//! character.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::expsums::inverse_mod_pow2;
use crate::field::{FieldCtx, FieldError};

/// Default number of guard bits above the field degree.
pub const GUARD_BITS: u32 = 4;

#[derive(Debug, Error)]
pub enum PadicError {
    #[error("precision {0} outside 1..=64")]
    Precision(u32),
    #[error("Teichmuller lift of zero is undefined")]
    ZeroLift,
    #[error("field degree {0} is odd")]
    OddDegree(u32),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("cache I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache format: {0}")]
    Format(#[from] serde_json::Error),
    #[error("cache entry does not match this ring (modulus or precision or hash)")]
    CacheMismatch,
}

/// Element of `Z_q / 2^M` in polynomial coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicElement {
    pub coeffs: Vec<u64>,
}

impl PadicElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

pub struct PadicCtx {
    field: Arc<FieldCtx>,
    precision: u32,
    mask: u64,
    /// Low coefficients `p_0..p_{n-1}` of the lifted monic modulus.
    lifted_modulus: Vec<u64>,
}

impl std::fmt::Debug for PadicCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PadicCtx")
            .field("field", &self.field.spec())
            .field("precision", &self.precision)
            .finish()
    }
}

impl PadicCtx {
    pub fn new(field: Arc<FieldCtx>, precision: u32) -> Result<Self, PadicError> {
        if precision == 0 || precision > 64 {
            return Err(PadicError::Precision(precision));
        }
        let n = field.degree();
        let modulus = field.spec().modulus();
        let lifted_modulus = (0..n).map(|i| modulus >> i & 1).collect();
        let mask = if precision == 64 {
            u64::MAX
        } else {
            (1u64 << precision) - 1
        };
        Ok(Self {
            field,
            precision,
            mask,
            lifted_modulus,
        })
    }

    /// Context at the default precision `n + 4`.
    pub fn with_default_precision(field: Arc<FieldCtx>) -> Result<Self, PadicError> {
        let m = field.degree() + GUARD_BITS;
        Self::new(field, m)
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn degree(&self) -> u32 {
        self.field.degree()
    }

    /// Same ring at a lower precision.
    pub fn truncated(&self, precision: u32) -> Result<Self, PadicError> {
        Self::new(self.field.clone(), precision.min(self.precision))
    }

    /// Lifted modulus, full monic coefficient list (leading 1 last).
    pub fn lifted_modulus(&self) -> Vec<u64> {
        let mut v = self.lifted_modulus.clone();
        v.push(1);
        v
    }

    fn n(&self) -> usize {
        self.field.degree() as usize
    }

    pub fn zero(&self) -> PadicElement {
        PadicElement {
            coeffs: vec![0; self.n()],
        }
    }

    pub fn from_int(&self, v: i64) -> PadicElement {
        let mut e = self.zero();
        e.coeffs[0] = (v as u64) & self.mask;
        e
    }

    pub fn one(&self) -> PadicElement {
        self.from_int(1)
    }

    /// Lift with 0/1 coordinates.
    pub fn lift(&self, x: u32) -> PadicElement {
        PadicElement {
            coeffs: (0..self.n()).map(|i| (x >> i & 1) as u64).collect(),
        }
    }

    /// Reduction mod 2 onto `GF(2^n)`.
    pub fn reduce(&self, x: &PadicElement) -> u32 {
        x.coeffs
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &c)| acc | ((c & 1) as u32) << i)
    }

    pub fn add(&self, x: &PadicElement, y: &PadicElement) -> PadicElement {
        PadicElement {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| a.wrapping_add(*b) & self.mask)
                .collect(),
        }
    }

    pub fn sub(&self, x: &PadicElement, y: &PadicElement) -> PadicElement {
        PadicElement {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| a.wrapping_sub(*b) & self.mask)
                .collect(),
        }
    }

    pub fn neg(&self, x: &PadicElement) -> PadicElement {
        self.sub(&self.zero(), x)
    }

    pub fn scale(&self, x: &PadicElement, s: i64) -> PadicElement {
        PadicElement {
            coeffs: x
                .coeffs
                .iter()
                .map(|c| c.wrapping_mul(s as u64) & self.mask)
                .collect(),
        }
    }

    pub fn add_assign(&self, acc: &mut PadicElement, x: &PadicElement) {
        for (a, b) in acc.coeffs.iter_mut().zip(&x.coeffs) {
            *a = a.wrapping_add(*b) & self.mask;
        }
    }

    pub fn sub_assign(&self, acc: &mut PadicElement, x: &PadicElement) {
        for (a, b) in acc.coeffs.iter_mut().zip(&x.coeffs) {
            *a = a.wrapping_sub(*b) & self.mask;
        }
    }

    pub fn mul(&self, x: &PadicElement, y: &PadicElement) -> PadicElement {
        let n = self.n();
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &a) in x.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.coeffs.iter().enumerate() {
                prod[i + j] = prod[i + j].wrapping_add(a.wrapping_mul(b));
            }
        }
        // X^n = -sum p_i X^i
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &p) in self.lifted_modulus.iter().enumerate() {
                if p != 0 {
                    prod[k - n + i] = prod[k - n + i].wrapping_sub(c.wrapping_mul(p));
                }
            }
        }
        prod.truncate(n);
        for c in prod.iter_mut() {
            *c &= self.mask;
        }
        PadicElement { coeffs: prod }
    }

    pub fn pow(&self, x: &PadicElement, mut e: u64) -> PadicElement {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Minimum 2-adic valuation over the coordinates (`M` for zero).
    pub fn valuation(&self, x: &PadicElement) -> u32 {
        x.coeffs
            .iter()
            .map(|&c| {
                if c == 0 {
                    self.precision
                } else {
                    c.trailing_zeros()
                }
            })
            .min()
            .unwrap_or(self.precision)
    }

    /// `x = y (mod 2^bits)` coordinatewise.
    pub fn congruent(&self, x: &PadicElement, y: &PadicElement, bits: u32) -> bool {
        let mask = if bits >= 64 {
            u64::MAX
        } else {
            (1u64 << bits) - 1
        };
        x.coeffs
            .iter()
            .zip(&y.coeffs)
            .all(|(a, b)| (a.wrapping_sub(*b)) & mask & self.mask == 0)
    }

    /// Teichmuller lift: iterate `t -> t^q` from the 0/1 lift; each step fixes
    /// at least one more bit, so `M` steps reach the `(q-1)`-th root of unity.
    pub fn teichmuller(&self, x: u32) -> Result<PadicElement, PadicError> {
        if x == 0 {
            return Err(PadicError::ZeroLift);
        }
        self.field.check(x as u64)?;
        let mut t = self.lift(x);
        for _ in 0..self.precision {
            let next = (0..self.field.degree()).fold(t.clone(), |acc, _| self.mul(&acc, &acc));
            if next == t {
                break;
            }
            t = next;
        }
        Ok(t)
    }

    /// Direct evaluation of `G(k)`, one Teichmuller lift per term.
    pub fn gauss_sum_direct(&self, k: i64) -> PadicElement {
        let order = self.field.group_order() as i64;
        let e = (-k).rem_euclid(order) as u64;
        let mut acc = self.zero();
        for x in self.field.nonzero() {
            let term = self.pow(&self.teichmuller(x).expect("nonzero"), e);
            if self.field.trace(x) == 0 {
                self.add_assign(&mut acc, &term);
            } else {
                self.sub_assign(&mut acc, &term);
            }
        }
        acc
    }

    /// Inverse of an odd rational integer in `Z/2^M`.
    pub fn inverse_scalar(&self, odd: i64) -> i64 {
        inverse_mod_pow2(odd as i128, self.precision) as i64
    }
}

/// Powers `omega(g)^j` of the Teichmuller lift of the field generator,
/// together with the field's discrete logarithm, giving `omega(x)^e` by
/// lookup.
pub struct TeichmullerTable {
    powers: Vec<PadicElement>,
}

impl TeichmullerTable {
    pub fn new(ctx: &PadicCtx) -> Self {
        let order = ctx.field.group_order() as usize;
        let w = ctx
            .teichmuller(ctx.field.generator())
            .expect("generator is nonzero");
        let mut powers = Vec::with_capacity(order);
        let mut p = ctx.one();
        for _ in 0..order {
            powers.push(p.clone());
            p = ctx.mul(&p, &w);
        }
        Self { powers }
    }

    /// `omega(g)^e`.
    pub fn power(&self, e: i64) -> &PadicElement {
        let order = self.powers.len() as i64;
        &self.powers[e.rem_euclid(order) as usize]
    }

    /// `omega(x)^e` for nonzero `x`.
    pub fn omega_pow(&self, field: &FieldCtx, x: u32, e: i64) -> &PadicElement {
        let l = field.log(x).expect("nonzero element") as i64;
        let order = self.powers.len() as i64;
        self.power(((l % order) * (e % order)) % order)
    }
}

/// All Gauss sums `G(k)`, `0 <= k < q - 1`, for one ring.
pub struct GaussTable {
    values: Vec<PadicElement>,
    omega: TeichmullerTable,
}

impl GaussTable {
    pub fn new(ctx: &PadicCtx) -> Self {
        let omega = TeichmullerTable::new(ctx);
        let field = &ctx.field;
        let order = field.group_order() as i64;
        // sign of (-1)^Tr(g^j)
        let signs: Vec<bool> = (0..order as u64)
            .map(|j| field.trace(field.exp(j)) == 1)
            .collect();
        let values = (0..order)
            .map(|k| {
                let mut acc = ctx.zero();
                for (j, &neg) in signs.iter().enumerate() {
                    let term = omega.power(-k * j as i64);
                    if neg {
                        ctx.sub_assign(&mut acc, term);
                    } else {
                        ctx.add_assign(&mut acc, term);
                    }
                }
                acc
            })
            .collect();
        Self { values, omega }
    }

    /// `G(k)` with `k` read modulo `q - 1`.
    pub fn get(&self, k: i64) -> &PadicElement {
        let order = self.values.len() as i64;
        &self.values[k.rem_euclid(order) as usize]
    }

    pub fn omega(&self) -> &TeichmullerTable {
        &self.omega
    }

    pub fn values(&self) -> &[PadicElement] {
        &self.values
    }

    fn cache_key(ctx: &PadicCtx) -> String {
        format!("{:x}-{}", ctx.field.spec().modulus(), ctx.precision)
    }

    fn content_hash(key: &str, values: &[PadicElement]) -> String {
        let mut h = Sha256::new();
        h.update(key.as_bytes());
        for v in values {
            for c in &v.coeffs {
                h.update(c.to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }

    /// Write the table as JSON keyed by `(modulus, M)` with a content hash.
    pub fn save(&self, ctx: &PadicCtx, path: &Path) -> Result<(), PadicError> {
        let key = Self::cache_key(ctx);
        let cache = GaussCache {
            hash: Self::content_hash(&key, &self.values),
            key,
            values: self.values.clone(),
        };
        std::fs::write(path, serde_json::to_vec(&cache)?)?;
        Ok(())
    }

    /// Load a cached table, rejecting entries for another ring or with a bad hash.
    pub fn load(ctx: &PadicCtx, path: &Path) -> Result<Self, PadicError> {
        let cache: GaussCache = serde_json::from_slice(&std::fs::read(path)?)?;
        let key = Self::cache_key(ctx);
        if cache.key != key
            || cache.hash != Self::content_hash(&key, &cache.values)
            || cache.values.len() as u64 != ctx.field.group_order()
        {
            return Err(PadicError::CacheMismatch);
        }
        Ok(Self {
            values: cache.values,
            omega: TeichmullerTable::new(ctx),
        })
    }

    /// Load from `path` if present and valid, otherwise compute and store.
    pub fn load_or_compute(ctx: &PadicCtx, path: &Path) -> Result<Self, PadicError> {
        match Self::load(ctx, path) {
            Ok(t) => Ok(t),
            Err(_) => {
                let t = Self::new(ctx);
                t.save(ctx, path)?;
                Ok(t)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GaussCache {
    key: String,
    hash: String,
    values: Vec<PadicElement>,
}

pub fn gauss_sum(ctx: &PadicCtx, k: i64) -> PadicElement {
    ctx.gauss_sum_direct(k)
}

fn half_degree(ctx: &PadicCtx) -> Result<u32, PadicError> {
    let n = ctx.degree();
    if n % 2 == 1 {
        Err(PadicError::OddDegree(n))
    } else {
        Ok(n / 2)
    }
}

/// Subfield Gauss sums `Gbar(i) = sum_{x in GF(2^m)^*} omega^(-(2^m+1)i)(x) (-1)^Tr^m(x)`
/// for `0 <= i < 2^m - 1`, the subfield sitting inside `GF(2^(2m))`.
pub fn subfield_gauss_sums(
    ctx: &PadicCtx,
    omega: &TeichmullerTable,
) -> Result<Vec<PadicElement>, PadicError> {
    let m = half_degree(ctx)?;
    let field = &ctx.field;
    let sub = field.subfield_nonzero(m)?;
    let lift = (1i64 << m) + 1;
    let sub_order = (1i64 << m) - 1;
    let traces: Vec<u8> = sub
        .iter()
        .map(|&x| field.trace_rel(x, m))
        .collect::<Result<_, _>>()?;
    Ok((0..sub_order)
        .map(|i| {
            let mut acc = ctx.zero();
            for (&x, &t) in sub.iter().zip(&traces) {
                let term = omega.omega_pow(field, x, -lift * i);
                if t == 0 {
                    ctx.add_assign(&mut acc, term);
                } else {
                    ctx.sub_assign(&mut acc, term);
                }
            }
            acc
        })
        .collect())
}

pub fn subfield_gauss_sum(ctx: &PadicCtx, i: i64) -> Result<PadicElement, PadicError> {
    let m = half_degree(ctx)?;
    let omega = TeichmullerTable::new(ctx);
    let all = subfield_gauss_sums(ctx, &omega)?;
    Ok(all[i.rem_euclid((1i64 << m) - 1) as usize].clone())
}

/// `G(k) = 2^wt(k) (mod 2^(wt(k)+1))` for every `k`, plus `G(0) = -1`.
pub fn stickelberger_check(ctx: &PadicCtx, table: &GaussTable) -> bool {
    let n = ctx.degree();
    let order = ctx.field.group_order() as i64;
    if table.get(0) != &ctx.from_int(-1) {
        return false;
    }
    (0..order).all(|k| {
        let w = crate::expsums::weight_mod(k as i128, n);
        w + 1 > ctx.precision || ctx.congruent(table.get(k), &ctx.from_int(1 << w), w + 1)
    })
}

/// `v_2(G(k)) = wt(k)` for every `k` (meaningful while `wt(k) < M`).
pub fn stickelberger_valuation_check(ctx: &PadicCtx, table: &GaussTable) -> bool {
    let n = ctx.degree();
    let order = ctx.field.group_order() as i64;
    (0..order).all(|k| {
        let w = crate::expsums::weight_mod(k as i128, n);
        w >= ctx.precision || ctx.valuation(table.get(k)) == w
    })
}

/// `(-1)^Tr(x) = (q-1)^-1 sum_k G(k) omega(x)^k` for every nonzero `x`.
pub fn interpolation_check(ctx: &PadicCtx, table: &GaussTable) -> bool {
    let field = &ctx.field;
    let order = field.group_order() as i64;
    let inv = ctx.inverse_scalar(order);
    field.nonzero().all(|x| {
        let mut acc = ctx.zero();
        for k in 0..order {
            let term = ctx.mul(table.get(k), table.omega().omega_pow(field, x, k));
            ctx.add_assign(&mut acc, &term);
        }
        let lhs = ctx.from_int(if field.trace(x) == 0 { 1 } else { -1 });
        ctx.scale(&acc, inv) == lhs
    })
}

/// Exact Dillon-type sum `B(a, c)` against
/// `(q-1)^-1 sum_i G(i) G(-(2^m-1)i) omega(a^i c^(-(2^m-1)i))` in `Z_q/2^M`.
pub fn dillon_gauss_identity_check(
    ctx: &PadicCtx,
    table: &GaussTable,
    a: u32,
    c: u32,
) -> Result<bool, PadicError> {
    let m = half_degree(ctx)?;
    if a == 0 || c == 0 {
        return Err(PadicError::ZeroArgument);
    }
    let field = &ctx.field;
    let order = field.group_order() as i64;
    let e = (1i64 << m) - 1;
    let la = field.log(a).expect("nonzero") as i64;
    let lc = field.log(c).expect("nonzero") as i64;
    let mut acc = ctx.zero();
    for i in 0..order {
        let g = ctx.mul(table.get(i), table.get(-e * i));
        let exponent = (la * i - lc * ((e * i) % order)).rem_euclid(order);
        let term = ctx.mul(&g, table.omega().power(exponent));
        ctx.add_assign(&mut acc, &term);
    }
    let rhs = ctx.scale(&acc, ctx.inverse_scalar(order));
    let b = crate::expsums::dillon_sum(field, a, c).map_err(|_| PadicError::ZeroArgument)?;
    Ok(rhs == ctx.from_int(b))
}

/// Davenport-Hasse lifting: `G((2^m+1)i) = -Gbar(i)^2` for all `0 <= i < 2^m - 1`.
pub fn davenport_hasse_check(ctx: &PadicCtx, table: &GaussTable) -> Result<bool, PadicError> {
    let m = half_degree(ctx)?;
    let sub = subfield_gauss_sums(ctx, table.omega())?;
    let lift = (1i64 << m) + 1;
    Ok(sub.iter().enumerate().all(|(i, gbar)| {
        let rhs = ctx.neg(&ctx.mul(gbar, gbar));
        table.get(lift * i as i64) == &rhs
    }))
}

/// For `a` in `GF(2^m)^*` (inside `GF(2^(2m))`):
/// `sum_{x} (-1)^Tr^m(a x + 1/x) = (2^m-1)^-1 sum_i Gbar(i)^2 omega^((2^m+1)i)(a)`.
pub fn kloosterman_gauss_check(
    ctx: &PadicCtx,
    table: &GaussTable,
    a: u32,
) -> Result<bool, PadicError> {
    let m = half_degree(ctx)?;
    let field = &ctx.field;
    if a == 0 || !field.in_subfield(a, m) {
        return Err(PadicError::Field(FieldError::NotInSubfield { x: a, d: m }));
    }
    let sub = subfield_gauss_sums(ctx, table.omega())?;
    let lift = (1i64 << m) + 1;
    let sub_order = (1i64 << m) - 1;
    let mut acc = ctx.zero();
    for (i, gbar) in sub.iter().enumerate() {
        let term = ctx.mul(
            &ctx.mul(gbar, gbar),
            table.omega().omega_pow(field, a, lift * i as i64),
        );
        ctx.add_assign(&mut acc, &term);
    }
    let rhs = ctx.scale(&acc, ctx.inverse_scalar(sub_order));
    let mut lhs = 0i64;
    for x in field.subfield_nonzero(m)? {
        let y = field.mul(a, x) ^ field.inv(x)?;
        lhs += if field.trace_rel(y, m)? == 0 { 1 } else { -1 };
    }
    Ok(rhs == ctx.from_int(lhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(n: u32) -> Arc<FieldCtx> {
        FieldCtx::from_spec(FieldSpec::default_for(n).unwrap())
    }

    #[test]
    fn precision_bounds() {
        assert!(PadicCtx::new(field(4), 0).is_err());
        assert!(PadicCtx::new(field(4), 65).is_err());
        assert!(PadicCtx::new(field(4), 64).is_ok());
    }

    #[test]
    fn lifted_modulus_reduces_to_field_modulus() {
        let ctx = PadicCtx::new(field(6), 10).unwrap();
        let bits = ctx
            .lifted_modulus()
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (c & 1) << i);
        assert_eq!(bits, ctx.field().spec().modulus());
    }

    #[test]
    fn reduction_is_homomorphism() {
        let f = field(6);
        let ctx = PadicCtx::new(f.clone(), 20).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let x = PadicElement {
                coeffs: (0..6).map(|_| rng.gen::<u64>() & 0xfffff).collect(),
            };
            let y = PadicElement {
                coeffs: (0..6).map(|_| rng.gen::<u64>() & 0xfffff).collect(),
            };
            let (rx, ry) = (ctx.reduce(&x), ctx.reduce(&y));
            assert_eq!(ctx.reduce(&ctx.mul(&x, &y)), f.mul(rx, ry));
            assert_eq!(ctx.reduce(&ctx.add(&x, &y)), rx ^ ry);
        }
    }

    #[test]
    fn teichmuller_basics() {
        let f = field(4);
        let ctx = PadicCtx::new(f.clone(), 8).unwrap();
        assert_eq!(ctx.teichmuller(1).unwrap(), ctx.one());
        assert!(matches!(ctx.teichmuller(0), Err(PadicError::ZeroLift)));
        for x in f.nonzero() {
            for y in f.nonzero() {
                let lhs = ctx.mul(&ctx.teichmuller(x).unwrap(), &ctx.teichmuller(y).unwrap());
                assert_eq!(lhs, ctx.teichmuller(f.mul(x, y)).unwrap());
            }
        }
        let f64 = field(6);
        let ctx = PadicCtx::new(f64.clone(), 10).unwrap();
        for x in f64.nonzero() {
            let w = ctx.teichmuller(x).unwrap();
            assert_eq!(ctx.pow(&w, 63), ctx.one());
            assert_eq!(ctx.reduce(&w), x);
        }
    }

    #[test]
    fn table_matches_direct_lifts() {
        let f = field(5);
        let ctx = PadicCtx::new(f.clone(), 12).unwrap();
        let t = TeichmullerTable::new(&ctx);
        for x in f.nonzero() {
            assert_eq!(t.omega_pow(&f, x, 1), &ctx.teichmuller(x).unwrap());
        }
        let g = GaussTable::new(&ctx);
        for k in [0, 1, 3, 7, 30] {
            assert_eq!(g.get(k), &gauss_sum(&ctx, k));
        }
    }

    #[test]
    fn gauss_zero_is_minus_one() {
        for n in 2..=8 {
            let ctx = PadicCtx::with_default_precision(field(n)).unwrap();
            assert_eq!(gauss_sum(&ctx, 0), ctx.from_int(-1));
        }
    }

    #[test]
    fn stickelberger_small() {
        for n in [2, 3, 4, 5, 6] {
            let ctx = PadicCtx::with_default_precision(field(n)).unwrap();
            let t = GaussTable::new(&ctx);
            assert!(stickelberger_check(&ctx, &t), "n={n}");
            assert!(stickelberger_valuation_check(&ctx, &t), "n={n}");
        }
    }

    #[test]
    fn gauss_frobenius_invariant() {
        for n in 2..=8 {
            let ctx = PadicCtx::with_default_precision(field(n)).unwrap();
            let t = GaussTable::new(&ctx);
            for k in 0..(1i64 << n) - 1 {
                assert_eq!(t.get(2 * k), t.get(k));
            }
        }
    }

    #[test]
    fn subfield_gauss_zero_and_periodicity() {
        let ctx = PadicCtx::new(field(4), 16).unwrap();
        assert_eq!(subfield_gauss_sum(&ctx, 0).unwrap(), ctx.from_int(-1));
        for i in 0..3 {
            assert_eq!(
                subfield_gauss_sum(&ctx, i).unwrap(),
                subfield_gauss_sum(&ctx, i + 3).unwrap()
            );
        }
        let odd = PadicCtx::new(field(5), 8).unwrap();
        assert!(matches!(
            subfield_gauss_sum(&odd, 0),
            Err(PadicError::OddDegree(5))
        ));
    }

    #[test]
    fn interpolation_x_equals_one() {
        let ctx = PadicCtx::new(field(4), 12).unwrap();
        let t = GaussTable::new(&ctx);
        let mut sum = ctx.zero();
        for k in 0..15 {
            ctx.add_assign(&mut sum, t.get(k));
        }
        let expected = 15 * if ctx.field().trace(1) == 0 { 1 } else { -1 };
        assert_eq!(sum, ctx.from_int(expected));
        assert!(interpolation_check(&ctx, &t));
    }

    #[test]
    fn identities_small_m() {
        let ctx = PadicCtx::new(field(4), 16).unwrap();
        let t = GaussTable::new(&ctx);
        assert!(davenport_hasse_check(&ctx, &t).unwrap());
        for a in ctx.field().subfield_nonzero(2).unwrap() {
            assert!(kloosterman_gauss_check(&ctx, &t, a).unwrap());
        }
        for a in 1..16 {
            for c in 1..16 {
                assert!(dillon_gauss_identity_check(&ctx, &t, a, c).unwrap());
            }
        }
        assert!(matches!(
            dillon_gauss_identity_check(&ctx, &t, 0, 1),
            Err(PadicError::ZeroArgument)
        ));
    }

    #[test]
    fn precision_monotone() {
        let full = PadicCtx::new(field(4), 16).unwrap();
        for m in 1..=16 {
            let ctx = full.truncated(m).unwrap();
            let t = GaussTable::new(&ctx);
            assert!(interpolation_check(&ctx, &t), "M={m}");
            assert!(davenport_hasse_check(&ctx, &t).unwrap(), "M={m}");
            assert!(stickelberger_check(&ctx, &t), "M={m}");
        }
    }

    #[test]
    fn cache_round_trip() {
        let ctx = PadicCtx::new(field(4), 10).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gauss.json");
        let t = GaussTable::load_or_compute(&ctx, &path).unwrap();
        let loaded = GaussTable::load(&ctx, &path).unwrap();
        assert_eq!(t.values(), loaded.values());
        let other = PadicCtx::new(field(4), 11).unwrap();
        assert!(matches!(
            GaussTable::load(&other, &path),
            Err(PadicError::CacheMismatch)
        ));
    }
}
