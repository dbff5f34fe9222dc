//! Arithmetic in binary fields `GF(2^n)`, `n <= 24`, in polynomial basis.
//!
//! Elements are plain bit patterns (`u32`): bit `i` is the coefficient of
//! `z^i`. All operations go through a [`FieldCtx`], which owns the modulus,
//! the trace mask and (for `n <= 16`) log/antilog tables. The carryless
//! multiply-and-reduce path is always available as [`FieldCtx::mul_reduce`]
//! and is what the tables are checked against.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 24;

/// Degrees up to this bound get log/antilog tables.
const TABLE_DEGREE: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("degree {0} outside the supported range 1..={MAX_DEGREE}")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus:#x} does not have degree {degree}")]
    DegreeMismatch { degree: u32, modulus: u64 },
    #[error("modulus {0:#x} is reducible over GF(2)")]
    Reducible(u64),
    #[error("bit pattern {bits:#x} is not an element of GF(2^{degree})")]
    OutOfRange { bits: u64, degree: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{d} does not divide the field degree {n}")]
    NotADivisor { d: u32, n: u32 },
    #[error("element {x:#x} is not fixed by the {d}-th power of Frobenius")]
    NotInSubfield { x: u32, d: u32 },
    #[error("elements belong to different fields")]
    ContextMismatch,
    #[error("no root of {modulus:#x} in the target field (corrupted modulus)")]
    NoRoot { modulus: u64 },
}

/// Degree of a nonzero binary polynomial packed into a `u64`.
fn poly_degree(p: u64) -> u32 {
    63 - p.leading_zeros()
}

/// Remainder of `a` modulo `b` over GF(2)[x].
fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Carryless product of two polynomials of degree < 32.
pub fn clmul(a: u32, b: u32) -> u64 {
    let a = a as u64;
    let mut b = b;
    let mut acc = 0u64;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

fn mulmod_poly(a: u64, b: u64, modulus: u64) -> u64 {
    poly_rem(clmul(a as u32, b as u32), modulus)
}

/// Irreducibility over GF(2): no common factor with `x^(2^k) - x` for
/// `k <= n/2`.
pub fn is_irreducible(modulus: u64) -> bool {
    if modulus < 2 {
        return false;
    }
    let n = poly_degree(modulus);
    if n == 0 {
        return false;
    }
    if n > 32 {
        return false;
    }
    let x = poly_rem(0b10, modulus);
    let mut frob = x;
    for _ in 1..=n / 2 {
        frob = mulmod_poly(frob, frob, modulus);
        if poly_gcd(modulus, frob ^ x) != 1 {
            return false;
        }
    }
    true
}

/// Numerically smallest irreducible polynomial of the given degree.
pub fn least_irreducible(degree: u32) -> Result<u64, FieldError> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(FieldError::UnsupportedDegree(degree));
    }
    let lo = 1u64 << degree;
    (lo..lo << 1)
        .find(|&p| is_irreducible(p))
        .ok_or(FieldError::UnsupportedDegree(degree))
}

/// Degree plus monic irreducible modulus (bit `n` set).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    degree: u32,
    modulus: u64,
}

impl FieldSpec {
    pub fn new(degree: u32, modulus: u64) -> Result<Self, FieldError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(FieldError::UnsupportedDegree(degree));
        }
        if modulus == 0 || poly_degree(modulus) != degree {
            return Err(FieldError::DegreeMismatch { degree, modulus });
        }
        if !is_irreducible(modulus) {
            return Err(FieldError::Reducible(modulus));
        }
        Ok(Self { degree, modulus })
    }

    /// Spec built from the least irreducible of `degree`.
    pub fn default_for(degree: u32) -> Result<Self, FieldError> {
        Self::new(degree, least_irreducible(degree)?)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.degree, self.modulus)
    }
}

struct LogTables {
    /// `exp[i] = g^i` for `i < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[x]` for `x != 0`; `log[0]` is unused.
    log: Vec<u32>,
}

/// Immutable context for `GF(2^n)`.
pub struct FieldCtx {
    spec: FieldSpec,
    /// Low `n` bits of the modulus.
    reduction: u64,
    mask: u32,
    /// Bit `i` set iff `Tr(z^i) = 1`.
    trace_mask: u32,
    generator: u32,
    tables: Option<LogTables>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("spec", &self.spec)
            .field("generator", &self.generator)
            .finish()
    }
}

fn prime_factors(mut k: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            out.push(p);
            while k.is_multiple_of(p) {
                k /= p;
            }
        }
        p += 1;
    }
    if k > 1 {
        out.push(k);
    }
    out
}

impl FieldCtx {
    pub fn new(spec: FieldSpec) -> Self {
        let n = spec.degree;
        let mask = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let mut ctx = Self {
            spec,
            reduction: spec.modulus & ((1u64 << n) - 1),
            mask,
            trace_mask: 0,
            generator: 0,
            tables: None,
        };
        ctx.trace_mask = (0..n)
            .filter(|&i| ctx.trace_by_frobenius(1 << i) == 1)
            .fold(0, |m, i| m | (1 << i));
        ctx.generator = ctx.find_primitive();
        if n <= TABLE_DEGREE {
            ctx.tables = Some(ctx.build_tables());
        }
        ctx
    }

    pub fn from_spec(spec: FieldSpec) -> Arc<Self> {
        Arc::new(Self::new(spec))
    }

    /// Shorthand: validate `(degree, modulus)` and wrap in an `Arc`.
    pub fn with_modulus(degree: u32, modulus: u64) -> Result<Arc<Self>, FieldError> {
        Ok(Arc::new(Self::new(FieldSpec::new(degree, modulus)?)))
    }

    fn find_primitive(&self) -> u32 {
        let order = self.order() - 1;
        if order == 1 {
            return 1;
        }
        let factors = prime_factors(order);
        (2..=self.mask)
            .find(|&g| factors.iter().all(|&p| self.pow_reduce(g, order / p) != 1))
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&self) -> LogTables {
        let order = (self.order() - 1) as usize;
        let mut exp = vec![0u32; 2 * order];
        let mut log = vec![0u32; self.order() as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i] = x;
            exp[i + order] = x;
            log[x as usize] = i as u32;
            x = self.mul_reduce(x, self.generator);
        }
        LogTables { exp, log }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn degree(&self) -> u32 {
        self.spec.degree
    }

    /// Number of elements, `2^n`.
    pub fn order(&self) -> u64 {
        1u64 << self.spec.degree
    }

    /// Order of the multiplicative group, `2^n - 1`.
    pub fn group_order(&self) -> u64 {
        self.order() - 1
    }

    /// Smallest-encoding primitive element.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn trace_mask(&self) -> u32 {
        self.trace_mask
    }

    pub fn contains(&self, bits: u64) -> bool {
        bits <= self.mask as u64
    }

    pub fn check(&self, bits: u64) -> Result<u32, FieldError> {
        if self.contains(bits) {
            Ok(bits as u32)
        } else {
            Err(FieldError::OutOfRange {
                bits,
                degree: self.spec.degree,
            })
        }
    }

    /// Element wrapper bound to this context.
    pub fn element(&self, bits: u64) -> Result<Elem<'_>, FieldError> {
        Ok(Elem {
            ctx: self,
            bits: self.check(bits)?,
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..=self.mask
    }

    pub fn nonzero(&self) -> impl Iterator<Item = u32> {
        1..=self.mask
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        x ^ y
    }

    /// Carryless multiply and reduce; the table-free reference path.
    pub fn mul_reduce(&self, x: u32, y: u32) -> u32 {
        let n = self.spec.degree;
        let mut p = clmul(x, y);
        for bit in (n..2 * n).rev() {
            if p >> bit & 1 == 1 {
                p ^= (self.reduction << (bit - n)) ^ (1u64 << bit);
            }
        }
        p as u32
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        match &self.tables {
            Some(t) => {
                if x == 0 || y == 0 {
                    0
                } else {
                    t.exp[(t.log[x as usize] + t.log[y as usize]) as usize]
                }
            }
            None => self.mul_reduce(x, y),
        }
    }

    #[inline]
    pub fn square(&self, x: u32) -> u32 {
        self.mul(x, x)
    }

    fn pow_reduce(&self, x: u32, mut e: u64) -> u32 {
        let mut base = x;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_reduce(acc, base);
            }
            base = self.mul_reduce(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^e`, with `0^0 = 1`.
    pub fn pow(&self, x: u32, e: u64) -> u32 {
        if let Some(t) = &self.tables {
            if x == 0 {
                return if e == 0 { 1 } else { 0 };
            }
            let order = self.group_order();
            let idx = (t.log[x as usize] as u64 * (e % order)) % order;
            return t.exp[idx as usize];
        }
        let mut base = x;
        let mut acc = 1u32;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^e` for a possibly negative exponent; `x` must be nonzero when `e < 0`.
    pub fn pow_signed(&self, x: u32, e: i64) -> Result<u32, FieldError> {
        if e >= 0 {
            return Ok(self.pow(x, e as u64));
        }
        if x == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let order = self.group_order() as i64;
        Ok(self.pow(x, e.rem_euclid(order) as u64))
    }

    pub fn inv(&self, x: u32) -> Result<u32, FieldError> {
        if x == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(match &self.tables {
            Some(t) => {
                let order = self.group_order() as u32;
                let l = t.log[x as usize];
                t.exp[((order - l) % order) as usize]
            }
            None => self.pow(x, self.group_order() - 1),
        })
    }

    /// Discrete log to the base [`Self::generator`]; tables or exhaustive walk.
    pub fn log(&self, x: u32) -> Option<u64> {
        if x == 0 {
            return None;
        }
        if let Some(t) = &self.tables {
            return Some(t.log[x as usize] as u64);
        }
        let mut y = 1u32;
        for i in 0..self.group_order() {
            if y == x {
                return Some(i);
            }
            y = self.mul(y, self.generator);
        }
        None
    }

    /// `g^i` for the fixed generator.
    pub fn exp(&self, i: u64) -> u32 {
        match &self.tables {
            Some(t) => t.exp[(i % self.group_order()) as usize],
            None => self.pow(self.generator, i),
        }
    }

    /// Absolute trace via the precomputed linear mask.
    #[inline]
    pub fn trace(&self, x: u32) -> u8 {
        ((x & self.trace_mask).count_ones() & 1) as u8
    }

    /// Absolute trace by summing the Frobenius orbit `x + x^2 + ... + x^(2^(n-1))`.
    pub fn trace_by_frobenius(&self, x: u32) -> u8 {
        let mut acc = 0u32;
        let mut y = x;
        for _ in 0..self.spec.degree {
            acc ^= y;
            y = self.mul_reduce(y, y);
        }
        debug_assert!(acc <= 1);
        acc as u8
    }

    /// `x^(2^k)`.
    pub fn frobenius(&self, x: u32, k: u32) -> u32 {
        (0..k).fold(x, |y, _| self.square(y))
    }

    /// Whether `x` lies in the subfield of order `2^d` (`x^(2^d) = x`).
    pub fn in_subfield(&self, x: u32, d: u32) -> bool {
        self.frobenius(x, d) == x
    }

    /// `Tr^d_1(x) = x + x^2 + ... + x^(2^(d-1))` for `x` in the order-`2^d`
    /// subfield.
    pub fn trace_rel(&self, x: u32, d: u32) -> Result<u8, FieldError> {
        let n = self.spec.degree;
        if d == 0 || !n.is_multiple_of(d) {
            return Err(FieldError::NotADivisor { d, n });
        }
        if d == n {
            return Ok(self.trace(x));
        }
        let mut acc = 0u32;
        let mut y = x;
        for _ in 0..d {
            acc ^= y;
            y = self.square(y);
        }
        if y != x {
            return Err(FieldError::NotInSubfield { x, d });
        }
        debug_assert!(acc <= 1);
        Ok(acc as u8)
    }

    /// Elements of the order-`2^d` subfield, in increasing `g`-power order
    /// (zero excluded).
    pub fn subfield_nonzero(&self, d: u32) -> Result<Vec<u32>, FieldError> {
        let n = self.spec.degree;
        if d == 0 || !n.is_multiple_of(d) {
            return Err(FieldError::NotADivisor { d, n });
        }
        let step = self.group_order() / ((1u64 << d) - 1);
        let h = self.pow(self.generator, step);
        let mut out = Vec::with_capacity((1usize << d) - 1);
        let mut y = 1u32;
        for _ in 0..(1u64 << d) - 1 {
            out.push(y);
            y = self.mul(y, h);
        }
        Ok(out)
    }

    /// Evaluate a binary polynomial (bit `i` = coefficient of `X^i`) at `x`.
    pub fn eval_binary_poly(&self, poly: u64, x: u32) -> u32 {
        let deg = if poly == 0 { 0 } else { poly_degree(poly) };
        let mut acc = 0u32;
        for i in (0..=deg).rev() {
            acc = self.mul(acc, x);
            if poly >> i & 1 == 1 {
                acc ^= 1;
            }
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: u32) -> Result<u64, FieldError> {
        if x == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let mut order = self.group_order();
        for p in prime_factors(order) {
            while order.is_multiple_of(p) && self.pow(x, order / p) == 1 {
                order /= p;
            }
        }
        Ok(order)
    }
}

/// An element bound to its context; arithmetic operators panic when the
/// operands come from different contexts (use the `try_` methods to get an
/// error instead).
#[derive(Clone, Copy)]
pub struct Elem<'a> {
    ctx: &'a FieldCtx,
    bits: u32,
}

impl<'a> Elem<'a> {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    fn same_ctx(&self, other: &Elem<'_>) -> Result<(), FieldError> {
        if std::ptr::eq(self.ctx, other.ctx) {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    pub fn try_mul(self, other: Elem<'_>) -> Result<Elem<'a>, FieldError> {
        self.same_ctx(&other)?;
        Ok(Elem {
            ctx: self.ctx,
            bits: self.ctx.mul(self.bits, other.bits),
        })
    }

    pub fn try_add(self, other: Elem<'_>) -> Result<Elem<'a>, FieldError> {
        self.same_ctx(&other)?;
        Ok(Elem {
            ctx: self.ctx,
            bits: self.bits ^ other.bits,
        })
    }

    pub fn inv(self) -> Result<Elem<'a>, FieldError> {
        Ok(Elem {
            ctx: self.ctx,
            bits: self.ctx.inv(self.bits)?,
        })
    }

    pub fn pow(self, e: u64) -> Elem<'a> {
        Elem {
            ctx: self.ctx,
            bits: self.ctx.pow(self.bits, e),
        }
    }

    pub fn trace(self) -> u8 {
        self.ctx.trace(self.bits)
    }

    pub fn trace_rel(self, d: u32) -> Result<u8, FieldError> {
        self.ctx.trace_rel(self.bits, d)
    }
}

impl PartialEq for Elem<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ctx, other.ctx) && self.bits == other.bits
    }
}

impl Eq for Elem<'_> {}

impl fmt::Debug for Elem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

impl<'a> std::ops::Mul for Elem<'a> {
    type Output = Elem<'a>;
    fn mul(self, rhs: Self) -> Self::Output {
        self.try_mul(rhs).expect("field context mismatch")
    }
}

impl<'a> std::ops::Add for Elem<'a> {
    type Output = Elem<'a>;
    fn add(self, rhs: Self) -> Self::Output {
        self.try_add(rhs).expect("field context mismatch")
    }
}

/// Field homomorphism `GF(2^d) -> GF(2^n)` fixed by the image of the source
/// generator `z`.
#[derive(Debug, Clone)]
pub struct Embedding {
    source: FieldSpec,
    target: FieldSpec,
    image_of_generator: u32,
    /// `image_of_generator^i`, `i < d`.
    basis_images: Vec<u32>,
}

impl Embedding {
    pub fn source(&self) -> FieldSpec {
        self.source
    }

    pub fn target(&self) -> FieldSpec {
        self.target
    }

    pub fn image_of_generator(&self) -> u32 {
        self.image_of_generator
    }

    /// Image of `x = sum x_i z^i` as `sum x_i r^i`.
    pub fn apply(&self, x: u32) -> u32 {
        self.basis_images
            .iter()
            .enumerate()
            .filter(|(i, _)| x >> i & 1 == 1)
            .fold(0, |acc, (_, &b)| acc ^ b)
    }

    /// Preimage of `y` if it lies in the image; linear scan of the source.
    pub fn preimage(&self, y: u32) -> Option<u32> {
        let size = 1u32 << self.source.degree;
        (0..size).find(|&x| self.apply(x) == y)
    }

    /// Full inverse table indexed by target bits (`None` outside the image).
    pub fn preimage_table(&self) -> std::collections::HashMap<u32, u32> {
        let size = 1u32 << self.source.degree;
        (0..size).map(|x| (self.apply(x), x)).collect()
    }
}

/// All roots in `target` of the source modulus, sorted by encoding.
pub fn embedding_roots(source: &FieldCtx, target: &FieldCtx) -> Result<Vec<u32>, FieldError> {
    let d = source.degree();
    let n = target.degree();
    if !n.is_multiple_of(d) {
        return Err(FieldError::NotADivisor { d, n });
    }
    let modulus = source.spec().modulus;
    let mut candidates = target.subfield_nonzero(d)?;
    candidates.sort_unstable();
    let roots: Vec<u32> = candidates
        .into_iter()
        .filter(|&y| target.eval_binary_poly(modulus, y) == 0)
        .collect();
    if roots.is_empty() {
        return Err(FieldError::NoRoot { modulus });
    }
    Ok(roots)
}

/// Embedding determined by an explicit root of the source modulus.
pub fn embedding_with_root(
    source: &FieldCtx,
    target: &FieldCtx,
    root: u32,
) -> Result<Embedding, FieldError> {
    let d = source.degree();
    let n = target.degree();
    if !n.is_multiple_of(d) {
        return Err(FieldError::NotADivisor { d, n });
    }
    target.check(root as u64)?;
    if target.eval_binary_poly(source.spec().modulus, root) != 0 {
        return Err(FieldError::NoRoot {
            modulus: source.spec().modulus,
        });
    }
    let mut basis_images = Vec::with_capacity(d as usize);
    let mut p = 1u32;
    for _ in 0..d {
        basis_images.push(p);
        p = target.mul(p, root);
    }
    Ok(Embedding {
        source: source.spec(),
        target: target.spec(),
        image_of_generator: root,
        basis_images,
    })
}

/// Embedding sending `z` to the numerically smallest root of the source
/// modulus in the target.
pub fn make_embedding(source: &FieldCtx, target: &FieldCtx) -> Result<Embedding, FieldError> {
    let roots = embedding_roots(source, target)?;
    embedding_with_root(source, target, roots[0])
}

/// The `d` Galois-conjugate embeddings, ordered by root encoding.
pub fn all_embeddings(source: &FieldCtx, target: &FieldCtx) -> Result<Vec<Embedding>, FieldError> {
    embedding_roots(source, target)?
        .into_iter()
        .map(|r| embedding_with_root(source, target, r))
        .collect()
}

/// Composition `outer . inner`.
pub fn compose(inner: &Embedding, outer: &Embedding) -> Result<Embedding, FieldError> {
    if inner.target != outer.source {
        return Err(FieldError::ContextMismatch);
    }
    let root = outer.apply(inner.image_of_generator);
    let basis_images = inner.basis_images.iter().map(|&b| outer.apply(b)).collect();
    Ok(Embedding {
        source: inner.source,
        target: outer.target,
        image_of_generator: root,
        basis_images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Arc<FieldCtx> {
        FieldCtx::with_modulus(2, 0b111).unwrap()
    }

    #[test]
    fn f4_arithmetic() {
        let k = f4();
        // z*z = z + 1
        assert_eq!(k.mul(0b10, 0b10), 0b11);
        assert_eq!(k.inv(0b10).unwrap(), 0b11);
        assert_eq!(k.trace(0b10), 1);
        assert_eq!(k.trace_by_frobenius(0b10), 1);
        assert_eq!(k.inv(1).unwrap(), 1);
        assert_eq!(k.inv(0), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn identity_and_inverses() {
        let k16 = FieldCtx::from_spec(FieldSpec::default_for(4).unwrap());
        for x in k16.elements() {
            assert_eq!(k16.mul(x, 1), x);
        }
        let k256 = FieldCtx::from_spec(FieldSpec::default_for(8).unwrap());
        for x in k256.nonzero() {
            assert_eq!(k256.mul(x, k256.inv(x).unwrap()), 1);
        }
        let k4096 = FieldCtx::from_spec(FieldSpec::default_for(12).unwrap());
        for x in k4096.nonzero() {
            assert_eq!(k4096.inv(k4096.inv(x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn tables_agree_with_reduce_path() {
        let k = FieldCtx::from_spec(FieldSpec::default_for(7).unwrap());
        for x in k.elements() {
            for y in k.elements() {
                assert_eq!(k.mul(x, y), k.mul_reduce(x, y));
            }
        }
    }

    #[test]
    fn untabled_degrees_work() {
        let k = FieldCtx::from_spec(FieldSpec::default_for(20).unwrap());
        assert!(k.tables.is_none());
        let g = k.generator();
        assert_eq!(k.pow(g, k.group_order()), 1);
        let x = 0x5a5a5;
        assert_eq!(k.mul(x, k.inv(x).unwrap()), 1);
        assert_eq!(k.trace(x), k.trace_by_frobenius(x));
    }

    #[test]
    fn lagrange_up_to_twelve() {
        for n in 1..=12 {
            let k = FieldCtx::from_spec(FieldSpec::default_for(n).unwrap());
            for x in k.nonzero() {
                assert_eq!(k.pow_reduce(x, k.group_order()), 1, "n={n} x={x:#x}");
            }
        }
    }

    #[test]
    fn trace_linear_and_balanced() {
        for n in 1..=8 {
            let k = FieldCtx::from_spec(FieldSpec::default_for(n).unwrap());
            for x in k.elements() {
                for y in k.elements() {
                    assert_eq!(k.trace(x ^ y), k.trace(x) ^ k.trace(y));
                }
            }
            let zeros = k.elements().filter(|&x| k.trace(x) == 0).count();
            assert_eq!(zeros as u64, k.order() / 2);
            assert_eq!(k.trace(0), 0);
        }
    }

    #[test]
    fn trace_frobenius_invariant() {
        for n in 1..=12 {
            let k = FieldCtx::from_spec(FieldSpec::default_for(n).unwrap());
            for x in k.elements() {
                assert_eq!(k.trace(k.square(x)), k.trace(x));
                assert_eq!(k.trace(x), k.trace_by_frobenius(x));
            }
        }
    }

    #[test]
    fn relative_trace() {
        let k = FieldCtx::from_spec(FieldSpec::default_for(12).unwrap());
        for d in [1, 2, 3, 4, 6, 12] {
            assert_eq!(k.trace_rel(0, d).unwrap(), 0);
        }
        for x in k.elements() {
            assert_eq!(k.trace_rel(x, 12).unwrap(), k.trace(x));
        }
        for y in k.nonzero().step_by(37) {
            let x = k.pow(y, (4096 - 1) / 3);
            assert_eq!(k.pow(x, 4), x);
            assert!(k.trace_rel(x, 2).is_ok());
        }
        let outside = k.generator();
        assert_eq!(
            k.trace_rel(outside, 2),
            Err(FieldError::NotInSubfield { x: outside, d: 2 })
        );
        assert_eq!(
            k.trace_rel(1, 5),
            Err(FieldError::NotADivisor { d: 5, n: 12 })
        );
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(0b111));
        assert!(!is_irreducible(0b101)); // (x+1)^2
        assert!(is_irreducible(0b1011011));
        assert!(!is_irreducible(0b10101)); // (x^2+x+1)^2
        assert_eq!(least_irreducible(4).unwrap(), 0b10011);
        assert_eq!(least_irreducible(8).unwrap(), 0x11b);
        assert!(matches!(
            FieldSpec::new(4, 0b10101),
            Err(FieldError::Reducible(_))
        ));
        assert!(matches!(
            FieldSpec::new(5, 0b10011),
            Err(FieldError::DegreeMismatch { .. })
        ));
        assert!(FieldSpec::new(25, 1 << 25 | 1).is_err());
    }

    #[test]
    fn embedding_into_prime_field_case() {
        let f2 = FieldCtx::with_modulus(1, 0b11).unwrap();
        let k = FieldCtx::from_spec(FieldSpec::default_for(5).unwrap());
        let e = make_embedding(&f2, &k).unwrap();
        assert_eq!(e.apply(1), 1);
        assert_eq!(e.apply(0), 0);
    }

    #[test]
    fn f4_into_f16() {
        let k4 = f4();
        let k16 = FieldCtx::from_spec(FieldSpec::default_for(4).unwrap());
        let e = make_embedding(&k4, &k16).unwrap();
        let r = e.image_of_generator();
        assert_eq!(k16.mul(r, r) ^ r ^ 1, 0);
        assert_eq!(all_embeddings(&k4, &k16).unwrap().len(), 2);
    }

    fn assert_homomorphism(src: &FieldCtx, dst: &FieldCtx, e: &Embedding) {
        for x in src.elements() {
            for y in src.elements() {
                assert_eq!(e.apply(src.mul(x, y)), dst.mul(e.apply(x), e.apply(y)));
                assert_eq!(e.apply(x ^ y), e.apply(x) ^ e.apply(y));
            }
        }
    }

    #[test]
    fn f64_into_f4096_is_homomorphism() {
        let k64 = FieldCtx::with_modulus(6, 0b1011011).unwrap();
        let k4096 = FieldCtx::from_spec(FieldSpec::default_for(12).unwrap());
        let embeddings = all_embeddings(&k64, &k4096).unwrap();
        assert_eq!(embeddings.len(), 6);
        let e = make_embedding(&k64, &k4096).unwrap();
        assert_eq!(e.image_of_generator(), embeddings[0].image_of_generator());
        assert_homomorphism(&k64, &k4096, &e);
        let table = e.preimage_table();
        assert_eq!(table.len(), 64);
        assert_eq!(e.preimage(e.apply(0b101101)), Some(0b101101));
    }

    #[test]
    fn composed_tower_is_homomorphism() {
        let k4 = f4();
        let k16 = FieldCtx::from_spec(FieldSpec::default_for(4).unwrap());
        let k4096 = FieldCtx::from_spec(FieldSpec::default_for(12).unwrap());
        let inner = make_embedding(&k4, &k16).unwrap();
        let outer = make_embedding(&k16, &k4096).unwrap();
        let composite = compose(&inner, &outer).unwrap();
        assert_homomorphism(&k4, &k4096, &composite);
        let direct: Vec<u32> = all_embeddings(&k4, &k4096)
            .unwrap()
            .iter()
            .map(Embedding::image_of_generator)
            .collect();
        assert!(direct.contains(&composite.image_of_generator()));
    }

    #[test]
    fn bound_elements() {
        let k = f4();
        let other = f4();
        let z = k.element(0b10).unwrap();
        assert_eq!((z * z).bits(), 0b11);
        assert_eq!((z + z).bits(), 0);
        assert_eq!(z.inv().unwrap().bits(), 0b11);
        let w = other.element(0b10).unwrap();
        assert_eq!(z.try_mul(w), Err(FieldError::ContextMismatch));
        assert!(k.element(4).is_err());
    }

    #[test]
    fn generator_is_primitive() {
        for n in 1..=12 {
            let k = FieldCtx::from_spec(FieldSpec::default_for(n).unwrap());
            assert_eq!(k.element_order(k.generator()).unwrap(), k.group_order());
            for x in k.nonzero() {
                assert_eq!(k.exp(k.log(x).unwrap()), x);
            }
        }
    }
}
