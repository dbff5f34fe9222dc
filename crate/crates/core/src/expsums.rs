//! Integer exponential sums over binary fields and the binary weight
//! modulo `2^n - 1`.

use serde::Serialize;
use thiserror::Error;

use crate::boolfun::{walsh_at, BoolFunError};
use crate::field::{FieldCtx, FieldError};
use crate::mesnager;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpSumError {
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("m = {0} must be even")]
    OddM(u32),
    #[error("field degree {0} is odd")]
    OddDegree(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    BoolFun(#[from] BoolFunError),
}

#[inline]
fn sign(bit: u8) -> i64 {
    1 - 2 * bit as i64
}

/// A computed Kloosterman value together with its field and argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KloostermanValue {
    pub degree: u32,
    pub argument: u32,
    pub value: i64,
}

impl KloostermanValue {
    /// Parity plus the loose Weil-type bound `|K - 1| <= 2^(m/2+1) + 1`.
    pub fn is_sane(&self) -> bool {
        let bound = (2.0f64).powf(self.degree as f64 / 2.0 + 1.0) + 1.0;
        self.value % 2 == 0 && ((self.value - 1).abs() as f64) <= bound
    }
}

/// `K_m(a) = 1 + sum_{x != 0} (-1)^Tr(a x + 1/x)` over the field of `ctx`.
pub fn kloosterman(ctx: &FieldCtx, a: u32) -> i64 {
    1 + ctx
        .nonzero()
        .map(|x| {
            let inv = ctx.inv(x).expect("x is nonzero");
            sign(ctx.trace(ctx.mul(a, x) ^ inv))
        })
        .sum::<i64>()
}

pub fn kloosterman_value(ctx: &FieldCtx, a: u32) -> KloostermanValue {
    KloostermanValue {
        degree: ctx.degree(),
        argument: a,
        value: kloosterman(ctx, a),
    }
}

/// Kloosterman sum over the order-`2^d` subfield of `ctx`, for `a` in that
/// subfield. Same definition as [`kloosterman`], with `Tr^d_1` as the trace.
pub fn kloosterman_in_subfield(ctx: &FieldCtx, d: u32, a: u32) -> Result<i64, ExpSumError> {
    if !ctx.in_subfield(a, d) {
        return Err(FieldError::NotInSubfield { x: a, d }.into());
    }
    let mut acc = 1i64;
    for x in ctx.subfield_nonzero(d)? {
        let y = ctx.mul(a, x) ^ ctx.inv(x)?;
        acc += sign(ctx.trace_rel(y, d)?);
    }
    Ok(acc)
}

/// `K_m(a^(2^m+1))` for `a` in `GF(2^(2m))`; the norm lands in `GF(2^m)`.
pub fn kloosterman_of_norm(ctx_n: &FieldCtx, a: u32) -> Result<i64, ExpSumError> {
    let n = ctx_n.degree();
    if n % 2 == 1 {
        return Err(ExpSumError::OddDegree(n));
    }
    let m = n / 2;
    let norm = ctx_n.pow(a, (1u64 << m) + 1);
    kloosterman_in_subfield(ctx_n, m, norm)
}

/// `B = sum_{x != 0} (-1)^Tr(a x^(2^m-1) + c x)` over `GF(2^(2m))`.
pub fn dillon_sum(ctx_n: &FieldCtx, a: u32, c: u32) -> Result<i64, ExpSumError> {
    let n = ctx_n.degree();
    if n % 2 == 1 {
        return Err(ExpSumError::OddDegree(n));
    }
    if a == 0 || c == 0 {
        return Err(ExpSumError::ZeroArgument);
    }
    let e = (1u64 << (n / 2)) - 1;
    Ok(ctx_n
        .nonzero()
        .map(|x| sign(ctx_n.trace(ctx_n.mul(a, ctx_n.pow(x, e)) ^ ctx_n.mul(c, x))))
        .sum())
}

/// Binary weight of `k` reduced modulo `2^n - 1`; zero on multiples.
pub fn weight_mod(k: i128, n: u32) -> u32 {
    assert!((1..=64).contains(&n), "weight_mod needs 1 <= n <= 64");
    let modulus = (1i128 << n) - 1;
    let r = k.rem_euclid(modulus);
    r.count_ones()
}

/// `u = (2^(2m)-1)/3` for choice 0, twice that for choice 1.
pub fn u_value(m: u32, u_choice: u8) -> i128 {
    let third = ((1i128 << (2 * m)) - 1) / 3;
    if u_choice == 0 {
        third
    } else {
        2 * third
    }
}

/// `wt(a) + wt(b) + wt(s) + wt(t) - 2m` with `s = u - a + b`, `t = u + a - b`.
pub fn string_weight_excess(m: u32, u_choice: u8, a: i128, b: i128) -> i64 {
    let n = 2 * m;
    let u = u_value(m, u_choice);
    let s = u - a + b;
    let t = u + a - b;
    [a, b, s, t]
        .iter()
        .map(|&v| weight_mod(v, n) as i64)
        .sum::<i64>()
        - n as i64
}

/// Brute-force evaluation of `wt(a) + wt(b) + wt(s) + wt(t) >= 2m`.
pub fn string_inequality_oracle(m: u32, u_choice: u8, a: i128, b: i128) -> bool {
    string_weight_excess(m, u_choice, a, b) >= 0
}

/// Inverse of an odd integer modulo `2^bits` (`1 <= bits <= 64`).
pub fn inverse_mod_pow2(x: i128, bits: u32) -> i128 {
    assert!(x % 2 != 0, "only odd numbers are invertible mod 2^k");
    assert!((1..=64).contains(&bits));
    let mask = if bits == 64 {
        u64::MAX as u128
    } else {
        (1u128 << bits) - 1
    };
    let x = x.rem_euclid(1i128 << bits) as u128;
    let mut inv = x;
    for _ in 0..7 {
        inv = inv.wrapping_mul(2u128.wrapping_sub(x.wrapping_mul(inv))) & mask;
    }
    inv as i128
}

/// Right-hand side `(4 - K) * 3^-1 + 2^m` reduced modulo `2^(m+1)`.
pub fn walsh_congruence_target(m: u32, k: i64) -> i64 {
    let modulus = 1i128 << (m + 1);
    let third = inverse_mod_pow2(3, m + 1);
    (((4 - k as i128) * third + (1i128 << m)).rem_euclid(modulus)) as i64
}

/// Check `W_{f_{a,1}}(c) = (4 - K_m(a^(2^m+1)))/3 + 2^m (mod 2^(m+1))`
/// against the exact Walsh coefficient.
pub fn walsh_congruence_check(
    ctx_n: &std::sync::Arc<FieldCtx>,
    a: u32,
    c: u32,
) -> Result<bool, ExpSumError> {
    let n = ctx_n.degree();
    if n % 2 == 1 {
        return Err(ExpSumError::OddDegree(n));
    }
    let m = n / 2;
    if m % 2 == 1 {
        return Err(ExpSumError::OddM(m));
    }
    if a == 0 || c == 0 {
        return Err(ExpSumError::ZeroArgument);
    }
    let f = mesnager::binomial_f1(ctx_n, a).map_err(|_| ExpSumError::ZeroArgument)?;
    let w = walsh_at(&f, c);
    let k = kloosterman_of_norm(ctx_n, a)?;
    let modulus = 1i64 << (m + 1);
    Ok(w.rem_euclid(modulus) == walsh_congruence_target(m, k))
}
