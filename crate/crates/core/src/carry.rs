//! Digits and carries for signed sums modulo `2^n - 1`.
//!
//! For binary `n`-periodic sequences `a^(i)` and nonzero integers `t_i`, the
//! residue `s = sum t_i a^(i) mod 2^n - 1` has digits `s_j` and a unique
//! periodic carry sequence `c_j in [t_-, t_+ - 1]` with
//! `2 c_j + s_j = sum_i t_i a^(i)_j + c_(j-1)`.

use serde::Serialize;
use thiserror::Error;

use crate::expsums::u_value;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CarryError {
    #[error("sequence length {got} differs from the period {n}")]
    Length { got: usize, n: usize },
    #[error("period must be in 1..=62")]
    Period,
    #[error("every input sequence is constant (all zeros or all ones)")]
    AllConstant,
    #[error("coefficient list is empty, mismatched with sequences, or contains zero")]
    Coefficients,
    #[error("no bounded carry sequence exists (internal inconsistency)")]
    NoSolution,
    #[error("carry sequence is not unique: starting index {0} gives another solution")]
    NotUnique(usize),
}

/// Period-`n` binary sequence; `bits[j]` is the coefficient of `2^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PeriodicBitSeq {
    bits: Vec<u8>,
}

impl PeriodicBitSeq {
    pub fn new(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "binary digits only");
        Self { bits }
    }

    /// Digits of the canonical representative of `value mod 2^n - 1` in
    /// `[0, 2^n - 2]`.
    pub fn from_residue(value: i128, n: u32) -> Self {
        let modulus = (1i128 << n) - 1;
        let r = value.rem_euclid(modulus);
        Self {
            bits: (0..n).map(|j| (r >> j & 1) as u8).collect(),
        }
    }

    pub fn period(&self) -> usize {
        self.bits.len()
    }

    /// Digit at any integer index (periodic extension).
    pub fn at(&self, j: i64) -> u8 {
        self.bits[j.rem_euclid(self.bits.len() as i64) as usize]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn value(&self) -> i128 {
        self.bits
            .iter()
            .enumerate()
            .map(|(j, &b)| (b as i128) << j)
            .sum()
    }

    pub fn weight(&self) -> u32 {
        self.bits.iter().map(|&b| b as u32).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.bits.iter().all(|&b| b == self.bits[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CarrySolution {
    pub digits: PeriodicBitSeq,
    pub carries: Vec<i64>,
    pub t_minus: i64,
    pub t_plus: i64,
}

/// Column sums `X_j = sum_i t_i a^(i)_j`.
fn column_sums(n: usize, coeffs: &[i64], seqs: &[PeriodicBitSeq]) -> Vec<i64> {
    (0..n)
        .map(|j| {
            coeffs
                .iter()
                .zip(seqs)
                .map(|(&t, s)| t * s.bits[j] as i64)
                .sum()
        })
        .collect()
}

fn validate(n: usize, coeffs: &[i64], seqs: &[PeriodicBitSeq]) -> Result<(), CarryError> {
    if n == 0 || n > 62 {
        return Err(CarryError::Period);
    }
    if coeffs.is_empty() || coeffs.len() != seqs.len() || coeffs.contains(&0) {
        return Err(CarryError::Coefficients);
    }
    if let Some(s) = seqs.iter().find(|s| s.period() != n) {
        return Err(CarryError::Length { got: s.period(), n });
    }
    if seqs.iter().all(PeriodicBitSeq::is_constant) {
        return Err(CarryError::AllConstant);
    }
    Ok(())
}

impl CarrySolution {
    /// Recurrence `2 c_j + s_j = X_j + c_(j-1)` at every index, cyclically.
    pub fn satisfies_recurrence(&self, coeffs: &[i64], seqs: &[PeriodicBitSeq]) -> bool {
        let n = self.carries.len();
        let x = column_sums(n, coeffs, seqs);
        (0..n).all(|j| {
            let prev = self.carries[(j + n - 1) % n];
            2 * self.carries[j] + self.digits.bits[j] as i64 == x[j] + prev
        })
    }

    pub fn within_bounds(&self) -> bool {
        self.carries
            .iter()
            .all(|&c| self.t_minus <= c && c < self.t_plus)
    }

    /// `sum s_j 2^j = sum_i t_i a^(i) (mod 2^n - 1)`.
    pub fn digits_sound(&self, coeffs: &[i64], seqs: &[PeriodicBitSeq]) -> bool {
        let n = self.carries.len() as u32;
        let modulus = (1i128 << n) - 1;
        let rhs: i128 = coeffs
            .iter()
            .zip(seqs)
            .map(|(&t, s)| t as i128 * s.value())
            .sum();
        (self.digits.value() - rhs).rem_euclid(modulus) == 0
    }

    /// `sum c_j = sum_i t_i sum_j a^(i)_j - sum s_j`.
    pub fn sum_identity(&self, coeffs: &[i64], seqs: &[PeriodicBitSeq]) -> bool {
        let lhs: i64 = self.carries.iter().sum();
        let rhs: i64 = coeffs
            .iter()
            .zip(seqs)
            .map(|(&t, s)| t * s.weight() as i64)
            .sum::<i64>()
            - self.digits.weight() as i64;
        lhs == rhs
    }

    pub fn is_valid(&self, coeffs: &[i64], seqs: &[PeriodicBitSeq]) -> bool {
        self.satisfies_recurrence(coeffs, seqs) && self.within_bounds()
    }

    /// Overwrite carry `k` with `value` and re-propagate the exact recurrence
    /// forward around the cycle. Returns a second solution if one results.
    pub fn perturb_and_propagate(
        &self,
        coeffs: &[i64],
        seqs: &[PeriodicBitSeq],
        k: usize,
        value: i64,
    ) -> Option<Vec<i64>> {
        let n = self.carries.len();
        let x = column_sums(n, coeffs, seqs);
        let mut c = self.carries.clone();
        c[k] = value;
        for step in 1..=n {
            let j = (k + step) % n;
            let prev = c[(j + n - 1) % n];
            let twice = x[j] + prev - self.digits.bits[j] as i64;
            if twice % 2 != 0 {
                return None;
            }
            let next = twice / 2;
            if j == k {
                return (next == value && (self.t_minus..self.t_plus).contains(&value))
                    .then_some(c);
            }
            c[j] = next;
        }
        None
    }
}

/// One sweep of the floored recurrence around the cycle starting at
/// `start`, entering with carry `c_in` into index `start`.
fn sweep(x: &[i64], s: &[u8], start: usize, c_in: i64) -> (Vec<i64>, i64) {
    let n = x.len();
    let mut c = vec![0i64; n];
    let mut prev = c_in;
    for step in 0..n {
        let j = (start + step) % n;
        prev = (x[j] + prev - s[j] as i64).div_euclid(2);
        c[j] = prev;
    }
    (c, prev)
}

/// Fixed-point iteration from the top of the carry range. The wrap-around
/// map `c -> floor((E + c) / 2^n)` is monotone and reaches the exact fixed
/// point from above in at most `t_+ - t_- + 1` sweeps.
fn iterate_from(x: &[i64], s: &[u8], start: usize, t_minus: i64, t_plus: i64) -> Option<Vec<i64>> {
    let mut c_in = t_plus - 1;
    for _ in 0..=(t_plus - t_minus + 1) {
        let (c, c_out) = sweep(x, s, start, c_in);
        if c_out == c_in {
            return Some(c);
        }
        c_in = c_out;
    }
    None
}

/// Digits of `sum t_i a^(i) mod 2^n - 1` (canonical representative) and the
/// unique bounded carry sequence.
pub fn solve_carries(
    n: usize,
    coeffs: &[i64],
    seqs: &[PeriodicBitSeq],
) -> Result<CarrySolution, CarryError> {
    validate(n, coeffs, seqs)?;
    let t_minus: i64 = coeffs.iter().filter(|&&t| t < 0).sum();
    let t_plus: i64 = coeffs.iter().filter(|&&t| t > 0).sum();
    let total: i128 = coeffs
        .iter()
        .zip(seqs)
        .map(|(&t, s)| t as i128 * s.value())
        .sum();
    let digits = PeriodicBitSeq::from_residue(total, n as u32);
    let x = column_sums(n, coeffs, seqs);
    let carries =
        iterate_from(&x, &digits.bits, 0, t_minus, t_plus).ok_or(CarryError::NoSolution)?;
    let solution = CarrySolution {
        digits,
        carries,
        t_minus,
        t_plus,
    };
    if !solution.is_valid(coeffs, seqs) {
        return Err(CarryError::NoSolution);
    }
    for start in 1..n {
        let again = iterate_from(&x, &solution.digits.bits, start, t_minus, t_plus);
        if again.as_deref() != Some(&solution.carries[..]) {
            return Err(CarryError::NotUnique(start));
        }
    }
    Ok(solution)
}

/// The paired systems for `s = u - a + b` and `t = u + a - b` modulo
/// `2^(2m) - 1`.
#[derive(Debug, Clone, Serialize)]
pub struct PairedSystems {
    pub m: u32,
    pub u: PeriodicBitSeq,
    pub a: PeriodicBitSeq,
    pub b: PeriodicBitSeq,
    pub s_side: CarrySolution,
    pub t_side: CarrySolution,
}

impl PairedSystems {
    pub fn build(m: u32, u_choice: u8, a: i128, b: i128) -> Result<Self, CarryError> {
        let n = 2 * m;
        let u = PeriodicBitSeq::from_residue(u_value(m, u_choice), n);
        let a = PeriodicBitSeq::from_residue(a, n);
        let b = PeriodicBitSeq::from_residue(b, n);
        let seqs = [u.clone(), a.clone(), b.clone()];
        let s_side = solve_carries(n as usize, &[1, -1, 1], &seqs)?;
        let t_side = solve_carries(n as usize, &[1, 1, -1], &seqs)?;
        Ok(Self {
            m,
            u,
            a,
            b,
            s_side,
            t_side,
        })
    }

    /// `sum_j (a_j + b_j - c_j - d_j)`.
    pub fn walk_sum(&self) -> i64 {
        let n = 2 * self.m as usize;
        (0..n)
            .map(|j| {
                self.a.bits[j] as i64 + self.b.bits[j] as i64
                    - self.s_side.carries[j]
                    - self.t_side.carries[j]
            })
            .sum()
    }

    /// `sum c + sum d + sum s + sum t`, which equals `n`.
    pub fn combined_sum(&self) -> i64 {
        self.s_side.carries.iter().sum::<i64>()
            + self.t_side.carries.iter().sum::<i64>()
            + self.s_side.digits.weight() as i64
            + self.t_side.digits.weight() as i64
    }
}

/// Carry-based evaluation of the weight inequality: `walk_sum >= 0`.
pub fn weight_identity_check(m: u32, u_choice: u8, a: i128, b: i128) -> Result<bool, CarryError> {
    Ok(PairedSystems::build(m, u_choice, a, b)?.walk_sum() >= 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expsums::{string_inequality_oracle, string_weight_excess};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn seq(v: i128, n: u32) -> PeriodicBitSeq {
        PeriodicBitSeq::from_residue(v, n)
    }

    #[test]
    fn identity_case() {
        let a = seq(0b1011, 6);
        let sol = solve_carries(6, &[1], std::slice::from_ref(&a)).unwrap();
        assert_eq!(sol.digits, a);
        assert!(sol.carries.iter().all(|&c| c == 0));
    }

    #[test]
    fn zero_residue_uses_zero_digits() {
        // 01 + 10 = 3 = 0 mod 3
        let sol = solve_carries(2, &[1, 1], &[seq(1, 2), seq(2, 2)]).unwrap();
        assert_eq!(sol.digits.bits(), &[0, 0]);
        assert_eq!(sol.carries, vec![1, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        let z = seq(0, 4);
        let ones = PeriodicBitSeq::new(vec![1; 4]);
        assert_eq!(
            solve_carries(4, &[1, 1], &[z.clone(), ones]),
            Err(CarryError::AllConstant)
        );
        assert_eq!(
            solve_carries(4, &[0], &[seq(3, 4)]),
            Err(CarryError::Coefficients)
        );
        assert_eq!(
            solve_carries(5, &[1], &[seq(3, 4)]),
            Err(CarryError::Length { got: 4, n: 5 })
        );
        assert_eq!(solve_carries(4, &[], &[]), Err(CarryError::Coefficients));
    }

    /// Enumerate every carry vector in range; exactly one satisfies the
    /// recurrence.
    #[test]
    fn brute_force_uniqueness() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..300 {
            let n = rng.gen_range(2..=5usize);
            let r = rng.gen_range(1..=3usize);
            let coeffs: Vec<i64> = (0..r)
                .map(|_| {
                    let t = rng.gen_range(1..=2);
                    if rng.gen() {
                        t
                    } else {
                        -t
                    }
                })
                .collect();
            let seqs: Vec<PeriodicBitSeq> = (0..r)
                .map(|_| seq(rng.gen_range(0..(1 << n)), n as u32))
                .collect();
            let Ok(sol) = solve_carries(n, &coeffs, &seqs) else {
                assert!(seqs.iter().all(PeriodicBitSeq::is_constant));
                continue;
            };
            let width = (sol.t_plus - sol.t_minus) as usize;
            let mut count = 0;
            for code in 0..width.pow(n as u32) {
                let carries: Vec<i64> = (0..n)
                    .map(|j| (code / width.pow(j as u32) % width) as i64 + sol.t_minus)
                    .collect();
                let candidate = CarrySolution {
                    carries,
                    ..sol.clone()
                };
                if candidate.satisfies_recurrence(&coeffs, &seqs) {
                    count += 1;
                    assert_eq!(candidate.carries, sol.carries);
                }
            }
            assert_eq!(count, 1);
        }
    }

    #[test]
    fn paired_systems_n10() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let m = 5;
        let n = 10;
        let modulus = (1i128 << n) - 1;
        for _ in 0..10_000 {
            let a = rng.gen_range(0..modulus);
            let b = rng.gen_range(0..modulus);
            let u_choice = rng.gen_range(0..2);
            let p = PairedSystems::build(m, u_choice, a, b).unwrap();
            let u = u_value(m, u_choice);
            assert_eq!(p.s_side.digits.value(), (u - a + b).rem_euclid(modulus));
            assert_eq!(p.t_side.digits.value(), (u + a - b).rem_euclid(modulus));
            assert!(p.s_side.carries.iter().all(|c| (-1..=1).contains(c)));
            assert!(p.t_side.carries.iter().all(|c| (-1..=1).contains(c)));
            assert_eq!((p.s_side.t_minus, p.s_side.t_plus), (-1, 2));
            assert_eq!(p.combined_sum(), n as i64);
        }
    }

    #[test]
    fn walk_sum_small_cases() {
        let p = PairedSystems::build(1, 0, 0, 0).unwrap();
        assert_eq!(p.walk_sum(), 0);
        assert!(p.s_side.carries.iter().all(|&c| c == 0));
        for a in 0..15 {
            let p = PairedSystems::build(2, 1, a, a).unwrap();
            assert_eq!(p.s_side.digits, p.u);
            assert_eq!(p.t_side.digits, p.u);
            assert_eq!(p.walk_sum(), 2 * p.a.weight() as i64);
        }
    }

    #[test]
    fn agrees_with_weight_oracle() {
        for m in 1..=4u32 {
            let modulus = (1i128 << (2 * m)) - 1;
            for u in 0..2 {
                for a in 0..modulus {
                    for b in 0..modulus {
                        let p = PairedSystems::build(m, u, a, b).unwrap();
                        assert_eq!(p.walk_sum(), string_weight_excess(m, u, a, b));
                        assert_eq!(
                            weight_identity_check(m, u, a, b).unwrap(),
                            string_inequality_oracle(m, u, a, b)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn perturbation_never_gives_second_solution() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..500 {
            let n = rng.gen_range(2..=12usize);
            let coeffs = [1, -1, 1];
            let seqs: Vec<_> = (0..3)
                .map(|_| seq(rng.gen_range(0..(1 << n)), n as u32))
                .collect();
            let Ok(sol) = solve_carries(n, &coeffs, &seqs) else {
                continue;
            };
            for k in 0..n {
                for v in sol.t_minus..sol.t_plus {
                    if v == sol.carries[k] {
                        continue;
                    }
                    assert!(sol.perturb_and_propagate(&coeffs, &seqs, k, v).is_none());
                }
                assert_eq!(
                    sol.perturb_and_propagate(&coeffs, &seqs, k, sol.carries[k]),
                    Some(sol.carries.clone())
                );
            }
        }
    }
}
