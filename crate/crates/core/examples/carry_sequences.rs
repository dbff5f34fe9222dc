//! Digits and carries of a signed sum of periodic bit strings modulo 2^n - 1,
//! and the paired systems behind the weight inequality.
//!
//!     cargo run --example carry_sequences

use bentforge::carry::{solve_carries, PairedSystems, PeriodicBitSeq};
use bentforge::expsums::string_weight_excess;

fn show(bits: &[u8]) -> String {
    bits.iter().map(|b| char::from(b'0' + b)).collect()
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let n = 8;
    let seqs = [
        PeriodicBitSeq::from_residue(0b1011_0110, n),
        PeriodicBitSeq::from_residue(0b0110_0011, n),
        PeriodicBitSeq::from_residue(0b1100_1001, n),
    ];
    let coeffs = [2, -1, 3];
    let sol = solve_carries(n as usize, &coeffs, &seqs)?;
    println!(
        "2a - b + 3c mod 255 = {} (digits {}, least significant first)",
        sol.digits.value(),
        show(sol.digits.bits())
    );
    println!(
        "carries {:?} in [{}, {})",
        sol.carries, sol.t_minus, sol.t_plus
    );
    assert!(
        sol.is_valid(&coeffs, &seqs)
            && sol.digits_sound(&coeffs, &seqs)
            && sol.sum_identity(&coeffs, &seqs)
    );

    let (m, a, b) = (3, 11, 40);
    for u in 0..2 {
        let p = PairedSystems::build(m, u, a, b)?;
        println!(
            "m = {m}, u = {}, a = {a}, b = {b}: s = {}, t = {}, walk sum {} (excess {}), combined {}",
            p.u.value(),
            p.s_side.digits.value(),
            p.t_side.digits.value(),
            p.walk_sum(),
            string_weight_excess(m, u, a, b),
            p.combined_sum()
        );
        assert_eq!(p.walk_sum(), string_weight_excess(m, u, a, b));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
