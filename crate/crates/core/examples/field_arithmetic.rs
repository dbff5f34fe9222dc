//! Arithmetic in GF(2^6) and GF(2^12), and the embedding of one into the other.
//!
//!     cargo run --example field_arithmetic

use bentforge::field::{all_embeddings, make_embedding};
use bentforge::registry::FieldRegistry;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let registry = FieldRegistry::builtin();
    let small = registry.ctx(6)?;
    let big = registry.ctx(12)?;
    println!(
        "GF(2^6)  modulus {:#x}, generator {:#x}",
        small.spec().modulus(),
        small.generator()
    );
    println!(
        "GF(2^12) modulus {:#x}, generator {:#x}",
        big.spec().modulus(),
        big.generator()
    );

    let z = 0b10;
    let z3 = small.pow(z, 3);
    let inv = small.inv(z3)?;
    println!(
        "z^3 = {z3:#x}, (z^3)^-1 = {inv:#x}, product = {:#x}",
        small.mul(z3, inv)
    );
    assert_eq!(small.mul(z3, inv), 1);
    println!(
        "Tr(z^3) = {}, by Frobenius sum = {}",
        small.trace(z3),
        small.trace_by_frobenius(z3)
    );

    let e = make_embedding(&small, &big)?;
    println!(
        "z maps to {:#x}; there are {} embeddings in total",
        e.image_of_generator(),
        all_embeddings(&small, &big)?.len()
    );
    for x in small.nonzero().take(5) {
        let y = small.mul(x, z3);
        assert_eq!(e.apply(y), big.mul(e.apply(x), e.apply(z3)));
    }
    let image = e.apply(z3);
    let relative = big.trace_rel(image, 6)?;
    println!(
        "image of z^3 = {image:#x}: in GF(2^6)? {}, its GF(2^6) trace {relative}",
        big.in_subfield(image, 6)
    );
    assert_eq!(relative, small.trace(z3));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
