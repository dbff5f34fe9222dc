//! Exact computation toolkit for binomial bent functions over `GF(2^n)`.
//!
//! The crate builds Boolean functions of the form
//! `f(x) = Tr^n_1(a x^(2^m-1)) + Tr^2_1(b x^((2^n-1)/3))` and checks, by
//! exhaustive exact arithmetic, that bentness coincides with the
//! Kloosterman sum `K_m(a^(2^m+1))` being 4. The supporting machinery is
//! exposed as separate modules:
//!
//! - [`field`]: binary field arithmetic, traces and subfield embeddings
//! - [`boolfun`]: truth tables, Walsh spectra, bentness, duals, decimation
//! - [`expsums`]: Kloosterman and Dillon-type sums, binary weights
//! - [`padic`]: truncated 2-adic rings, Teichmuller lifts and Gauss sums
//! - [`carry`]: digits and carries of signed sums modulo `2^n - 1`
//! - [`certigraph`]: the 72-vertex carry digraph and its potential certificate
//! - [`mesnager`]: the binomial family and its characterization pipeline
//! - [`registry`]: moduli registry and run manifests
//! - [`suites`]: the end-to-end check suites
//! - [`cli`]: command-line front door

pub mod boolfun;
pub mod carry;
pub mod certigraph;
pub mod cli;
pub mod expsums;
pub mod field;
pub mod mesnager;
pub mod padic;
pub mod par;
pub mod registry;
pub mod suites;

pub use boolfun::{BooleanFunction, TracePolynomial, WalshSpectrum};
pub use field::{Embedding, FieldCtx, FieldSpec};
