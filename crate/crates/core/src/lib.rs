//! Construction and search toolkit for binary self-dual codes of length 72
//! that admit an automorphism of order 4.
//!
//! The pipeline: a 16-element coefficient ring built from the automorphism
//! ([`groupring`]) parametrizes every candidate code by four 9x9 binary
//! matrices ([`codegen`]); three fixed `(B1, A)` pairs seed the family
//! ([`fixtures`]); affine symmetries shrink the 36-parameter `B2` space
//! ([`symmetry`]); and a Gray-coded incremental sweep scans the 36-parameter
//! `B3` space for codewords of weight below 16 ([`search`]). [`oracle`] holds
//! the brute-force references the fast paths are validated against.

pub mod cli;
pub mod codegen;
pub mod fixtures;
pub mod gf2;
pub mod groupring;
pub mod oracle;
pub mod search;
pub mod symmetry;

/// Default seed for every randomized internal; determinism is contractual.
pub const DEFAULT_SEED: u64 = 0x7236_16;
