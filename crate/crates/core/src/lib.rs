//! Binary cyclic codes of odd prime length, their extensions, and the
//! action of `PSL(2, n)` on the extended coordinates `{0, .., n-1, ∞}`.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is pure computation
//! over immutable contexts:
//!
//! * [`gf2m`]: `GF(2)[x]` and `GF(2^m)` arithmetic, with the `n`-th root of
//!   unity `β` fixed by a deterministic choice of primitive modulus.
//! * [`cyclotomic`]: 2-cyclotomic cosets, minimal polynomials, and the split of
//!   `GF(n)^*` into quadratic residues and nonresidues.
//! * [`codes`]: cyclic codes from defining sets, quadratic-residue codes and
//!   generic linear-code operations on packed words.
//! * [`psl2`]: the group action, invariance tests, invariant-subspace search
//!   by spinning, and classification of invariant extended cyclic codes.
//! * [`spectral`]: the finite-field Fourier transform, the permuted spectrum,
//!   the `u(x)` identity relating a word to its image under `y ↦ -1/y`, and
//!   explicit nonvanishing witnesses.
//! * [`designs`]: t-designs supported by fixed-weight codewords.
//!
//! Coordinate `∞` is always stored at index `n`. Words of length up to 64 are
//! packed in a `u64`, bit `i` holding coordinate `i`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod arith;
pub mod codes;
mod context;
pub mod cyclotomic;
pub mod designs;
mod error;
pub mod gf2m;
pub mod psl2;
pub mod spectral;

pub use context::PrimeContext;
pub use error::{Error, Result};

/// Largest prime length supported. `ord_n(2)` stays at most 60, so field
/// elements fit a machine word and extended words fit a `u64`.
pub const MAX_PRIME: u32 = 61;

/// Enumeration cap on code dimension for weight distributions.
pub const DEFAULT_MAX_DIMENSION: usize = 28;
