//! Truncated free Lie rings on the Lyndon basis.
//!
//! A [`FreeLieContext`] fixes the rank, the class cutoff `c` and the
//! coefficient domain. Basis elements are Lyndon words ordered by degree and
//! then lexicographically; brackets of total degree above `c` vanish.

mod context;
mod element;
pub mod lyndon;

pub use context::{BasicCommutator, Block, FreeLieContext, DEFAULT_BASIS_CAP};
pub use element::LieElement;
