//! Concrete instances of three graph-to-geometry reductions.
//!
//! * [`cylinder`]: balls in `R^{2k}` that can be stabbed by one line iff the
//!   source graph has an independent set of size `k`.
//! * [`separation`]: two point sets in `R^{2k}` separable by two hyperplanes
//!   iff the source graph has an independent set of size `k`.
//! * [`maxfs`]: a hyperplane system in `R^k` whose maximum depth reaches
//!   `k + C(k,2)` iff the source graph has a `k`-clique.
//!
//! Each reduction ships a desk-scale solver that exploits the structure of its
//! instances, plus a cross-check against the brute-force oracle in [`graph`].

pub mod cylinder;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod maxfs;
pub mod separation;

pub use error::{Error, Result};
pub use graph::{Graph, Mode, VertexTuple};

/// Default tolerance for the floating point predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Maps any integer into `[m]` via `((x - 1) mod m) + 1`.
pub fn wrap_index(x: i64, m: usize) -> usize {
    let m = m as i64;
    ((x - 1).rem_euclid(m) + 1) as usize
}

/// `C(n, 2)`.
pub(crate) fn pairs(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}
