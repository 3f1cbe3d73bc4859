//! Generic rigidity of coordinated bar-joint frameworks.
//!
//! A coordinated framework is a bar-joint framework whose edges are split
//! into colour classes; the edges of one class may change length, but only
//! all together by the same amount. This crate decides generic rigidity of
//! such frameworks and produces certificates that can be checked
//! independently:
//!
//! - [`pebble`]: the `(k, l)` pebble game (ranks in the `(2,3)` count
//!   matroid, fundamental circuits, redundant edges).
//! - [`framework`]: rigidity matrices `R(p)` and `R⁺(p) = (R(p), 𝟙(c))`,
//!   infinitesimal motions, equilibrium stresses and loads, over an exact
//!   prime-field backend and an `f64` backend.
//! - [`generic`]: the Monte-Carlo generic-rank oracle and the
//!   dimension-agnostic rainbow-tuple decider.
//! - [`planar`]: deterministic deciders for the plane (one and two colour
//!   classes, and the matroid-union rank for any number of classes).
//! - [`henneberg`]: inductive generator of isostatic one-class graphs.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod field;
pub mod fixtures;
pub mod framework;
pub mod generic;
pub mod graph;
pub mod henneberg;
pub mod matrix;
pub mod pebble;
pub mod planar;
pub mod sample;
pub mod svd;
pub mod verdict;

pub use field::Fp;
pub use framework::{Configuration, CoordinatedMatrix, Placement};
pub use generic::OracleParams;
pub use graph::{ColouredGraph, Edge, GraphError};
pub use matrix::Matrix;
pub use pebble::SparsityParams;
pub use verdict::{Decision, Method, RigidityVerdict};

/// `binom(n, 2)`.
pub(crate) const fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Rank of the rigidity matrix of a generically rigid framework on `n`
/// vertices in dimension `d`.
///
/// This is `dn - binom(d+1, 2)` once `n >= d`; smaller vertex sets span a
/// simplex and reach `binom(n, 2)`.
pub const fn rigid_rank(n: usize, d: usize) -> usize {
    if n <= d {
        pairs(n)
    } else {
        d * n - pairs(d + 1)
    }
}
