//! Exact computations around the space of diagonal harmonic alternants.
//!
//! The crate is organised bottom-up:
//!
//! * [`partitions`] and [`qtpoly`] carry integer partitions, their hook
//!   statistics and bivariate Laurent polynomials in `q`, `t`.
//! * [`dyck`] enumerates Dyck paths and builds the combinatorial q,t-Catalan.
//! * [`mvpoly`] and [`operators`] implement sparse polynomials in
//!   `x_1..x_n, y_1..y_n` and the polarized differential operators acting on them.
//! * [`exactla`] provides exact rank, kernel and independent-subset selection.
//! * [`symfunc`] computes symmetric group characters and Schur to power-sum
//!   expansions.
//! * [`harmonics`] ties everything together: spans by bi-degree, sl(2) string
//!   starters, the hook-product formula and the co-partition basis.

pub mod dyck;
pub mod error;
pub mod exactla;
pub mod harmonics;
mod jsonint;
pub mod mvpoly;
pub mod operators;
pub mod partitions;
pub mod qtpoly;
pub mod sampling;
pub mod symfunc;

pub use error::{Error, Result};

/// `n choose 2`, the maximal total degree of a diagonal harmonic in `n` variable pairs.
pub fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
