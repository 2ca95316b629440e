//! Exact max-flow and min-cut on simplicial flow networks.
//!
//! Everything here runs over exact rationals: chain-complex algebra, a
//! two-phase simplex solver, LP-based flows and cuts, a generalized
//! Ford-Fulkerson, and dual-graph shortcuts for complexes embedded one
//! dimension up. The crate is `no_std` and only needs `alloc`.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod complex;
pub mod dual;
mod error;
pub mod flow;
pub mod ford_fulkerson;
pub mod generators;
pub mod linalg;
pub mod lp;
pub mod rational;

pub use complex::{
    apply_boundary, apply_coboundary, boundary_matrix, inner_product, is_null_homologous, Chain,
    ChainComplexData, Cochain, SimplicialComplex,
};
pub use error::Error;
pub use linalg::{kernel_basis, rank, smith_normal_form, solve_linear, SparseMatrix};
pub use rational::{int, ratio, Rational};

pub type Result<T, E = Error> = core::result::Result<T, E>;
