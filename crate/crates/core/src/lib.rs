//! Weisfeiler-Leman refinement, exact fractional packing and covering
//! parameters, and an experiment harness for their invariance properties.
//!
//! - [`graph`]: graphs, named families, products, edge-list I/O
//! - [`wl`]: k-dimensional Weisfeiler-Leman refinement over one or two graphs
//! - [`lp`]: exact rational simplex, LP duality, reductions between LPs,
//!   fractional isomorphism
//! - [`packing`]: set systems, subgraph enumeration, fractional and integral
//!   packing/covering numbers, and the combinatorial checks around them
//! - [`harness`]: experiment registry and reports

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod graph;
pub mod harness;
pub mod lp;
pub mod packing;
pub mod wl;

pub use error::{Error, Result};
