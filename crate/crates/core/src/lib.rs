//! Representation zeta functions `Σ r_n n^{-s}` of simple Lie groups,
//! compact p-adic groups and alternating groups.
//!
//! The crate computes exact degree censuses (Weyl dimension formula, the
//! SL₂ local factor, hook lengths), evaluates partial zeta sums and Euler
//! products, estimates abscissae of convergence, and checks the lower-bound
//! formulas for compact open subgroups against exact rational arithmetic.
//! A brute-force conjugacy-class counter for SL₂ over finite quotient rings
//! serves as an independent oracle for the local-factor census.

pub mod bounds;
pub mod census;
pub mod error;
pub mod euler;
pub mod finquot;
pub mod localfactor;
pub mod primes;
pub mod rootsys;
pub mod symzeta;
pub mod witten;

pub use census::{zeta_partial, DegreeCensus};
pub use error::{Error, Result};
pub use rootsys::{build_root_system, weyl_dim, DominantWeight, RootSystem, Series};
