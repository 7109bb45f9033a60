//! Numerical evaluation of Mellin-Barnes line integrals of gamma products,
//! pull-backs of the Dirac delta through smooth phases, and a seeded harness
//! that checks classical integral identities against independent oracles.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gamma;
pub mod identities;
pub mod mb;
pub mod oracles;
pub mod pullback;
pub mod quad;

pub use error::{Error, Result};
pub use gamma::ComplexValue;
