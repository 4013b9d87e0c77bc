//! Exact computations with formal group laws, Weierstrass series, divisors
//! on formal curves, residues and finite Hopf algebras.

// structure constants are indexed tensors; index loops read closer to the math
#![allow(clippy::needless_range_loop)]

pub mod cancel;
pub mod cli;
pub mod divisor;
pub mod error;
pub mod fgl;
mod fmt_terms;
pub mod hopf;
pub mod parse;
pub mod residue;
pub mod ring;
pub mod series;
pub mod weierstrass;

pub use cancel::CancelToken;
pub use error::{Error, Result};
