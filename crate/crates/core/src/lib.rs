//! Primitive rateless (PR) codes built from m-sequences.
//!
//! A PR code of dimension `k` and length `n` is the set of all length-`n`
//! windows of the m-sequence generated by a degree-`k` primitive connection
//! polynomial, plus the all-zero word. This crate provides:
//!
//! * [`gf2poly`]: binary polynomial arithmetic, primitivity testing and
//!   enumeration of primitive polynomials;
//! * [`code`]: LFSR sequence generation and PR code construction;
//! * [`weights`]: exact weight enumerators, Krawtchouk polynomials, the
//!   MacWilliams transform, ensemble averages and their closed-form
//!   approximations;
//! * [`bounds`]: the ensemble minimum-distance bound, Gilbert-Varshamov
//!   distance and the union bound on word error rate;
//! * [`sim`]: Monte Carlo ML decoding over the binary-input AWGN channel;
//! * [`cli`]: the `prcode` command-line front end.

pub mod bits;
pub mod bounds;
pub mod cli;
pub mod code;
pub mod error;
pub mod gf2poly;
pub mod numfmt;
pub mod sim;
pub mod weights;

pub use bits::BitRow;
pub use code::PrCode;
pub use error::{Error, Result};
pub use gf2poly::BitPoly;
pub use weights::{RealDistribution, WeightEnumerator};
