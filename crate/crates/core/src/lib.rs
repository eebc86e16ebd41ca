//! Exact arithmetic for checking q-Dwork-type supercongruences.
//!
//! The crate is `no_std` and only needs an allocator. Layers, bottom up:
//!
//! - [`polyring`]: rationals, dense polynomials in `q`, cyclotomic polynomials.
//! - [`ratfun`]: canonical rational functions and congruences modulo a polynomial.
//! - [`qseries`]: q-shifted factorials and the truncated sums being compared.
//! - [`padic`]: valuations, residues and the classical `q = 1` congruences.
//! - [`verifier`]: theorem drivers producing [`verifier::VerificationReport`]s.
#![no_std]

extern crate alloc;

mod error;
pub mod numtheory;
pub mod padic;
pub mod polyring;
pub mod qseries;
pub mod ratfun;
pub mod verifier;

pub use error::{Error, Result};
pub use polyring::{cyclotomic, Poly, Rational};
pub use ratfun::{Congruence, RatFun};
