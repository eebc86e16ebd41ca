//! Exact rationals, dense polynomials in `q` and cyclotomic polynomials.

mod cyclotomic;
mod poly;
pub mod zpoly;

pub use cyclotomic::{cyclotomic, CyclotomicTable};
pub use poly::{Poly, Rational};
pub use zpoly::{CyclotomicProduct, ZPoly};
