//! Exact arithmetic on integers and on polynomials over prime fields.

pub mod int;
pub mod poly;

pub use poly::Poly;
