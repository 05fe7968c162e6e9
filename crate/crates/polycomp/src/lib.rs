//! Exact computation of similarity types of polynomials in companion
//! matrices over finite fields, and decision of whether a matrix is similar
//! to such a polynomial, with constructive witnesses or exhaustion
//! certificates.

pub mod error;
pub mod ffpoly;
pub mod matrix;
pub mod polytype;
pub mod simtype;

pub use error::{Error, Result};
