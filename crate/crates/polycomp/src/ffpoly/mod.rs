//! Exact arithmetic for finite fields `F_{p^k}` and dense univariate polynomials.

mod factor;
mod field;
mod parse;
mod poly;

pub use factor::{
    count_irreducibles, is_irreducible, poly_factor, poly_factor_seeded, set_default_seed,
    Factorization, DEFAULT_FACTOR_SEED,
};
pub use field::{field_make, Fe, Field};
pub use parse::{format_element, parse_element, parse_field, parse_poly};
pub use poly::{poly_crt, resultant, Poly};
