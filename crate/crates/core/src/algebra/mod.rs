//! Finite fields, (Laurent) polynomials over them and Hermite normal forms.

pub mod fp;
pub mod hnf;
pub mod irreducible;
pub mod laurent;
pub mod matrix;
pub mod parse;
pub mod poly;

pub use fp::{check_modulus, Fp};
pub use irreducible::{enumerate_irreducibles, first_irreducible_of_degree, is_irreducible};
pub use laurent::LaurentPoly;
pub use matrix::{hermite_normal_form, PolyMatrix};
pub use parse::{format_vector, parse_laurent, parse_poly, parse_vector};
pub use poly::{phi, poly_gcd, Poly};
