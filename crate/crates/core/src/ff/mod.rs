//! Finite fields, polynomials over them, and dense linear algebra.

pub mod canonical;
pub mod ext;
pub mod factor;
pub mod matrix;
pub mod poly;
pub mod prime;
pub mod span;

pub use canonical::{char_poly, conjugate_over_fp, elementary_divisors, matrix_order, min_poly, rcf, Rcf};
pub use ext::{ff_arith, FFElement, FfOp, GaloisField};
pub use factor::{factor_poly, factor_poly_with_rng, find_irreducible, is_irreducible, roots};
pub use matrix::{kernel_basis, FpMatrix};
pub use poly::FpPoly;
pub use prime::PrimeField;
pub use span::{intersect, restrict_operator, restrict_with_span, Span};

/// Alias matching the usual name for polynomials over a finite field.
pub type FFPoly = FpPoly;
