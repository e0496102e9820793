//! Exact arithmetic: integer and rational polynomials, factoring over ℤ,
//! real root isolation, number fields and Salem classification.

pub mod factor;
pub mod field;
pub mod interval;
mod parse;
pub mod poly;
pub mod roots;
pub mod salem;
pub mod serde_impls;
pub mod sqrt;

pub use factor::{factor, irreducible_factors, is_irreducible};
pub use field::{FieldElement, FieldVector, NumberField};
pub use interval::{Interval, RatInterval};
pub use poly::{IntPolynomial, RatPolynomial};
pub use roots::{isolate_roots, AlgebraicReal};
pub use salem::{classify_salem, trace_polynomial, SalemClassification, SalemVerdict};
