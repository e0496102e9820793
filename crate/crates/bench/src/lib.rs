//! Shared inputs for the benchmarks.

use salem_core::{IntPolynomial, RatMatrix};

/// Lehmer's polynomial, the smallest known Salem number.
pub const LEHMER: &str = "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1";

/// The degree-4 example driven through the whole certificate chain.
pub const DESK: &str = "x^4-x^3-x^2-x+1";

pub fn poly(s: &str) -> IntPolynomial {
    s.parse().expect("valid polynomial")
}

/// `I + 2J`, where `J` is the all-ones matrix, in dimension `n`.
pub fn dense_intersection(n: usize) -> RatMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 3 } else { 2 }).collect())
        .collect();
    RatMatrix::from_int_rows(&rows).expect("square")
}
