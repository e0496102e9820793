//! Rational bounds on square roots of rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Smallest power of two `n` with `1/n <= tol`.
fn grid(tol: &BigRational) -> BigInt {
    let mut n = BigInt::one();
    while BigRational::new(BigInt::one(), n.clone()) > *tol {
        n <<= 1;
    }
    n
}

/// A rational `s` with `s <= sqrt(x)` and `sqrt(x) - s <= tol`.
/// Negative `x` is treated as 0.
pub fn sqrt_floor(x: &BigRational, tol: &BigRational) -> BigRational {
    if !x.is_positive() {
        return BigRational::zero();
    }
    let n = grid(tol);
    let scaled = (x * BigRational::from_integer(&n * &n)).floor().to_integer();
    BigRational::new(scaled.sqrt(), n)
}

/// A rational `s` with `s >= sqrt(x)` and `s - sqrt(x) <= tol`.
pub fn sqrt_ceil(x: &BigRational, tol: &BigRational) -> BigRational {
    if !x.is_positive() {
        return BigRational::zero();
    }
    let n = grid(tol);
    let scaled = (x * BigRational::from_integer(&n * &n)).ceil().to_integer();
    let mut r = scaled.sqrt();
    if &r * &r < scaled {
        r += 1;
    }
    BigRational::new(r, n)
}
