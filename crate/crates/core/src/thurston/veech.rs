//! Total reality of `ℚ(λ + 1/λ)`, and degree-4 Salem numbers from 2×2
//! products.

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::factor::irreducible_factors;
use crate::exact::poly::IntPolynomial;
use crate::exact::roots::{count_real_roots, isolate_roots, AlgebraicReal};
use crate::exact::salem::{classify_salem, trace_of, SalemClassification};
use crate::exact::serde_impls::in_t;
use crate::linalg::RatMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VeechCheck {
    pub totally_real: bool,
    /// Minimal polynomial of `λ + 1/λ`.
    #[serde(serialize_with = "in_t")]
    pub trace_poly: IntPolynomial,
}

/// Whether every conjugate of `λ + 1/λ` is real.
pub fn veech_check(stretch: &AlgebraicReal) -> Result<VeechCheck> {
    if stretch.cmp_int(1) != Ordering::Greater {
        return Err(Error::precondition("stretch factor must exceed 1"));
    }
    let t = trace_of(stretch)?;
    let trace_poly = t.minpoly().clone();
    Ok(VeechCheck {
        totally_real: count_real_roots(&trace_poly) == trace_poly.degree(),
        trace_poly,
    })
}

/// For a nonnegative symmetric 2×2 integer `S` with eigenvalues `ν > μ > 0`,
/// the product `(x² - (2-ν)x + 1)(x² - (2-μ)x + 1)`, which is integral.
/// Its roots for `ν` are negative, so the classification is of the factor
/// of the sign-flipped polynomial carrying the largest root.
pub fn salem_from_2x2(s: &RatMatrix) -> Result<SalemClassification> {
    let rows = s
        .to_i64_rows()
        .filter(|r| r.len() == 2 && r[0].len() == 2)
        .ok_or_else(|| Error::precondition("need a 2×2 integer matrix"))?;
    let [[a, b], [c, d]] = [[rows[0][0], rows[0][1]], [rows[1][0], rows[1][1]]];
    if b != c || b < 0 || a < 1 || d < 1 {
        return Err(Error::precondition("need a nonnegative symmetric matrix"));
    }
    let (tr, det) = (a + d, a * d - b * b);
    if det <= 0 {
        return Err(Error::precondition("need eigenvalues ν > μ > 0"));
    }
    let cp = IntPolynomial::from_i64(&[det, -tr, 1]);
    let eig = isolate_roots(&cp)?;
    if eig.len() != 2 {
        return Err(Error::precondition("need distinct eigenvalues ν > μ > 0"));
    }
    let (mu, nu) = (&eig[0], &eig[eig.len() - 1]);
    // f(x) = x⁴ + (τ-4)x³ + (6 - 2τ + δ)x² + (τ-4)x + 1
    let f = IntPolynomial::from_i64(&[1, tr - 4, 6 - 2 * tr + det, tr - 4, 1]);
    let not_salem = |why: &str| SalemClassification {
        polynomial: f.clone(),
        verdict: crate::exact::salem::SalemVerdict::NotSalem,
        salem_root: None,
        reason: Some(why.to_string()),
    };
    // |2 - ν| > 2 iff ν > 4, and |2 - μ| < 2 iff 0 < μ < 4
    if nu.cmp_int(4) != Ordering::Greater {
        return Ok(not_salem("large eigenvalue stays inside the unit-circle window"));
    }
    if mu.cmp_int(4) != Ordering::Less {
        return Ok(not_salem("small eigenvalue escapes unit-circle window"));
    }
    let flipped = IntPolynomial::new(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() })
            .collect::<Vec<BigInt>>(),
    );
    let lambda = isolate_roots(&flipped)?.pop().expect("root above 1");
    let factor = irreducible_factors(&flipped)
        .into_iter()
        .find(|g| g == lambda.minpoly())
        .ok_or_else(|| Error::invariant("largest root not on any irreducible factor"))?;
    classify_salem(&factor)
}
