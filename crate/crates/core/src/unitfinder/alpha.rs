//! A unit `α > 1` generating the field, with every other conjugate in
//! (0, 1).
//!
//! Search integer vectors `b` by increasing max-norm for which
//! `Σ b_i λ(u_i)` has a positive first coordinate, negative remaining
//! coordinates, and no two coordinates equal. Then `u = Π u_i^{b_i}` has
//! `|σ₁(u)| > 1 > |σ_j(u)|`, and `α = u²` makes every conjugate positive.

use std::cmp::Ordering;

use num_traits::{One, Signed};
use serde::Serialize;

use super::{log_embedding, TotallyRealField, UnitSystem};
use crate::error::{Error, Result};
use crate::exact::field::FieldElement;
use crate::exact::interval::Interval;
use crate::exact::poly::IntPolynomial;
use crate::exact::roots::{isolate_roots, AlgebraicReal};

pub const DEFAULT_COEFFICIENT_BOUND: i64 = 8;

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorUnit {
    pub alpha: FieldElement,
    /// The exponents `b_i`.
    pub exponents: Vec<i64>,
    pub minimal_polynomial: IntPolynomial,
    /// All conjugates in increasing order; the last is `α`.
    pub conjugate_values: Vec<AlgebraicReal>,
}

/// Every vector in `ℤ^len` with max-norm exactly `norm`, in
/// lexicographic order.
fn shell(len: usize, norm: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * norm + 1) as u64;
    let total = side.pow(len as u32);
    (0..total).filter_map(move |mut idx| {
        let mut v = vec![0i64; len];
        for slot in v.iter_mut().rev() {
            *slot = (idx % side) as i64 - norm;
            idx /= side;
        }
        v.iter().any(|x| x.abs() == norm).then_some(v)
    })
}

fn admissible(v: &[Interval]) -> bool {
    let sign_ok = v[0].lo > 0.0 && v[1..].iter().all(|x| x.hi < 0.0);
    let distinct = (0..v.len()).all(|i| (i + 1..v.len()).all(|j| !v[i].overlaps(&v[j])));
    sign_ok && distinct
}

/// Find `α` for the field `k` from the unit system `units`, scanning
/// exponent vectors up to `bound` in max-norm.
pub fn find_alpha(k: &TotallyRealField, units: &UnitSystem, bound: i64) -> Result<GeneratorUnit> {
    let n = k.degree();
    if n == 1 {
        return Err(Error::precondition("degree-1 field handled by pipeline special case"));
    }
    if units.units.len() + 1 != n {
        return Err(Error::precondition(format!("need {} units", n - 1)));
    }
    let logs: Vec<Vec<Interval>> = units.units.iter().map(|u| log_embedding(u, k)).collect::<Result<_>>()?;
    for norm in 1..=bound {
        for b in shell(n - 1, norm) {
            let v: Vec<Interval> = (0..n)
                .map(|j| {
                    b.iter()
                        .zip(&logs)
                        .fold(Interval::point(0.0), |acc, (bi, l)| acc.add(&l[j].scale(*bi as f64)))
                })
                .collect();
            let sum = v.iter().fold(Interval::point(0.0), |acc, x| acc.add(x));
            if !sum.contains(0.0) {
                return Err(Error::invariant(
                    "log embedding of a unit leaves the trace-zero hyperplane",
                ));
            }
            if !admissible(&v) {
                continue;
            }
            let u = b
                .iter()
                .zip(&units.units)
                .fold(FieldElement::one(k.field()), |acc, (bi, ui)| acc.mul(&ui.pow(*bi)));
            let alpha = u.mul(&u);
            return certify(k, alpha, b);
        }
    }
    Err(Error::exhausted(format!(
        "no exponent vector with max-norm up to {bound}; try a larger coefficient bound"
    )))
}

/// Check the claimed properties of `α` exactly.
fn certify(k: &TotallyRealField, alpha: FieldElement, exponents: Vec<i64>) -> Result<GeneratorUnit> {
    let n = k.degree();
    let mp = alpha.minimal_polynomial();
    if mp.degree() != n {
        return Err(Error::invariant(format!("α has degree {} instead of {n}", mp.degree())));
    }
    if !mp.is_monic() || !mp.coeff(0).abs().is_one() {
        return Err(Error::invariant("α is not a unit"));
    }
    let roots = isolate_roots(&mp)?;
    if roots.len() != n {
        return Err(Error::invariant("α has non-real conjugates"));
    }
    let a = alpha.to_algebraic_real()?;
    let top_is_alpha = roots.last().is_some_and(|r| r.cmp_exact(&a) == Ordering::Equal);
    if !top_is_alpha || a.cmp_int(1) != Ordering::Greater {
        return Err(Error::invariant("α is not its own largest conjugate above 1"));
    }
    if !roots[..n - 1]
        .iter()
        .all(|r| r.signum() == Ordering::Greater && r.cmp_int(1) == Ordering::Less)
    {
        return Err(Error::invariant("a conjugate of α lies outside (0, 1)"));
    }
    for m in 2..=4 {
        if alpha.pow(m).minimal_polynomial().degree() != n {
            return Err(Error::invariant(format!("α^{m} does not generate the field")));
        }
    }
    Ok(GeneratorUnit {
        alpha,
        exponents,
        minimal_polynomial: mp,
        conjugate_values: roots,
    })
}
