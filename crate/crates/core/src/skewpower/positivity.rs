//! Smallest power `k` at which `𝒬_k` has all entries at least a floor.
//!
//! Write `Q = Σ θ_i P_i` spectrally. Then `𝒬_k = Σ V_k(θ_i) P_i`, whose
//! `(a, b)` entry is at least `V_k(θ) v_a v_b / |v|² - max_{i≠1} |V_k(θ_i)|`
//! for the dominant θ with eigenvector `v`. With θ > 2 strictly dominant
//! and `v` positive the first term grows like `ρ^k`, `ρ + 1/ρ = θ`, and
//! beats the second, which gives an explicit exponent by which the floor
//! must be reached.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{block_fast, BlockSequence};
use crate::error::{Error, Result};
use crate::exact::roots::{isolate_roots, AlgebraicReal};
use crate::linalg::RatMatrix;
use crate::realize::{eigenvalue_multiplicity, eigenvector_exact};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityBound {
    /// Smallest admissible multiple of the step.
    pub exponent: u64,
    /// Multiple of the step by which the growth bound guarantees success.
    pub guaranteed_by: u64,
}

/// `theta` is a simple eigenvalue of the symmetric `q`, exceeds 2, and is
/// strictly larger than the absolute value of every other eigenvalue.
/// Returns the largest absolute value among the other eigenvalues.
pub fn check_dominant(q: &RatMatrix, theta: &AlgebraicReal) -> Result<f64> {
    dominance(q, theta, 2)
}

fn dominance(q: &RatMatrix, theta: &AlgebraicReal, above: i64) -> Result<f64> {
    let fail = |why: &str| Error::precondition(format!("no unique dominating eigenvalue: {why}"));
    if !q.is_symmetric() {
        return Err(fail("matrix is not symmetric"));
    }
    if eigenvalue_multiplicity(q, theta) != 1 {
        return Err(fail("eigenvalue is not simple"));
    }
    if theta.cmp_int(above) != Ordering::Greater {
        return Err(fail(&format!("eigenvalue does not exceed {above}")));
    }
    let cp = q.char_poly().to_primitive_int();
    let neg = theta.neg();
    let mut second: f64 = 0.0;
    for r in isolate_roots(&cp)? {
        if r.cmp_exact(theta) == Ordering::Equal {
            continue;
        }
        if r.cmp_exact(theta) != Ordering::Less || r.cmp_exact(&neg) != Ordering::Greater {
            return Err(fail(&format!("eigenvalue {} is not dominated", r.to_decimal(6))));
        }
        second = second.max(r.to_f64().abs());
    }
    Ok(second)
}

/// `v_min² / |v|²` for the positive eigenvector, shrunk slightly.
fn spectral_weight(q: &RatMatrix, theta: &AlgebraicReal) -> Result<f64> {
    let v = eigenvector_exact(q, theta)?;
    if !v.is_strictly_positive() {
        return Err(Error::precondition("dominant eigenvector is not positive"));
    }
    let vf = v.to_f64();
    let norm2: f64 = vf.iter().map(|x| x * x).sum();
    let vmin = vf.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(vmin * vmin / norm2 * (1.0 - 1e-6))
}

/// First multiple of `step` up to `max_power` at which
/// `e^{k ln_growth} c >= floor + sigma(k)`.
fn guaranteed_exponent(
    step: u64,
    max_power: u64,
    ln_growth: f64,
    c: f64,
    entry_floor: i64,
    sigma: impl Fn(f64) -> f64,
) -> Result<u64> {
    let mut k = step;
    while k <= max_power {
        let kf = k as f64;
        if kf * ln_growth + c.ln() >= (entry_floor as f64 + sigma(kf)).ln() {
            return Ok(k);
        }
        k += step;
    }
    Err(Error::exhausted(format!(
        "growth bound does not reach entry floor {entry_floor} below max power {max_power}"
    )))
}

/// Smallest multiple `k` of `step` such that every entry of `q^k` is an
/// integer at least `entry_floor`, for `theta > 1` dominating the spectrum
/// of the symmetric `q`. The other eigenvalues contribute at most
/// `second^k` to any entry.
pub fn power_positivity_exponent(
    q: &RatMatrix,
    theta: &AlgebraicReal,
    step: u64,
    entry_floor: i64,
    max_power: u64,
) -> Result<PositivityBound> {
    if step == 0 || entry_floor < 1 {
        return Err(Error::precondition("step and entry floor must be positive"));
    }
    let second = dominance(q, theta, 1)?;
    let c = spectral_weight(q, theta)?;
    let ln_theta = theta.to_f64().ln() * (1.0 - 1e-9);
    let ln_second = second.ln() * (1.0 + 1e-9) + 1e-12;
    let guaranteed = guaranteed_exponent(step, max_power, ln_theta, c, entry_floor, |k| (k * ln_second).exp())?;
    let qs = q.pow(step as i64);
    let mut p = qs.clone();
    let mut k = step;
    while k <= guaranteed {
        if p.entries_at_least(entry_floor) {
            return Ok(PositivityBound {
                exponent: k,
                guaranteed_by: guaranteed,
            });
        }
        p = &p * &qs;
        k += step;
    }
    Err(Error::invariant(format!(
        "growth bound promised success by k = {guaranteed} but no power qualified"
    )))
}

/// Larger root of `x^2 - t x + 1`, for `t >= 2`.
fn rho(t: f64) -> f64 {
    (t + (t * t - 4.0).max(0.0).sqrt()) / 2.0
}

/// Smallest multiple `k` of `step` such that every entry of `𝒬_k` is an
/// integer at least `entry_floor`.
///
/// `step` should be the integrality exponent of the block matrix, so that
/// every candidate `𝒬_k` is integral. The scan is exhaustive up to the
/// exponent guaranteed by the growth bound; that exponent must not exceed
/// `max_power`.
pub fn positivity_exponent(
    q: &RatMatrix,
    theta: &AlgebraicReal,
    step: u64,
    entry_floor: i64,
    max_power: u64,
) -> Result<PositivityBound> {
    if step == 0 || entry_floor < 1 {
        return Err(Error::precondition("step and entry floor must be positive"));
    }
    let second = check_dominant(q, theta)?;
    let c = spectral_weight(q, theta)?;
    let ln_rho = rho(theta.to_f64()).ln() * (1.0 - 1e-9);
    let ln_rho2 = if second > 2.0 {
        rho(second).ln() * (1.0 + 1e-9)
    } else {
        0.0
    };
    // σ_k <= ρ2^k + 1 (or 2 when all others lie in [-2, 2])
    let sigma = |k: f64| if second > 2.0 { (k * ln_rho2).exp() + 1.0 } else { 2.0 };
    let guaranteed = guaranteed_exponent(step, max_power, ln_rho, c, entry_floor, sigma)?;

    for (k, qk) in BlockSequence::new(q).take(guaranteed as usize) {
        if k % step != 0 || !qk.entries_at_least(entry_floor) {
            continue;
        }
        if block_fast(q, k) != qk {
            return Err(Error::invariant(format!(
                "doubling ladder disagrees with recursion at k = {k}"
            )));
        }
        return Ok(PositivityBound {
            exponent: k,
            guaranteed_by: guaranteed,
        });
    }
    Err(Error::invariant(format!(
        "growth bound promised success by k = {guaranteed} but no power qualified"
    )))
}
