//! The Salem-number certificate: every intermediate object of the chain
//! `p → f → Q → U Q Uᵀ → 𝓜 → 𝒬_k`, and a replay check over all of them.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{
    block_fast, build_block, chart_holds, chart_root, integrality_exponent, positivity_exponent, q_sequence,
    BlockSequence, IntegralityCertificate, PositivityBound,
};
use crate::error::{Error, Result, StageExt};
use crate::exact::factor::SPLIT_SEED;
use crate::exact::field::{FieldElement, FieldVector};
use crate::exact::poly::IntPolynomial;
use crate::exact::roots::{isolate_roots, AlgebraicReal};
use crate::exact::salem::{classify_salem, reciprocal_lift, trace_polynomial, SalemVerdict};
use crate::exact::serde_impls::in_t;
use crate::linalg::RatMatrix;
use crate::realize::{
    eigenvector_exact, positivize, realize_symmetric, PositivizeConfig, RationalRotation, SearchPhase,
};

#[derive(Clone, Copy, Debug)]
pub struct CertificateConfig {
    pub entry_floor: i64,
    pub search_bound: i64,
    pub e_max: usize,
    pub max_power: u64,
    pub positivize: PositivizeConfig,
}

impl Default for CertificateConfig {
    fn default() -> Self {
        CertificateConfig {
            entry_floor: 1,
            search_bound: 6,
            e_max: 2,
            max_power: 10_000,
            positivize: PositivizeConfig::default(),
        }
    }
}

/// Parameters that reproduce the searches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Replay {
    pub search_bound: i64,
    pub e_max: usize,
    pub phase: SearchPhase,
    pub denominator: i64,
    pub max_power: u64,
    pub rng_seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewPowerCertificate {
    pub polynomial: IntPolynomial,
    pub verdict: SalemVerdict,
    #[serde(serialize_with = "in_t")]
    pub trace_polynomial: IntPolynomial,
    /// Realization of the trace polynomial, before rotation.
    pub base: RatMatrix,
    pub excess: usize,
    pub rotation: RatMatrix,
    /// `U base Uᵀ`, the matrix the powers are taken of.
    pub q: RatMatrix,
    /// `λ + 1/λ`.
    pub theta: AlgebraicReal,
    pub block: RatMatrix,
    pub integrality: IntegralityCertificate,
    pub positivity: PositivityBound,
    pub entry_floor: i64,
    pub k: u64,
    pub qk: RatMatrix,
    /// `λ^k + λ^{-k}`, the dominant eigenvalue of `qk`.
    pub eigenvalue: AlgebraicReal,
    /// Positive eigenvector shared by `q` and `qk`, over ℚ(θ).
    pub eigenvector: FieldVector,
    pub char_poly_of_qk: IntPolynomial,
    /// Root `a` of the `(x - a)^e` factor of `char_poly_of_qk`, when e > 0.
    pub chart_root: Option<i64>,
    pub replay: Replay,
}

/// `V_k(t)` with `V_0 = 2`, `V_1 = t`, `V_{j+1} = t V_j - V_{j-1}`.
fn chebyshev_v(t: &FieldElement, k: u64) -> FieldElement {
    let mut prev = FieldElement::from_int(t.field(), 2);
    let mut cur = t.clone();
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = t.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Run the whole chain for a Salem polynomial (or a quadratic reciprocal
/// unit) and collect the certificate.
pub fn salem_certificate(p: &IntPolynomial, config: &CertificateConfig) -> Result<SkewPowerCertificate> {
    let class = classify_salem(p).stage("classify")?;
    if !class.is_salem_or_quadratic() {
        return Err(Error::precondition(format!(
            "{p} is not a Salem polynomial: {}",
            class.reason.unwrap_or_default()
        )))
        .stage("classify");
    }
    let f = trace_polynomial(p).stage("trace")?;
    let real = realize_symmetric(&f, config.e_max, config.search_bound).stage("realize")?;
    let theta = isolate_roots(&f)
        .stage("realize")?
        .pop()
        .ok_or_else(|| Error::invariant("trace polynomial without real roots"))?;
    let (u, q) = positivize(&real.matrix, &theta, config.positivize).stage("positivize")?;
    let q = q.matrix().clone();
    let block = build_block(&q).stage("block")?;
    let integ = integrality_exponent(block.matrix(), config.max_power).stage("integrality")?;
    let pos =
        positivity_exponent(&q, &theta, integ.exponent, config.entry_floor, config.max_power).stage("positivity")?;
    let k = pos.exponent;
    let (_, qk) = q_sequence(&q, k);
    let eigenvector = eigenvector_exact(&q, &theta).stage("eigen")?;
    let field = eigenvector.coords()[0].field().clone();
    let vk = chebyshev_v(&FieldElement::generator(&field), k);
    let eigenvalue = vk.to_algebraic_real().stage("eigen")?;
    let char_poly_of_qk = qk
        .int_char_poly()
        .ok_or_else(|| Error::invariant("char poly of 𝒬_k is not integral"))
        .stage("eigen")?;
    let excess = real.excess;
    let cert = SkewPowerCertificate {
        polynomial: p.clone(),
        verdict: class.verdict,
        trace_polynomial: f,
        base: real.matrix.matrix().clone(),
        excess,
        rotation: u.matrix().clone(),
        q,
        theta,
        block: block.matrix().clone(),
        integrality: integ,
        positivity: pos,
        entry_floor: config.entry_floor,
        k,
        qk,
        eigenvalue,
        eigenvector,
        char_poly_of_qk,
        chart_root: (excess > 0).then(|| chart_root(k)),
        replay: Replay {
            search_bound: config.search_bound,
            e_max: config.e_max,
            phase: real.phase,
            denominator: real.denominator,
            max_power: config.max_power,
            rng_seed: SPLIT_SEED,
        },
    };
    let report = cert.verify();
    match report.first_failure() {
        None => Ok(cert),
        Some(name) => Err(Error::invariant(format!("certificate check {name} failed"))).stage("verify"),
    }
}

/// Outcome of re-checking a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegrityReport {
    pub checks: Vec<(String, bool)>,
}

impl IntegrityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.checks.iter().find(|c| !c.1).map(|c| c.0.as_str())
    }
}

impl SkewPowerCertificate {
    /// Re-check every invariant without rerunning any search.
    pub fn verify(&self) -> IntegrityReport {
        let mut checks = Vec::new();
        let mut check = |name: &str, ok: bool| checks.push((name.to_string(), ok));

        let class_ok = classify_salem(&self.polynomial)
            .map(|c| c.verdict == self.verdict && c.is_salem_or_quadratic())
            .unwrap_or(false);
        check("polynomial_classified", class_ok);
        check(
            "trace_polynomial",
            trace_polynomial(&self.polynomial).ok().as_ref() == Some(&self.trace_polynomial)
                && reciprocal_lift(&self.trace_polynomial) == self.polynomial,
        );
        let expected_cp = &self.trace_polynomial * &IntPolynomial::linear_root(1).pow(self.excess as u32);
        check(
            "base_realizes",
            self.base.is_symmetric()
                && self.base.int_char_poly().as_ref() == Some(&expected_cp)
                && self.excess <= self.replay.e_max,
        );
        let rotation_ok = RationalRotation::new(self.rotation.clone()).is_ok();
        check("rotation_orthogonal", rotation_ok);
        check(
            "rotated_matrix",
            rotation_ok && self.q == &(&self.rotation * &self.base) * &self.rotation.transpose(),
        );
        let theta_ok = isolate_roots(&self.trace_polynomial)
            .ok()
            .and_then(|mut r| r.pop())
            .is_some_and(|top| top == self.theta);
        check("theta_is_top_trace_root", theta_ok);
        let block_ok = build_block(&self.q).map(|b| b.matrix() == &self.block).unwrap_or(false);
        check("block_matrix", block_ok);

        let s = self.integrality.exponent;
        let int_ok = s >= 1
            && s <= self.integrality.order_bound
            && self.block.pow(s as i64).is_integral()
            && (1..s).all(|j| !self.block.pow(j as i64).is_integral());
        check("integrality_exponent", int_ok);

        let k = self.k;
        let step_ok =
            s >= 1 && k.is_multiple_of(s) && k <= self.positivity.guaranteed_by && k == self.positivity.exponent;
        check("k_multiple_of_step", step_ok);
        let recursion_ok = k >= 1 && q_sequence(&self.q, k).1 == self.qk && block_fast(&self.q, k) == self.qk;
        check("qk_recursion", recursion_ok);
        check(
            "qk_entries_at_floor",
            self.entry_floor >= 1 && self.qk.entries_at_least(self.entry_floor),
        );
        let minimal = s >= 1
            && BlockSequence::new(&self.q)
                .take(k.saturating_sub(1) as usize)
                .all(|(j, b)| j % s != 0 || !b.entries_at_least(self.entry_floor));
        check("k_minimal", minimal);
        if recursion_ok {
            let skew = {
                let mk = self.block.pow(k as i64);
                let mi = self.block.pow(-(k as i64));
                let sum = &mk + &mi;
                let m = self.q.rows();
                sum.sub_block(0, m, 0, m) == self.qk
                    && sum.sub_block(m, 2 * m, m, 2 * m) == self.qk
                    && sum.sub_block(0, m, m, 2 * m).is_zero()
                    && sum.sub_block(m, 2 * m, 0, m).is_zero()
            };
            check("skew_property", skew);
        }

        check(
            "qk_char_poly",
            self.qk.int_char_poly().as_ref() == Some(&self.char_poly_of_qk),
        );
        let chart_ok = match self.chart_root {
            None => self.excess == 0,
            Some(a) => a == chart_root(k) && chart_holds(&self.char_poly_of_qk, k, self.excess),
        };
        check("chart", chart_ok);

        let eig_ok = isolate_roots(&self.char_poly_of_qk)
            .ok()
            .and_then(|mut r| r.pop())
            .is_some_and(|top| top == self.eigenvalue);
        check("eigenvalue_is_top_root", eig_ok);
        let v = &self.eigenvector;
        let field = v.coords()[0].field().clone();
        let same_field = field.generator() == &self.theta;
        let vk = chebyshev_v(&FieldElement::generator(&field), k);
        let vec_ok = same_field
            && v.len() == self.q.rows()
            && v.is_strictly_positive()
            && v.apply(&self.q) == v.scale(&FieldElement::generator(&field))
            && v.apply(&self.qk) == v.scale(&vk)
            && vk.to_algebraic_real().map(|e| e == self.eigenvalue).unwrap_or(false);
        check("eigenvector", vec_ok);
        let dominant = isolate_roots(&self.char_poly_of_qk).is_ok_and(|roots| {
            let neg = self.eigenvalue.neg();
            roots.iter().all(|r| {
                *r == self.eigenvalue
                    || (r.cmp_exact(&self.eigenvalue) == Ordering::Less && r.cmp_exact(&neg) == Ordering::Greater)
            })
        });
        check("eigenvalue_dominant", dominant);
        IntegrityReport { checks }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::parse(format!("certificate JSON: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_unit() {
        let c = salem_certificate(&"x^2-3x+1".parse().unwrap(), &CertificateConfig::default()).unwrap();
        assert_eq!(c.k, 1);
        assert_eq!(c.qk, RatMatrix::from_i64(&[&[3]]));
        assert_eq!(c.verdict, SalemVerdict::QuadraticReciprocalUnit);
    }

    #[test]
    fn tampering_is_detected() {
        let c = salem_certificate(&"x^4-x^3-x^2-x+1".parse().unwrap(), &CertificateConfig::default()).unwrap();
        assert!(c.verify().passed());
        let mut bad = c.clone();
        bad.k = 4;
        assert!(!bad.verify().passed());
        let mut bad = c.clone();
        bad.qk = RatMatrix::from_i64(&[&[5, 1], &[1, 3]]);
        assert!(!bad.verify().passed());
        let back = SkewPowerCertificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn rejects_non_salem() {
        let e = salem_certificate(&"x^3-2".parse().unwrap(), &CertificateConfig::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("classify"));
    }
}
