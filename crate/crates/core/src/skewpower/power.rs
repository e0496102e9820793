//! Plain powers of a rational symmetric matrix whose dominant eigenvalue is
//! a unit with every other conjugate in (0, 1). The analogue of the
//! skew-power certificate for the totally real field pipeline.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{
    integrality_exponent, power_positivity_exponent, CertificateConfig, IntegralityCertificate, PositivityBound, Replay,
};
use crate::error::{Error, Result, StageExt};
use crate::exact::factor::SPLIT_SEED;
use crate::exact::field::{FieldElement, FieldVector};
use crate::exact::poly::IntPolynomial;
use crate::exact::roots::{isolate_roots, AlgebraicReal};
use crate::linalg::RatMatrix;
use crate::realize::{eigenvector_exact, positivize, realize_symmetric, RationalRotation};

use super::IntegrityReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerCertificate {
    /// Minimal polynomial of the dominant eigenvalue.
    pub polynomial: IntPolynomial,
    pub base: RatMatrix,
    pub excess: usize,
    pub rotation: RatMatrix,
    pub q: RatMatrix,
    pub theta: AlgebraicReal,
    pub integrality: IntegralityCertificate,
    pub positivity: PositivityBound,
    pub entry_floor: i64,
    pub k: u64,
    /// `q^k`.
    pub qk: RatMatrix,
    /// `θ^k`.
    pub eigenvalue: AlgebraicReal,
    pub eigenvector: FieldVector,
    pub char_poly_of_qk: IntPolynomial,
    pub replay: Replay,
}

/// Realize `minpoly` symmetrically, rotate to a positive eigenvector and
/// take the least power that is integral with entries at least the floor.
pub fn power_certificate(minpoly: &IntPolynomial, config: &CertificateConfig) -> Result<PowerCertificate> {
    if !minpoly.is_monic() || minpoly.coeff(0).magnitude() != &1u32.into() {
        return Err(Error::precondition(format!(
            "{minpoly} is not the minimal polynomial of a unit"
        )))
        .stage("classify");
    }
    let theta = isolate_roots(minpoly)
        .stage("classify")?
        .pop()
        .ok_or_else(|| Error::precondition("no real root"))
        .stage("classify")?;
    let real = realize_symmetric(minpoly, config.e_max, config.search_bound).stage("realize")?;
    let (u, q) = positivize(&real.matrix, &theta, config.positivize).stage("positivize")?;
    let q = q.matrix().clone();
    let integ = integrality_exponent(&q, config.max_power).stage("integrality")?;
    let pos = power_positivity_exponent(&q, &theta, integ.exponent, config.entry_floor, config.max_power)
        .stage("positivity")?;
    let k = pos.exponent;
    let qk = q.pow(k as i64);
    let eigenvector = eigenvector_exact(&q, &theta).stage("eigen")?;
    let field = eigenvector.coords()[0].field().clone();
    let eigenvalue = FieldElement::generator(&field)
        .pow(k as i64)
        .to_algebraic_real()
        .stage("eigen")?;
    let char_poly_of_qk = qk
        .int_char_poly()
        .ok_or_else(|| Error::invariant("char poly of q^k is not integral"))
        .stage("eigen")?;
    let cert = PowerCertificate {
        polynomial: minpoly.clone(),
        base: real.matrix.matrix().clone(),
        excess: real.excess,
        rotation: u.matrix().clone(),
        q,
        theta,
        integrality: integ,
        positivity: pos,
        entry_floor: config.entry_floor,
        k,
        qk,
        eigenvalue,
        eigenvector,
        char_poly_of_qk,
        replay: Replay {
            search_bound: config.search_bound,
            e_max: config.e_max,
            phase: real.phase,
            denominator: real.denominator,
            max_power: config.max_power,
            rng_seed: SPLIT_SEED,
        },
    };
    match cert.verify().first_failure() {
        None => Ok(cert),
        Some(name) => Err(Error::invariant(format!("certificate check {name} failed"))).stage("verify"),
    }
}

impl PowerCertificate {
    /// Re-check every invariant without rerunning any search.
    pub fn verify(&self) -> IntegrityReport {
        let mut checks = Vec::new();
        let mut check = |name: &str, ok: bool| checks.push((name.to_string(), ok));

        let expected_cp = &self.polynomial * &IntPolynomial::linear_root(1).pow(self.excess as u32);
        check(
            "base_realizes",
            self.base.is_symmetric() && self.base.int_char_poly().as_ref() == Some(&expected_cp),
        );
        let rotation_ok = RationalRotation::new(self.rotation.clone()).is_ok();
        check("rotation_orthogonal", rotation_ok);
        check(
            "rotated_matrix",
            rotation_ok && self.q == &(&self.rotation * &self.base) * &self.rotation.transpose(),
        );
        let roots = isolate_roots(&self.polynomial).unwrap_or_default();
        let conjugates_ok = roots.len() == self.polynomial.degree()
            && roots.last() == Some(&self.theta)
            && roots[..roots.len() - 1]
                .iter()
                .all(|r| r.signum() == Ordering::Greater && r.cmp_int(1) == Ordering::Less);
        check(
            "theta_dominates_conjugates",
            conjugates_ok && self.theta.cmp_int(1) == Ordering::Greater,
        );

        let s = self.integrality.exponent;
        let int_ok = s >= 1
            && s <= self.integrality.order_bound
            && self.q.pow(s as i64).is_integral()
            && (1..s).all(|j| !self.q.pow(j as i64).is_integral());
        check("integrality_exponent", int_ok);
        let k = self.k;
        check(
            "k_multiple_of_step",
            s >= 1 && k.is_multiple_of(s) && k == self.positivity.exponent && k <= self.positivity.guaranteed_by,
        );
        check("qk_power", k >= 1 && self.q.pow(k as i64) == self.qk);
        check(
            "qk_entries_at_floor",
            self.entry_floor >= 1 && self.qk.entries_at_least(self.entry_floor),
        );
        let minimal =
            s >= 1 && (1..k / s.max(1)).all(|j| !self.q.pow((j * s) as i64).entries_at_least(self.entry_floor));
        check("k_minimal", minimal);
        check(
            "qk_char_poly",
            self.qk.int_char_poly().as_ref() == Some(&self.char_poly_of_qk),
        );
        check(
            "eigenvalue_one_multiplicity",
            self.char_poly_of_qk.root_multiplicity(&1.into()) == self.excess,
        );
        let v = &self.eigenvector;
        let field = v.coords()[0].field().clone();
        let theta_k = FieldElement::generator(&field).pow(k as i64);
        let vec_ok = field.generator() == &self.theta
            && v.len() == self.q.rows()
            && v.is_strictly_positive()
            && v.apply(&self.q) == v.scale(&FieldElement::generator(&field))
            && v.apply(&self.qk) == v.scale(&theta_k)
            && theta_k
                .to_algebraic_real()
                .map(|e| e == self.eigenvalue)
                .unwrap_or(false);
        check("eigenvector", vec_ok);
        let top = isolate_roots(&self.char_poly_of_qk).ok().and_then(|mut r| r.pop());
        check("eigenvalue_is_top_root", top.is_some_and(|t| t == self.eigenvalue));
        IntegrityReport { checks }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_square() {
        let c = power_certificate(&"x^2-3x+1".parse().unwrap(), &CertificateConfig::default()).unwrap();
        assert_eq!(c.qk, RatMatrix::from_i64(&[&[2, 1], &[1, 1]]));
        assert_eq!(c.k, 1);
        assert!(c.verify().passed());
        let mut bad = c.clone();
        bad.k = 2;
        assert!(!bad.verify().passed());
    }

    #[test]
    fn silver_square() {
        let c = power_certificate(&"x^2-6x+1".parse().unwrap(), &CertificateConfig::default()).unwrap();
        assert_eq!(c.qk, RatMatrix::from_i64(&[&[5, 2], &[2, 1]]));
    }

    #[test]
    fn rejects_non_unit() {
        assert!(power_certificate(&"x^2-5".parse().unwrap(), &CertificateConfig::default()).is_err());
    }
}
