//! From a totally real field to a pseudo-Anosov map whose stretch factor
//! `λ` satisfies `ℚ(λ + 1/λ) = K`.

use std::cmp::Ordering;

use serde::Serialize;

use super::{find_alpha, GeneratorUnit, TotallyRealField, UnitSystem, DEFAULT_COEFFICIENT_BOUND};
use crate::error::{Error, Result, StageExt};
use crate::exact::field::FieldElement;
use crate::exact::poly::IntPolynomial;
use crate::exact::serde_impls::in_t;
use crate::linalg::RatMatrix;
use crate::skewpower::{power_certificate, CertificateConfig, PowerCertificate};
use crate::surface::{analyze, build_surface, SurfaceReport};
use crate::thurston::{classify_word, pf_data, veech_check, PseudoAnosovReport, TwistWeights, VeechCheck, Word};

/// `t = w² - 2` computed inside `K`, compared with `|trace|` from the
/// Thurston representation.
#[derive(Clone, Debug, Serialize)]
pub struct FieldEquality {
    /// Minimal polynomial of `λ + 1/λ`.
    #[serde(serialize_with = "in_t")]
    pub trace_poly: IntPolynomial,
    pub degree: usize,
    pub field_degree: usize,
    /// The element of `K` equals `|trace|` as a real number.
    pub same_value: bool,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldPipelineReport {
    pub field: TotallyRealField,
    /// `K = ℚ`, handled by the fixed matrix `[[3]]`.
    pub special_case: bool,
    pub units: UnitSystem,
    pub alpha: Option<GeneratorUnit>,
    /// Least `m` with `α^m > 2`.
    pub normalization_power: u32,
    pub certificate: Option<PowerCertificate>,
    pub matrix: RatMatrix,
    pub surface: SurfaceReport,
    pub thurston: PseudoAnosovReport,
    pub veech: VeechCheck,
    pub field_equality: FieldEquality,
}

/// Run the whole chain for `k`. Units default to the built-in ones for
/// degrees 1 and 2.
pub fn field_pipeline(
    k: &TotallyRealField,
    units: Option<UnitSystem>,
    config: &CertificateConfig,
) -> Result<FieldPipelineReport> {
    let units = match units {
        Some(u) => u,
        None => UnitSystem::default_for(k).stage("units")?,
    };
    if k.degree() == 1 {
        let matrix = RatMatrix::from_i64(&[&[3]]);
        // w = 3 is the dominant eigenvalue of Q
        let w = FieldElement::from_int(k.field(), 3);
        return finish(k, units, None, 0, None, matrix, w, true);
    }
    let alpha = find_alpha(k, &units, DEFAULT_COEFFICIENT_BOUND).stage("alpha")?;
    let mut m = 1u32;
    while alpha.alpha.pow(m as i64).cmp_int(2) != Ordering::Greater {
        m += 1;
    }
    let theta = alpha.alpha.pow(m as i64);
    let cert = power_certificate(&theta.minimal_polynomial(), config).stage("certificate")?;
    let matrix = cert.qk.clone();
    let w = theta.pow(cert.k as i64);
    finish(k, units, Some(alpha), m, Some(cert), matrix, w, false)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    k: &TotallyRealField,
    units: UnitSystem,
    alpha: Option<GeneratorUnit>,
    normalization_power: u32,
    certificate: Option<PowerCertificate>,
    matrix: RatMatrix,
    w: FieldElement,
    special_case: bool,
) -> Result<FieldPipelineReport> {
    let n = matrix.rows();
    let s = build_surface(&matrix, None).stage("surface")?;
    let surface = analyze(&s).stage("surface")?;
    if matrix.to_i64_rows().as_ref() != Some(&surface.intersection) {
        return Err(Error::invariant("surface does not reproduce the intersection matrix")).stage("surface");
    }
    let pf = pf_data(&matrix, &TwistWeights::ones(n, n)).stage("thurston")?;
    let word: Word = "CD".parse()?;
    let thurston = classify_word(&word, &pf.nu).stage("thurston")?;
    let stretch = thurston
        .stretch
        .clone()
        .ok_or_else(|| Error::invariant("CD is not pseudo-Anosov"))
        .stage("thurston")?;
    let veech = veech_check(&stretch).stage("veech")?;

    // ν = w², so |trace| = ν - 2
    let t = w.mul(&w).sub(&FieldElement::from_int(k.field(), 2));
    let t_real = t.to_algebraic_real().stage("field")?;
    let abs_trace = thurston.trace.abs().to_algebraic_real().stage("field")?;
    let same_value = t_real.cmp_exact(&abs_trace) == Ordering::Equal;
    let trace_poly = t.minimal_polynomial();
    let field_equality = FieldEquality {
        degree: trace_poly.degree(),
        field_degree: k.degree(),
        same_value,
        equal: same_value && trace_poly.degree() == k.degree() && trace_poly == thurston.trace_field_poly,
        trace_poly,
    };
    Ok(FieldPipelineReport {
        field: k.clone(),
        special_case,
        units,
        alpha,
        normalization_power,
        certificate,
        matrix,
        surface,
        thurston,
        veech,
        field_equality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(p: &str) -> FieldPipelineReport {
        let k = TotallyRealField::new(p.parse().unwrap()).unwrap();
        field_pipeline(&k, None, &CertificateConfig::default()).unwrap()
    }

    #[test]
    fn golden_field() {
        let r = run("x^2-5");
        assert_eq!(r.matrix, RatMatrix::from_i64(&[&[2, 1], &[1, 1]]));
        assert_eq!(r.normalization_power, 1);
        assert!(r.thurston.is_pseudo_anosov());
        assert!(r.veech.totally_real);
        assert!(r.field_equality.equal);
        assert!(r.surface.orientable && r.surface.filling);
        assert_eq!(r.surface.genus, Some(2));
    }

    #[test]
    fn silver_field() {
        let r = run("x^2-2");
        assert_eq!(r.alpha.unwrap().alpha.display_var("a"), "2a+3");
        assert_eq!(r.matrix, RatMatrix::from_i64(&[&[5, 2], &[2, 1]]));
        assert!(r.field_equality.equal);
    }

    #[test]
    fn rationals() {
        let r = run("x");
        assert!(r.special_case);
        assert_eq!(r.matrix, RatMatrix::from_i64(&[&[3]]));
        assert_eq!(r.thurston.trace_field_poly.display_var("t"), "t-7");
        assert!(r.field_equality.equal);
    }

    #[test]
    fn cubic_field() {
        let k = TotallyRealField::new("x^3-3x-1".parse().unwrap()).unwrap();
        let units = UnitSystem::parse(&k, &["a".into(), "a+1".into()]).unwrap();
        let r = field_pipeline(&k, Some(units), &CertificateConfig::default()).unwrap();
        assert_eq!(r.field_equality.degree, 3);
        assert!(r.field_equality.equal);
        assert!(r.veech.totally_real);
    }
}
