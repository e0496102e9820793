//! Reciprocal polynomials, trace polynomials and Salem classification.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::factor::is_irreducible;
use crate::exact::field::{FieldElement, NumberField};
use crate::exact::interval::RatInterval;
use crate::exact::poly::IntPolynomial;
use crate::exact::roots::{isolate_roots, select_root, AlgebraicReal};
use crate::exact::sqrt::{sqrt_ceil, sqrt_floor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SalemVerdict {
    Salem,
    QuadraticReciprocalUnit,
    NotSalem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SalemClassification {
    pub polynomial: IntPolynomial,
    pub verdict: SalemVerdict,
    /// The real root greater than 1, for `Salem` and
    /// `QuadraticReciprocalUnit` verdicts.
    pub salem_root: Option<AlgebraicReal>,
    pub reason: Option<String>,
}

impl SalemClassification {
    fn not_salem(p: &IntPolynomial, reason: impl Into<String>) -> Self {
        SalemClassification {
            polynomial: p.clone(),
            verdict: SalemVerdict::NotSalem,
            salem_root: None,
            reason: Some(reason.into()),
        }
    }

    pub fn is_salem_or_quadratic(&self) -> bool {
        self.verdict != SalemVerdict::NotSalem
    }
}

/// `V_j(t)` with `x^j + x^{-j} = V_j(x + 1/x)`.
fn dickson(j: usize) -> Vec<IntPolynomial> {
    let mut v = vec![IntPolynomial::from_i64(&[2]), IntPolynomial::x()];
    while v.len() <= j {
        let n = v.len();
        let next = &(&IntPolynomial::x() * &v[n - 1]) - &v[n - 2];
        v.push(next);
    }
    v
}

/// For a reciprocal `p` of degree 2d, the degree-d polynomial `f` with
/// `p(x) = x^d f(x + 1/x)`.
pub fn trace_polynomial(p: &IntPolynomial) -> Result<IntPolynomial> {
    if p.is_zero() || !p.is_reciprocal() {
        return Err(Error::precondition(format!("{p} is not reciprocal")));
    }
    if p.degree() % 2 == 1 {
        return Err(Error::precondition(format!("{p} has odd degree")));
    }
    let d = p.degree() / 2;
    let v = dickson(d);
    let mut f = IntPolynomial::constant(p.coeff(d));
    for (j, vj) in v.iter().enumerate().take(d + 1).skip(1) {
        f = &f + &vj.scale(&p.coeff(d + j));
    }
    Ok(f)
}

/// `x^d f(x + 1/x)`, the inverse of [`trace_polynomial`].
pub fn reciprocal_lift(f: &IntPolynomial) -> IntPolynomial {
    let d = f.degree();
    // x^d (x + 1/x)^i = x^(d-i) (x^2 + 1)^i
    let x2p1 = IntPolynomial::from_i64(&[1, 0, 1]);
    let mut acc = IntPolynomial::zero();
    for (i, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = &IntPolynomial::monomial(c.clone(), d - i) * &x2p1.pow(i as u32);
        acc = &acc + &term;
    }
    acc
}

/// Decide whether `p` is the minimal polynomial of a Salem number.
///
/// Unit-circle membership of the other roots is checked through the trace
/// polynomial: they lie on the circle iff the matching trace roots are real
/// and inside (-2, 2).
pub fn classify_salem(p: &IntPolynomial) -> Result<SalemClassification> {
    if !p.is_monic() {
        return Err(Error::precondition(format!("{p} is not monic")));
    }
    if !p.is_reciprocal() {
        return Ok(SalemClassification::not_salem(p, "not reciprocal"));
    }
    if p.degree() < 2 || p.degree() % 2 == 1 {
        return Ok(SalemClassification::not_salem(p, "degree below 2 or odd"));
    }
    if !is_irreducible(p) {
        return Ok(SalemClassification::not_salem(p, "reducible over the rationals"));
    }
    let f = trace_polynomial(p)?;
    let troots = isolate_roots(&f)?;
    if troots.len() != f.degree() {
        return Ok(SalemClassification::not_salem(p, "trace polynomial has non-real roots"));
    }
    let above: Vec<&AlgebraicReal> = troots.iter().filter(|t| t.cmp_int(2) == Ordering::Greater).collect();
    let inside = troots
        .iter()
        .filter(|t| t.cmp_int(2) == Ordering::Less && t.cmp_int(-2) == Ordering::Greater)
        .count();
    if above.len() != 1 || inside + 1 != troots.len() {
        return Ok(SalemClassification::not_salem(
            p,
            "trace roots not one above 2 and the rest inside (-2, 2)",
        ));
    }
    let largest = isolate_roots(p)?.pop().expect("a root above 1");
    let verdict = if p.degree() == 2 {
        SalemVerdict::QuadraticReciprocalUnit
    } else {
        SalemVerdict::Salem
    };
    Ok(SalemClassification {
        polynomial: p.clone(),
        verdict,
        salem_root: Some(largest),
        reason: None,
    })
}

/// `λ^k` as an algebraic number, via the field norm of `θ^k` in ℚ(λ).
pub fn power_of(lambda: &AlgebraicReal, k: u32) -> Result<AlgebraicReal> {
    if let Some(q) = lambda.as_rational() {
        return Ok(AlgebraicReal::from_rational(num_traits::pow(q, k as usize)));
    }
    let field = NumberField::new(lambda.clone());
    FieldElement::generator(&field).pow(k as i64).to_algebraic_real()
}

/// `λ + 1/λ` as an algebraic number.
pub fn trace_of(lambda: &AlgebraicReal) -> Result<AlgebraicReal> {
    if let Some(q) = lambda.as_rational() {
        return Ok(AlgebraicReal::from_rational(&q + q.recip()));
    }
    let field = NumberField::new(lambda.clone());
    let t = FieldElement::generator(&field);
    t.add(&t.inv().expect("nonzero")).to_algebraic_real()
}

/// Largest root of `x^2 - t x + 1` for an algebraic `t` with `t > 2`.
pub fn larger_root_of_trace(t: &AlgebraicReal) -> Result<AlgebraicReal> {
    if t.cmp_int(2) != Ordering::Greater {
        return Err(Error::precondition(format!("trace {t} is not above 2")));
    }
    // λ is a root of x^d m(x + 1/x) for the minimal polynomial m of t
    let lifted = reciprocal_lift(t.minpoly());
    let two = BigRational::from_integer(BigInt::from(2));
    let four = BigRational::from_integer(BigInt::from(4));
    select_root(&lifted, |w| {
        // λ = (t + sqrt(t^2 - 4)) / 2
        let small = w / BigRational::from_integer(BigInt::from(64));
        let iv = t.refined(&small).enclosure();
        let s_lo = sqrt_floor(&(iv.lo() * iv.lo() - &four), &small);
        let s_hi = sqrt_ceil(&(iv.hi() * iv.hi() - &four), &small);
        RatInterval::new((iv.lo() + s_lo) / &two, (iv.hi() + s_hi) / &two)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn trace_polynomials() {
        assert_eq!(
            trace_polynomial(&p("x^4-x^3-x^2-x+1")).unwrap().display_var("t"),
            "t^2-t-3"
        );
        assert_eq!(trace_polynomial(&p("x^2-3x+1")).unwrap().display_var("t"), "t-3");
        assert_eq!(
            trace_polynomial(&p("x^4-10x^3+10x^2-10x+1")).unwrap().display_var("t"),
            "t^2-10t+8"
        );
        assert!(trace_polynomial(&p("x^3-2")).is_err());
    }

    #[test]
    fn lift_inverts_trace() {
        for s in ["x^4-x^3-x^2-x+1", "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1", "x^2-3x+1"] {
            let q = p(s);
            assert_eq!(reciprocal_lift(&trace_polynomial(&q).unwrap()), q);
        }
    }

    #[test]
    fn verdicts() {
        let c = classify_salem(&p("x^4-10x^3+10x^2-10x+1")).unwrap();
        assert_eq!(c.verdict, SalemVerdict::Salem);
        assert!((c.salem_root.unwrap().to_f64() - 9.0122).abs() < 1e-4);
        let c = classify_salem(&p("x^4-x^3-x^2-x+1")).unwrap();
        assert_eq!(c.verdict, SalemVerdict::Salem);
        assert!((c.salem_root.unwrap().to_f64() - 1.7221).abs() < 1e-4);
        assert_eq!(
            classify_salem(&p("x^2-3x+1")).unwrap().verdict,
            SalemVerdict::QuadraticReciprocalUnit
        );
        assert_eq!(classify_salem(&p("x^3-2")).unwrap().verdict, SalemVerdict::NotSalem);
        // Pisot, not Salem: reciprocal fails
        assert_eq!(classify_salem(&p("x^3-x-1")).unwrap().verdict, SalemVerdict::NotSalem);
        // cyclotomic: no root outside the circle
        assert_eq!(classify_salem(&p("x^4+1")).unwrap().verdict, SalemVerdict::NotSalem);
        assert!(classify_salem(&p("2x^2-3x+2")).is_err());
    }

    #[test]
    fn lehmer() {
        let c = classify_salem(&p("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1")).unwrap();
        assert_eq!(c.verdict, SalemVerdict::Salem);
        assert!((c.salem_root.unwrap().to_f64() - 1.17628081826).abs() < 1e-10);
    }

    #[test]
    fn powers_stay_salem() {
        let c = classify_salem(&p("x^4-x^3-x^2-x+1")).unwrap();
        let l = c.salem_root.unwrap();
        for k in [2, 3] {
            let lk = power_of(&l, k).unwrap();
            assert_eq!(classify_salem(lk.minpoly()).unwrap().verdict, SalemVerdict::Salem);
            assert!((lk.to_f64() - 1.7220838057_f64.powi(k as i32)).abs() < 1e-8);
        }
    }

    #[test]
    fn trace_and_back() {
        let l = classify_salem(&p("x^4-10x^3+10x^2-10x+1")).unwrap().salem_root.unwrap();
        let t = trace_of(&l).unwrap();
        assert_eq!(t.minpoly().display_var("t"), "t^2-10t+8");
        let back = larger_root_of_trace(&t).unwrap();
        assert_eq!(back, l);
        let r = larger_root_of_trace(&AlgebraicReal::from_integer(3)).unwrap();
        assert_eq!(r.minpoly().to_string(), "x^2-3x+1");
    }
}
