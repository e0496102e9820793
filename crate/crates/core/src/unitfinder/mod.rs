//! Totally real fields, their units, and a unit generator whose other
//! conjugates all lie in (0, 1).

mod alpha;
mod pipeline;

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::factor::is_irreducible;
use crate::exact::field::{FieldElement, NumberField};
use crate::exact::interval::Interval;
use crate::exact::poly::{IntPolynomial, RatPolynomial};
use crate::exact::roots::{isolate_roots, AlgebraicReal};
use crate::exact::serde_impls::parse_element;

pub use alpha::{find_alpha, GeneratorUnit, DEFAULT_COEFFICIENT_BOUND};
pub use pipeline::{field_pipeline, FieldEquality, FieldPipelineReport};

/// A number field `ℚ(θ)` all of whose embeddings are real. `θ` is the
/// largest root of the defining polynomial; that embedding is `σ₁`.
#[derive(Clone, Debug, Serialize)]
pub struct TotallyRealField {
    defining_poly: IntPolynomial,
    /// `σ₁(θ), …, σₙ(θ)`: the largest root first, then the rest ascending.
    embeddings: Vec<AlgebraicReal>,
    #[serde(skip)]
    field: Arc<NumberField>,
}

impl TotallyRealField {
    pub fn new(defining_poly: IntPolynomial) -> Result<Self> {
        let p = defining_poly;
        if p.degree() == 0 || !p.is_monic() {
            return Err(Error::precondition(format!("{p} must be monic of positive degree")));
        }
        if !is_irreducible(&p) {
            return Err(Error::precondition(format!("{p} is reducible")));
        }
        let mut roots = isolate_roots(&p)?;
        if roots.len() != p.degree() {
            return Err(Error::precondition(format!(
                "{p} has {} real roots out of {}: field is not totally real",
                roots.len(),
                p.degree()
            )));
        }
        let top = roots.pop().expect("positive degree");
        roots.insert(0, top);
        let field = NumberField::new(roots[0].clone());
        Ok(TotallyRealField {
            defining_poly: p,
            embeddings: roots,
            field,
        })
    }

    pub fn defining_poly(&self) -> &IntPolynomial {
        &self.defining_poly
    }

    pub fn embeddings(&self) -> &[AlgebraicReal] {
        &self.embeddings
    }

    pub fn degree(&self) -> usize {
        self.defining_poly.degree()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Parse a polynomial in the generator, e.g. `1/2*a + 1/2`.
    pub fn element(&self, s: &str) -> Result<FieldElement> {
        parse_element(&self.field, s)
    }

    /// Enclosures of `σ_i(x)` of width at most `width`.
    pub fn conjugate_enclosures(&self, x: &FieldElement, width: &BigRational) -> Vec<Interval> {
        self.embeddings
            .iter()
            .map(|s| x.enclose_at(s, width).to_f64())
            .collect()
    }
}

/// Certified enclosures of `log|σ_i(x)|`, refined until every conjugate
/// interval has relative width about `2^-bits`.
pub fn log_embedding_at(x: &FieldElement, k: &TotallyRealField, bits: u32) -> Result<Vec<Interval>> {
    if x.is_zero() {
        return Err(Error::precondition("log embedding of zero"));
    }
    k.embeddings
        .iter()
        .map(|s| {
            let mut width = BigRational::new(BigInt::one(), BigInt::from(1u64) << 16);
            loop {
                let iv = x.enclose_at(s, &width).to_f64().abs();
                if iv.lo > 0.0 && iv.width() <= iv.lo * 2f64.powi(-(bits as i32)) {
                    return Ok(iv.ln());
                }
                width /= BigRational::from_integer(BigInt::from(1u64 << 16));
            }
        })
        .collect()
}

/// [`log_embedding_at`] with 48 bits.
pub fn log_embedding(x: &FieldElement, k: &TotallyRealField) -> Result<Vec<Interval>> {
    log_embedding_at(x, k, 48)
}

fn is_squarefree(d: i64) -> bool {
    let mut p = 2i64;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// `(a, b)` with `a + b√d` the fundamental unit of ℚ(√d), from the
/// continued fraction of the generator `ω` of the ring of integers.
/// A convergent `p/q` of `ω` with `N(p - qω) = ±1` gives the unit
/// `p - qω'`, where `ω'` is the conjugate, and the first one is minimal.
pub fn fundamental_unit_coeffs(d: i64) -> Result<(BigRational, BigRational)> {
    if d < 2 || !is_squarefree(d) {
        return Err(Error::precondition(format!("{d} is not a squarefree integer above 1")));
    }
    let dd = BigInt::from(d);
    let half = d % 4 == 1;
    // ω = (P + √d) / Q with Q | d - P²
    let (mut p_, mut q_) = if half {
        (BigInt::one(), BigInt::from(2))
    } else {
        (BigInt::zero(), BigInt::one())
    };
    // trace and norm of ω
    let (tr, nm) = if half {
        (BigInt::one(), BigInt::from((1 - d) / 4))
    } else {
        (BigInt::zero(), -dd.clone())
    };
    let s = dd.sqrt();
    let (mut h1, mut h0) = (BigInt::one(), BigInt::zero());
    let (mut k1, mut k0) = (BigInt::zero(), BigInt::one());
    for _ in 0..100_000 {
        let a = if q_.is_positive() {
            (&p_ + &s).div_floor(&q_)
        } else {
            (&p_ + &s + BigInt::one()).div_floor(&q_)
        };
        let h = &a * &h1 + &h0;
        let kk = &a * &k1 + &k0;
        h0 = std::mem::replace(&mut h1, h);
        k0 = std::mem::replace(&mut k1, kk);
        // N(p - qω) = p² - p q tr + q² nm
        let norm = &h1 * &h1 - &h1 * &k1 * &tr + &k1 * &k1 * &nm;
        if norm.abs().is_one() {
            // p - q ω' = (p - q tr) + q ω
            let (x, y) = (&h1 - &k1 * &tr, k1.clone());
            let two = BigRational::from_integer(2.into());
            return Ok(if half {
                // ω = 1/2 + √d/2
                (
                    BigRational::from_integer(x) + BigRational::from_integer(y.clone()) / &two,
                    BigRational::from_integer(y) / two,
                )
            } else {
                (BigRational::from_integer(x), BigRational::from_integer(y))
            });
        }
        p_ = &a * &q_ - &p_;
        q_ = (&dd - &p_ * &p_) / &q_;
    }
    Err(Error::exhausted(format!("continued fraction of √{d} did not close")))
}

/// The fundamental unit of ℚ(√d) as an element of the field defined by
/// `x² - d`, exactly of norm ±1.
pub fn fundamental_unit_quadratic(d: i64) -> Result<FieldElement> {
    let (a, b) = fundamental_unit_coeffs(d)?;
    let k = TotallyRealField::new(IntPolynomial::from_i64(&[-d, 0, 1]))?;
    let u = FieldElement::new(k.field(), RatPolynomial::new(vec![a, b]));
    check_unit(&u)?;
    Ok(u)
}

/// The minimal polynomial of `u` is monic over ℤ with constant term ±1.
fn check_unit(u: &FieldElement) -> Result<IntPolynomial> {
    let mp = u.minimal_polynomial();
    if !mp.is_monic() || !mp.coeff(0).abs().is_one() {
        return Err(Error::precondition(format!(
            "{} is not a unit: minimal polynomial {mp}",
            u.display_var("a")
        )));
    }
    Ok(mp)
}

/// `n - 1` units, normalized so that `σ₁(u) > 1`, with independent log
/// embeddings.
#[derive(Clone, Debug, Serialize)]
pub struct UnitSystem {
    pub units: Vec<FieldElement>,
}

impl UnitSystem {
    pub fn new(k: &TotallyRealField, units: Vec<FieldElement>) -> Result<Self> {
        let n = k.degree();
        if units.len() + 1 != n {
            return Err(Error::precondition(format!(
                "a field of degree {n} needs {} units",
                n - 1
            )));
        }
        let mut normalized = Vec::with_capacity(units.len());
        for u in units {
            if u.field().as_ref() != k.field().as_ref() {
                return Err(Error::precondition("unit lies in a different field"));
            }
            check_unit(&u)?;
            let u = if u.signum() == Ordering::Less { u.neg() } else { u };
            let u = match u.cmp_int(1) {
                Ordering::Greater => u,
                Ordering::Less => u.inv().expect("nonzero unit"),
                Ordering::Equal => return Err(Error::precondition("±1 cannot be part of a unit system")),
            };
            normalized.push(u);
        }
        let system = UnitSystem { units: normalized };
        if n > 1 && !system.independent(k)? {
            return Err(Error::precondition("units have dependent log embeddings"));
        }
        Ok(system)
    }

    /// Units given as polynomials in the generator.
    pub fn parse(k: &TotallyRealField, units: &[String]) -> Result<Self> {
        let elems = units.iter().map(|s| k.element(s)).collect::<Result<Vec<_>>>()?;
        Self::new(k, elems)
    }

    /// Built in for degrees 1 and 2.
    pub fn default_for(k: &TotallyRealField) -> Result<Self> {
        match k.degree() {
            1 => Ok(UnitSystem { units: Vec::new() }),
            2 => Self::new(k, vec![quadratic_unit_in(k)?]),
            n => Err(Error::precondition(format!(
                "units must be supplied for a field of degree {n}"
            ))),
        }
    }

    /// The determinant of the first `n - 1` log coordinates, an interval
    /// that must exclude zero.
    fn independent(&self, k: &TotallyRealField) -> Result<bool> {
        let rows: Vec<Vec<Interval>> = self
            .units
            .iter()
            .map(|u| log_embedding(u, k).map(|v| v[..v.len() - 1].to_vec()))
            .collect::<Result<_>>()?;
        let det = interval_det(&rows);
        Ok(det.lo > 0.0 || det.hi < 0.0)
    }
}

/// Cofactor expansion along the first row.
fn interval_det(m: &[Vec<Interval>]) -> Interval {
    match m.len() {
        0 => Interval::point(1.0),
        1 => m[0][0],
        n => {
            let mut acc = Interval::point(0.0);
            for c in 0..n {
                let minor: Vec<Vec<Interval>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| *x).collect())
                    .collect();
                let term = m[0][c].mul(&interval_det(&minor));
                acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Fundamental unit of a quadratic field given by any defining
/// polynomial `x² + bx + c`. With `b² - 4c = f² d`, `√d = (2θ + b)/f`.
fn quadratic_unit_in(k: &TotallyRealField) -> Result<FieldElement> {
    let p = k.defining_poly();
    let (c, b) = (p.coeff(0), p.coeff(1));
    let disc = &b * &b - BigInt::from(4) * &c;
    let mut d = disc.clone();
    let mut f = BigInt::one();
    let mut q = BigInt::from(2);
    while &q * &q <= d {
        while (&d % (&q * &q)).is_zero() {
            d /= &q * &q;
            f *= &q;
        }
        q += 1;
    }
    let d = i64::try_from(d).map_err(|_| Error::precondition("discriminant too large"))?;
    let (x, y) = fundamental_unit_coeffs(d)?;
    let fr = BigRational::from_integer(f);
    let sqrt_d = FieldElement::new(
        k.field(),
        RatPolynomial::new(vec![
            BigRational::from_integer(b) / &fr,
            BigRational::from_integer(2.into()) / &fr,
        ]),
    );
    Ok(sqrt_d.scale(&y).add(&FieldElement::from_rational(k.field(), x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn field(p: &str) -> TotallyRealField {
        TotallyRealField::new(p.parse().unwrap()).unwrap()
    }

    /// Smallest `y` with `d y² ± 4` (or `± 1`) a square.
    fn brute_unit(d: i64) -> (f64, f64) {
        let (scale, k) = if d % 4 == 1 { (2.0, 4) } else { (1.0, 1) };
        for y in 1i64.. {
            for s in [-k, k] {
                let t = d * y * y + s;
                let x = (t as f64).sqrt().round() as i64;
                if x * x == t {
                    return (x as f64 / scale, y as f64 / scale);
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn fundamental_units_match_brute_force() {
        for d in 2..60 {
            if !is_squarefree(d) {
                continue;
            }
            let (a, b) = fundamental_unit_coeffs(d).unwrap();
            let (x, y) = brute_unit(d);
            assert_eq!((a.to_f64(), b.to_f64()), (Some(x), Some(y)), "d = {d}");
        }
    }

    #[test]
    fn named_units() {
        let u = fundamental_unit_quadratic(5).unwrap();
        assert_eq!(u.minimal_polynomial().to_string(), "x^2-x-1");
        let u = fundamental_unit_quadratic(2).unwrap();
        assert_eq!(u.display_var("a"), "a+1");
        let u = fundamental_unit_quadratic(3).unwrap();
        assert_eq!(u.display_var("a"), "a+2");
        assert!(fundamental_unit_quadratic(12).is_err());
        assert!(fundamental_unit_quadratic(1).is_err());
    }

    #[test]
    fn log_embeddings() {
        let k = field("x^2-5");
        let one = FieldElement::one(k.field());
        assert!(log_embedding(&one, &k).unwrap().iter().all(|iv| iv.contains(0.0)));
        let phi = k.element("1/2*a+1/2").unwrap();
        let l = log_embedding(&phi, &k).unwrap();
        assert!((l[0].mid() - 0.481212).abs() < 1e-5 && (l[1].mid() + 0.481212).abs() < 1e-5);
        assert!(l[0].add(&l[1]).contains(0.0));
        let k = field("x^2-2");
        let l = log_embedding(&k.element("2*a+3").unwrap(), &k).unwrap();
        assert!((l[0].mid() - 1.762747).abs() < 1e-5);
        assert!(log_embedding(&FieldElement::zero(k.field()), &k).is_err());
    }

    #[test]
    fn unit_systems() {
        let k = field("x^2-5");
        // the conjugate of the golden ratio is normalized to the golden ratio
        let s = UnitSystem::parse(&k, &["1/2-1/2*a".to_string()]).unwrap();
        assert_eq!(s.units[0], k.element("1/2*a+1/2").unwrap());
        assert!(UnitSystem::parse(&k, &["a".to_string()]).is_err());
        assert!(UnitSystem::parse(&k, &[]).is_err());
        // a non-standard defining polynomial for ℚ(√5)
        let k = field("x^2-x-1");
        let u = UnitSystem::default_for(&k).unwrap();
        assert_eq!(u.units[0], FieldElement::generator(k.field()));
        assert!(UnitSystem::default_for(&field("x^3-3x-1")).is_err());
    }

    #[test]
    fn cubic_units_independence() {
        // θ and θ + 1 are units: minimal polynomials x³ - 3x - 1 and x³ - 3x² + 1
        let k = field("x^3-3x-1");
        let t = FieldElement::generator(k.field());
        let s = UnitSystem::new(&k, vec![t.clone(), t.add(&FieldElement::one(k.field()))]);
        assert!(s.is_ok());
        assert!(UnitSystem::new(&k, vec![t.clone(), t.pow(2)]).is_err());
    }

    #[test]
    fn rejects_non_totally_real() {
        assert!(TotallyRealField::new("x^3-2".parse().unwrap()).is_err());
        assert!(TotallyRealField::new("x^2-4".parse().unwrap()).is_err());
    }
}
