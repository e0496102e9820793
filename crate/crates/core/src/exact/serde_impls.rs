//! JSON forms of exact objects.
//!
//! Polynomials are ASCII strings, rationals are `"p/q"` strings, and an
//! algebraic number carries its minimal polynomial, an isolating interval
//! and an advisory decimal.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::field::{FieldElement, FieldVector, NumberField};
use crate::exact::poly::{IntPolynomial, RatPolynomial};
use crate::exact::roots::AlgebraicReal;
use crate::linalg::parse_rational;

/// Default digits after the point in advisory decimals.
pub const DECIMAL_DIGITS: usize = 12;

static DIGITS: AtomicUsize = AtomicUsize::new(DECIMAL_DIGITS);

/// Digits after the point used by every serialized decimal in this
/// process.
pub fn set_decimal_digits(digits: usize) {
    DIGITS.store(digits.clamp(1, 200), Ordering::Relaxed);
}

pub fn decimal_digits() -> usize {
    DIGITS.load(Ordering::Relaxed)
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// Serialize a polynomial in the variable `t`.
pub fn in_t<S: Serializer>(p: &IntPolynomial, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.display_var("t"))
}

#[derive(Serialize, Deserialize)]
struct AlgebraicDoc {
    minpoly: IntPolynomial,
    interval: [String; 2],
    decimal: String,
}

impl Serialize for AlgebraicReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (lo, hi) = self.interval();
        AlgebraicDoc {
            minpoly: self.minpoly().clone(),
            interval: [lo.to_string(), hi.to_string()],
            decimal: self.to_decimal(decimal_digits()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = AlgebraicDoc::deserialize(d)?;
        let lo = parse_rational(&doc.interval[0]).map_err(D::Error::custom)?;
        let hi = parse_rational(&doc.interval[1]).map_err(D::Error::custom)?;
        AlgebraicReal::from_isolating(doc.minpoly, lo, hi).map_err(D::Error::custom)
    }
}

/// Field elements print as polynomials in `a`, the field generator.
pub const GENERATOR_NAME: &str = "a";

#[derive(Serialize, Deserialize)]
struct FieldVectorDoc {
    generator: AlgebraicReal,
    coords: Vec<String>,
    decimal: Vec<String>,
}

impl Serialize for FieldVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let generator = self.coords()[0].field().generator().clone();
        FieldVectorDoc {
            generator,
            coords: self.coords().iter().map(|c| c.display_var(GENERATOR_NAME)).collect(),
            decimal: self.coords().iter().map(element_decimal).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = FieldVectorDoc::deserialize(d)?;
        let k = NumberField::new(doc.generator);
        let coords = doc
            .coords
            .iter()
            .map(|c| parse_element(&k, c))
            .collect::<crate::Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        if coords.is_empty() {
            return Err(D::Error::custom("empty field vector"));
        }
        Ok(FieldVector::new(coords))
    }
}

/// A lone element prints as its polynomial in `a` and a decimal; the
/// generator is carried by the surrounding document.
impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct ElementDoc {
            value: String,
            decimal: String,
        }
        ElementDoc {
            value: self.display_var(GENERATOR_NAME),
            decimal: element_decimal(self),
        }
        .serialize(s)
    }
}

pub fn parse_element(k: &Arc<NumberField>, s: &str) -> crate::Result<FieldElement> {
    let p: RatPolynomial = s.parse()?;
    Ok(FieldElement::new(k, p))
}

pub fn element_decimal(e: &FieldElement) -> String {
    let digits = decimal_digits();
    let w = BigRational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), digits + 2));
    let iv = e.enclose(&w);
    let mid = (iv.lo() + iv.hi()) / BigRational::from_integer(2.into());
    crate::exact::roots::rational_to_decimal(&mid, digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::roots::isolate_roots;

    #[test]
    fn algebraic_round_trip() {
        let r = isolate_roots(&"x^2-14x+32".parse().unwrap()).unwrap().pop().unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"minpoly\":\"x^2-14x+32\""));
        assert!(s.contains("11.123105625"));
        let back: AlgebraicReal = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        let bad = s.replace("x^2-14x+32", "x^2-2");
        assert!(serde_json::from_str::<AlgebraicReal>(&bad).is_err());
    }

    #[test]
    fn vector_round_trip() {
        let q = crate::linalg::RatMatrix::from_i64(&[&[2, 1], &[1, -1]]);
        let theta = isolate_roots(&"x^2-x-3".parse().unwrap()).unwrap().pop().unwrap();
        let v = crate::realize::eigenvector_exact(&q, &theta).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains("\"a-2\""));
        let back: FieldVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
