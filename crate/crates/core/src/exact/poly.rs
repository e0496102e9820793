//! Dense univariate polynomials over ℤ and ℚ, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::parse::parse_terms;

/// Polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

/// Polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - c`
    pub fn linear_root(c: i64) -> Self {
        Self::from_i64(&[-c, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self(other(x))`
    pub fn compose(&self, other: &IntPolynomial) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    /// `self(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Coefficient sequence is a palindrome.
    pub fn is_reciprocal(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Exact quotient over ℤ, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.to_rat().div_rem(&d.to_rat());
        if !r.is_zero() {
            return None;
        }
        q.to_int_exact()
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        RatPolynomial::gcd(&self.to_rat(), &other.to_rat()).to_primitive_int()
    }

    /// Product of the distinct irreducible factors, primitive.
    pub fn square_free_part(&self) -> IntPolynomial {
        if self.degree() == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        let (q, _) = self.to_rat().div_rem(&g.to_rat());
        q.to_primitive_int()
    }

    /// Multiplicity of `x - c` as a factor.
    pub fn root_multiplicity(&self, c: &BigInt) -> usize {
        let lin = IntPolynomial::new(vec![-c.clone(), BigInt::one()]);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            match p.div_exact(&lin) {
                Some(q) => {
                    p = q;
                    m += 1;
                }
                None => break,
            }
        }
        m
    }

    pub fn to_rat(&self) -> RatPolynomial {
        RatPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Sum of squares of the coefficients.
    pub fn norm_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn display_var(&self, var: &str) -> String {
        format_terms(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect::<Vec<_>>()
                .as_slice(),
            var,
        )
    }
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        trim(&mut coeffs);
        RatPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division. Panics on division by the zero polynomial.
    pub fn div_rem(&self, d: &RatPolynomial) -> (RatPolynomial, RatPolynomial) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        if r.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let lc_inv = d.leading().recip();
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &RatPolynomial) -> RatPolynomial {
        self.div_rem(d).1
    }

    /// Monic gcd; zero when both inputs are zero.
    pub fn gcd(a: &RatPolynomial, b: &RatPolynomial) -> RatPolynomial {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse of `self` modulo `m`, if they are coprime.
    pub fn inverse_mod(&self, m: &RatPolynomial) -> Option<RatPolynomial> {
        // extended Euclid tracking only the coefficient of `self`
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != 0 || r0.is_zero() {
            return None;
        }
        let inv = r0.leading().recip();
        Some(s0.scale(&inv).rem(m))
    }

    /// Integer polynomial with the same roots: denominators cleared,
    /// content removed, positive leading coefficient.
    pub fn to_primitive_int(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }

    /// The same polynomial over ℤ when every coefficient is integral.
    pub fn to_int_exact(&self) -> Option<IntPolynomial> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(IntPolynomial::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }

    /// `self(other(x))`
    pub fn compose(&self, other: &RatPolynomial) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn display_var(&self, var: &str) -> String {
        format_terms(&self.coeffs, var)
    }
}

fn format_terms(coeffs: &[BigRational], var: &str) -> String {
    if coeffs.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if i == 0 {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else if a.is_integer() {
            out.push_str(&format!("{a}{mono}"));
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    out
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

impl FromStr for RatPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let terms = parse_terms(s)?;
        let deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (c, e) in terms {
            coeffs[e] += c;
        }
        Ok(RatPolynomial::new(coeffs))
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let p: RatPolynomial = s.parse()?;
        p.to_int_exact()
            .ok_or_else(|| Error::parse(format!("non-integer coefficient in {s:?}")))
    }
}

macro_rules! poly_ops {
    ($ty:ident, $scalar:ty) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let n = self.coeffs.len().max(rhs.coeffs.len());
                let mut v = Vec::with_capacity(n);
                for i in 0..n {
                    let mut c = self.coeffs.get(i).cloned().unwrap_or_else(<$scalar>::zero);
                    if let Some(d) = rhs.coeffs.get(i) {
                        c += d;
                    }
                    v.push(c);
                }
                $ty::new(v)
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                self + &(-rhs)
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty::new(self.coeffs.iter().map(|c| -c).collect())
            }
        }

        impl Mul for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                if self.is_zero() || rhs.is_zero() {
                    return $ty::zero();
                }
                let mut v = vec![<$scalar>::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
                for (i, a) in self.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in rhs.coeffs.iter().enumerate() {
                        v[i + j] += a * b;
                    }
                }
                $ty::new(v)
            }
        }

        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }

        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }

        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }

        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}

poly_ops!(IntPolynomial, BigInt);
poly_ops!(RatPolynomial, BigRational);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print_roundtrip() {
        for s in ["x^4-x^3-x^2-x+1", "x^4-10x^3+10x^2-10x+1", "-x", "x^2-2", "3", "0"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("1 - x + x^2"), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(p("2*x^3 + x^3"), IntPolynomial::from_i64(&[0, 0, 0, 3]));
        assert_eq!(p("t^2-t-3").to_string(), "x^2-x-3");
    }

    #[test]
    fn rational_parse() {
        let q: RatPolynomial = "1/2 + 1/2*x".parse().unwrap();
        assert_eq!(q.to_string(), "1/2*x+1/2");
        assert!("x + 1/2".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn gcd_and_square_free() {
        let a = p("x^3-3x^2+3x-1");
        assert_eq!(a.square_free_part(), p("x-1"));
        assert_eq!(a.root_multiplicity(&BigInt::one()), 3);
        let g = p("x^2-1").gcd(&p("x^2+2x+1"));
        assert_eq!(g, p("x+1"));
    }

    #[test]
    fn exact_division() {
        let f = p("x^4+x^2+1");
        assert_eq!(f.div_exact(&p("x^2+x+1")), Some(p("x^2-x+1")));
        assert_eq!(f.div_exact(&p("x-1")), None);
        assert_eq!(p("x^2-1").div_exact(&p("2x-2")), None);
    }

    #[test]
    fn inverse_mod_quadratic() {
        let m = RatPolynomial::from_i64(&[-5, 0, 1]);
        let inv = RatPolynomial::from_i64(&[1, 1]).inverse_mod(&m).unwrap();
        let prod = (&inv * &RatPolynomial::from_i64(&[1, 1])).rem(&m);
        assert_eq!(prod, RatPolynomial::one());
    }

    #[test]
    fn reciprocal_and_reflect() {
        assert!(p("x^4-x^3-x^2-x+1").is_reciprocal());
        assert!(!p("x^3-2").is_reciprocal());
        assert_eq!(p("x^3+x^2+2").reflect(), p("-x^3+x^2+2"));
    }
}
