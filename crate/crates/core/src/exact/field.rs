//! Arithmetic in a real number field ℚ(θ), θ a real algebraic number.
//!
//! Elements are rational polynomials in θ reduced modulo its minimal
//! polynomial. Signs and comparisons are decided exactly through θ's
//! isolating interval.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::factor::square_free_decomposition;
use crate::exact::interval::RatInterval;
use crate::exact::poly::{IntPolynomial, RatPolynomial};
use crate::exact::roots::{select_root, AlgebraicReal};
use crate::linalg::RatMatrix;

/// The field ℚ(θ) with a fixed real embedding.
#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    generator: AlgebraicReal,
    modulus: RatPolynomial,
}

impl NumberField {
    pub fn new(generator: AlgebraicReal) -> Arc<Self> {
        let modulus = generator.minpoly().to_rat().monic();
        Arc::new(NumberField { generator, modulus })
    }

    pub fn generator(&self) -> &AlgebraicReal {
        &self.generator
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn modulus(&self) -> &RatPolynomial {
        &self.modulus
    }
}

/// An element of a [`NumberField`].
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Arc<NumberField>,
    repr: RatPolynomial,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other);
        self.repr == other.repr
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn new(field: &Arc<NumberField>, repr: RatPolynomial) -> Self {
        let repr = repr.rem(field.modulus());
        FieldElement {
            field: Arc::clone(field),
            repr,
        }
    }

    pub fn from_rational(field: &Arc<NumberField>, q: BigRational) -> Self {
        Self::new(field, RatPolynomial::constant(q))
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::new(field, RatPolynomial::zero())
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 1)
    }

    /// θ itself.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::new(field, RatPolynomial::x())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn repr(&self) -> &RatPolynomial {
        &self.repr
    }

    fn same_field(&self, other: &Self) {
        debug_assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "mixing elements of different fields"
        );
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.repr == RatPolynomial::one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        (self.repr.degree() == 0).then(|| self.repr.coeff(0))
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_field(o);
        Self::new(&self.field, &self.repr + &o.repr)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_field(o);
        Self::new(&self.field, &self.repr - &o.repr)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_field(o);
        Self::new(&self.field, &self.repr * &o.repr)
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.field, -&self.repr)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.field, self.repr.scale(k))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        self.repr
            .inverse_mod(self.field.modulus())
            .map(|r| Self::new(&self.field, r))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(&self.field);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    pub fn signum(&self) -> Ordering {
        self.field.generator.sign_of(&self.repr)
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        let shifted = &self.repr - &RatPolynomial::constant(q.clone());
        self.field.generator.sign_of(&shifted)
    }

    pub fn cmp_int(&self, n: i64) -> Ordering {
        self.cmp_rational(&BigRational::from_integer(n.into()))
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Enclosure of the real value, of width at most `width`.
    pub fn enclose(&self, width: &BigRational) -> RatInterval {
        self.field.generator.enclose_poly(&self.repr, width)
    }

    /// Enclosure of the image under another embedding of the field, i.e. the
    /// same polynomial evaluated at a conjugate of the generator.
    pub fn enclose_at(&self, conjugate: &AlgebraicReal, width: &BigRational) -> RatInterval {
        conjugate.enclose_poly(&self.repr, width)
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(&BigRational::new(BigInt::one(), BigInt::one() << 60))
            .to_f64()
            .mid()
    }

    /// Matrix of multiplication by `self` on the power basis.
    pub fn multiplication_matrix(&self) -> RatMatrix {
        let n = self.field.degree();
        let mut m = RatMatrix::zeros(n, n);
        let mut basis = FieldElement::one(&self.field);
        let theta = FieldElement::generator(&self.field);
        for col in 0..n {
            let img = self.mul(&basis);
            for row in 0..n {
                m.set(row, col, img.repr.coeff(row));
            }
            basis = basis.mul(&theta);
        }
        m
    }

    /// Characteristic polynomial over ℚ: the field norm form, a power of the
    /// minimal polynomial.
    pub fn char_poly(&self) -> RatPolynomial {
        self.multiplication_matrix().char_poly()
    }

    /// Minimal polynomial over ℚ, primitive with positive leading coefficient.
    pub fn minimal_polynomial(&self) -> IntPolynomial {
        let cp = self.char_poly().to_primitive_int();
        let parts = square_free_decomposition(&cp);
        debug_assert_eq!(parts.len(), 1, "char poly of a field element is a pure power");
        parts[0].0.clone()
    }

    /// Degree of ℚ(self) over ℚ.
    pub fn degree(&self) -> usize {
        self.minimal_polynomial().degree()
    }

    /// The real value of this element as an algebraic number.
    pub fn to_algebraic_real(&self) -> Result<AlgebraicReal> {
        if let Some(q) = self.as_rational() {
            return Ok(AlgebraicReal::from_rational(q));
        }
        let mp = self.minimal_polynomial();
        select_root(&mp, |w| self.enclose(w))
    }

    /// Coefficients over a common positive denominator:
    /// `(numerators, denominator)` with `self = Σ numerators[i] θ^i / denominator`.
    pub fn common_denominator_form(&self) -> (Vec<BigInt>, BigInt) {
        let d = self
            .repr
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .repr
            .coeffs()
            .iter()
            .map(|c| (c * BigRational::from_integer(d.clone())).to_integer())
            .collect();
        (nums, d)
    }

    pub fn display_var(&self, var: &str) -> String {
        self.repr.display_var(var)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("a"))
    }
}

/// Vector with coordinates in a number field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldVector {
    coords: Vec<FieldElement>,
}

impl FieldVector {
    pub fn new(coords: Vec<FieldElement>) -> Self {
        FieldVector { coords }
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Every coordinate is strictly positive (decided exactly).
    pub fn is_strictly_positive(&self) -> bool {
        self.coords.iter().all(|c| c.signum() == Ordering::Greater)
    }

    /// `m · self` for a rational matrix.
    pub fn apply(&self, m: &RatMatrix) -> FieldVector {
        assert_eq!(m.cols(), self.len());
        let field = self.coords[0].field();
        let coords = (0..m.rows())
            .map(|i| {
                (0..m.cols()).fold(FieldElement::zero(field), |acc, j| {
                    acc.add(&self.coords[j].scale(m.get(i, j)))
                })
            })
            .collect();
        FieldVector { coords }
    }

    pub fn scale(&self, k: &FieldElement) -> FieldVector {
        FieldVector::new(self.coords.iter().map(|c| c.mul(k)).collect())
    }

    /// Divide by the first nonzero coordinate.
    pub fn normalized(&self) -> FieldVector {
        match self.coords.iter().find(|c| !c.is_zero()) {
            Some(c) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.to_f64()).collect()
    }
}

/// Basis of the right nullspace of a matrix over a number field, by exact
/// Gauss-Jordan elimination. Each basis vector has a 1 in its free column.
pub fn nullspace(rows: &[Vec<FieldElement>], field: &Arc<NumberField>) -> Vec<FieldVector> {
    let mut a: Vec<Vec<FieldElement>> = rows.to_vec();
    let nrows = a.len();
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        a[r] = a[r].iter().map(|x| x.mul(&inv)).collect();
        for i in 0..nrows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                a[i] = a[i].iter().zip(&a[r]).map(|(x, y)| x.sub(&f.mul(y))).collect();
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![FieldElement::zero(field); ncols];
            v[fc] = FieldElement::one(field);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = a[row][fc].neg();
            }
            FieldVector::new(v)
        })
        .collect()
}

/// Eigenvector of a rational matrix for the eigenvalue θ = the field
/// generator, normalized so its first nonzero coordinate is 1.
pub fn eigenvector(m: &RatMatrix, field: &Arc<NumberField>) -> Result<FieldVector> {
    if m.rows() != m.cols() {
        return Err(Error::precondition("eigenvector of a non-square matrix"));
    }
    let n = m.rows();
    let theta = FieldElement::generator(field);
    let rows: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = FieldElement::from_rational(field, m.get(i, j).clone());
                    if i == j {
                        e.sub(&theta)
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    let basis = nullspace(&rows, field);
    let v = basis
        .into_iter()
        .next()
        .ok_or_else(|| Error::precondition(format!("{} is not an eigenvalue of the matrix", field.generator())))?;
    Ok(v.normalized())
}

/// Check `m v = θ v` exactly.
pub fn is_eigenpair(m: &RatMatrix, v: &FieldVector) -> bool {
    if v.is_zero() {
        return false;
    }
    let field = v.coords()[0].field();
    let theta = FieldElement::generator(field);
    m.rows() == v.len() && v.apply(m) == v.scale(&theta)
}
