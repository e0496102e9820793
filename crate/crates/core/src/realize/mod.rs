//! Realizing totally real algebraic integers as eigenvalues of symmetric
//! rational matrices, exact eigenvectors, and rational rotations that make
//! the dominant eigenvector positive.

mod rotation;
mod search;

use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::factor::is_irreducible;
use crate::exact::field::{self, FieldVector, NumberField};
use crate::exact::poly::{IntPolynomial, RatPolynomial};
use crate::exact::roots::{count_real_roots, AlgebraicReal};
use crate::linalg::RatMatrix;

pub use rotation::{cayley, positivize, PositivizeConfig, RationalRotation};
pub use search::SearchPhase;
use search::{scaled_target, to_rational_rows, IntSearch, Pattern, DENSE_LEAF_CAP};

/// Symmetric matrix of exact rationals with a lazily cached characteristic
/// polynomial.
#[derive(Clone, Debug)]
pub struct SymmetricMatrix {
    matrix: RatMatrix,
    char_poly: OnceLock<RatPolynomial>,
}

impl PartialEq for SymmetricMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for SymmetricMatrix {}

impl SymmetricMatrix {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::precondition("matrix is not symmetric"));
        }
        Ok(SymmetricMatrix {
            matrix,
            char_poly: OnceLock::new(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(RatMatrix::from_i64(rows))
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn char_poly(&self) -> &RatPolynomial {
        self.char_poly.get_or_init(|| self.matrix.char_poly())
    }

    pub fn int_char_poly(&self) -> Option<IntPolynomial> {
        self.char_poly().to_int_exact()
    }

    /// `U Q Uᵀ`.
    pub fn conjugate(&self, u: &RationalRotation) -> SymmetricMatrix {
        let m = &(u.matrix() * &self.matrix) * &u.matrix().transpose();
        SymmetricMatrix::new(m).expect("conjugate of symmetric is symmetric")
    }
}

impl Serialize for SymmetricMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymmetricMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = RatMatrix::deserialize(d)?;
        SymmetricMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

/// A symmetric matrix with characteristic polynomial `g(x)(x - 1)^e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Realization {
    pub matrix: SymmetricMatrix,
    pub excess: usize,
    pub phase: SearchPhase,
    /// Common denominator of the entries scanned in the winning phase.
    pub denominator: i64,
}

/// Denominators tried after the integer phases.
pub const RATIONAL_DENOMINATORS: std::ops::RangeInclusive<i64> = 2..=4;

/// Find a symmetric matrix whose characteristic polynomial is
/// `g(x)(x - 1)^e` for some `e <= e_max`.
///
/// For each `e` in turn: integer matrices with entries in
/// `[-search_bound, search_bound]` (dense, or tridiagonal when the dense
/// space is too large), then matrices with entries `a/q`, `|a/q| <=
/// search_bound`, for `q` in [`RATIONAL_DENOMINATORS`]. The first hit wins.
pub fn realize_symmetric(g: &IntPolynomial, e_max: usize, search_bound: i64) -> Result<Realization> {
    if e_max > 2 {
        return Err(Error::precondition("e_max must be 0, 1 or 2"));
    }
    if search_bound < 1 {
        return Err(Error::precondition("search bound must be positive"));
    }
    if !g.is_monic() || g.degree() == 0 {
        return Err(Error::precondition(format!("{g} is not monic of positive degree")));
    }
    if !is_irreducible(g) {
        return Err(Error::precondition(format!("{g} is not irreducible")));
    }
    if count_real_roots(g) != g.degree() {
        return Err(Error::precondition(format!("{g} is not totally real")));
    }
    for e in 0..=e_max {
        let target = g * &IntPolynomial::linear_root(1).pow(e as u32);
        if let Some(r) = integer_phase(&target, search_bound) {
            return Ok(finish(r.0, e, r.1, 1));
        }
    }
    for e in 0..=e_max {
        let target = g * &IntPolynomial::linear_root(1).pow(e as u32);
        for q in RATIONAL_DENOMINATORS {
            let scaled = scaled_target(target.coeffs(), q);
            if let Some((a, phase)) = scan(&scaled, search_bound * q) {
                let phase = match phase {
                    SearchPhase::IntegerDense => SearchPhase::RationalDense,
                    _ => SearchPhase::RationalTridiagonal,
                };
                let rows = to_rational_rows(&a, q);
                return Ok(finish(rows, e, phase, q));
            }
        }
    }
    Err(Error::exhausted(format!(
        "realization not found within bound {search_bound} for {g} (e <= {e_max})"
    )))
}

fn integer_phase(target: &IntPolynomial, bound: i64) -> Option<(Vec<Vec<num_rational::BigRational>>, SearchPhase)> {
    let (a, phase) = scan(target.coeffs(), bound)?;
    Some((to_rational_rows(&a, 1), phase))
}

/// Dense scan when affordable, tridiagonal otherwise.
fn scan(target: &[BigInt], bound: i64) -> Option<(Vec<Vec<i128>>, SearchPhase)> {
    let dense = IntSearch::new(target, bound, Pattern::Dense)?;
    let s = if dense.leaves() <= DENSE_LEAF_CAP {
        dense
    } else {
        IntSearch::new(target, bound, Pattern::Tridiagonal)?
    };
    let phase = match s.pattern() {
        Pattern::Dense => SearchPhase::IntegerDense,
        Pattern::Tridiagonal => SearchPhase::IntegerTridiagonal,
    };
    s.run().map(|a| (a, phase))
}

fn finish(
    rows: Vec<Vec<num_rational::BigRational>>,
    excess: usize,
    phase: SearchPhase,
    denominator: i64,
) -> Realization {
    let m = RatMatrix::from_rows(rows).expect("square");
    Realization {
        matrix: SymmetricMatrix::new(m).expect("search emits symmetric matrices"),
        excess,
        phase,
        denominator,
    }
}

/// The eigenvector of `q` for the eigenvalue `theta`, exact over ℚ(θ) and
/// normalized so its first nonzero coordinate is 1.
pub fn eigenvector_exact(q: &RatMatrix, theta: &AlgebraicReal) -> Result<FieldVector> {
    let cp = q.char_poly().to_primitive_int();
    if cp.div_exact(theta.minpoly()).is_none() {
        return Err(Error::precondition(format!(
            "{} is not an eigenvalue: its minimal polynomial {} does not divide {}",
            theta,
            theta.minpoly(),
            cp
        )));
    }
    let k = NumberField::new(theta.clone());
    field::eigenvector(q, &k)
}

/// Multiplicity of `theta` as a root of `char_poly(q)`.
pub fn eigenvalue_multiplicity(q: &RatMatrix, theta: &AlgebraicReal) -> usize {
    let mut cp = q.char_poly().to_primitive_int();
    let mut k = 0;
    while let Some(next) = cp.div_exact(theta.minpoly()) {
        cp = next;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::FieldElement;
    use crate::exact::roots::isolate_roots;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn top_root(s: &str) -> AlgebraicReal {
        isolate_roots(&p(s)).unwrap().pop().unwrap()
    }

    #[test]
    fn desk_scale_realizations() {
        let r = realize_symmetric(&p("x^2-x-3"), 2, 6).unwrap();
        assert_eq!(r.matrix.matrix(), &RatMatrix::from_i64(&[&[2, 1], &[1, -1]]));
        assert_eq!(r.excess, 0);
        let r = realize_symmetric(&p("x-3"), 2, 6).unwrap();
        assert_eq!(r.matrix.matrix(), &RatMatrix::from_i64(&[&[3]]));
        let r = realize_symmetric(&p("x^2-10x+8"), 2, 6).unwrap();
        assert_eq!(r.matrix.char_poly().to_string(), "x^2-10x+8");
        let r = realize_symmetric(&p("x^2-10x+8"), 2, 9).unwrap();
        assert_eq!(r.matrix.char_poly().to_string(), "x^2-10x+8");
    }

    #[test]
    fn rational_scan_scales_back() {
        // 2A for A = [[1/2, 1/2], [1/2, -1/2]] (char poly x^2 - 1/2) is integral
        let half = num_rational::BigRational::new(1.into(), 2.into());
        let target: Vec<BigInt> = scaled_target(&[(-1).into(), 0.into(), 2.into()], 2)
            .into_iter()
            .map(|c| c / BigInt::from(2))
            .collect();
        let (a, _) = scan(&target, 2).unwrap();
        let m = RatMatrix::from_rows(to_rational_rows(&a, 2)).unwrap();
        assert_eq!(
            m.char_poly(),
            RatPolynomial::new(vec![-half, num_traits::Zero::zero(), num_traits::One::one()])
        );
    }

    #[test]
    fn excess_used_when_needed() {
        // 3 is not a sum of two rational squares, so no 2x2 realization exists
        let g = p("x^2-3");
        assert_eq!(realize_symmetric(&g, 0, 3).unwrap_err().exit_code(), 3);
        let r = realize_symmetric(&g, 1, 3).unwrap();
        assert_eq!(r.excess, 1);
        let expect = &g * &IntPolynomial::linear_root(1);
        assert_eq!(r.matrix.int_char_poly().unwrap(), expect);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(realize_symmetric(&p("x^2+1"), 0, 6).is_err());
        assert!(realize_symmetric(&p("x^2-4"), 0, 6).is_err());
        assert_eq!(realize_symmetric(&p("x^2-1000x+1"), 0, 1).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn eigenvectors_by_hand() {
        let q = RatMatrix::from_i64(&[&[1, 1], &[1, 9]]);
        let theta = top_root("x^2-10x+8");
        let v = eigenvector_exact(&q, &theta).unwrap();
        let k = v.coords()[0].field().clone();
        let t = FieldElement::generator(&k);
        assert_eq!(v.coords()[1], t.sub(&FieldElement::one(&k)));
        let v = eigenvector_exact(&RatMatrix::from_i64(&[&[3]]), &AlgebraicReal::from_integer(3)).unwrap();
        assert!(v.coords()[0].is_one());
        assert!(eigenvector_exact(&q, &top_root("x^2-2")).is_err());
    }
}
