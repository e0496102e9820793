//! Rational rotations via the Cayley transform, and positivization of a
//! dominant eigenvector.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{eigenvalue_multiplicity, eigenvector_exact, SymmetricMatrix};
use crate::error::{Error, Result};
use crate::exact::field::{FieldElement, FieldVector};
use crate::exact::roots::AlgebraicReal;
use crate::linalg::RatMatrix;

/// An element of SO(n; ℚ).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct RationalRotation {
    matrix: RatMatrix,
}

impl RationalRotation {
    /// Checks `UᵀU = I` and `det U = 1` exactly.
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::precondition("rotation must be square"));
        }
        let n = matrix.rows();
        if &matrix.transpose() * &matrix != RatMatrix::identity(n) {
            return Err(Error::precondition("matrix is not orthogonal"));
        }
        if !matrix.det().is_one() {
            return Err(Error::precondition("orthogonal matrix has determinant -1"));
        }
        Ok(RationalRotation { matrix })
    }

    pub fn identity(n: usize) -> Self {
        RationalRotation {
            matrix: RatMatrix::identity(n),
        }
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == RatMatrix::identity(self.matrix.rows())
    }
}

/// `(I - S)^{-1}(I + S)` for a skew-symmetric rational `S`.
pub fn cayley(s: &RatMatrix) -> Result<RationalRotation> {
    if *s != -&s.transpose() {
        return Err(Error::precondition("Cayley transform needs a skew-symmetric matrix"));
    }
    let id = RatMatrix::identity(s.rows());
    // I - S is invertible for real skew S: its eigenvalues are 1 - i t
    let inv = (&id - s).inverse().expect("I - S invertible");
    RationalRotation::new(&inv * &(&id + s))
}

#[derive(Clone, Copy, Debug)]
pub struct PositivizeConfig {
    /// Number of successively finer rational approximations to try.
    pub retries: u32,
}

impl Default for PositivizeConfig {
    fn default() -> Self {
        PositivizeConfig { retries: 20 }
    }
}

/// Find a rational rotation `U` such that `U Q Uᵀ` has a strictly positive
/// eigenvector for `theta`. Returns `(U, U Q Uᵀ)`.
///
/// The numeric rotation taking the eigenvector direction to the diagonal
/// `(1, …, 1)/√n` is rationalized through its Cayley parameter; each retry
/// uses a finer grid, and acceptance is decided exactly.
pub fn positivize(
    q: &SymmetricMatrix,
    theta: &AlgebraicReal,
    config: PositivizeConfig,
) -> Result<(RationalRotation, SymmetricMatrix)> {
    let n = q.dim();
    let mult = eigenvalue_multiplicity(q.matrix(), theta);
    if mult == 0 {
        return Err(Error::precondition(format!("{theta} is not an eigenvalue")));
    }
    if mult > 1 {
        return Err(Error::precondition(format!(
            "{theta} is a multiple eigenvalue (multiplicity {mult})"
        )));
    }
    let v = eigenvector_exact(q.matrix(), theta)?;
    if v.is_strictly_positive() {
        return Ok((RationalRotation::identity(n), q.clone()));
    }
    let s_num = numeric_cayley_parameter(&v);
    let mut denom: i64 = 16;
    for _ in 0..config.retries {
        let s = rationalize_skew(&s_num, denom);
        let u = cayley(&s)?;
        if is_rotated_positive(&v, &u) {
            let qp = q.conjugate(&u);
            return Ok((u, qp));
        }
        denom = denom.saturating_mul(4);
    }
    Err(Error::exhausted(format!(
        "no rational rotation made the eigenvector positive after {} refinements; \
         numeric eigenvector {:?}",
        config.retries,
        v.to_f64()
    )))
}

/// `U v` is a positive or negative multiple of a positive vector.
fn is_rotated_positive(v: &FieldVector, u: &RationalRotation) -> bool {
    let w = v.apply(u.matrix());
    let minus_one = FieldElement::from_int(w.coords()[0].field(), -1);
    w.is_strictly_positive() || w.scale(&minus_one).is_strictly_positive()
}

/// Skew matrix `S = (R - I)(R + I)^{-1}` for the rotation `R` in the plane
/// of `v̂` and the diagonal taking one to the other, in floating point.
fn numeric_cayley_parameter(v: &FieldVector) -> Vec<Vec<f64>> {
    let mut u = v.to_f64();
    let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    u.iter_mut().for_each(|x| *x /= norm);
    let n = u.len();
    let w = vec![1.0 / (n as f64).sqrt(); n];
    let mut c: f64 = u.iter().zip(&w).map(|(a, b)| a * b).sum();
    if c < 0.0 {
        u.iter_mut().for_each(|x| *x = -*x);
        c = -c;
    }
    // K = w uᵀ - u wᵀ, R = I + K + K² / (1 + c)
    let k: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| w[i] * u[j] - u[i] * w[j]).collect())
        .collect();
    let k2 = matmul(&k, &k);
    let r: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| f64::from(u8::from(i == j)) + k[i][j] + k2[i][j] / (1.0 + c))
                .collect()
        })
        .collect();
    // S = (R - I)(R + I)^{-1}
    let rp: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| r[i][j] + f64::from(u8::from(i == j))).collect())
        .collect();
    let rm: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| r[i][j] - f64::from(u8::from(i == j))).collect())
        .collect();
    let rp_inv = invert(&rp);
    matmul(&rm, &rp_inv)
}

fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// Gauss-Jordan with partial pivoting.
fn invert(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| f64::from(u8::from(i == j))));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs()))
            .expect("nonempty");
        m.swap(c, p);
        let piv = m[c][c];
        m[c].iter_mut().for_each(|x| *x /= piv);
        for r in 0..n {
            if r != c {
                let f = m[r][c];
                let pivot_row = m[c].clone();
                m[r].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= f * y);
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Round to the grid `1/denom` and antisymmetrize exactly.
fn rationalize_skew(s: &[Vec<f64>], denom: i64) -> RatMatrix {
    let n = s.len();
    let d = BigInt::from(denom);
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = 0.5 * (s[i][j] - s[j][i]);
            let num = BigInt::from((v * denom as f64).round() as i64);
            let x = BigRational::new(num, d.clone());
            m.set(i, j, x.clone());
            m.set(j, i, -x);
        }
        m.set(i, i, BigRational::zero());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::roots::isolate_roots;
    use crate::realize::eigenvector_exact;

    fn top(p: &str) -> AlgebraicReal {
        isolate_roots(&p.parse().unwrap()).unwrap().pop().unwrap()
    }

    #[test]
    fn already_positive_gives_identity() {
        let q = SymmetricMatrix::from_i64(&[&[2, 1], &[1, -1]]).unwrap();
        let (u, qp) = positivize(&q, &top("x^2-x-3"), PositivizeConfig::default()).unwrap();
        assert!(u.is_identity());
        assert_eq!(qp, q);
        let q = SymmetricMatrix::from_i64(&[&[3]]).unwrap();
        let (u, _) = positivize(&q, &AlgebraicReal::from_integer(3), PositivizeConfig::default()).unwrap();
        assert_eq!(u.matrix(), &RatMatrix::identity(1));
    }

    #[test]
    fn sign_conjugated_copy_is_rotated() {
        let q = SymmetricMatrix::from_i64(&[&[2, -1], &[-1, -1]]).unwrap();
        let theta = top("x^2-x-3");
        assert!(!eigenvector_exact(q.matrix(), &theta).unwrap().is_strictly_positive());
        let (u, qp) = positivize(&q, &theta, PositivizeConfig::default()).unwrap();
        assert!(!u.is_identity());
        assert_eq!(qp.char_poly(), q.char_poly());
        assert!(eigenvector_exact(qp.matrix(), &theta).unwrap().is_strictly_positive());
        let ut = u.matrix().transpose();
        assert_eq!(&ut * u.matrix(), RatMatrix::identity(2));
    }

    #[test]
    fn three_dimensional() {
        // eigenvector for the top eigenvalue has mixed signs
        let q = SymmetricMatrix::from_i64(&[&[3, -1, 0], &[-1, 2, -1], &[0, -1, 1]]).unwrap();
        let cp = q.int_char_poly().unwrap();
        let theta = isolate_roots(&cp).unwrap().pop().unwrap();
        let (u, qp) = positivize(&q, &theta, PositivizeConfig::default()).unwrap();
        assert_eq!(qp.char_poly(), q.char_poly());
        assert!(eigenvector_exact(qp.matrix(), &theta).unwrap().is_strictly_positive());
        assert!(u.matrix().det().is_one());
    }

    #[test]
    fn rejects_repeated_eigenvalue() {
        let q = SymmetricMatrix::new(RatMatrix::identity(2)).unwrap();
        assert!(positivize(&q, &AlgebraicReal::from_integer(1), PositivizeConfig::default()).is_err());
    }

    #[test]
    fn cayley_requires_skew() {
        assert!(cayley(&RatMatrix::identity(2)).is_err());
        let s = RatMatrix::parse_json(r#"[["0","1/2"],["-1/2","0"]]"#).unwrap();
        let u = cayley(&s).unwrap();
        // (I - S)^{-1}(I + S) for t = 1/2: cos = 3/5, sin = 4/5
        assert_eq!(
            u.matrix(),
            &RatMatrix::parse_json(r#"[["3/5","4/5"],["-4/5","3/5"]]"#).unwrap()
        );
    }
}
