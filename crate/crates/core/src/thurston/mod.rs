//! Thurston's construction for two tight filling multicurves.
//!
//! `Q` is the `m × n` matrix with `Q[r][s] = i(D_r, C_s)`. With twist
//! weights `n_s` on the `C` curves and `m_r` on the `D` curves, the widths
//! `ℓ` (indexed by `D`) form a Perron-Frobenius eigenvector of `MQNQᵀ` and
//! the heights `h` (indexed by `C`) one of `NQᵀMQ`, both for the same `ν`.
//! In these coordinates the two multitwists act as
//! `[[1, 1], [0, 1]]` and `[[1, 0], [-ν, 1]]`.

mod veech;
mod word;

use std::cmp::Ordering;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::field::{eigenvector, FieldElement, FieldVector, NumberField};
use crate::exact::roots::{isolate_roots, AlgebraicReal};
use crate::linalg::RatMatrix;
use crate::realize::eigenvalue_multiplicity;

pub use veech::{salem_from_2x2, veech_check, VeechCheck};
pub use word::{classify_word, twist_reps, Letter, Mat2, PseudoAnosovReport, Verdict, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistWeights {
    /// `n_s`, one per curve `C_s`.
    pub n: Vec<i64>,
    /// `m_r`, one per curve `D_r`.
    pub m: Vec<i64>,
}

impl TwistWeights {
    pub fn new(n: Vec<i64>, m: Vec<i64>) -> Result<Self> {
        if n.iter().chain(&m).any(|&w| w < 1) {
            return Err(Error::precondition("twist weights must be at least 1"));
        }
        Ok(TwistWeights { n, m })
    }

    /// All weights 1 for an `m × n` intersection matrix.
    pub fn ones(m: usize, n: usize) -> Self {
        TwistWeights {
            n: vec![1; n],
            m: vec![1; m],
        }
    }

    fn n_matrix(&self) -> RatMatrix {
        RatMatrix::diagonal(
            &self
                .n
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect::<Vec<_>>(),
        )
    }

    fn m_matrix(&self) -> RatMatrix {
        RatMatrix::diagonal(
            &self
                .m
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect::<Vec<_>>(),
        )
    }
}

/// Perron-Frobenius data of the construction, exact over ℚ(ν).
#[derive(Clone, Debug, Serialize)]
pub struct PFData {
    pub nu: AlgebraicReal,
    /// The matrix whose Perron-Frobenius eigenvalue is `ν`.
    pub product: RatMatrix,
    /// `ℓ`, indexed by the `D` curves.
    pub widths: FieldVector,
    /// `h`, indexed by the `C` curves; absent when only the product is known.
    pub heights: Option<FieldVector>,
    /// Common value of `h_s / (n_s Σ_r ℓ_r Q[r][s])`.
    pub tan_theta: Option<FieldElement>,
    /// Common value of `ℓ_r / (m_r Σ_s h_s Q[r][s])`.
    pub tan_phi: Option<FieldElement>,
}

impl PFData {
    pub fn field(&self) -> &Arc<NumberField> {
        self.widths.coords()[0].field()
    }
}

/// Strongly connected support graph.
fn is_irreducible(p: &RatMatrix) -> bool {
    let n = p.rows();
    (0..n).all(|start| {
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && !p.get(i, j).is_zero() {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    })
}

/// `ν` and a positive eigenvector of an irreducible nonnegative matrix.
fn perron_frobenius(p: &RatMatrix) -> Result<(AlgebraicReal, FieldVector)> {
    let inapplicable = |why: &str| Error::precondition(format!("Perron-Frobenius inapplicable: {why}"));
    if !p.is_square() || p.rows() == 0 {
        return Err(inapplicable("matrix is not square"));
    }
    if p.entries().any(|x| x.is_negative()) {
        return Err(inapplicable("matrix has a negative entry"));
    }
    if !is_irreducible(p) {
        return Err(inapplicable("matrix is reducible"));
    }
    let cp = p.char_poly().to_primitive_int();
    let roots = isolate_roots(&cp)?;
    let nu = roots
        .last()
        .cloned()
        .ok_or_else(|| Error::invariant("nonnegative matrix without real eigenvalue"))?;
    if nu.signum() != Ordering::Greater {
        return Err(inapplicable("spectral radius is zero"));
    }
    let neg = nu.neg();
    if roots.iter().any(|r| r.cmp_exact(&neg) == Ordering::Less) {
        return Err(Error::invariant("largest real eigenvalue is not the spectral radius"));
    }
    if eigenvalue_multiplicity(p, &nu) != 1 {
        return Err(Error::invariant("Perron-Frobenius eigenvalue is not simple"));
    }
    let field = NumberField::new(nu.clone());
    let v = eigenvector(p, &field)?;
    if !v.is_strictly_positive() {
        return Err(Error::invariant("Perron-Frobenius eigenvector is not positive"));
    }
    Ok((nu, v))
}

/// Perron-Frobenius data when only the product `MQNQᵀ` is given.
pub fn pf_of_product(p: &RatMatrix) -> Result<PFData> {
    if !p.is_integral() {
        return Err(Error::precondition("product matrix must be integral"));
    }
    let (nu, widths) = perron_frobenius(p)?;
    Ok(PFData {
        nu,
        product: p.clone(),
        widths,
        heights: None,
        tan_theta: None,
        tan_phi: None,
    })
}

/// `ν`, `ℓ` and `h` for the intersection matrix `q` and weights `w`, with
/// both affine conditions checked exactly.
pub fn pf_data(q: &RatMatrix, w: &TwistWeights) -> Result<PFData> {
    let (rows, cols) = (q.rows(), q.cols());
    if !q.is_integral() || q.entries().any(|x| x.is_negative()) {
        return Err(Error::precondition(
            "intersection matrix must be a nonnegative integer matrix",
        ));
    }
    if w.m.len() != rows || w.n.len() != cols {
        return Err(Error::precondition(format!(
            "need {rows} weights for the D curves and {cols} for the C curves"
        )));
    }
    let mm = w.m_matrix();
    let nn = w.n_matrix();
    let qt = q.transpose();
    let product = &(&(&mm * q) * &nn) * &qt;
    let (nu, widths) = perron_frobenius(&product)?;
    let field = widths.coords()[0].field().clone();
    let heights_matrix = &(&(&nn * &qt) * &mm) * q;
    let heights = eigenvector(&heights_matrix, &field)?;
    if !heights.is_strictly_positive() {
        return Err(Error::precondition("some C curve meets no D curve"));
    }

    // h_s / (n_s Σ_r ℓ_r Q[r][s]) and ℓ_r / (m_r Σ_s h_s Q[r][s])
    let ratios = |num: &FieldVector, den: &FieldVector, weights: &[i64]| -> Result<FieldElement> {
        let mut common: Option<FieldElement> = None;
        for (idx, (a, b)) in num.coords().iter().zip(den.coords()).enumerate() {
            let d = b.scale(&BigRational::from_integer(weights[idx].into()));
            let r = a
                .div(&d)
                .ok_or_else(|| Error::invariant("zero denominator in an affine condition"))?;
            match &common {
                None => common = Some(r),
                Some(c) if *c != r => return Err(Error::invariant("affine condition fails")),
                Some(_) => {}
            }
        }
        Ok(common.expect("nonempty"))
    };
    let tan_theta = ratios(&heights, &widths.apply(&qt), &w.n)?;
    let tan_phi = ratios(&widths, &heights.apply(q), &w.m)?;
    let nu_elem = FieldElement::generator(&field);
    if !tan_theta.mul(&tan_phi).mul(&nu_elem).is_one() {
        return Err(Error::invariant("tan θ · tan φ · ν is not 1"));
    }
    Ok(PFData {
        nu,
        product,
        widths,
        heights: Some(heights),
        tan_theta: Some(tan_theta),
        tan_phi: Some(tan_phi),
    })
}
