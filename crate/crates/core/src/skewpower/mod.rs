//! The block matrix 𝓜 = [[Q, -I], [I, 0]], the sequences `Q_k` and
//! `𝒬_k = 2Q_k - Q Q_{k-1}`, and the exponents that make `𝒬_k` an integral
//! positive matrix.
//!
//! `𝓜^k + 𝓜^{-k} = diag(𝒬_k, 𝒬_k)`, and `𝒬_k = V_k(Q)` where
//! `V_k(x + 1/x) = x^k + x^{-k}`, so the eigenvalues of `𝒬_k` are
//! `λ_i^k + λ_i^{-k}` for `λ_i + 1/λ_i` running over the eigenvalues of `Q`.

mod certificate;
mod integrality;
mod positivity;
mod power;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::poly::{IntPolynomial, RatPolynomial};
use crate::linalg::RatMatrix;

pub use certificate::{salem_certificate, CertificateConfig, IntegrityReport, Replay, SkewPowerCertificate};
pub use integrality::{integrality_exponent, IntegralityCertificate};
pub use positivity::{check_dominant, positivity_exponent, power_positivity_exponent, PositivityBound};
pub use power::{power_certificate, PowerCertificate};

/// `𝓜 = [[Q, -I], [I, 0]]` together with its exact characteristic
/// polynomial and the factorization data `p(x)(x^2 - x + 1)^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCompanion {
    q: RatMatrix,
    block: RatMatrix,
    char_poly: RatPolynomial,
    excess: usize,
}

impl BlockCompanion {
    pub fn q(&self) -> &RatMatrix {
        &self.q
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.block
    }

    /// `𝓜^{-1} = [[0, I], [-I, Q]]`, written down directly.
    pub fn inverse(&self) -> RatMatrix {
        let m = self.q.rows();
        let id = RatMatrix::identity(m);
        RatMatrix::block(&RatMatrix::zeros(m, m), &id, &-&id, &self.q)
    }

    pub fn char_poly(&self) -> &RatPolynomial {
        &self.char_poly
    }

    /// Multiplicity `e` of the eigenvalue 1 of `Q`.
    pub fn excess(&self) -> usize {
        self.excess
    }

    /// `p(x)` in `char_poly(𝓜) = p(x)(x^2 - x + 1)^e`.
    pub fn reciprocal_part(&self) -> RatPolynomial {
        let mut p = self.char_poly.clone();
        let cyc = RatPolynomial::from_i64(&[1, -1, 1]);
        for _ in 0..self.excess {
            let (quo, rem) = p.div_rem(&cyc);
            debug_assert!(rem.is_zero());
            p = quo;
        }
        p
    }
}

/// `x^m c(x + 1/x)` for `c` of degree `m`.
pub fn rational_reciprocal_lift(c: &RatPolynomial) -> RatPolynomial {
    let d = c.degree();
    let x2p1 = RatPolynomial::from_i64(&[1, 0, 1]);
    let mut acc = RatPolynomial::zero();
    for (i, a) in c.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mut mono = vec![BigRational::zero(); d - i + 1];
        mono[d - i] = a.clone();
        acc = &acc + &(&RatPolynomial::new(mono) * &x2p1.pow(i as u32));
    }
    acc
}

/// Build 𝓜 and check `det 𝓜 = 1` and
/// `char_poly(𝓜) = x^m char_poly(Q)(x + 1/x)`, which is
/// `p(x)(x^2 - x + 1)^e` when `char_poly(Q) = f(x)(x - 1)^e` and `p` is the
/// reciprocal lift of `f`.
pub fn build_block(q: &RatMatrix) -> Result<BlockCompanion> {
    if !q.is_square() || q.rows() == 0 {
        return Err(Error::precondition("Q must be a nonempty square matrix"));
    }
    let m = q.rows();
    let id = RatMatrix::identity(m);
    let block = RatMatrix::block(q, &-&id, &id, &RatMatrix::zeros(m, m));
    if !block.det().is_one() {
        return Err(Error::invariant("det of the block matrix is not 1"));
    }
    let cq = q.char_poly();
    let char_poly = block.char_poly();
    if char_poly != rational_reciprocal_lift(&cq) {
        return Err(Error::invariant(
            "char poly of the block matrix is not the reciprocal lift of char poly of Q",
        ));
    }
    let excess = multiplicity_of_one(&cq);
    let cyc = RatPolynomial::from_i64(&[1, -1, 1]);
    let mut rest = char_poly.clone();
    for _ in 0..excess {
        let (quo, rem) = rest.div_rem(&cyc);
        if !rem.is_zero() {
            return Err(Error::invariant("(x^2 - x + 1)^e does not divide the block char poly"));
        }
        rest = quo;
    }
    Ok(BlockCompanion {
        q: q.clone(),
        block,
        char_poly,
        excess,
    })
}

fn multiplicity_of_one(c: &RatPolynomial) -> usize {
    let lin = RatPolynomial::from_i64(&[-1, 1]);
    let mut c = c.clone();
    let mut e = 0;
    loop {
        let (quo, rem) = c.div_rem(&lin);
        if !rem.is_zero() || c.degree() == 0 {
            return e;
        }
        c = quo;
        e += 1;
    }
}

/// `(Q_k, 𝒬_k)` by the three-term recursion `Q_0 = I`, `Q_1 = Q`,
/// `Q_{j+1} = Q Q_j - Q_{j-1}`.
pub fn q_sequence(q: &RatMatrix, k: u64) -> (RatMatrix, RatMatrix) {
    assert!(k >= 1, "k must be positive");
    let mut prev = RatMatrix::identity(q.rows());
    let mut cur = q.clone();
    for _ in 1..k {
        let next = &(q * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    let two = BigRational::from_integer(2.into());
    let block = &cur.scale(&two) - &(q * &prev);
    (cur, block)
}

/// Iterator over `(k, 𝒬_k)` for `k = 1, 2, …` by the recursion.
pub struct BlockSequence {
    q: RatMatrix,
    prev: RatMatrix,
    cur: RatMatrix,
    k: u64,
}

impl BlockSequence {
    pub fn new(q: &RatMatrix) -> Self {
        BlockSequence {
            q: q.clone(),
            prev: RatMatrix::identity(q.rows()),
            cur: q.clone(),
            k: 1,
        }
    }
}

impl Iterator for BlockSequence {
    type Item = (u64, RatMatrix);

    fn next(&mut self) -> Option<Self::Item> {
        let two = BigRational::from_integer(2.into());
        let out = (self.k, &self.cur.scale(&two) - &(&self.q * &self.prev));
        let next = &(&self.q * &self.cur) - &self.prev;
        self.prev = std::mem::replace(&mut self.cur, next);
        self.k += 1;
        Some(out)
    }
}

/// `𝒬_k = V_k(Q)` by the doubling ladder `V_{2n} = V_n^2 - 2I`,
/// `V_{2n+1} = V_n V_{n+1} - Q`.
pub fn block_fast(q: &RatMatrix, k: u64) -> RatMatrix {
    assert!(k >= 1);
    let two_i = RatMatrix::identity(q.rows()).scale(&BigRational::from_integer(2.into()));
    // (V_n, V_{n+1}) starting from n = 0
    let mut a = two_i.clone();
    let mut b = q.clone();
    for bit in (0..64 - k.leading_zeros()).rev() {
        let ab = &(&a * &b) - q;
        if (k >> bit) & 1 == 1 {
            a = ab;
            b = &(&b * &b) - &two_i;
        } else {
            b = ab;
            a = &(&a * &a) - &two_i;
        }
    }
    a
}

/// Compare `𝓜^k + 𝓜^{-k}` from direct powering with `diag(𝒬_k, 𝒬_k)` from
/// the recursion.
pub fn verify_skew(q: &RatMatrix, k: u64) -> bool {
    let Ok(b) = build_block(q) else {
        return false;
    };
    let m = q.rows();
    let pk = b.matrix().pow(k as i64);
    let nk = b.inverse().pow(k as i64);
    let sum = &pk + &nk;
    let (_, qk) = q_sequence(q, k);
    let zero = RatMatrix::zeros(m, m);
    sum.sub_block(0, m, m, 2 * m) == zero
        && sum.sub_block(m, 2 * m, 0, m) == zero
        && sum.sub_block(0, m, 0, m) == qk
        && sum.sub_block(m, 2 * m, m, 2 * m) == qk
}

/// The root `a` of the `(x - a)^e` factor of `char_poly(𝒬_k)` contributed
/// by the eigenvalue 1 of `Q`: `V_k(1) = 2 cos(kπ/3)`.
pub fn chart_root(k: u64) -> i64 {
    match k % 6 {
        0 => 2,
        1 | 5 => 1,
        2 | 4 => -1,
        _ => -2,
    }
}

/// `(x - chart_root(k))^e` divides `char_poly(𝒬_k)`.
pub fn chart_holds(qk_char_poly: &IntPolynomial, k: u64, e: usize) -> bool {
    let lin = IntPolynomial::linear_root(chart_root(k)).pow(e as u32);
    qk_char_poly.div_exact(&lin).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64(rows)
    }

    #[test]
    fn block_examples() {
        let b = build_block(&m(&[&[3]])).unwrap();
        assert_eq!(b.matrix(), &m(&[&[3, -1], &[1, 0]]));
        assert_eq!(b.char_poly().to_string(), "x^2-3x+1");
        let b = build_block(&RatMatrix::identity(2)).unwrap();
        assert_eq!(b.char_poly().to_string(), "x^4-2x^3+3x^2-2x+1");
        assert_eq!(b.excess(), 2);
        assert_eq!(b.reciprocal_part(), RatPolynomial::one());
        let b = build_block(&m(&[&[2, 1], &[1, -1]])).unwrap();
        assert_eq!(b.char_poly().to_string(), "x^4-x^3-x^2-x+1");
        assert_eq!(b.excess(), 0);
    }

    #[test]
    fn inverse_is_inverse() {
        let b = build_block(&m(&[&[2, 1], &[1, -1]])).unwrap();
        assert_eq!(b.matrix() * &b.inverse(), RatMatrix::identity(4));
    }

    #[test]
    fn sequence_examples() {
        let q = m(&[&[2, 1], &[1, -1]]);
        assert_eq!(q_sequence(&q, 1).1, q);
        assert_eq!(q_sequence(&q, 2).1, m(&[&[3, 1], &[1, 0]]));
        assert_eq!(q_sequence(&q, 3).1, m(&[&[5, 1], &[1, 2]]));
        assert_eq!(q_sequence(&q, 4).1, m(&[&[8, 3], &[3, -1]]));
        assert_eq!(q_sequence(&q, 5).1, m(&[&[14, 4], &[4, 2]]));
        for k in 1..=20 {
            assert_eq!(block_fast(&q, k), q_sequence(&q, k).1, "k = {k}");
        }
        let seq: Vec<_> = BlockSequence::new(&q).take(5).map(|(_, b)| b).collect();
        assert_eq!(seq[4], m(&[&[14, 4], &[4, 2]]));
    }

    #[test]
    fn skew_examples() {
        assert!(verify_skew(&m(&[&[3]]), 1));
        assert!(verify_skew(&m(&[&[2, 1], &[1, -1]]), 5));
    }

    #[test]
    fn chart_matches_v_k_of_one() {
        let q = RatMatrix::identity(1);
        for k in 1..=12 {
            let v = q_sequence(&q, k).1;
            assert_eq!(v.get(0, 0), &BigRational::from_integer(chart_root(k).into()));
        }
    }
}
