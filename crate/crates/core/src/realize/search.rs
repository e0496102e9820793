//! Bounded search for symmetric matrices with a prescribed characteristic
//! polynomial.
//!
//! Entries are scanned in row-major upper-triangular order with values
//! descending from the bound, so the first hit is the lexicographically
//! greatest admissible matrix. The trace fixes the last diagonal entry and
//! `tr(A^2)` bounds the running sum of squares.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::linalg::berkowitz;

/// Which family of matrices produced a realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchPhase {
    Direct,
    IntegerDense,
    IntegerTridiagonal,
    RationalDense,
    RationalTridiagonal,
}

/// Leaves beyond which a dense scan is skipped in favour of the
/// tridiagonal pattern.
pub(crate) const DENSE_LEAF_CAP: f64 = 2.0e7;

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Pattern {
    Dense,
    Tridiagonal,
}

/// Integer search for a symmetric `m × m` matrix `A` with
/// `det(xI - A) = target` (coefficients lowest first, monic, degree m).
pub(crate) struct IntSearch {
    m: usize,
    bound: i64,
    pattern: Pattern,
    target: Vec<i128>,
    trace: i64,
    sum_sq: i128,
    slots: Vec<(usize, usize)>,
    a: Vec<Vec<i128>>,
}

impl IntSearch {
    pub(crate) fn new(target: &[BigInt], bound: i64, pattern: Pattern) -> Option<Self> {
        let m = target.len() - 1;
        let target: Vec<i128> = target.iter().map(|c| c.to_i128()).collect::<Option<_>>()?;
        let trace = -target[m - 1];
        let sum_sq = if m >= 2 {
            trace * trace - 2 * target[m - 2]
        } else {
            trace * trace
        };
        let mut slots = Vec::new();
        for i in 0..m {
            for j in i..m {
                let keep = match pattern {
                    Pattern::Dense => true,
                    Pattern::Tridiagonal => j <= i + 1,
                };
                if keep && !(i == m - 1 && j == m - 1) {
                    slots.push((i, j));
                }
            }
        }
        Some(IntSearch {
            m,
            bound,
            pattern,
            target,
            trace: trace.to_i64()?,
            sum_sq,
            slots,
            a: vec![vec![0; m]; m],
        })
    }

    /// Number of leaves a full scan would visit before pruning.
    pub(crate) fn leaves(&self) -> f64 {
        ((2 * self.bound + 1) as f64).powi(self.slots.len() as i32)
    }

    pub(crate) fn run(mut self) -> Option<Vec<Vec<i128>>> {
        if self.m == 1 {
            let v = self.trace as i128;
            return (v.abs() <= self.bound as i128).then(|| vec![vec![v]]);
        }
        if self.rec(0, 0, 0) {
            Some(self.a)
        } else {
            None
        }
    }

    fn rec(&mut self, idx: usize, diag: i128, sq: i128) -> bool {
        if sq > self.sum_sq {
            return false;
        }
        if idx == self.slots.len() {
            let last = self.trace as i128 - diag;
            if last.abs() > self.bound as i128 || sq + last * last != self.sum_sq {
                return false;
            }
            let m = self.m;
            self.a[m - 1][m - 1] = last;
            return berkowitz(&self.a) == self.target;
        }
        let (i, j) = self.slots[idx];
        let b = self.bound as i128;
        let mut v = b;
        while v >= -b {
            let w = if i == j { v * v } else { 2 * v * v };
            if sq + w <= self.sum_sq {
                self.a[i][j] = v;
                self.a[j][i] = v;
                let nd = if i == j { diag + v } else { diag };
                if self.rec(idx + 1, nd, sq + w) {
                    return true;
                }
            }
            v -= 1;
        }
        self.a[i][j] = 0;
        self.a[j][i] = 0;
        false
    }

    pub(crate) fn pattern(&self) -> Pattern {
        self.pattern
    }
}

/// Coefficients of `q^m p(x/q)`: the characteristic polynomial of `qA`
/// when `p` is that of `A`.
pub(crate) fn scaled_target(p: &[BigInt], q: i64) -> Vec<BigInt> {
    let m = p.len() - 1;
    let qb = BigInt::from(q);
    p.iter()
        .enumerate()
        .map(|(i, c)| c * num_traits::pow(qb.clone(), m - i))
        .collect()
}

pub(crate) fn to_rational_rows(a: &[Vec<i128>], q: i64) -> Vec<Vec<BigRational>> {
    a.iter()
        .map(|r| {
            r.iter()
                .map(|&v| BigRational::new(BigInt::from(v), BigInt::from(q)))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn target(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn lexicographically_greatest_first() {
        let s = IntSearch::new(&target(&[-3, -1, 1]), 6, Pattern::Dense).unwrap();
        assert_eq!(s.run().unwrap(), vec![vec![2, 1], vec![1, -1]]);
        let s = IntSearch::new(&target(&[1, -3, 1]), 6, Pattern::Dense).unwrap();
        assert_eq!(s.run().unwrap(), vec![vec![2, 1], vec![1, 1]]);
    }

    #[test]
    fn empty_when_impossible() {
        // trace 0 forces [[a, b], [b, -a]] with a^2 + b^2 = -c0
        let s = IntSearch::new(&target(&[-2, 0, 1]), 6, Pattern::Dense).unwrap();
        assert_eq!(s.run().unwrap(), vec![vec![1, 1], vec![1, -1]]);
        // x^2 - 3: a^2 + b^2 = 3 has no integer solution
        let s = IntSearch::new(&target(&[-3, 0, 1]), 6, Pattern::Dense).unwrap();
        assert!(s.run().is_none());
    }

    #[test]
    fn scaling() {
        assert_eq!(scaled_target(&target(&[-3, 0, 1]), 2), target(&[-12, 0, 1]));
    }
}
