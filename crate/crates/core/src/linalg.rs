//! Dense exact rational matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::poly::{IntPolynomial, RatPolynomial};

/// Row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

/// Characteristic polynomial `det(xI - A)` by Berkowitz's division-free
/// algorithm. Works over any commutative ring; coefficients are returned
/// lowest degree first.
pub fn berkowitz<T>(a: &[Vec<T>]) -> Vec<T>
where
    T: Clone + Zero + One + Neg<Output = T>,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let n = a.len();
    // highest degree first while building
    let mut p: Vec<T> = vec![T::one()];
    for r in 0..n {
        // Toeplitz column: 1, -a_rr, -R C, -R S C, ...
        let mut t = Vec::with_capacity(r + 2);
        t.push(T::one());
        t.push(-a[r][r].clone());
        let mut c: Vec<T> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let rc = (0..r).fold(T::zero(), |acc, j| acc + &a[r][j] * &c[j]);
            t.push(-rc);
            c = (0..r)
                .map(|i| (0..r).fold(T::zero(), |acc, j| acc + &a[i][j] * &c[j]))
                .collect();
        }
        let mut next = vec![T::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate() {
                if i >= j && i - j < t.len() {
                    *slot = slot.clone() + &t[i - j] * pj;
                }
            }
        }
        p = next;
    }
    p.reverse();
    p
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::parse("ragged matrix rows"));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn diagonal(d: &[BigRational]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigRational> {
        self.data.iter()
    }

    pub fn map(&self, f: impl Fn(&BigRational) -> BigRational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        self.map(|x| x * k)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Every entry an integer at least `floor`.
    pub fn entries_at_least(&self, floor: i64) -> bool {
        let f = BigRational::from_integer(floor.into());
        self.data.iter().all(|x| x.is_integer() && *x >= f)
    }

    /// Least common denominator of the entries.
    pub fn denominator(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// Entries as machine integers, when integral and in range.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
                    .collect()
            })
            .collect()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }

    pub fn from_f64_rounded(rows: &[Vec<f64>], denom: i64) -> Self {
        let d = BigRational::from_integer(denom.into());
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| {
                            let n = (v * denom as f64).round();
                            BigRational::from_integer(BigInt::from(n as i64)) / &d
                        })
                        .collect()
                })
                .collect(),
        )
        .expect("rectangular")
    }

    /// `[[a, b], [c, d]]` from four blocks of matching shapes.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut m = Self::zeros(a.rows + c.rows, a.cols + b.cols);
        for (blk, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for i in 0..blk.rows {
                for j in 0..blk.cols {
                    m.set(r0 + i, c0 + j, blk.get(i, j).clone());
                }
            }
        }
        m
    }

    /// The submatrix of rows `r0..r1` and columns `c0..c1`.
    pub fn sub_block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut m = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                m.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn char_poly(&self) -> RatPolynomial {
        assert!(self.is_square(), "char_poly of non-square matrix");
        RatPolynomial::new(berkowitz(&self.to_rows()))
    }

    /// Characteristic polynomial over ℤ, if every coefficient is integral.
    pub fn int_char_poly(&self) -> Option<IntPolynomial> {
        self.char_poly().to_int_exact()
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).fold(BigRational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn det(&self) -> BigRational {
        assert!(self.is_square());
        let mut a = self.clone();
        let n = self.rows;
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det *= &piv;
            for r in c + 1..n {
                if a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c) / &piv;
                for j in c..n {
                    let v = a.get(r, j) - &f * a.get(c, j);
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Exact inverse by Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let piv = a.get(c, c).recip();
            for j in 0..n {
                a.set(c, j, a.get(c, j) * &piv);
                inv.set(c, j, inv.get(c, j) * &piv);
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for j in 0..n {
                    a.set(r, j, a.get(r, j) - &f * a.get(c, j));
                    inv.set(r, j, inv.get(r, j) - &f * inv.get(c, j));
                }
            }
        }
        Some(inv)
    }

    /// `self^k`; negative `k` requires an invertible matrix.
    pub fn pow(&self, k: i64) -> Self {
        assert!(self.is_square());
        let mut base = if k < 0 {
            self.inverse().expect("negative power of singular matrix")
        } else {
            self.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Rank over ℚ.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !a.get(r, c).is_zero()) else {
                continue;
            };
            a.swap_rows(p, rank);
            let piv = a.get(rank, c).clone();
            for r in rank + 1..self.rows {
                if a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c) / &piv;
                for j in c..self.cols {
                    let v = a.get(r, j) - &f * a.get(rank, j);
                    a.set(r, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Rows rendered as exact rational strings (`"-3/2"`).
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect()
    }

    /// Parse a JSON array of arrays whose entries are integers or exact
    /// rational strings.
    pub fn parse_json(src: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(src).map_err(|e| Error::parse(format!("matrix JSON: {e}")))?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::parse("matrix must be an array of rows"))?;
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::parse("matrix row must be an array"))?
                    .iter()
                    .map(|x| match x {
                        serde_json::Value::String(s) => parse_rational(s),
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .map(|i| BigRational::from_integer(i.into()))
                            .ok_or_else(|| Error::parse(format!("non-integer number {n}"))),
                        other => Err(Error::parse(format!("bad matrix entry {other}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }
}

/// Parse `"7"`, `"-3/2"` (whitespace tolerated).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        RatMatrix::from_json_value(&v).map_err(D::Error::custom)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_strings()
            .into_iter()
            .map(|r| format!("[{}]", r.join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, o: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, o: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        self.map(|x| -x)
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let mut m = RatMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    m.data[idx] += a * o.get(k, j);
                }
            }
        }
        m
    }
}

/// Echelon basis of the lattice spanned by integer vectors in ℤⁿ: `n`
/// vectors, the i-th zero before coordinate i with positive i-th entry.
/// `None` unless the vectors span ℚⁿ.
pub fn lattice_basis(vectors: &[Vec<BigInt>], n: usize) -> Option<Vec<Vec<BigInt>>> {
    let mut rows: Vec<Vec<BigInt>> = vectors.to_vec();
    let mut basis: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for c in 0..n {
        let mut live: Vec<Vec<BigInt>> = rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::new();
        for r in live.drain(..) {
            if r[c].is_zero() {
                rest.push(r);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(r),
                Some(p) => {
                    let eg = p[c].extended_gcd(&r[c]);
                    let (g, x, y) = (eg.gcd, eg.x, eg.y);
                    let new_p: Vec<BigInt> = p.iter().zip(&r).map(|(a, b)| &x * a + &y * b).collect();
                    let (pa, rb) = (&p[c] / &g, &r[c] / &g);
                    let killed: Vec<BigInt> = r.iter().zip(&p).map(|(b, a)| &pa * b - &rb * a).collect();
                    rest.push(killed);
                    pivot = Some(new_p);
                }
            }
        }
        let mut p = pivot?;
        if p[c].is_negative() {
            p = p.iter().map(|x| -x).collect();
        }
        basis.push(p);
        rows = rest;
    }
    if rows.iter().any(|r| r.iter().any(|x| !x.is_zero())) {
        return None;
    }
    Some(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn berkowitz_by_hand() {
        let q = RatMatrix::from_i64(&[&[2, 1], &[1, -1]]);
        assert_eq!(q.char_poly().to_string(), "x^2-x-3");
        let q = RatMatrix::from_i64(&[&[1, 1], &[1, 9]]);
        assert_eq!(q.char_poly().to_string(), "x^2-10x+8");
        assert_eq!(RatMatrix::identity(3).char_poly().to_string(), "x^3-3x^2+3x-1");
    }

    #[test]
    fn berkowitz_matches_determinant() {
        let m = RatMatrix::from_i64(&[&[1, 2, 0, 3], &[4, -1, 2, 2], &[0, 5, 1, -2], &[1, 1, 1, 1]]);
        let cp = m.char_poly();
        // constant term is det(-A) = det(A) for even n
        assert_eq!(cp.coeff(0), m.det());
        assert_eq!(cp.coeff(3), -m.trace());
        let ints: Vec<Vec<i64>> = m.to_i64_rows().unwrap();
        let c = berkowitz(&ints);
        assert_eq!(
            c.iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect::<Vec<_>>(),
            cp.coeffs().to_vec()
        );
    }

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RatMatrix::identity(3));
        assert_eq!(m.pow(-2), inv.pow(2));
        assert!(RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn json_round_trip() {
        let m = RatMatrix::parse_json(r#"[["1/5","-4/5"],[3, "0"]]"#).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1/5","-4/5"],["3","0"]]"#);
        let back: RatMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(RatMatrix::parse_json("[[1],[2,3]]").is_err());
        assert!(RatMatrix::parse_json(r#"[["1/0"]]"#).is_err());
    }

    #[test]
    fn lattice_basis_spans() {
        let v = |a: &[i64]| a.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let b = lattice_basis(&[v(&[2, 0]), v(&[1, 1]), v(&[0, 2])], 2).unwrap();
        // lattice {(a,b): a+b even} has index 2
        let det = &b[0][0] * &b[1][1] - &b[0][1] * &b[1][0];
        assert_eq!(det.abs(), BigInt::from(2));
        assert!(lattice_basis(&[v(&[1, 1])], 2).is_none());
    }
}
