//! Smallest power of a rational matrix that is integral.
//!
//! With integral monic characteristic polynomial and unit determinant, the
//! lattice `L' = Σ 𝓜^i ℤ^N` is stable under 𝓜 and 𝓜⁻¹. In a basis `A` of
//! `L'` the matrix becomes an integral `Ω = A⁻¹𝓜A`. If `c` clears the
//! denominators of `A` and `d` those of `A⁻¹`, then `Ω^k ≡ I (mod cd)`
//! forces `𝓜^k` integral, so the order of `Ω` modulo `cd` bounds the search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{lattice_basis, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralityCertificate {
    /// Smallest `k >= 1` with `𝓜^k` integral.
    pub exponent: u64,
    /// Order of `Ω` modulo `cd`; an upper bound for `exponent`.
    pub order_bound: u64,
    /// The modulus `cd`.
    pub modulus: String,
}

/// Smallest `k0 >= 1` with `m^k0` integral, with the modular-order bound
/// that makes the search finite. `max_power` caps both loops.
pub fn integrality_exponent(m: &RatMatrix, max_power: u64) -> Result<IntegralityCertificate> {
    if !m.is_square() {
        return Err(Error::precondition("integrality exponent of a non-square matrix"));
    }
    let n = m.rows();
    let cp = m.char_poly();
    if cp.to_int_exact().is_none() {
        return Err(Error::precondition(format!(
            "characteristic polynomial {cp} is not integral"
        )));
    }
    if !m.det().abs().is_one() {
        return Err(Error::precondition("determinant is not a unit"));
    }

    // Generators of L': the columns of m^i for i < n, scaled to integers.
    let mut powers = vec![RatMatrix::identity(n)];
    for i in 1..n {
        powers.push(&powers[i - 1] * m);
    }
    let den = powers.iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator()));
    let dr = BigRational::from_integer(den.clone());
    let gens: Vec<Vec<BigInt>> = powers
        .iter()
        .flat_map(|p| {
            (0..n)
                .map(|j| (0..n).map(|i| (p.get(i, j) * &dr).to_integer()).collect())
                .collect::<Vec<Vec<BigInt>>>()
        })
        .collect();
    let basis = lattice_basis(&gens, n).ok_or_else(|| Error::invariant("Krylov lattice does not have full rank"))?;
    // A has the basis vectors as columns
    let mut a = RatMatrix::zeros(n, n);
    for (j, v) in basis.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            a.set(i, j, BigRational::new(x.clone(), den.clone()));
        }
    }
    let a_inv = a
        .inverse()
        .ok_or_else(|| Error::invariant("lattice basis is singular"))?;
    let omega = &(&a_inv * m) * &a;
    if !omega.is_integral() {
        return Err(Error::invariant("Ω = A⁻¹𝓜A is not integral"));
    }
    let modulus = a.denominator() * a_inv.denominator();
    let order = modular_order(&omega, &modulus, max_power)?;

    let mut p = m.clone();
    let mut k = 1;
    while !p.is_integral() {
        k += 1;
        if k > order {
            return Err(Error::invariant(format!(
                "no integral power up to the proven bound {order}"
            )));
        }
        p = &p * m;
    }
    Ok(IntegralityCertificate {
        exponent: k,
        order_bound: order,
        modulus: modulus.to_string(),
    })
}

/// Multiplicative order of an integral matrix modulo `modulus`.
fn modular_order(omega: &RatMatrix, modulus: &BigInt, max_power: u64) -> Result<u64> {
    let n = omega.rows();
    let reduce = |x: &BigInt| x.mod_floor(modulus);
    let om: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| reduce(&omega.get(i, j).to_integer())).collect())
        .collect();
    let id: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| reduce(&BigInt::from(u8::from(i == j)))).collect())
        .collect();
    let mut p = om.clone();
    let mut k = 1;
    while p != id {
        k += 1;
        if k > max_power {
            return Err(Error::exhausted(format!(
                "order of Ω modulo {modulus} exceeds max power {max_power}"
            )));
        }
        p = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let s = (0..n).fold(BigInt::zero(), |acc, l| acc + &p[i][l] * &om[l][j]);
                        reduce(&s)
                    })
                    .collect()
            })
            .collect();
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewpower::build_block;

    #[test]
    fn integral_q_gives_one() {
        let b = build_block(&RatMatrix::from_i64(&[&[2, 1], &[1, -1]])).unwrap();
        let c = integrality_exponent(b.matrix(), 10_000).unwrap();
        assert_eq!((c.exponent, c.order_bound), (1, 1));
    }

    #[test]
    fn reflection_needs_six() {
        let q = RatMatrix::parse_json(r#"[["3/5","4/5"],["4/5","-3/5"]]"#).unwrap();
        let b = build_block(&q).unwrap();
        let c = integrality_exponent(b.matrix(), 10_000).unwrap();
        assert_eq!(c.exponent, 6);
        assert!(c.order_bound >= 6);
        assert_eq!(b.matrix().pow(6), RatMatrix::identity(4));
        for k in 1..6 {
            assert!(!b.matrix().pow(k).is_integral());
        }
    }

    #[test]
    fn rejects_non_integral_char_poly() {
        let q = RatMatrix::parse_json(r#"[["1/2"]]"#).unwrap();
        let b = build_block(&q).unwrap();
        assert!(integrality_exponent(b.matrix(), 100).is_err());
    }
}
