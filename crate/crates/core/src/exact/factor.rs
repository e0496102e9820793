//! Factorization of integer polynomials into irreducibles over ℤ.
//!
//! Square-free decomposition, then Zassenhaus: factor modulo a prime that
//! already exceeds twice the Mignotte coefficient bound (so no Hensel
//! lifting is required) and recombine modular factors by exact trial
//! division. The splitting RNG is seeded, so results are deterministic.

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::poly::{IntPolynomial, RatPolynomial};

/// Seed of the Cantor-Zassenhaus splitting RNG (xored with the degree).
pub const SPLIT_SEED: u64 = 0x5a1e;
/// Seed for the random Miller-Rabin witnesses.
const WITNESS_SEED: u64 = 0x9e37_79b9;

/// Irreducible factors with multiplicities. Factors are primitive with
/// positive leading coefficient, sorted by (degree, coefficients); the
/// integer content is dropped.
pub fn factor(p: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    let mut out = Vec::new();
    if p.degree() == 0 {
        return out;
    }
    for (part, mult) in square_free_decomposition(&p.primitive_part()) {
        for f in factor_square_free(&part) {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    out
}

/// Distinct irreducible factors (multiplicities dropped).
pub fn irreducible_factors(p: &IntPolynomial) -> Vec<IntPolynomial> {
    factor(p).into_iter().map(|(f, _)| f).collect()
}

pub fn is_irreducible(p: &IntPolynomial) -> bool {
    if p.degree() == 0 {
        return false;
    }
    let f = factor(p);
    f.len() == 1 && f[0].1 == 1
}

/// Yun's algorithm over ℚ; returns primitive square-free parts with their
/// multiplicities.
pub fn square_free_decomposition(p: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    let f = p.to_rat();
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let fp = f.derivative();
    let a0 = RatPolynomial::gcd(&f, &fp);
    let mut b = f.div_rem(&a0).0;
    let mut c = fp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree() > 0 {
        let a = RatPolynomial::gcd(&b, &d);
        if a.degree() > 0 {
            out.push((a.to_primitive_int(), i));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

fn factor_square_free(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let f = f.primitive_part();
    if f.degree() <= 1 {
        return vec![f];
    }
    let lc = f.leading();
    let bound = mignotte_bound(&f) * lc.abs() * 2 + 1;
    let p = choose_prime(&bound, &f);
    let ring = ModRing { p: p.clone() };

    let monic = ring.monic(&ring.reduce(&f));
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED ^ f.degree() as u64);
    let mut modular = Vec::new();
    for (g, d) in ring.distinct_degree(&monic) {
        ring.equal_degree(&g, d, &mut rng, &mut modular);
    }
    recombine(&f, modular, &ring)
}

fn mignotte_bound(f: &IntPolynomial) -> BigInt {
    // |coeff of any factor| <= 2^deg * ||f||_2
    let norm = f.norm_sq().sqrt() + 1;
    norm << f.degree()
}

fn choose_prime(bound: &BigInt, f: &IntPolynomial) -> BigInt {
    let mut p = bound.clone();
    if p.is_even() {
        p += 1;
    }
    loop {
        if is_probable_prime(&p) && !(f.leading() % &p).is_zero() {
            let ring = ModRing { p: p.clone() };
            let fm = ring.reduce(f);
            let g = ring.gcd(&fm, &ring.derivative(&fm));
            if g.len() == 1 {
                return p;
            }
        }
        p += 2;
    }
}

/// Miller-Rabin with a fixed base set.
pub(crate) fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    const SMALL: [u32; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    for &s in &SMALL {
        let s = BigInt::from(s);
        if *n == s {
            return true;
        }
        if (n % &s).is_zero() {
            return false;
        }
    }
    let n1: BigInt = n - 1;
    let mut d = n1.clone();
    let mut r = 0;
    while d.is_even() {
        d >>= 1;
        r += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(WITNESS_SEED);
    let mut bases: Vec<BigInt> = SMALL.iter().map(|&s| BigInt::from(s)).collect();
    for _ in 0..16 {
        bases.push(rng.gen_bigint_range(&two, &n1));
    }
    'witness: for a in bases {
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..r {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn recombine(f: &IntPolynomial, mut modular: Vec<Vec<BigInt>>, ring: &ModRing) -> Vec<IntPolynomial> {
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= modular.len() {
        let mut hit = None;
        for subset in Combinations::new(modular.len(), size) {
            let lc = rest.leading();
            let mut prod = vec![ring.norm(&lc)];
            for &i in &subset {
                prod = ring.mul(&prod, &modular[i]);
            }
            let cand = ring.lift_symmetric(&prod).primitive_part();
            if cand.degree() == 0 {
                continue;
            }
            if let Some(q) = rest.div_exact(&cand) {
                found.push(cand);
                rest = q;
                hit = Some(subset);
                break;
            }
        }
        match hit {
            Some(subset) => {
                for &i in subset.iter().rev() {
                    modular.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if rest.degree() > 0 {
        found.push(rest.primitive_part());
    }
    found
}

struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Polynomials over ℤ/p, coefficients in `[0, p)`, lowest degree first.
struct ModRing {
    p: BigInt,
}

impl ModRing {
    fn norm(&self, c: &BigInt) -> BigInt {
        c.mod_floor(&self.p)
    }

    fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    fn reduce(&self, f: &IntPolynomial) -> Vec<BigInt> {
        Self::trim(f.coeffs().iter().map(|c| self.norm(c)).collect())
    }

    fn lift_symmetric(&self, f: &[BigInt]) -> IntPolynomial {
        let half: BigInt = &self.p >> 1;
        IntPolynomial::new(
            f.iter()
                .map(|c| if *c > half { c - &self.p } else { c.clone() })
                .collect(),
        )
    }

    fn inv(&self, c: &BigInt) -> BigInt {
        c.modpow(&(&self.p - 2), &self.p)
    }

    fn monic(&self, f: &[BigInt]) -> Vec<BigInt> {
        let inv = self.inv(f.last().expect("nonzero"));
        f.iter().map(|c| (c * &inv) % &self.p).collect()
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        Self::trim(
            (0..n)
                .map(|i| {
                    let x = a.get(i).cloned().unwrap_or_default();
                    let y = b.get(i).cloned().unwrap_or_default();
                    self.norm(&(x - y))
                })
                .collect(),
        )
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        Self::trim(v.into_iter().map(|c| c % &self.p).collect())
    }

    fn div_rem(&self, a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let db = b.len() - 1;
        if a.len() < b.len() {
            return (vec![], a.to_vec());
        }
        let inv = self.inv(&b[db]);
        let mut r = a.to_vec();
        let mut q = vec![BigInt::zero(); a.len() - db];
        for i in (0..q.len()).rev() {
            let c = (&r[i + db] * &inv) % &self.p;
            if !c.is_zero() {
                for (j, bc) in b.iter().enumerate() {
                    r[i + j] = self.norm(&(&r[i + j] - &c * bc));
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        (Self::trim(q), Self::trim(r))
    }

    fn rem(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.div_rem(a, b).1
    }

    fn gcd(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.monic(&a)
        }
    }

    fn derivative(&self, f: &[BigInt]) -> Vec<BigInt> {
        Self::trim(
            f.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.norm(&(c * BigInt::from(i))))
                .collect(),
        )
    }

    fn pow_mod(&self, base: &[BigInt], exp: &BigInt, m: &[BigInt]) -> Vec<BigInt> {
        let mut result = vec![BigInt::one()];
        let mut b = self.rem(base, m);
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                result = self.rem(&self.mul(&result, &b), m);
            }
            if i + 1 < bits {
                b = self.rem(&self.mul(&b, &b), m);
            }
        }
        result
    }

    /// Splits a monic square-free polynomial into products of irreducibles
    /// of equal degree.
    fn distinct_degree(&self, f: &[BigInt]) -> Vec<(Vec<BigInt>, usize)> {
        let x = vec![BigInt::zero(), BigInt::one()];
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let mut h = x.clone();
        let mut d = 1;
        while rest.len() > 2 * d {
            h = self.pow_mod(&h, &self.p, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if g.len() > 1 {
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
            d += 1;
        }
        if rest.len() > 1 {
            let deg = rest.len() - 1;
            out.push((rest, deg));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of degree-`d` irreducibles.
    fn equal_degree(&self, f: &[BigInt], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<BigInt>>) {
        let n = f.len() - 1;
        if n == d {
            out.push(f.to_vec());
            return;
        }
        let exp: BigInt = (self.p.pow(d as u32) - 1) / 2;
        loop {
            let a: Vec<BigInt> = Self::trim((0..n).map(|_| rng.gen_bigint_range(&BigInt::zero(), &self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.pow_mod(&a, &exp, f);
            let g = self.gcd(&self.sub(&b, &[BigInt::one()]), f);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.div_rem(f, &g).0;
                self.equal_degree(&g, d, rng, out);
                self.equal_degree(&self.monic(&h), d, rng, out);
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn product(fs: &[(IntPolynomial, usize)]) -> IntPolynomial {
        fs.iter()
            .fold(IntPolynomial::one(), |acc, (f, m)| &acc * &f.pow(*m as u32))
    }

    #[test]
    fn swinnerton_dyer_like_cases() {
        // x^4 + 1 is irreducible over Q but splits modulo every prime
        assert!(is_irreducible(&p("x^4+1")));
        // x^4 - 10x^2 + 1 (minimal polynomial of sqrt2 + sqrt3)
        assert!(is_irreducible(&p("x^4-10x^2+1")));
    }

    #[test]
    fn splits_products() {
        let f = p("x^4+2x^3-x^2+2x+1");
        let fs = factor(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].0, p("x^2-x+1"));
        assert_eq!(fs[1].0, p("x^2+3x+1"));
        let g = &(&p("x-1").pow(3) * &p("x^2-x-3")) * &p("2x+1");
        let gs = factor(&g);
        assert_eq!(product(&gs), g.primitive_part());
        assert_eq!(gs.iter().find(|(f, _)| *f == p("x-1")).unwrap().1, 3);
    }

    #[test]
    fn lehmer_polynomial_is_irreducible() {
        assert!(is_irreducible(&p("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1")));
        assert!(!is_irreducible(&p("x^6-1")));
        assert_eq!(factor(&p("x^6-1")).len(), 4);
    }

    #[test]
    fn primes() {
        assert!(is_probable_prime(&BigInt::from(1_000_000_007u64)));
        assert!(!is_probable_prime(&BigInt::from(561)));
        assert!(!is_probable_prime(&(BigInt::from(1_000_000_007u64) * 998_244_353u64)));
    }
}
