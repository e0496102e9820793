//! Exact real root isolation and real algebraic numbers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::factor::irreducible_factors;
use crate::exact::interval::RatInterval;
use crate::exact::poly::{IntPolynomial, RatPolynomial};

/// Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<RatPolynomial>,
}

impl SturmChain {
    pub fn new(p: &IntPolynomial) -> Self {
        let p0 = p.square_free_part().to_rat();
        let mut chain = vec![p0.clone(), p0.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = -chain[n - 2].rem(&chain[n - 1]);
            chain.push(r);
        }
        chain.pop();
        SturmChain { chain }
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        sign_variations(self.chain.iter().map(|q| q.eval(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        sign_variations(self.chain.iter().map(|q| {
            let lc = q.leading();
            if !positive && q.degree() % 2 == 1 {
                -lc
            } else {
                lc
            }
        }))
    }

    /// Number of distinct roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Number of distinct real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

fn sign_variations(values: impl Iterator<Item = BigRational>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for v in values {
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

/// Power of two strictly above the modulus of every complex root.
pub(crate) fn root_bound(p: &IntPolynomial) -> BigRational {
    let lc = BigRational::from_integer(p.leading().abs());
    let mut m = BigRational::zero();
    for c in &p.coeffs()[..p.degree()] {
        let r = BigRational::from_integer(c.abs()) / &lc;
        if r > m {
            m = r;
        }
    }
    let target = m + BigRational::one();
    let mut b = BigRational::one();
    while b <= target {
        b *= BigRational::from_integer(2.into());
    }
    b
}

/// Real algebraic number: an irreducible primitive integer polynomial with a
/// rational interval isolating exactly one of its real roots.
///
/// The interval is open for irrational roots (the minimal polynomial has
/// opposite nonzero signs at the endpoints) and degenerate (`lo == hi`) for
/// rational ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicReal {
    minpoly: IntPolynomial,
    lo: BigRational,
    hi: BigRational,
}

impl AlgebraicReal {
    pub fn from_rational(q: BigRational) -> Self {
        let minpoly = IntPolynomial::new(vec![-q.numer().clone(), q.denom().clone()]).primitive_part();
        AlgebraicReal {
            minpoly,
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// Trusted constructor: `minpoly` irreducible and the interval isolating.
    pub(crate) fn from_parts(minpoly: IntPolynomial, lo: BigRational, hi: BigRational) -> Self {
        AlgebraicReal { minpoly, lo, hi }
    }

    /// Validated constructor: `minpoly` must be irreducible and primitive
    /// with positive leading coefficient, and `[lo, hi]` must isolate one of
    /// its roots.
    pub fn from_isolating(minpoly: IntPolynomial, lo: BigRational, hi: BigRational) -> Result<Self> {
        if minpoly.degree() == 0 || minpoly != minpoly.primitive_part() {
            return Err(Error::precondition(format!(
                "{minpoly} is not a primitive minimal polynomial"
            )));
        }
        if !crate::exact::factor::is_irreducible(&minpoly) {
            return Err(Error::precondition(format!("{minpoly} is reducible")));
        }
        if lo > hi {
            return Err(Error::precondition("interval endpoints out of order"));
        }
        let ok = if minpoly.degree() == 1 {
            let root = BigRational::new(-minpoly.coeff(0), minpoly.coeff(1));
            lo <= root && root <= hi
        } else {
            let (a, b) = (minpoly.eval(&lo), minpoly.eval(&hi));
            !a.is_zero()
                && !b.is_zero()
                && a.is_positive() != b.is_positive()
                && SturmChain::new(&minpoly).count(&lo, &hi) == 1
        };
        if !ok {
            return Err(Error::precondition(format!(
                "[{lo}, {hi}] does not isolate a root of {minpoly}"
            )));
        }
        if minpoly.degree() == 1 {
            let root = BigRational::new(-minpoly.coeff(0), minpoly.coeff(1));
            return Ok(Self::from_rational(root));
        }
        Ok(AlgebraicReal { minpoly, lo, hi })
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.lo.clone())
    }

    /// Halve the isolating interval once.
    fn bisect(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        let at_lo = self.minpoly.eval(&self.lo);
        let at_mid = self.minpoly.eval(&mid);
        if at_mid.is_zero() {
            // only reachable for degree 1
            self.lo = mid.clone();
            self.hi = mid;
        } else if at_lo.is_positive() == at_mid.is_positive() {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Copy with isolating interval no wider than `width`.
    pub fn refined(&self, width: &BigRational) -> Self {
        let mut r = self.clone();
        while &r.hi - &r.lo > *width {
            r.bisect();
        }
        r
    }

    pub fn enclosure(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    /// Enclosure of `q(self)` of width at most `width`.
    pub fn enclose_poly(&self, q: &RatPolynomial, width: &BigRational) -> RatInterval {
        let mut r = self.clone();
        loop {
            let iv = RatInterval::eval_poly(q, &r.enclosure());
            if iv.width() <= *width || r.lo == r.hi {
                return iv;
            }
            r.bisect();
        }
    }

    /// Exact sign of `q(self)`.
    pub fn sign_of(&self, q: &RatPolynomial) -> Ordering {
        let red = q.rem(&self.minpoly.to_rat());
        if red.is_zero() {
            return Ordering::Equal;
        }
        if let Some(v) = self.as_rational() {
            return red.eval(&v).cmp(&BigRational::zero());
        }
        // red(self) != 0 because deg red < deg minpoly and minpoly is irreducible
        let mut r = self.clone();
        loop {
            let iv = RatInterval::eval_poly(&red, &r.enclosure());
            if iv.lo().is_positive() {
                return Ordering::Greater;
            }
            if iv.hi().is_negative() {
                return Ordering::Less;
            }
            r.bisect();
        }
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        let x_minus_q = RatPolynomial::new(vec![-q.clone(), BigRational::one()]);
        self.sign_of(&x_minus_q)
    }

    pub fn cmp_int(&self, n: i64) -> Ordering {
        self.cmp_rational(&BigRational::from_integer(n.into()))
    }

    pub fn signum(&self) -> Ordering {
        self.cmp_int(0)
    }

    /// `-self`.
    pub fn neg(&self) -> Self {
        let c: Vec<BigInt> = self
            .minpoly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        AlgebraicReal {
            minpoly: IntPolynomial::new(c).primitive_part(),
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    /// Exact comparison of two real algebraic numbers.
    pub fn cmp_exact(&self, other: &AlgebraicReal) -> Ordering {
        if let Some(q) = other.as_rational() {
            return self.cmp_rational(&q);
        }
        if let Some(q) = self.as_rational() {
            return other.cmp_rational(&q).reverse();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let same_poly = a.minpoly == b.minpoly;
        let sturm = same_poly.then(|| SturmChain::new(&a.minpoly));
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            if let Some(s) = &sturm {
                let lo = (&a.lo).min(&b.lo).clone();
                let hi = (&a.hi).max(&b.hi).clone();
                if s.count(&lo, &hi) == 1 {
                    return Ordering::Equal;
                }
            }
            a.bisect();
            b.bisect();
        }
    }

    /// Decimal rendering with `digits` digits after the point; advisory only.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10).pow(digits as u32);
        let width = BigRational::new(BigInt::one(), &scale * 10);
        let r = self.refined(&width);
        let mid = (&r.lo + &r.hi) / BigRational::from_integer(2.into());
        rational_to_decimal(&mid, digits)
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.refined(&BigRational::new(BigInt::one(), BigInt::one() << 60));
        ((&r.lo + &r.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in [{}, {}]", self.minpoly, self.lo, self.hi)
    }
}

/// Round-half-away rendering of a rational with a fixed number of digits.
pub fn rational_to_decimal(q: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = q * BigRational::from_integer(scale.clone());
    let neg = scaled.is_negative();
    let n = scaled.abs().round().to_integer();
    let int_part = &n / &scale;
    let frac = &n % &scale;
    let sign = if neg && !n.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac.to_string(), width = digits)
    }
}

/// Isolate the real roots of an irreducible polynomial, ascending.
fn isolate_irreducible(p: &IntPolynomial) -> Vec<AlgebraicReal> {
    if p.degree() == 1 {
        let q = BigRational::new(-p.coeff(0), p.coeff(1));
        return vec![AlgebraicReal::from_rational(q)];
    }
    let sturm = SturmChain::new(p);
    let b = root_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count(&lo, &hi);
        match n {
            0 => {}
            1 => out.push(AlgebraicReal::from_parts(p.clone(), lo, hi)),
            _ => {
                let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// All distinct real roots of a nonzero polynomial, ascending, each carrying
/// its irreducible minimal polynomial.
pub fn isolate_roots(p: &IntPolynomial) -> Result<Vec<AlgebraicReal>> {
    if p.is_zero() {
        return Err(Error::precondition("zero polynomial"));
    }
    let mut roots: Vec<AlgebraicReal> = irreducible_factors(p).iter().flat_map(isolate_irreducible).collect();
    sort_exact(&mut roots);
    Ok(roots)
}

/// Sort by exact value, refining intervals until neighbours are disjoint.
pub(crate) fn sort_exact(roots: &mut [AlgebraicReal]) {
    roots.sort_by(|a, b| a.cmp_exact(b));
    for i in 1..roots.len() {
        while roots[i - 1].hi >= roots[i].lo {
            roots[i - 1].bisect();
            roots[i].bisect();
        }
    }
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &IntPolynomial) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    SturmChain::new(p).count_real()
}

/// The root of `p` identified by a shrinking family of enclosures.
///
/// `enclose(width)` must return an interval of width at most `width`
/// containing the wanted root. Fails if no root of `p` is compatible.
pub fn select_root(p: &IntPolynomial, mut enclose: impl FnMut(&BigRational) -> RatInterval) -> Result<AlgebraicReal> {
    let candidates = isolate_roots(p)?;
    let mut width = BigRational::new(BigInt::one(), BigInt::from(1u64 << 20));
    for _ in 0..200 {
        let iv = enclose(&width);
        let hits: Vec<&AlgebraicReal> = candidates
            .iter()
            .filter(|r| {
                let r = r.refined(&width);
                r.lo <= *iv.hi() && *iv.lo() <= r.hi
            })
            .collect();
        match hits.len() {
            0 => return Err(Error::invariant(format!("no root of {p} in {iv}"))),
            1 => return Ok(hits[0].clone()),
            _ => width /= BigRational::from_integer(1024.into()),
        }
    }
    Err(Error::invariant(format!("could not separate roots of {p}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn approx(r: &AlgebraicReal, v: f64) {
        assert!((r.to_f64() - v).abs() < 1e-9, "{} vs {v}", r.to_f64());
    }

    #[test]
    fn symmetric_surd() {
        let r = isolate_roots(&p("x^2-2")).unwrap();
        assert_eq!(r.len(), 2);
        approx(&r[0], -std::f64::consts::SQRT_2);
        approx(&r[1], std::f64::consts::SQRT_2);
    }

    #[test]
    fn quadratic_formula_oracle() {
        let r = isolate_roots(&p("x^2-10x+8")).unwrap();
        let s17 = 17f64.sqrt();
        approx(&r[0], 5.0 - s17);
        approx(&r[1], 5.0 + s17);
        assert!(r[0].interval().1 < r[1].interval().0);
    }

    #[test]
    fn repeated_root_collapses() {
        let r = isolate_roots(&p("x^3-3x^2+3x-1")).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].as_rational(), Some(BigRational::one()));
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(
            isolate_roots(&IntPolynomial::zero()).unwrap_err(),
            Error::precondition("zero polynomial")
        );
    }

    #[test]
    fn mixed_factors_sorted() {
        let f = &(&p("x^2-2") * &p("x-1")) * &p("3x+4");
        let r = isolate_roots(&f).unwrap();
        let v: Vec<f64> = r.iter().map(|r| r.to_f64()).collect();
        assert_eq!(v.len(), 4);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(count_real_roots(&f), 4);
        assert_eq!(count_real_roots(&p("x^4+1")), 0);
    }

    #[test]
    fn signs_and_comparisons() {
        let r = isolate_roots(&p("x^2-2")).unwrap();
        let s2 = &r[1];
        // sqrt2 - 1.4142 > 0, x^2 - 2 == 0 at sqrt2
        assert_eq!(
            s2.cmp_rational(&BigRational::new(14142.into(), 10000.into())),
            Ordering::Greater
        );
        assert_eq!(s2.sign_of(&RatPolynomial::from_i64(&[-2, 0, 1])), Ordering::Equal);
        assert_eq!(s2.cmp_exact(&r[0]), Ordering::Greater);
        assert_eq!(
            s2.cmp_exact(&s2.refined(&BigRational::new(1.into(), 1000.into()))),
            Ordering::Equal
        );
        let s3 = isolate_roots(&p("x^2-3")).unwrap().pop().unwrap();
        assert_eq!(s2.cmp_exact(&s3), Ordering::Less);
    }

    #[test]
    fn decimal_rendering() {
        let r = isolate_roots(&p("x^2-2")).unwrap();
        assert_eq!(r[1].to_decimal(6), "1.414214");
        assert_eq!(r[0].to_decimal(3), "-1.414");
    }

    #[test]
    fn refinement_keeps_sign_change() {
        let r = isolate_roots(&p("x^4-x^3-x^2-x+1")).unwrap();
        for root in r {
            let fine = root.refined(&BigRational::new(1.into(), (1u64 << 40).into()));
            let (lo, hi) = fine.interval();
            assert!(lo >= root.interval().0 && hi <= root.interval().1);
            let a = root.minpoly().eval(lo);
            let b = root.minpoly().eval(hi);
            assert!(a.is_positive() != b.is_positive());
        }
    }
}
