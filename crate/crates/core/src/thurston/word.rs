//! Words in the two multitwists and their classification by trace.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::field::{FieldElement, NumberField};
use crate::exact::poly::IntPolynomial;
use crate::exact::roots::AlgebraicReal;
use crate::exact::salem::{larger_root_of_trace, trace_of};
use crate::exact::serde_impls::in_t;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Letter {
    C,
    D,
}

/// A word in `T_C` and `T_D` with nonzero exponents and no two adjacent
/// equal letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word(Vec<(Letter, i64)>);

impl Word {
    /// Merge adjacent equal letters and drop zero exponents.
    pub fn new(parts: impl IntoIterator<Item = (Letter, i64)>) -> Result<Self> {
        let mut out: Vec<(Letter, i64)> = Vec::new();
        for (l, e) in parts {
            match out.last_mut() {
                Some((last, x)) if *last == l => *x += e,
                _ => out.push((l, e)),
            }
            if out.last().is_some_and(|p| p.1 == 0) {
                out.pop();
            }
        }
        if out.is_empty() {
            return Err(Error::precondition("word is empty"));
        }
        Ok(Word(out))
    }

    pub fn parts(&self) -> &[(Letter, i64)] {
        &self.0
    }
}

/// Accepts forms like `CD`, `C^2 D^-1`, `C2D-3`, `C·D`.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s
            .chars()
            .filter(|c| !c.is_whitespace() && !matches!(c, '·' | '*' | '.'))
            .collect();
        let mut parts = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let letter = match chars[i] {
                'C' | 'c' => Letter::C,
                'D' | 'd' => Letter::D,
                other => return Err(Error::parse(format!("unexpected '{other}' in word {s:?}"))),
            };
            i += 1;
            if chars.get(i) == Some(&'^') {
                i += 1;
            }
            let start = i;
            if matches!(chars.get(i), Some('-' | '+')) {
                i += 1;
            }
            while chars.get(i).is_some_and(|c| c.is_ascii_digit()) {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let exp = if digits.is_empty() {
                1
            } else {
                digits
                    .parse::<i64>()
                    .map_err(|_| Error::parse(format!("bad exponent {digits:?} in word {s:?}")))?
            };
            parts.push((letter, exp));
        }
        Word::new(parts).map_err(|_| Error::parse(format!("word {s:?} reduces to the identity")))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, e) in &self.0 {
            write!(f, "{:?}", l)?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A 2×2 matrix over ℚ(ν).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mat2(pub [[FieldElement; 2]; 2]);

impl Mat2 {
    pub fn identity(k: &Arc<NumberField>) -> Self {
        let (o, z) = (FieldElement::one(k), FieldElement::zero(k));
        Mat2([[o.clone(), z.clone()], [z, o]])
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn trace(&self) -> FieldElement {
        self.0[0][0].add(&self.0[1][1])
    }

    pub fn det(&self) -> FieldElement {
        self.0[0][0].mul(&self.0[1][1]).sub(&self.0[0][1].mul(&self.0[1][0]))
    }
}

/// `T_C^e = [[1, e], [0, 1]]`, `T_D^e = [[1, 0], [-e ν, 1]]`.
fn letter_power(k: &Arc<NumberField>, letter: Letter, e: i64) -> Mat2 {
    let (o, z) = (FieldElement::one(k), FieldElement::zero(k));
    let ek = BigRational::from_integer(e.into());
    match letter {
        Letter::C => Mat2([[o.clone(), FieldElement::from_int(k, e)], [z, o]]),
        Letter::D => Mat2([[o.clone(), z], [FieldElement::generator(k).scale(&-ek), o]]),
    }
}

/// `([T_C], [T_D])` over ℚ(ν).
pub fn twist_reps(nu: &AlgebraicReal) -> Result<(Mat2, Mat2)> {
    if nu.signum() != Ordering::Greater {
        return Err(Error::precondition("ν must be positive"));
    }
    let k = NumberField::new(nu.clone());
    Ok((letter_power(&k, Letter::C, 1), letter_power(&k, Letter::D, 1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Verdict {
    PseudoAnosov,
    Parabolic,
    Elliptic,
}

#[derive(Clone, Debug, Serialize)]
pub struct PseudoAnosovReport {
    pub word: Word,
    pub nu: AlgebraicReal,
    pub rep: Mat2,
    pub trace: FieldElement,
    pub verdict: Verdict,
    /// Larger eigenvalue in absolute value, for a pseudo-Anosov word.
    pub stretch: Option<AlgebraicReal>,
    /// Minimal polynomial of `|trace|`, which is `λ + 1/λ`.
    #[serde(serialize_with = "in_t")]
    pub trace_field_poly: IntPolynomial,
}

impl PseudoAnosovReport {
    pub fn is_pseudo_anosov(&self) -> bool {
        self.verdict == Verdict::PseudoAnosov
    }
}

/// Multiply out the word over ℚ(ν) and classify it by `|trace|` against 2.
pub fn classify_word(word: &Word, nu: &AlgebraicReal) -> Result<PseudoAnosovReport> {
    if nu.signum() != Ordering::Greater {
        return Err(Error::precondition("ν must be positive"));
    }
    let k = NumberField::new(nu.clone());
    let rep = word
        .parts()
        .iter()
        .fold(Mat2::identity(&k), |acc, &(l, e)| acc.mul(&letter_power(&k, l, e)));
    if !rep.det().is_one() {
        return Err(Error::invariant("word representative has determinant other than 1"));
    }
    let trace = rep.trace();
    // only ±rep is defined, so the stretch comes from |trace|
    let abs = trace.abs();
    let verdict = match abs.cmp_int(2) {
        Ordering::Greater => Verdict::PseudoAnosov,
        Ordering::Equal => Verdict::Parabolic,
        Ordering::Less => Verdict::Elliptic,
    };
    let t = abs.to_algebraic_real()?;
    let stretch = if verdict == Verdict::PseudoAnosov {
        let lambda = larger_root_of_trace(&t)?;
        if lambda.cmp_int(1) != Ordering::Greater || trace_of(&lambda)? != t {
            return Err(Error::invariant("stretch factor does not match the trace"));
        }
        Some(lambda)
    } else {
        None
    };
    Ok(PseudoAnosovReport {
        word: word.clone(),
        nu: nu.clone(),
        rep,
        trace,
        verdict,
        stretch,
        trace_field_poly: t.minpoly().clone(),
    })
}
