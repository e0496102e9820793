//! ASCII polynomial syntax: `x^4-x^3-x^2-x+1`, `1/2*t+1/2`, `3x^2 - 2`.
//!
//! A single variable name (any run of ASCII letters) is allowed per input.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn err(&self, what: &str) -> Error {
        Error::parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        (start != self.pos).then(|| self.chars[start..self.pos].iter().collect())
    }
}

/// Parse into `(coefficient, exponent)` terms; repeated exponents are kept
/// separate and summed by the caller.
pub(crate) fn parse_terms(src: &str) -> Result<Vec<(BigRational, usize)>> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cur = Cursor { src, chars, pos: 0 };
    if cur.chars.is_empty() {
        return Err(Error::parse("empty polynomial"));
    }
    let mut var: Option<String> = None;
    let mut terms = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let mut sign = BigRational::one();
        match cur.peek() {
            Some('+') => {
                cur.bump();
            }
            Some('-') => {
                cur.bump();
                sign = -sign;
            }
            _ if !first => return Err(cur.err("expected '+' or '-'")),
            _ => {}
        }
        first = false;

        let mut coeff = None;
        if let Some(n) = cur.digits() {
            let mut c = BigRational::from_integer(n);
            if cur.peek() == Some('/') {
                cur.bump();
                let d = cur.digits().ok_or_else(|| cur.err("expected denominator"))?;
                if d.is_zero() {
                    return Err(cur.err("zero denominator"));
                }
                c /= BigRational::from_integer(d);
            }
            coeff = Some(c);
            if cur.peek() == Some('*') {
                cur.bump();
            }
        }

        let mut exp = 0usize;
        if let Some(name) = cur.ident() {
            match &var {
                Some(v) if *v != name => {
                    return Err(cur.err(&format!("second variable {name:?}")));
                }
                None => var = Some(name),
                _ => {}
            }
            exp = 1;
            if cur.peek() == Some('^') {
                cur.bump();
                let e = cur.digits().ok_or_else(|| cur.err("expected exponent"))?;
                exp = e.try_into().map_err(|_| cur.err("exponent too large"))?;
            }
        } else if coeff.is_none() {
            return Err(cur.err("expected a term"));
        }
        let c = coeff.unwrap_or_else(BigRational::one) * sign;
        terms.push((c, exp));
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x^", "x+y", "2//3", "x^2 x", "1/0", "+-x"] {
            assert!(parse_terms(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn accepts_spacing_and_names() {
        let t = parse_terms(" nu^2 - 14 nu + 32 ").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[1], (BigRational::from_integer((-14).into()), 1));
    }
}
