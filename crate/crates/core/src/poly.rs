//! Sparse polynomials in Z2[w2, w3].
//!
//! Coefficients live in GF(2), so a polynomial is just a set of monomials.
//! Terms are stored strictly descending under the lexicographic order with
//! `w3 < w2` (compare the w2-exponent first, then the w3-exponent), which
//! makes equality a slice comparison and the leading monomial the first term.
//!
//! The grading gives `w2` degree 2 and `w3` degree 3.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("LM of zero undefined")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("exponent overflow in {0}")]
    ExponentOverflow(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial at byte {position}: {message}")]
pub struct ParsePolynomialError {
    pub position: usize,
    pub message: String,
}

/// The monomial `w2^b * w3^c`.
///
/// The derived ordering compares `b` first and then `c`, which is exactly the
/// lexicographic order with `w3 < w2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub b: u64,
    pub c: u64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { b: 0, c: 0 };
    pub const W2: Monomial = Monomial { b: 1, c: 0 };
    pub const W3: Monomial = Monomial { b: 0, c: 1 };

    pub const fn new(b: u64, c: u64) -> Self {
        Monomial { b, c }
    }

    /// Weighted degree `2b + 3c`.
    pub fn degree(self) -> u64 {
        self.b
            .checked_mul(2)
            .and_then(|x| self.c.checked_mul(3).and_then(|y| x.checked_add(y)))
            .expect("exponent overflow in weighted degree")
    }

    pub fn compare(self, other: Monomial) -> Ordering {
        self.cmp(&other)
    }

    pub fn checked_mul(self, other: Monomial) -> Result<Monomial, PolyError> {
        match (self.b.checked_add(other.b), self.c.checked_add(other.c)) {
            (Some(b), Some(c)) => Ok(Monomial { b, c }),
            _ => Err(PolyError::ExponentOverflow("monomial product")),
        }
    }

    pub fn lcm(self, other: Monomial) -> Monomial {
        Monomial::new(self.b.max(other.b), self.c.max(other.c))
    }

    /// `self | other`.
    pub fn divides(self, other: Monomial) -> bool {
        self.b <= other.b && self.c <= other.c
    }

    /// Exact quotient `other / self`, if `self` divides `other`.
    pub fn quotient_of(self, other: Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial::new(other.b - self.b, other.c - self.c))
    }

    pub fn is_one(self) -> bool {
        self == Monomial::ONE
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    /// Panics on exponent overflow; use [`Monomial::checked_mul`] to recover.
    fn mul(self, rhs: Monomial) -> Monomial {
        match self.checked_mul(rhs) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn factor(f: &mut fmt::Formatter<'_>, var: &str, e: u64) -> fmt::Result {
            if e == 1 {
                write!(f, "{var}")
            } else {
                write!(f, "{var}^{e}")
            }
        }
        match (self.b, self.c) {
            (0, 0) => write!(f, "1"),
            (b, 0) => factor(f, "w2", b),
            (0, c) => factor(f, "w3", c),
            (b, c) => {
                factor(f, "w2", b)?;
                write!(f, "*")?;
                factor(f, "w3", c)
            }
        }
    }
}

/// A polynomial over GF(2): a strictly descending list of distinct monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE)
    }

    pub fn w2() -> Self {
        Self::monomial(Monomial::W2)
    }

    pub fn w3() -> Self {
        Self::monomial(Monomial::W3)
    }

    pub fn monomial(m: Monomial) -> Self {
        Polynomial { terms: vec![m] }
    }

    /// `w2^b * w3^c` as a polynomial.
    pub fn term(b: u64, c: u64) -> Self {
        Self::monomial(Monomial::new(b, c))
    }

    /// Builds a polynomial from arbitrary terms; repeated terms cancel in pairs.
    pub fn from_terms<I: IntoIterator<Item = Monomial>>(terms: I) -> Self {
        let mut terms: Vec<Monomial> = terms.into_iter().collect();
        terms.sort_unstable_by(|a, b| b.cmp(a));
        Polynomial {
            terms: cancel_sorted(terms),
        }
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].is_one()
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.terms.binary_search_by(|t| m.cmp(t)).is_ok()
    }

    /// Everything except the leading term (zero stays zero).
    pub fn tail(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.get(1..).unwrap_or(&[]).to_vec(),
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<Monomial> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn leading_monomial(&self) -> Result<Monomial, PolyError> {
        self.terms.first().copied().ok_or(PolyError::ZeroPolynomial)
    }

    /// The common weighted degree of all terms.
    pub fn weighted_degree(&self) -> Result<u64, PolyError> {
        let (first, rest) = self.terms.split_first().ok_or(PolyError::ZeroPolynomial)?;
        let d = first.degree();
        if rest.iter().all(|m| m.degree() == d) {
            Ok(d)
        } else {
            Err(PolyError::NotHomogeneous)
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weighted_degree().is_ok()
    }

    /// Largest weighted degree among the terms (`None` for zero).
    pub fn max_degree(&self) -> Option<u64> {
        self.terms.iter().map(|m| m.degree()).max()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        Polynomial {
            terms: merge_xor(&self.terms, &other.terms),
        }
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        if other.is_zero() {
            return;
        }
        self.terms = merge_xor(&self.terms, &other.terms);
    }

    /// `m * self`, checking for exponent overflow.
    pub fn checked_mul_monomial(&self, m: Monomial) -> Result<Polynomial, PolyError> {
        // the order is multiplicative, so shifting keeps the terms sorted
        let terms = self
            .terms
            .iter()
            .map(|t| t.checked_mul(m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial { terms })
    }

    pub fn mul_monomial(&self, m: Monomial) -> Polynomial {
        self.checked_mul_monomial(m)
            .unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero();
        for &m in &small.terms {
            acc.add_assign(&large.checked_mul_monomial(m)?);
        }
        Ok(acc)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.checked_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    /// `self^e` by square-and-multiply through ordinary multiplication.
    pub fn checked_pow(&self, mut e: u64) -> Result<Polynomial, PolyError> {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn pow(&self, e: u64) -> Polynomial {
        self.checked_pow(e).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Exact division by `w3^k`, if every term has w3-exponent at least `k`.
    pub fn div_w3_pow(&self, k: u64) -> Option<Polynomial> {
        if self.terms.iter().any(|m| m.c < k) {
            return None;
        }
        Some(Polynomial {
            terms: self
                .terms
                .iter()
                .map(|m| Monomial::new(m.b, m.c - k))
                .collect(),
        })
    }
}

/// Drops adjacent equal pairs from a sorted list (GF(2) cancellation).
fn cancel_sorted(sorted: Vec<Monomial>) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::with_capacity(sorted.len());
    for m in sorted {
        if out.last() == Some(&m) {
            out.pop();
        } else {
            out.push(m);
        }
    }
    out
}

/// Symmetric difference of two strictly descending term lists.
fn merge_xor(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::monomial(m)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        Polynomial::add(&self, &rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        Polynomial::mul(&self, &rhs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, m) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = ParsePolynomialError;

    /// Parses the canonical text form. Whitespace is ignored, terms are
    /// separated by `+` and factors by `*`; repeated terms cancel.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).polynomial()
    }
}

impl FromStr for Monomial {
    type Err = ParsePolynomialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let p: Polynomial = s.parse()?;
        match p.terms() {
            [m] => Ok(*m),
            _ => Err(ParsePolynomialError {
                position: 0,
                message: "expected a single monomial".into(),
            }),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParsePolynomialError> {
        Err(ParsePolynomialError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64, ParsePolynomialError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match digits.parse() {
            Ok(v) => Ok(v),
            Err(_) => self.err("exponent out of range"),
        }
    }

    fn polynomial(mut self) -> Result<Polynomial, ParsePolynomialError> {
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let mut terms = Vec::new();
        loop {
            if let Some(m) = self.term()? {
                terms.push(m);
            }
            if self.peek().is_none() {
                break;
            }
            if !self.eat(b'+') {
                return self.err("expected '+'");
            }
        }
        Ok(Polynomial::from_terms(terms))
    }

    /// One `*`-separated product; `None` when the term is the constant 0.
    fn term(&mut self) -> Result<Option<Monomial>, ParsePolynomialError> {
        let mut m = Monomial::ONE;
        let mut zero = false;
        loop {
            match self.peek() {
                Some(b'w') => {
                    self.pos += 1;
                    let var = self.src.get(self.pos).copied();
                    self.pos += 1;
                    let e = if self.eat(b'^') { self.number()? } else { 1 };
                    let factor = match var {
                        Some(b'2') => Monomial::new(e, 0),
                        Some(b'3') => Monomial::new(0, e),
                        _ => {
                            self.pos -= 1;
                            return self.err("unknown variable, expected w2 or w3");
                        }
                    };
                    m = match m.checked_mul(factor) {
                        Ok(v) => v,
                        Err(_) => return self.err("exponent overflow"),
                    };
                }
                Some(b'0'..=b'9') => match self.number()? {
                    0 => zero = true,
                    1 => {}
                    _ => return self.err("coefficients must be 0 or 1"),
                },
                _ => return self.err("expected a factor"),
            }
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((!zero).then_some(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn add_cancels() {
        assert_eq!(p("w2^3 + w3^2") + p("w3^2"), p("w2^3"));
        let q = p("w2^5*w3 + w2 + 1");
        assert!((&q + &q).is_zero());
        // w2*g4 + w3*g3 = g6
        assert_eq!(p("w2") * p("w2^2") + p("w3") * p("w3"), p("w2^3 + w3^2"));
    }

    #[test]
    fn multiply() {
        assert_eq!(p("w3") * p("w2^2*w3"), p("w2^2*w3^2"));
        let q = p("w2^4 + w2*w3^2");
        assert_eq!(Polynomial::one() * q.clone(), q);
        // w3 * g9^2 = g21
        assert_eq!(p("w3") * p("w3^3").pow(2), p("w3^7"));
    }

    #[test]
    fn powers() {
        assert!(p("w2 + w3").pow(0).is_one());
        assert_eq!(p("w2^3 + w3^2").pow(2), p("w2^6 + w3^4"));
        assert_eq!(p("w2 + w3").pow(2), p("w2^2 + w3^2"));
        assert_eq!(p("w2 + w3").pow(3), p("w2^3 + w2^2*w3 + w2*w3^2 + w3^3"));
    }

    #[test]
    fn overflow_is_reported() {
        let big = Polynomial::term(u64::MAX, 0);
        assert_eq!(
            big.checked_mul(&p("w2")),
            Err(PolyError::ExponentOverflow("monomial product"))
        );
        assert!(big.checked_pow(2).is_err());
    }

    #[test]
    #[should_panic(expected = "exponent overflow")]
    fn overflow_panics_in_operator() {
        let _ = Polynomial::term(0, u64::MAX) * p("w3");
    }

    #[test]
    fn compare_is_lex_with_w2_first() {
        assert_eq!(
            Monomial::new(1, 5).compare(Monomial::new(2, 0)),
            Ordering::Less
        );
        assert_eq!(
            Monomial::new(2, 1).compare(Monomial::new(2, 2)),
            Ordering::Less
        );
        assert_eq!(
            Monomial::new(3, 0).compare(Monomial::new(3, 0)),
            Ordering::Equal
        );
    }

    #[test]
    fn leading_monomials() {
        assert_eq!(
            p("w2^4 + w2*w3^2").leading_monomial(),
            Ok(Monomial::new(4, 0))
        );
        assert_eq!(
            p("w2^7 + w2^4*w3^2 + w2*w3^4").leading_monomial(),
            Ok(Monomial::new(7, 0))
        );
        assert_eq!(p("w3^3").leading_monomial(), Ok(Monomial::new(0, 3)));
        assert_eq!(
            Polynomial::zero().leading_monomial(),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn lcm_and_divides() {
        assert_eq!(
            Monomial::new(3, 0).lcm(Monomial::new(2, 1)),
            Monomial::new(3, 1)
        );
        assert!(Monomial::new(2, 1).divides(Monomial::new(3, 1)));
        assert!(!Monomial::new(0, 3).divides(Monomial::new(2, 2)));
        assert_eq!(
            Monomial::new(1, 1).quotient_of(Monomial::new(3, 1)),
            Some(Monomial::new(2, 0))
        );
        assert_eq!(Monomial::new(0, 3).quotient_of(Monomial::new(2, 2)), None);
    }

    #[test]
    fn weighted_degrees() {
        assert_eq!(p("w2^2*w3").weighted_degree(), Ok(7));
        assert_eq!(p("w2^12 + w2^9*w3^2 + w3^8").weighted_degree(), Ok(24));
        assert_eq!(
            p("w2 + w3").weighted_degree(),
            Err(PolyError::NotHomogeneous)
        );
        assert_eq!(
            Polynomial::zero().weighted_degree(),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn canonical_text() {
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::one().to_string(), "1");
        assert_eq!(p("w3 + w2").to_string(), "w2 + w3");
        assert_eq!(p("w3^5+w2^6*w3").to_string(), "w2^6*w3 + w3^5");
        assert_eq!(p("w2^1*w3^0").to_string(), "w2");
        assert_eq!(p(" w2 ^ 2 * w3 + 1 + 0 ").to_string(), "w2^2*w3 + 1");
        assert_eq!(p("w2 + w2 + w3").to_string(), "w3");
        assert_eq!(p("w3*w2*w3").to_string(), "w2*w3^2");
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "w4", "w2 +", "2*w2", "w2 w3", "w2^", "x"] {
            assert!(
                bad.parse::<Polynomial>().is_err(),
                "{bad:?} should not parse"
            );
        }
    }

    #[test]
    fn div_by_w3_power() {
        assert_eq!(p("w2*w3^2 + w3^3").div_w3_pow(2), Some(p("w2 + w3")));
        assert_eq!(p("w2 + w3").div_w3_pow(1), None);
    }
}
