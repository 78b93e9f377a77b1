//! Gröbner bases in Z2[w2, w3] under the lexicographic order with `w3 < w2`.
//!
//! Everything here is generic over the ideal: S-polynomials, multivariate
//! division, Buchberger completion, reduced bases, ideal membership and the
//! staircase of standard monomials.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::poly::{Monomial, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("S-polynomial of the zero polynomial is undefined")]
    ZeroInput,
    #[error("basis element {0} is zero")]
    ZeroElement(usize),
    #[error("zero ideal")]
    ZeroIdeal,
    #[error("basis is not a Gröbner basis; complete it first")]
    NotGroebner,
    #[error("quotient not finite-dimensional")]
    InfiniteStaircase,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A list of nonzero polynomials with cached leading monomials.
///
/// `verified` records that the list is known to be a Gröbner basis of the
/// ideal it generates; membership queries require it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    lms: Vec<Monomial>,
    reduced: bool,
    verified: bool,
}

impl GroebnerBasis {
    /// Wraps a generating list. Zero elements are rejected. The result is not
    /// yet known to be a Gröbner basis; see [`GroebnerBasis::into_verified`].
    pub fn new(elements: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        let lms = elements
            .iter()
            .enumerate()
            .map(|(i, p)| {
                p.leading_monomial()
                    .map_err(|_| GroebnerError::ZeroElement(i))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroebnerBasis {
            elements,
            lms,
            reduced: false,
            verified: false,
        })
    }

    /// Runs [`is_groebner`] and marks the basis as verified on success.
    pub fn into_verified(mut self) -> Result<Self, GroebnerError> {
        if self.verified || is_groebner(&self) {
            self.verified = true;
            Ok(self)
        } else {
            Err(GroebnerError::NotGroebner)
        }
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.lms
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    fn push(&mut self, p: Polynomial) {
        let lm = p.leading_monomial().expect("pushed polynomial is nonzero");
        self.elements.push(p);
        self.lms.push(lm);
        self.reduced = false;
    }

    /// Indices of elements whose leading monomial divides `m`.
    fn divisors_of(&self, m: Monomial) -> impl Iterator<Item = usize> + '_ {
        self.lms
            .iter()
            .enumerate()
            .filter(move |(_, lm)| lm.divides(m))
            .map(|(i, _)| i)
    }

    /// Divisor with the greatest leading monomial; the first such on ties.
    fn preferred_divisor(&self, m: Monomial) -> Option<usize> {
        let mut best: Option<usize> = None;
        for i in self.divisors_of(m) {
            match best {
                Some(j) if self.lms[j] >= self.lms[i] => {}
                _ => best = Some(i),
            }
        }
        best
    }
}

/// `(lcm / LM(p)) p + (lcm / LM(q)) q`.
pub fn s_polynomial(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, GroebnerError> {
    let lp = p.leading_monomial().map_err(|_| GroebnerError::ZeroInput)?;
    let lq = q.leading_monomial().map_err(|_| GroebnerError::ZeroInput)?;
    let lcm = lp.lcm(lq);
    let up = lp.quotient_of(lcm).expect("LM divides lcm");
    let uq = lq.quotient_of(lcm).expect("LM divides lcm");
    Ok(p.checked_mul_monomial(up)?
        .add(&q.checked_mul_monomial(uq)?))
}

/// Result of dividing a polynomial by a list: `p = sum q_i f_i + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Full reduction, largest reducible term first. `choose` picks one of the
/// candidate divisor indices; `record` sees each step `(index, multiplier)`.
fn reduce_with<C, R>(
    p: &Polynomial,
    basis: &GroebnerBasis,
    mut choose: C,
    mut record: R,
) -> Polynomial
where
    C: FnMut(&GroebnerBasis, Monomial) -> Option<usize>,
    R: FnMut(usize, Monomial),
{
    let mut work = p.clone();
    let mut remainder: Vec<Monomial> = Vec::new();
    // Terms are consumed top-down. A reduction step only introduces terms
    // below the one it cancels, so irreducible terms moved to the remainder
    // are final and the remainder stays sorted.
    while let Some(&top) = work.terms().first() {
        match choose(basis, top) {
            Some(i) => {
                let mult = basis.lms[i]
                    .quotient_of(top)
                    .expect("chosen divisor divides");
                record(i, mult);
                work.add_assign(&basis.elements[i].mul_monomial(mult));
            }
            None => {
                remainder.push(top);
                work.pop_leading();
            }
        }
    }
    Polynomial::from_terms(remainder)
}

/// Normal form of `p` with respect to `basis`, using the default divisor
/// choice (greatest leading monomial).
pub fn normal_form(p: &Polynomial, basis: &GroebnerBasis) -> Polynomial {
    reduce_with(p, basis, |b, m| b.preferred_divisor(m), |_, _| {})
}

/// Normal form with a caller-supplied tie-break among candidate divisors.
/// `pick` receives the candidate indices (ascending) and returns a position
/// into that slice.
pub fn normal_form_with<F>(p: &Polynomial, basis: &GroebnerBasis, mut pick: F) -> Polynomial
where
    F: FnMut(&[usize]) -> usize,
{
    reduce_with(
        p,
        basis,
        |b, m| {
            let cands: Vec<usize> = b.divisors_of(m).collect();
            if cands.is_empty() {
                None
            } else {
                Some(cands[pick(&cands) % cands.len()])
            }
        },
        |_, _| {},
    )
}

/// Division with quotient tracking.
pub fn divide(p: &Polynomial, basis: &GroebnerBasis) -> Division {
    let mut quotients = vec![Polynomial::zero(); basis.len()];
    let remainder = reduce_with(
        p,
        basis,
        |b, m| b.preferred_divisor(m),
        |i, mult| quotients[i].add_assign(&Polynomial::monomial(mult)),
    );
    Division {
        quotients,
        remainder,
    }
}

/// True iff every S-polynomial of a pair of elements reduces to zero.
pub fn is_groebner(basis: &GroebnerBasis) -> bool {
    let n = basis.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let s = s_polynomial(&basis.elements[i], &basis.elements[j])
                .expect("basis elements are nonzero");
            if !normal_form(&s, basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Buchberger completion with the normal selection strategy (pairs ordered
/// by the weighted degree of their lcm) and the coprime-LM criterion.
pub fn buchberger(generators: &[Polynomial]) -> Result<GroebnerBasis, GroebnerError> {
    let nonzero: Vec<Polynomial> = generators
        .iter()
        .filter(|p| !p.is_zero())
        .cloned()
        .collect();
    if nonzero.is_empty() {
        return Err(GroebnerError::ZeroIdeal);
    }
    let mut basis = GroebnerBasis::new(nonzero)?;
    // (lcm degree, lcm, i, j) keeps the selection deterministic
    let mut pairs: BTreeSet<(u64, Monomial, usize, usize)> = BTreeSet::new();
    let add_pairs = |pairs: &mut BTreeSet<_>, basis: &GroebnerBasis, j: usize| {
        for i in 0..j {
            let lcm = basis.lms[i].lcm(basis.lms[j]);
            pairs.insert((lcm.degree(), lcm, i, j));
        }
    };
    for j in 1..basis.len() {
        add_pairs(&mut pairs, &basis, j);
    }
    while let Some((_, lcm, i, j)) = pairs.pop_first() {
        let (li, lj) = (basis.lms[i], basis.lms[j]);
        if li * lj == lcm {
            continue;
        }
        let s = s_polynomial(&basis.elements[i], &basis.elements[j])?;
        let r = normal_form(&s, &basis);
        if !r.is_zero() {
            basis.push(r);
            let j = basis.len() - 1;
            add_pairs(&mut pairs, &basis, j);
        }
    }
    basis.verified = true;
    Ok(basis)
}

/// The reduced Gröbner basis of the ideal generated by `basis`, sorted by
/// descending leading monomial. Expects a Gröbner basis as input.
pub fn reduce_basis(basis: &GroebnerBasis) -> GroebnerBasis {
    // keep elements whose LM is not divisible by an earlier-kept or other LM
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| basis.lms[a].cmp(&basis.lms[b]).then(a.cmp(&b)));
    let mut kept: Vec<usize> = Vec::new();
    for &i in &order {
        if !kept.iter().any(|&k| basis.lms[k].divides(basis.lms[i])) {
            kept.push(i);
        }
    }
    let minimal = GroebnerBasis::new(kept.iter().map(|&i| basis.elements[i].clone()).collect())
        .expect("elements are nonzero");
    // tails are reduced against the minimal basis; LMs are untouched since no
    // other LM divides them
    let mut elements: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for (k, p) in minimal.elements.iter().enumerate() {
        let lm = minimal.lms[k];
        let tail = p.tail();
        let others = GroebnerBasis::new(
            minimal
                .elements
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, q)| q.clone())
                .collect(),
        )
        .expect("elements are nonzero");
        let reduced_tail = normal_form(&tail, &others);
        elements.push(Polynomial::monomial(lm).add(&reduced_tail));
    }
    elements.sort_by(|a, b| b.terms()[0].cmp(&a.terms()[0]));
    let mut out = GroebnerBasis::new(elements).expect("elements are nonzero");
    out.reduced = true;
    out.verified = basis.verified;
    out
}

/// `p` lies in the ideal generated by the (verified) basis.
pub fn member(p: &Polynomial, basis: &GroebnerBasis) -> Result<bool, GroebnerError> {
    if !basis.verified {
        return Err(GroebnerError::NotGroebner);
    }
    Ok(normal_form(p, basis).is_zero())
}

/// `p` lies in `w3 * I` where `I` is generated by the (verified) basis.
pub fn member_w3_ideal(p: &Polynomial, basis: &GroebnerBasis) -> Result<bool, GroebnerError> {
    if !basis.verified {
        return Err(GroebnerError::NotGroebner);
    }
    if p.is_zero() {
        return Ok(true);
    }
    match p.div_w3_pow(1) {
        Some(q) => member(&q, basis),
        None => Ok(false),
    }
}

/// Monomials divisible by no leading monomial, ascending.
pub fn standard_monomials(basis: &GroebnerBasis) -> Result<Vec<Monomial>, GroebnerError> {
    if !basis.verified {
        return Err(GroebnerError::NotGroebner);
    }
    let b_bound = basis
        .lms
        .iter()
        .filter(|m| m.c == 0)
        .map(|m| m.b)
        .min()
        .ok_or(GroebnerError::InfiniteStaircase)?;
    let c_bound = basis
        .lms
        .iter()
        .filter(|m| m.b == 0)
        .map(|m| m.c)
        .min()
        .ok_or(GroebnerError::InfiniteStaircase)?;
    let mut out = Vec::new();
    for b in 0..b_bound {
        for c in 0..c_bound {
            let m = Monomial::new(b, c);
            if basis.lms.iter().any(|lm| lm.divides(m)) {
                break;
            }
            out.push(m);
        }
    }
    Ok(out)
}
