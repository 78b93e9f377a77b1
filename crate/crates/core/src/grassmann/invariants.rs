//! Heights of `w2`, `w3`, the number `M_n` and the cup-length: closed forms
//! on one side, Gröbner-basis computations on the other, and the end-to-end
//! [`verify`] pipeline comparing them.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::identities::per_n_identities;
use super::{brute_force_basis, closed_basis, t_of, GrassmannError, MAX_N};
use crate::groebner::{self, is_groebner, member, GroebnerBasis};
use crate::gseq::GSequence;
use crate::poly::{Monomial, Polynomial};

fn pow2(k: u32) -> u64 {
    1u64 << k
}

fn check_range(n: u64) -> Result<u32, GrassmannError> {
    if n < 7 {
        return Err(GrassmannError::BelowRange(n));
    }
    if n > MAX_N {
        return Err(GrassmannError::AboveRange(n));
    }
    Ok(t_of(n))
}

/// Which group of rows of the cup-length table `n` falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableRow {
    /// `2^t - 1 <= n <= 2^t + 2^(t-1) - 2`
    Lower,
    /// `n = 2^t + 2^(t-1) - 1`
    BelowMiddle,
    /// `n = 2^t + 2^(t-1)`
    Middle,
    /// `2^(t+1) - 2^(s+1) + 1 <= n <= 2^(t+1) - 2^s`, `1 <= s <= t - 2`
    Upper { s: u32 },
}

fn table_row(n: u64, t: u32) -> TableRow {
    let mid = pow2(t) + pow2(t - 1);
    if n + 1 < mid {
        TableRow::Lower
    } else if n + 1 == mid {
        TableRow::BelowMiddle
    } else if n == mid {
        TableRow::Middle
    } else {
        let s = (1..=t - 2)
            .find(|&s| pow2(t + 1) - pow2(s + 1) < n && n <= pow2(t + 1) - pow2(s))
            .expect("n lies in one of the upper bands");
        TableRow::Upper { s }
    }
}

/// Height of `w2` from the closed form.
pub fn ht2_formula(n: u64) -> Result<u64, GrassmannError> {
    let t = check_range(n)?;
    Ok(match table_row(n, t) {
        TableRow::Upper { s } => pow2(t + 1) - 3 * pow2(s) - 1,
        _ => pow2(t) - 4,
    })
}

/// Height of `w3` from the closed form `max(2^(t-1) - 2, n - 2^t - 1)`.
pub fn ht3_formula(n: u64) -> Result<u64, GrassmannError> {
    let t = check_range(n)?;
    let a = pow2(t - 1) as i64 - 2;
    let b = n as i64 - pow2(t) as i64 - 1;
    Ok(a.max(b) as u64)
}

/// Z2-cup-length of `G(n,3)` from the closed form.
pub fn cup_formula(n: u64) -> Result<u64, GrassmannError> {
    let t = check_range(n)?;
    Ok(match table_row(n, t) {
        TableRow::Lower => pow2(t) - 3,
        TableRow::BelowMiddle => pow2(t) - 2,
        TableRow::Middle => pow2(t) - 1,
        TableRow::Upper { s } => n - pow2(s) - 1,
    })
}

/// Characteristic rank `min(3n - 2^(t+1) - 2, 2^(t+1) - 5)`.
pub fn charrank(n: u64) -> Result<i64, GrassmannError> {
    let t = check_range(n)?;
    let a = 3 * n as i64 - pow2(t + 1) as i64 - 2;
    let b = pow2(t + 1) as i64 - 5;
    Ok(a.min(b))
}

/// All closed-form values for one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormulaValues {
    pub t: u32,
    pub ht2: u64,
    pub ht3: u64,
    pub cup: u64,
    pub charrank: Option<i64>,
}

/// Values for `G(6,3)`, known from its full cohomology ring; it behaves as
/// the last table row for `t = 2`.
const N6_VALUES: FormulaValues = FormulaValues {
    t: 2,
    ht2: 1,
    ht3: 1,
    cup: 3,
    charrank: None,
};

pub fn formula_values(n: u64) -> Result<FormulaValues, GrassmannError> {
    if n == 6 {
        return Ok(N6_VALUES);
    }
    Ok(FormulaValues {
        t: check_range(n)?,
        ht2: ht2_formula(n)?,
        ht3: ht3_formula(n)?,
        cup: cup_formula(n)?,
        charrank: Some(charrank(n)?),
    })
}

/// The w2/w3 part `w2^b w3^c` of a cup-length realizer `w2^b w3^c a_m`,
/// together with the dimension `m` of the extra indecomposable class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RealizerSpec {
    pub b: u64,
    pub c: u64,
    pub a_dim: u64,
}

impl RealizerSpec {
    pub fn monomial(&self) -> Monomial {
        Monomial::new(self.b, self.c)
    }
}

impl fmt::Display for RealizerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.monomial();
        if m.is_one() {
            write!(f, "a_{}", self.a_dim)
        } else {
            write!(f, "{m}*a_{}", self.a_dim)
        }
    }
}

/// The realizer listed for `n` in the cup-length table.
pub fn realizer_spec(n: u64) -> Result<RealizerSpec, GrassmannError> {
    if n == 6 {
        // last row, t = 2: w2 w3 a_4
        return Ok(RealizerSpec {
            b: 1,
            c: 1,
            a_dim: 4,
        });
    }
    let t = check_range(n)?;
    Ok(match table_row(n, t) {
        TableRow::Lower => {
            let a_dim = if n == pow2(t) - 1 {
                pow2(t) - 4
            } else if n == pow2(t) {
                pow2(t) - 1
            } else {
                3 * n - pow2(t + 1) - 1
            };
            RealizerSpec {
                b: pow2(t) - 4,
                c: 0,
                a_dim,
            }
        }
        TableRow::BelowMiddle => RealizerSpec {
            b: pow2(t - 1) - 1,
            c: pow2(t - 1) - 2,
            a_dim: pow2(t + 1) - 4,
        },
        TableRow::Middle => RealizerSpec {
            b: pow2(t - 1) - 1,
            c: pow2(t - 1) - 1,
            a_dim: pow2(t + 1) - 4,
        },
        TableRow::Upper { s } => RealizerSpec {
            b: pow2(t + 1) - 3 * pow2(s) - 1,
            c: n + pow2(s + 1) - pow2(t + 1) - 1,
            a_dim: pow2(t + 1) - 4,
        },
    })
}

/// Checks the table's realizer for `n` against a verified basis of `I_n`:
/// the w2/w3 part is not in the ideal, its exponent sum is `cup - 1`, the
/// dimensions add up to `3n - 9`, the exponents respect the heights, and the
/// extra class sits above the characteristic rank.
pub fn realizer_check(
    n: u64,
    basis: &GroebnerBasis,
) -> Result<(bool, RealizerSpec), GrassmannError> {
    let spec = realizer_spec(n)?;
    let fv = formula_values(n)?;
    let nonmember = !member(&Polynomial::monomial(spec.monomial()), basis)?;
    let length = spec.b + spec.c + 1 == fv.cup;
    let dimension = 2 * spec.b + 3 * spec.c + spec.a_dim == 3 * n - 9;
    let heights = spec.b <= fv.ht2 && spec.c <= fv.ht3;
    let above_charrank = fv.charrank.is_none_or(|cr| spec.a_dim as i64 > cr);
    Ok((
        nonmember && length && dimension && heights && above_charrank,
        spec,
    ))
}

/// Largest weighted degree of a standard monomial.
pub fn staircase_degree(basis: &GroebnerBasis) -> Result<u64, GrassmannError> {
    let sm = groebner::standard_monomials(basis)?;
    Ok(sm.iter().map(|m| m.degree()).max().unwrap_or(0))
}

fn pure_power_height(
    basis: &GroebnerBasis,
    unit: Monomial,
    weight: u64,
) -> Result<u64, GrassmannError> {
    let bound = staircase_degree(basis)? / weight + 1;
    let mut power = Polynomial::one();
    for e in 0..=bound {
        if member(&power, basis)? {
            return e
                .checked_sub(1)
                .ok_or_else(|| GrassmannError::Internal("ideal contains 1".into()));
        }
        power = power.mul_monomial(unit);
    }
    Err(GrassmannError::Internal(format!(
        "no power of {unit} up to {bound} lies in the ideal"
    )))
}

/// Largest `e` with `w2^e` outside the ideal.
pub fn ht2_computed(basis: &GroebnerBasis) -> Result<u64, GrassmannError> {
    pure_power_height(basis, Monomial::W2, 2)
}

/// Largest `e` with `w3^e` outside the ideal.
pub fn ht3_computed(basis: &GroebnerBasis) -> Result<u64, GrassmannError> {
    pure_power_height(basis, Monomial::W3, 3)
}

/// `M_n = max { b + c : w2^b w3^c not in I_n }` with a maximizing witness
/// (largest `b` among ties).
///
/// Only monomials up to the top standard-monomial degree are examined. The
/// non-members are closed under division, so each column `b` is scanned
/// upward in `c` until the first member.
pub fn m_n_computed(basis: &GroebnerBasis) -> Result<(u64, Monomial), GrassmannError> {
    let dmax = staircase_degree(basis)?;
    let mut best: Option<(u64, Monomial)> = None;
    let mut b = 0;
    while 2 * b <= dmax {
        let mut c = 0;
        while 2 * b + 3 * c <= dmax {
            let m = Monomial::new(b, c);
            if member(&Polynomial::monomial(m), basis)? {
                break;
            }
            if best.is_none_or(|(v, _)| b + c >= v) {
                best = Some((b + c, m));
            }
            c += 1;
        }
        if c == 0 {
            break;
        }
        b += 1;
    }
    best.ok_or_else(|| GrassmannError::Internal("ideal contains 1".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ReportFlags {
    pub groebner_ok: bool,
    pub basis_match_ok: bool,
    pub realizer_ok: bool,
    pub identities_ok: bool,
    pub bounds_ok: bool,
}

impl ReportFlags {
    pub fn all(&self) -> bool {
        self.groebner_ok
            && self.basis_match_ok
            && self.realizer_ok
            && self.identities_ok
            && self.bounds_ok
    }
}

/// Computed versus closed-form invariants for one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub n: u64,
    pub t: u32,
    pub ht2_formula: u64,
    pub ht2_computed: Option<u64>,
    pub ht3_formula: u64,
    pub ht3_computed: Option<u64>,
    pub m_n: Option<u64>,
    pub cup_formula: u64,
    pub charrank: Option<i64>,
    pub witness: Option<String>,
    pub flags: ReportFlags,
    #[serde(skip)]
    pub realizer: Option<RealizerSpec>,
    #[serde(skip)]
    pub errors: Vec<String>,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.ht2_computed == Some(self.ht2_formula)
            && self.ht3_computed == Some(self.ht3_formula)
            && self.m_n.map(|m| m + 1) == Some(self.cup_formula)
            && self.flags.all()
            && self.errors.is_empty()
    }
}

fn canonical_set(b: &GroebnerBasis) -> BTreeSet<String> {
    b.elements().iter().map(|p| p.to_string()).collect()
}

/// End-to-end check for one `n >= 6`. Internal mismatches and errors show
/// up as failed flags and entries in `errors`, never as a panic.
pub fn verify(n: u64, seq: &mut GSequence) -> Result<InvariantReport, GrassmannError> {
    if n < 6 {
        return Err(GrassmannError::BelowRange(n));
    }
    let fv = formula_values(n)?;
    let mut report = InvariantReport {
        n,
        t: fv.t,
        ht2_formula: fv.ht2,
        ht2_computed: None,
        ht3_formula: fv.ht3,
        ht3_computed: None,
        m_n: None,
        cup_formula: fv.cup,
        charrank: fv.charrank,
        witness: None,
        flags: ReportFlags::default(),
        realizer: None,
        errors: Vec::new(),
    };
    let note = |report: &mut InvariantReport, e: GrassmannError| report.errors.push(e.to_string());

    let brute = match brute_force_basis(n, seq) {
        Ok(b) => Some(b),
        Err(e) => {
            note(&mut report, e);
            None
        }
    };

    // the basis the invariants are computed from
    let mut working: Option<GroebnerBasis> = None;
    if n == 6 {
        if let Some(b) = &brute {
            report.flags.groebner_ok = is_groebner(b);
            report.flags.basis_match_ok =
                canonical_set(b) == BTreeSet::from(["w2^2".to_string(), "w3^2".to_string()]);
            report.flags.identities_ok = true;
            working = Some(b.clone());
        }
    } else {
        match closed_basis(n, seq) {
            Ok(closed) => {
                let gb = closed.to_groebner_basis();
                report.flags.groebner_ok = is_groebner(&gb);
                if report.flags.groebner_ok {
                    let verified = gb.into_verified()?;
                    if let Some(b) = &brute {
                        report.flags.basis_match_ok =
                            canonical_set(&groebner::reduce_basis(&verified)) == canonical_set(b);
                    }
                    working = Some(verified);
                }
            }
            Err(e) => note(&mut report, e),
        }
        match per_n_identities(n, seq) {
            Ok(ok) => report.flags.identities_ok = ok,
            Err(e) => note(&mut report, e.into()),
        }
        if working.is_none() {
            working = brute.clone();
        }
    }

    let Some(basis) = working else {
        return Ok(report);
    };

    let computed = (|| -> Result<(), GrassmannError> {
        report.ht2_computed = Some(ht2_computed(&basis)?);
        let ht3 = ht3_computed(&basis)?;
        report.ht3_computed = Some(ht3);
        let (m, witness) = m_n_computed(&basis)?;
        report.m_n = Some(m);
        report.witness = Some(witness.to_string());

        let top = 3 * n - 9;
        let dmax = staircase_degree(&basis)?;
        let mut bounds = dmax < top && witness.degree() < top;
        if let Some(cr) = fv.charrank {
            // a nonzero w2/w3 monomial leaves room for a class above charrank
            bounds &= dmax as i64 <= top as i64 - (cr + 1);
        }
        report.flags.bounds_ok = bounds;

        if n >= 7 {
            let p = super::params(n)?;
            let last = p.t as usize - 1;
            let structural = p.shift(last) + pow2(p.t - 1) - 2;
            report.flags.identities_ok &= ht3 == structural;
        }

        let (ok, spec) = realizer_check(n, &basis)?;
        report.flags.realizer_ok = ok;
        report.realizer = Some(spec);
        Ok(())
    })();
    if let Err(e) = computed {
        note(&mut report, e);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::ideal_basis;

    #[test]
    fn formula_examples() {
        assert_eq!(
            (ht2_formula(7), ht3_formula(7), cup_formula(7)),
            (Ok(4), Ok(2), Ok(5))
        );
        assert_eq!(
            (ht2_formula(12), ht3_formula(12), cup_formula(12)),
            (Ok(4), Ok(3), Ok(7))
        );
        assert_eq!(
            (ht2_formula(13), ht3_formula(13), cup_formula(13)),
            (Ok(9), Ok(4), Ok(10))
        );
        assert_eq!(cup_formula(6), Err(GrassmannError::BelowRange(6)));
    }

    #[test]
    fn ht2_formula_table() {
        for n in 7..=12 {
            assert_eq!(ht2_formula(n), Ok(4));
        }
        for n in 13..=14 {
            assert_eq!(ht2_formula(n), Ok(9));
        }
        for n in 15..=24 {
            assert_eq!(ht2_formula(n), Ok(12));
        }
    }

    #[test]
    fn charrank_examples() {
        assert_eq!(charrank(15), Ok(11));
        assert_eq!(charrank(12), Ok(11));
        assert_eq!(charrank(7), Ok(3));
        assert!(charrank(6).is_err());
    }

    /// The hard-coded `n = 6` values agree with the upper-band formulas
    /// continued to `t = 2, s = 1`.
    #[test]
    fn n6_matches_t2_continuation() {
        let (t, s, n) = (2u32, 1u32, 6u64);
        assert_eq!(pow2(t + 1) - 3 * pow2(s) - 1, N6_VALUES.ht2);
        assert_eq!(
            ((pow2(t - 1) as i64 - 2).max(n as i64 - pow2(t) as i64 - 1)) as u64,
            N6_VALUES.ht3
        );
        assert_eq!(n - pow2(s) - 1, N6_VALUES.cup);
        let r = realizer_spec(6).unwrap();
        assert_eq!(
            (r.b, r.c, r.a_dim),
            (
                pow2(t + 1) - 3 * pow2(s) - 1,
                n + pow2(s + 1) - pow2(t + 1) - 1,
                pow2(t + 1) - 4
            )
        );
    }

    #[test]
    fn realizer_examples() {
        assert_eq!(
            realizer_spec(7),
            Ok(RealizerSpec {
                b: 4,
                c: 0,
                a_dim: 4
            })
        );
        assert_eq!(
            realizer_spec(12),
            Ok(RealizerSpec {
                b: 3,
                c: 3,
                a_dim: 12
            })
        );
        assert_eq!(
            realizer_spec(13),
            Ok(RealizerSpec {
                b: 9,
                c: 0,
                a_dim: 12
            })
        );
        assert_eq!(realizer_spec(12).unwrap().to_string(), "w2^3*w3^3*a_12");
        let mut seq = GSequence::new();
        for n in [7, 12, 13] {
            let basis = ideal_basis(n, &mut seq).unwrap();
            assert!(realizer_check(n, &basis).unwrap().0, "n = {n}");
        }
    }

    #[test]
    fn computed_heights() {
        let mut seq = GSequence::new();
        let b7 = ideal_basis(7, &mut seq).unwrap();
        assert_eq!(ht2_computed(&b7), Ok(4));
        assert_eq!(ht3_computed(&b7), Ok(2));
        assert_eq!(m_n_computed(&b7), Ok((4, Monomial::new(4, 0))));
        let b12 = ideal_basis(12, &mut seq).unwrap();
        assert_eq!(ht3_computed(&b12), Ok(3));
        assert_eq!(m_n_computed(&b12), Ok((6, Monomial::new(3, 3))));
        let b6 = ideal_basis(6, &mut seq).unwrap();
        assert_eq!(m_n_computed(&b6), Ok((2, Monomial::new(1, 1))));
    }

    #[test]
    fn verify_examples() {
        let mut seq = GSequence::new();
        let r7 = verify(7, &mut seq).unwrap();
        assert!(r7.passed(), "{r7:?}");
        assert_eq!(
            (r7.ht2_computed, r7.ht3_computed, r7.m_n, r7.cup_formula),
            (Some(4), Some(2), Some(4), 5)
        );

        let r6 = verify(6, &mut seq).unwrap();
        assert!(r6.passed(), "{r6:?}");
        assert_eq!((r6.m_n, r6.cup_formula), (Some(2), 3));

        let r12 = verify(12, &mut seq).unwrap();
        assert!(r12.passed(), "{r12:?}");
        assert_eq!(r12.cup_formula, 7);
        assert_eq!(r12.witness.as_deref(), Some("w2^3*w3^3"));

        assert!(verify(5, &mut seq).is_err());
    }
}
