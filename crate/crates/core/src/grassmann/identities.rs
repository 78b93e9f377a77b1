//! Catalog of exact polynomial identities, congruences and structural facts
//! about `g_r`, the closed-form basis and the ideals `I_n`.
//!
//! Each identity is evaluated by computing both sides independently and
//! comparing canonical forms. Congruences modulo `w3 I_m` move every term to
//! one side and test membership in `w3 I_m`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::invariants::m_n_computed;
use super::{
    brute_force_basis, closed_basis_raw, ideal_basis, ideal_generators, GrassmannError,
    GrassmannParams,
};
use crate::groebner::{self, member_w3_ideal, s_polynomial, GroebnerBasis};
use crate::gseq::{g_closed, lm_g, ClosedFamily, GSequence};
use crate::poly::{Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("unknown identity {0:?}")]
    Unknown(String),
    #[error("{id}: parameters {params:?} out of range ({expected})")]
    OutOfRange {
        id: IdentityId,
        params: Vec<u64>,
        expected: &'static str,
    },
    #[error(transparent)]
    Grassmann(#[from] Box<GrassmannError>),
}

impl From<GrassmannError> for IdentityError {
    fn from(e: GrassmannError) -> Self {
        IdentityError::Grassmann(Box::new(e))
    }
}

impl From<IdentityError> for GrassmannError {
    fn from(e: IdentityError) -> Self {
        match e {
            IdentityError::Grassmann(inner) => *inner,
            other => GrassmannError::Internal(other.to_string()),
        }
    }
}

/// Identity tags, as accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    /// `w3 g_r^2 = g_{2r+3}`; params `r`
    W3Square,
    /// `g_{r+3*2^j} = w2^(2^j) g_{r+2^j} + w3^(2^j) g_r`; params `r j`
    DoublingShift,
    /// closed forms of `g_r` on five index families; params `kind t` with kind 0..=4 for a..e
    ClosedForm,
    /// `g_{2^(t-1)-2}^2 = g_{2^t-4}`; params `t`
    SquareOfG,
    /// leading monomial of `g_r` from the 2-adic decomposition of `r + 3`; params `r`
    LeadingMonomialG,
    /// every `f_i` is nonzero with the predicted leading monomial, and the
    /// w2-exponents of those strictly decrease; params `n`
    BasisLeadingMonomials,
    /// `g_{n-2+2^i-s_{i-1}}` is `f_z` for the first zero digit `z >= i`, else 0; params `n i`
    BasisElementFromG,
    /// `w3^(s_{i-1}) g_{n-2-s_{i-1}}` is `f_u` for the first one digit `u >= i`, else 0; params `n i`
    BasisElementFromShiftedG,
    /// `S(f_i, f_{j+1}) = w3^(..) S(f_i, f_j) + w2^(..) S(f_j, f_{j+1})`; params `n i j`
    SPolynomialRecurrence,
    /// the closed basis generates `I_n` (reduced bases agree); params `n`
    IdealEquality,
    /// expansion of `w2^(2^(t-2)-2) g_{2^t-5}`; params `t`
    W2PowerExpansion,
    /// expansion of `w2^(2^(s-1)-1) g_{2^t-2^(s-1)-2}^2`; params `s t`
    SquaredGExpansion,
    /// `p in w3 I_n` implies `p^2 in w3 I_{2n+1}`, on a fixed sample; params `n`
    SquareIntoW3Ideal,
    /// `w2^(2^t-4) + w2^(2^(t-2)-1) w3^(2^(t-1)-2) = w2^(2^(t-1)-3) g_{2^t-2}` mod `w3 I_{2^t-1}`; params `t`
    LowerCongruence,
    /// `w2^(2^(s-1)-1) g_{2^t-2^(s-1)-2}^2 = w2^(2^(s-1)-2) g_{2^(t+1)-2^s-2}` mod `w3 I_{2^(t+1)-2^s}`; params `s t`
    SquaredGCongruence,
    /// `w2^(2^t-3) = w2^(2^(t-2)-2) g_{2^t+2^(t-1)-2}` mod `w3 I_{2^t+2^(t-1)}`; params `t`
    MiddleCongruence,
    /// `w2^(2^(t+1)-3*2^s-1) + w2^(2^(t-1)-1) w3^(2^t-2^(s+1)) = w2^(2^t-2^(s+1)-2^(s-1)) g_{2^(t+1)-2^s-2}`
    /// mod `w3 I_{2^(t+1)-2^s}`; params `s t`
    UpperCongruence,
    /// `M_n <= M_{n+1}`; params `n`
    MnMonotone,
    /// `I_{2^t-1} = I_{2^t}`; params `t`
    IdealCoincidence,
}

impl IdentityId {
    pub const ALL: [IdentityId; 19] = [
        IdentityId::W3Square,
        IdentityId::DoublingShift,
        IdentityId::ClosedForm,
        IdentityId::SquareOfG,
        IdentityId::LeadingMonomialG,
        IdentityId::BasisLeadingMonomials,
        IdentityId::BasisElementFromG,
        IdentityId::BasisElementFromShiftedG,
        IdentityId::SPolynomialRecurrence,
        IdentityId::IdealEquality,
        IdentityId::W2PowerExpansion,
        IdentityId::SquaredGExpansion,
        IdentityId::SquareIntoW3Ideal,
        IdentityId::LowerCongruence,
        IdentityId::SquaredGCongruence,
        IdentityId::MiddleCongruence,
        IdentityId::UpperCongruence,
        IdentityId::MnMonotone,
        IdentityId::IdealCoincidence,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            IdentityId::W3Square => "w3-square",
            IdentityId::DoublingShift => "doubling-shift",
            IdentityId::ClosedForm => "closed-form",
            IdentityId::SquareOfG => "square-of-g",
            IdentityId::LeadingMonomialG => "lm-g",
            IdentityId::BasisLeadingMonomials => "basis-lm",
            IdentityId::BasisElementFromG => "basis-element-g",
            IdentityId::BasisElementFromShiftedG => "basis-element-shifted-g",
            IdentityId::SPolynomialRecurrence => "spoly-recurrence",
            IdentityId::IdealEquality => "ideal-equality",
            IdentityId::W2PowerExpansion => "w2-power-expansion",
            IdentityId::SquaredGExpansion => "squared-g-expansion",
            IdentityId::SquareIntoW3Ideal => "square-into-w3-ideal",
            IdentityId::LowerCongruence => "lower-congruence",
            IdentityId::SquaredGCongruence => "squared-g-congruence",
            IdentityId::MiddleCongruence => "middle-congruence",
            IdentityId::UpperCongruence => "upper-congruence",
            IdentityId::MnMonotone => "mn-monotone",
            IdentityId::IdealCoincidence => "ideal-coincidence",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for IdentityId {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.tag() == s)
            .ok_or_else(|| IdentityError::Unknown(s.to_string()))
    }
}

/// One instance of a catalog identity with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    W3Square { r: u64 },
    DoublingShift { r: u64, j: u32 },
    ClosedForm { kind: ClosedFamily, t: u32 },
    SquareOfG { t: u32 },
    LeadingMonomialG { r: u64 },
    BasisLeadingMonomials { n: u64 },
    BasisElementFromG { n: u64, i: usize },
    BasisElementFromShiftedG { n: u64, i: usize },
    SPolynomialRecurrence { n: u64, i: usize, j: usize },
    IdealEquality { n: u64 },
    W2PowerExpansion { t: u32 },
    SquaredGExpansion { s: u32, t: u32 },
    SquareIntoW3Ideal { n: u64 },
    LowerCongruence { t: u32 },
    SquaredGCongruence { s: u32, t: u32 },
    MiddleCongruence { t: u32 },
    UpperCongruence { s: u32, t: u32 },
    MnMonotone { n: u64 },
    IdealCoincidence { t: u32 },
}

const MAX_R: u64 = 4096;
const MAX_N: u64 = 1024;
const MAX_T: u32 = 9;

fn pow2(k: u32) -> u64 {
    1u64 << k
}

fn w2_pow(e: u64) -> Monomial {
    Monomial::new(e, 0)
}

fn w3_pow(e: u64) -> Monomial {
    Monomial::new(0, e)
}

fn m(b: u64, c: u64) -> Polynomial {
    Polynomial::term(b, c)
}

impl Identity {
    pub fn id(&self) -> IdentityId {
        match self {
            Identity::W3Square { .. } => IdentityId::W3Square,
            Identity::DoublingShift { .. } => IdentityId::DoublingShift,
            Identity::ClosedForm { .. } => IdentityId::ClosedForm,
            Identity::SquareOfG { .. } => IdentityId::SquareOfG,
            Identity::LeadingMonomialG { .. } => IdentityId::LeadingMonomialG,
            Identity::BasisLeadingMonomials { .. } => IdentityId::BasisLeadingMonomials,
            Identity::BasisElementFromG { .. } => IdentityId::BasisElementFromG,
            Identity::BasisElementFromShiftedG { .. } => IdentityId::BasisElementFromShiftedG,
            Identity::SPolynomialRecurrence { .. } => IdentityId::SPolynomialRecurrence,
            Identity::IdealEquality { .. } => IdentityId::IdealEquality,
            Identity::W2PowerExpansion { .. } => IdentityId::W2PowerExpansion,
            Identity::SquaredGExpansion { .. } => IdentityId::SquaredGExpansion,
            Identity::SquareIntoW3Ideal { .. } => IdentityId::SquareIntoW3Ideal,
            Identity::LowerCongruence { .. } => IdentityId::LowerCongruence,
            Identity::SquaredGCongruence { .. } => IdentityId::SquaredGCongruence,
            Identity::MiddleCongruence { .. } => IdentityId::MiddleCongruence,
            Identity::UpperCongruence { .. } => IdentityId::UpperCongruence,
            Identity::MnMonotone { .. } => IdentityId::MnMonotone,
            Identity::IdealCoincidence { .. } => IdentityId::IdealCoincidence,
        }
    }

    /// Builds an instance from a tag and raw integer parameters, checking
    /// that they lie in the identity's domain.
    pub fn from_params(id: IdentityId, params: &[u64]) -> Result<Identity, IdentityError> {
        let bad = |expected: &'static str| IdentityError::OutOfRange {
            id,
            params: params.to_vec(),
            expected,
        };
        let arity = |k: usize, expected: &'static str| {
            if params.len() == k {
                Ok(())
            } else {
                Err(bad(expected))
            }
        };
        let small = |v: u64, lo: u64, hi: u64| (lo..=hi).contains(&v);
        let t_at = |k: usize| params[k] as u32;
        let ident = match id {
            IdentityId::W3Square => {
                arity(1, "r <= 4096")?;
                small(params[0], 0, MAX_R).then_some(Identity::W3Square { r: params[0] })
            }
            IdentityId::DoublingShift => {
                arity(2, "r <= 4096, j <= 10")?;
                (small(params[0], 0, MAX_R) && small(params[1], 0, 10)).then(|| {
                    Identity::DoublingShift {
                        r: params[0],
                        j: t_at(1),
                    }
                })
            }
            IdentityId::ClosedForm => {
                arity(2, "kind 0..=4, t >= 2 (t >= 3 for kind 4), t <= 12")?;
                let kind = ClosedFamily::ALL.get(params[0] as usize).copied();
                kind.filter(|k| small(params[1], u64::from(k.min_t()), 12))
                    .map(|kind| Identity::ClosedForm { kind, t: t_at(1) })
            }
            IdentityId::SquareOfG => {
                arity(1, "2 <= t <= 12")?;
                small(params[0], 2, 12).then(|| Identity::SquareOfG { t: t_at(0) })
            }
            IdentityId::LeadingMonomialG => {
                arity(1, "r <= 4096")?;
                small(params[0], 0, MAX_R).then_some(Identity::LeadingMonomialG { r: params[0] })
            }
            IdentityId::BasisLeadingMonomials
            | IdentityId::IdealEquality
            | IdentityId::SquareIntoW3Ideal => {
                arity(1, "7 <= n <= 1024")?;
                let n = params[0];
                small(n, 7, MAX_N).then_some(match id {
                    IdentityId::BasisLeadingMonomials => Identity::BasisLeadingMonomials { n },
                    IdentityId::IdealEquality => Identity::IdealEquality { n },
                    _ => Identity::SquareIntoW3Ideal { n },
                })
            }
            IdentityId::BasisElementFromG | IdentityId::BasisElementFromShiftedG => {
                arity(2, "7 <= n <= 1024, 0 <= i < t")?;
                let (n, i) = (params[0], params[1] as usize);
                (small(n, 7, MAX_N) && i < super::t_of(n) as usize).then_some(match id {
                    IdentityId::BasisElementFromG => Identity::BasisElementFromG { n, i },
                    _ => Identity::BasisElementFromShiftedG { n, i },
                })
            }
            IdentityId::SPolynomialRecurrence => {
                arity(3, "7 <= n <= 1024, 0 <= i <= j <= t - 2")?;
                let (n, i, j) = (params[0], params[1] as usize, params[2] as usize);
                (small(n, 7, MAX_N) && i <= j && j + 2 <= super::t_of(n) as usize)
                    .then_some(Identity::SPolynomialRecurrence { n, i, j })
            }
            IdentityId::W2PowerExpansion => {
                arity(1, "3 <= t <= 10")?;
                small(params[0], 3, 10).then(|| Identity::W2PowerExpansion { t: t_at(0) })
            }
            IdentityId::SquaredGExpansion => {
                arity(2, "1 <= s <= t - 1, t <= 10")?;
                (small(params[0], 1, 9) && small(params[1], params[0] + 1, 10)).then(|| {
                    Identity::SquaredGExpansion {
                        s: t_at(0),
                        t: t_at(1),
                    }
                })
            }
            IdentityId::LowerCongruence | IdentityId::MiddleCongruence => {
                arity(1, "3 <= t <= 9")?;
                small(params[0], 3, u64::from(MAX_T)).then(|| match id {
                    IdentityId::LowerCongruence => Identity::LowerCongruence { t: t_at(0) },
                    _ => Identity::MiddleCongruence { t: t_at(0) },
                })
            }
            IdentityId::SquaredGCongruence => {
                arity(2, "2 <= s <= t - 1, t <= 9")?;
                (small(params[0], 2, 8) && small(params[1], params[0] + 1, u64::from(MAX_T))).then(
                    || Identity::SquaredGCongruence {
                        s: t_at(0),
                        t: t_at(1),
                    },
                )
            }
            IdentityId::UpperCongruence => {
                arity(2, "1 <= s <= t - 2, t <= 9")?;
                (small(params[0], 1, 7) && small(params[1], params[0] + 2, u64::from(MAX_T))).then(
                    || Identity::UpperCongruence {
                        s: t_at(0),
                        t: t_at(1),
                    },
                )
            }
            IdentityId::MnMonotone => {
                arity(1, "6 <= n <= 1023")?;
                small(params[0], 6, MAX_N - 1).then_some(Identity::MnMonotone { n: params[0] })
            }
            IdentityId::IdealCoincidence => {
                arity(1, "3 <= t <= 9")?;
                small(params[0], 3, u64::from(MAX_T))
                    .then(|| Identity::IdealCoincidence { t: t_at(0) })
            }
        };
        ident.ok_or_else(|| bad(range_text(id)))
    }

    pub fn params(&self) -> Vec<u64> {
        match *self {
            Identity::W3Square { r } | Identity::LeadingMonomialG { r } => vec![r],
            Identity::DoublingShift { r, j } => vec![r, u64::from(j)],
            Identity::ClosedForm { kind, t } => {
                let k = ClosedFamily::ALL
                    .iter()
                    .position(|&x| x == kind)
                    .unwrap_or(0);
                vec![k as u64, u64::from(t)]
            }
            Identity::SquareOfG { t }
            | Identity::W2PowerExpansion { t }
            | Identity::LowerCongruence { t }
            | Identity::MiddleCongruence { t }
            | Identity::IdealCoincidence { t } => vec![u64::from(t)],
            Identity::BasisLeadingMonomials { n }
            | Identity::IdealEquality { n }
            | Identity::SquareIntoW3Ideal { n }
            | Identity::MnMonotone { n } => vec![n],
            Identity::BasisElementFromG { n, i } | Identity::BasisElementFromShiftedG { n, i } => {
                vec![n, i as u64]
            }
            Identity::SPolynomialRecurrence { n, i, j } => vec![n, i as u64, j as u64],
            Identity::SquaredGExpansion { s, t }
            | Identity::SquaredGCongruence { s, t }
            | Identity::UpperCongruence { s, t } => vec![u64::from(s), u64::from(t)],
        }
    }

    /// Evaluates the identity exactly.
    pub fn check(&self, seq: &mut GSequence) -> Result<bool, IdentityError> {
        Ok(match *self {
            Identity::W3Square { r } => {
                seq.g(r).pow(2).mul_monomial(Monomial::W3) == seq.g(2 * r + 3)
            }
            Identity::DoublingShift { r, j } => {
                let p = pow2(j);
                let rhs = seq.g(r + p).mul_monomial(w2_pow(p)) + seq.g(r).mul_monomial(w3_pow(p));
                seq.g(r + 3 * p) == rhs
            }
            Identity::ClosedForm { kind, t } => {
                g_closed(kind, t).map_err(GrassmannError::from)?
                    == seq.g(kind.index(t).map_err(GrassmannError::from)?)
            }
            Identity::SquareOfG { t } => seq.g(pow2(t - 1) - 2).pow(2) == seq.g(pow2(t) - 4),
            Identity::LeadingMonomialG { r } => {
                let g = seq.g(r);
                match (lm_g(r), g.leading_monomial()) {
                    (Ok(formula), Ok(actual)) => formula == actual,
                    (Err(_), Err(_)) => (r + 3).is_power_of_two(),
                    _ => false,
                }
            }
            Identity::BasisLeadingMonomials { n } => basis_leading_monomials(n, seq)?,
            Identity::BasisElementFromG { n, i } => {
                let p = GrassmannParams::new(n)?;
                let f = closed_basis_raw(&p, seq);
                let lhs = seq.g(n - 2 + pow2(i as u32) - p.s_before(i));
                let z = (i..p.t as usize).find(|&z| p.alpha[z] == 0);
                lhs == z.map_or_else(Polynomial::zero, |z| f[z].clone())
            }
            Identity::BasisElementFromShiftedG { n, i } => {
                let p = GrassmannParams::new(n)?;
                let f = closed_basis_raw(&p, seq);
                let sb = p.s_before(i);
                let lhs = seq.g(n - 2 - sb).mul_monomial(w3_pow(sb));
                let u = (i..p.t as usize).find(|&u| p.alpha[u] == 1);
                lhs == u.map_or_else(Polynomial::zero, |u| f[u].clone())
            }
            Identity::SPolynomialRecurrence { n, i, j } => spoly_recurrence(n, i, j, seq)?,
            Identity::IdealEquality { n } => {
                let p = GrassmannParams::new(n)?;
                let closed = GroebnerBasis::new(closed_basis_raw(&p, seq))
                    .map_err(GrassmannError::from)?
                    .into_verified()
                    .map_err(GrassmannError::from)?;
                let brute = brute_force_basis(n, seq)?;
                canonical_set(&groebner::reduce_basis(&closed)) == canonical_set(&brute)
            }
            Identity::W2PowerExpansion { t } => {
                let lhs = seq.g(pow2(t) - 5).mul_monomial(w2_pow(pow2(t - 2) - 2));
                let mut rhs = m(0, pow2(t - 1) - 3);
                for i in 1..=t.saturating_sub(3) {
                    let coeff = Monomial::new(pow2(t - 2) - pow2(i + 1), pow2(i) - 2);
                    rhs.add_assign(&seq.g(pow2(t) + pow2(i) - 3).mul_monomial(coeff));
                }
                lhs == rhs
            }
            Identity::SquaredGExpansion { s, t } => {
                let lhs = seq
                    .g(pow2(t) - pow2(s - 1) - 2)
                    .pow(2)
                    .mul_monomial(w2_pow(pow2(s - 1) - 1));
                let mut rhs = Polynomial::zero();
                for j in 0..s.saturating_sub(1) {
                    let coeff = Monomial::new(pow2(s - 1) - pow2(j + 1), pow2(j) - 1);
                    rhs.add_assign(
                        &seq.g(pow2(t + 1) - pow2(s) + pow2(j) - 3)
                            .mul_monomial(coeff),
                    );
                }
                lhs == rhs
            }
            Identity::SquareIntoW3Ideal { n } => square_into_w3_ideal(n, seq)?,
            Identity::LowerCongruence { t } => {
                let diff = m(pow2(t) - 4, 0)
                    + m(pow2(t - 2) - 1, pow2(t - 1) - 2)
                    + seq.g(pow2(t) - 2).mul_monomial(w2_pow(pow2(t - 1) - 3));
                in_w3_ideal(&diff, pow2(t) - 1, seq)?
            }
            Identity::SquaredGCongruence { s, t } => {
                let diff = seq
                    .g(pow2(t) - pow2(s - 1) - 2)
                    .pow(2)
                    .mul_monomial(w2_pow(pow2(s - 1) - 1))
                    + seq
                        .g(pow2(t + 1) - pow2(s) - 2)
                        .mul_monomial(w2_pow(pow2(s - 1) - 2));
                in_w3_ideal(&diff, pow2(t + 1) - pow2(s), seq)?
            }
            Identity::MiddleCongruence { t } => {
                let diff = m(pow2(t) - 3, 0)
                    + seq
                        .g(pow2(t) + pow2(t - 1) - 2)
                        .mul_monomial(w2_pow(pow2(t - 2) - 2));
                in_w3_ideal(&diff, pow2(t) + pow2(t - 1), seq)?
            }
            Identity::UpperCongruence { s, t } => {
                let diff = m(pow2(t + 1) - 3 * pow2(s) - 1, 0)
                    + m(pow2(t - 1) - 1, pow2(t) - pow2(s + 1))
                    + seq
                        .g(pow2(t + 1) - pow2(s) - 2)
                        .mul_monomial(w2_pow(pow2(t) - pow2(s + 1) - pow2(s - 1)));
                in_w3_ideal(&diff, pow2(t + 1) - pow2(s), seq)?
            }
            Identity::MnMonotone { n } => {
                let (a, _) = m_n_computed(&ideal_basis(n, seq)?)?;
                let (b, _) = m_n_computed(&ideal_basis(n + 1, seq)?)?;
                a <= b
            }
            Identity::IdealCoincidence { t } => {
                let lo = brute_force_basis(pow2(t) - 1, seq)?;
                let hi = brute_force_basis(pow2(t), seq)?;
                canonical_set(&lo) == canonical_set(&hi)
            }
        })
    }
}

fn range_text(id: IdentityId) -> &'static str {
    match id {
        IdentityId::W3Square | IdentityId::LeadingMonomialG => "r <= 4096",
        IdentityId::DoublingShift => "r <= 4096, j <= 10",
        IdentityId::ClosedForm => "kind 0..=4, t >= 2 (t >= 3 for kind 4), t <= 12",
        IdentityId::SquareOfG => "2 <= t <= 12",
        IdentityId::BasisLeadingMonomials
        | IdentityId::IdealEquality
        | IdentityId::SquareIntoW3Ideal => "7 <= n <= 1024",
        IdentityId::BasisElementFromG | IdentityId::BasisElementFromShiftedG => {
            "7 <= n <= 1024, 0 <= i < t"
        }
        IdentityId::SPolynomialRecurrence => "7 <= n <= 1024, 0 <= i <= j <= t - 2",
        IdentityId::W2PowerExpansion => "3 <= t <= 10",
        IdentityId::SquaredGExpansion => "1 <= s <= t - 1, t <= 10",
        IdentityId::LowerCongruence
        | IdentityId::MiddleCongruence
        | IdentityId::IdealCoincidence => "3 <= t <= 9",
        IdentityId::SquaredGCongruence => "2 <= s <= t - 1, t <= 9",
        IdentityId::UpperCongruence => "1 <= s <= t - 2, t <= 9",
        IdentityId::MnMonotone => "6 <= n <= 1023",
    }
}

/// Checks one identity given by tag and raw parameters.
pub fn check_identity(
    id: IdentityId,
    params: &[u64],
    seq: &mut GSequence,
) -> Result<bool, IdentityError> {
    Identity::from_params(id, params)?.check(seq)
}

fn canonical_set(b: &GroebnerBasis) -> BTreeSet<String> {
    b.elements().iter().map(|p| p.to_string()).collect()
}

fn in_w3_ideal(p: &Polynomial, m: u64, seq: &mut GSequence) -> Result<bool, IdentityError> {
    let basis = ideal_basis(m, seq)?;
    Ok(member_w3_ideal(p, &basis).map_err(GrassmannError::from)?)
}

fn basis_leading_monomials(n: u64, seq: &mut GSequence) -> Result<bool, IdentityError> {
    let p = GrassmannParams::new(n)?;
    let f = closed_basis_raw(&p, seq);
    let mut prev_b: Option<u64> = None;
    for (i, fi) in f.iter().enumerate() {
        let Ok(lm) = fi.leading_monomial() else {
            return Ok(false);
        };
        if lm != p.predicted_lm(i)? {
            return Ok(false);
        }
        if prev_b.is_some_and(|b| b <= lm.b) {
            return Ok(false);
        }
        prev_b = Some(lm.b);
    }
    Ok(true)
}

fn spoly_recurrence(
    n: u64,
    i: usize,
    j: usize,
    seq: &mut GSequence,
) -> Result<bool, IdentityError> {
    let p = GrassmannParams::new(n)?;
    let f = closed_basis_raw(&p, seq);
    let s = |a: usize, b: usize| s_polynomial(&f[a], &f[b]).map_err(GrassmannError::from);
    let lhs = s(i, j + 1)?;
    let w3_exp = p.shift(j + 1) + pow2(j as u32) - p.shift(j);
    let w2_exp = (p.s[j] - p.s[i]) / 2 + pow2(j as u32) - pow2(i as u32);
    let rhs = s(i, j)?.mul_monomial(w3_pow(w3_exp)) + s(j, j + 1)?.mul_monomial(w2_pow(w2_exp));
    Ok(lhs == rhs)
}

/// Seed for the sampled ideal elements; the `n` is mixed in per instance.
pub const SAMPLE_SEED: u64 = 0x5eed_2024;
/// Random ideal elements drawn per `n`, on top of the three generators.
pub const SAMPLE_SIZE: usize = 20;

fn random_poly(rng: &mut ChaCha8Rng) -> Polynomial {
    let k = rng.gen_range(1..=3);
    Polynomial::from_terms(
        (0..k).map(|_| Monomial::new(rng.gen_range(0..=3), rng.gen_range(0..=3))),
    )
}

/// The sample: `w3 g_{n-2}`, `w3 g_{n-1}`, `w3 g_n` and [`SAMPLE_SIZE`]
/// elements `w3 (a g_{n-2} + b g_{n-1} + c g_n)` with random `a, b, c`.
pub fn w3_ideal_sample(n: u64, seq: &mut GSequence) -> Result<Vec<Polynomial>, GrassmannError> {
    let gens = ideal_generators(n, seq)?;
    let mut out: Vec<Polynomial> = gens.iter().map(|g| g.mul_monomial(Monomial::W3)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ n);
    for _ in 0..SAMPLE_SIZE {
        let mut p = Polynomial::zero();
        for g in &gens {
            p.add_assign(&random_poly(&mut rng).mul(g));
        }
        out.push(p.mul_monomial(Monomial::W3));
    }
    Ok(out)
}

fn square_into_w3_ideal(n: u64, seq: &mut GSequence) -> Result<bool, IdentityError> {
    let here = ideal_basis(n, seq)?;
    let doubled = ideal_basis(2 * n + 1, seq)?;
    for p in w3_ideal_sample(n, seq)? {
        let premise = member_w3_ideal(&p, &here).map_err(GrassmannError::from)?;
        let conclusion = member_w3_ideal(&p.pow(2), &doubled).map_err(GrassmannError::from)?;
        if !premise || !conclusion {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Identities that depend on `n` alone and are cheap enough to run inside
/// every `verify`.
pub(crate) fn per_n_identities(n: u64, seq: &mut GSequence) -> Result<bool, IdentityError> {
    let t = super::t_of(n) as usize;
    let mut all = vec![Identity::BasisLeadingMonomials { n }];
    for i in 0..t {
        all.push(Identity::BasisElementFromG { n, i });
        all.push(Identity::BasisElementFromShiftedG { n, i });
    }
    for j in 0..t - 1 {
        for i in 0..=j {
            if j + 2 <= t {
                all.push(Identity::SPolynomialRecurrence { n, i, j });
            }
        }
    }
    for ident in all {
        if !ident.check(seq)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every identity instance over its documented sweep range, grouped by tag.
pub fn catalog() -> Vec<(IdentityId, Vec<Identity>)> {
    let mut out = vec![(
        IdentityId::W3Square,
        (0..=300).map(|r| Identity::W3Square { r }).collect(),
    )];
    out.push((
        IdentityId::DoublingShift,
        (0..=200)
            .flat_map(|r| (0..=5).map(move |j| Identity::DoublingShift { r, j }))
            .collect(),
    ));
    out.push((
        IdentityId::ClosedForm,
        ClosedFamily::ALL
            .into_iter()
            .flat_map(|kind| (kind.min_t()..=9).map(move |t| Identity::ClosedForm { kind, t }))
            .collect(),
    ));
    out.push((
        IdentityId::SquareOfG,
        (2..=10).map(|t| Identity::SquareOfG { t }).collect(),
    ));
    out.push((
        IdentityId::LeadingMonomialG,
        (0..=300)
            .map(|r| Identity::LeadingMonomialG { r })
            .collect(),
    ));
    out.push((
        IdentityId::BasisLeadingMonomials,
        (7..=128)
            .map(|n| Identity::BasisLeadingMonomials { n })
            .collect(),
    ));
    let ns = 7..=64u64;
    out.push((
        IdentityId::BasisElementFromG,
        ns.clone()
            .flat_map(|n| {
                (0..super::t_of(n) as usize).map(move |i| Identity::BasisElementFromG { n, i })
            })
            .collect(),
    ));
    out.push((
        IdentityId::BasisElementFromShiftedG,
        ns.clone()
            .flat_map(|n| {
                (0..super::t_of(n) as usize)
                    .map(move |i| Identity::BasisElementFromShiftedG { n, i })
            })
            .collect(),
    ));
    out.push((
        IdentityId::SPolynomialRecurrence,
        ns.clone()
            .flat_map(|n| {
                let t = super::t_of(n) as usize;
                (0..t - 1).flat_map(move |j| {
                    (0..=j).map(move |i| Identity::SPolynomialRecurrence { n, i, j })
                })
            })
            .collect(),
    ));
    out.push((
        IdentityId::IdealEquality,
        (7..=128).map(|n| Identity::IdealEquality { n }).collect(),
    ));
    out.push((
        IdentityId::W2PowerExpansion,
        (3..=8).map(|t| Identity::W2PowerExpansion { t }).collect(),
    ));
    out.push((
        IdentityId::SquaredGExpansion,
        (2..=9u32)
            .flat_map(|t| (1..t).map(move |s| Identity::SquaredGExpansion { s, t }))
            .collect(),
    ));
    out.push((
        IdentityId::SquareIntoW3Ideal,
        (7..=32)
            .map(|n| Identity::SquareIntoW3Ideal { n })
            .collect(),
    ));
    out.push((
        IdentityId::LowerCongruence,
        (3..=7).map(|t| Identity::LowerCongruence { t }).collect(),
    ));
    out.push((
        IdentityId::SquaredGCongruence,
        (3..=8u32)
            .flat_map(|t| (2..t).map(move |s| Identity::SquaredGCongruence { s, t }))
            .collect(),
    ));
    out.push((
        IdentityId::MiddleCongruence,
        (3..=7).map(|t| Identity::MiddleCongruence { t }).collect(),
    ));
    out.push((
        IdentityId::UpperCongruence,
        (3..=7u32)
            .flat_map(|t| (1..=t - 2).map(move |s| Identity::UpperCongruence { s, t }))
            .collect(),
    ));
    out.push((
        IdentityId::MnMonotone,
        (6..=127).map(|n| Identity::MnMonotone { n }).collect(),
    ));
    out.push((
        IdentityId::IdealCoincidence,
        (3..=7).map(|t| Identity::IdealCoincidence { t }).collect(),
    ));
    out
}
