//! The ideals `I_n = (g_{n-2}, g_{n-1}, g_n)` and the oriented Grassmannian
//! `G(n,3)`: binary-expansion parameters, the closed-form Gröbner basis,
//! closed-form invariants and their computed counterparts.

mod identities;
mod invariants;

pub use identities::{
    catalog, check_identity, w3_ideal_sample, Identity, IdentityError, IdentityId, SAMPLE_SEED,
    SAMPLE_SIZE,
};
pub use invariants::{
    charrank, cup_formula, formula_values, ht2_computed, ht2_formula, ht3_computed, ht3_formula,
    m_n_computed, realizer_check, realizer_spec, staircase_degree, verify, FormulaValues,
    InvariantReport, RealizerSpec, ReportFlags, TableRow,
};

use thiserror::Error;

use crate::groebner::{self, GroebnerBasis, GroebnerError};
use crate::gseq::{GSeqError, GSequence};
use crate::poly::{Monomial, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassmannError {
    #[error("n = {0} is below supported range")]
    BelowRange(u64),
    #[error("n = {0} is above supported range")]
    AboveRange(u64),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    GSeq(#[from] GSeqError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Largest `n` handled; keeps every exponent comfortably inside `u64`.
pub const MAX_N: u64 = 1 << 20;

/// `n`, the unique `t >= 3` with `2^t - 1 <= n < 2^(t+1) - 1`, the binary
/// digits `alpha_j` of `n - 2^t + 1` and the partial sums
/// `s_i = sum_{j <= i} alpha_j 2^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannParams {
    pub n: u64,
    pub t: u32,
    pub alpha: Vec<u8>,
    pub s: Vec<u64>,
}

/// `t` with `2^t - 1 <= n < 2^(t+1) - 1`.
pub fn t_of(n: u64) -> u32 {
    63 - (n + 1).leading_zeros()
}

impl GrassmannParams {
    pub fn new(n: u64) -> Result<Self, GrassmannError> {
        if n < 7 {
            return Err(GrassmannError::BelowRange(n));
        }
        if n > MAX_N {
            return Err(GrassmannError::AboveRange(n));
        }
        let t = t_of(n);
        let rest = n + 1 - (1 << t);
        let alpha: Vec<u8> = (0..t).map(|j| ((rest >> j) & 1) as u8).collect();
        let s = (0..t as usize)
            .scan(0u64, |acc, j| {
                *acc += u64::from(alpha[j]) << j;
                Some(*acc)
            })
            .collect();
        Ok(GrassmannParams { n, t, alpha, s })
    }

    /// `s_{i-1}`, with `s_{-1} = 0`.
    pub fn s_before(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.s[i - 1]
        }
    }

    /// The w3-shift `alpha_i * s_{i-1}` applied to `f_i`.
    pub fn shift(&self, i: usize) -> u64 {
        u64::from(self.alpha[i]) * self.s_before(i)
    }

    /// Index `r` with `f_i = w3^shift(i) * g_r`.
    pub fn g_index(&self, i: usize) -> u64 {
        self.n - 2 + (1 << i) - self.s[i]
    }

    /// Predicted `LM(f_i) = w2^((n+1-s_i)/2 - 2^i) * w3^(alpha_i s_{i-1} + 2^i - 1)`.
    pub fn predicted_lm(&self, i: usize) -> Result<Monomial, GrassmannError> {
        let num = self.n + 1 - self.s[i];
        if !num.is_multiple_of(2) {
            return Err(GrassmannError::Internal(format!(
                "n + 1 - s_{i} = {num} is odd for n = {}",
                self.n
            )));
        }
        let b = (num / 2).checked_sub(1 << i).ok_or_else(|| {
            GrassmannError::Internal(format!("negative w2-exponent in LM(f_{i})"))
        })?;
        Ok(Monomial::new(b, self.shift(i) + (1 << i) - 1))
    }
}

pub fn params(n: u64) -> Result<GrassmannParams, GrassmannError> {
    GrassmannParams::new(n)
}

/// `(g_{n-2}, g_{n-1}, g_n)`, zeros included.
pub fn ideal_generators(n: u64, seq: &mut GSequence) -> Result<[Polynomial; 3], GrassmannError> {
    if n < 6 {
        return Err(GrassmannError::BelowRange(n));
    }
    if n > MAX_N {
        return Err(GrassmannError::AboveRange(n));
    }
    Ok([seq.g(n - 2), seq.g(n - 1), seq.g(n)])
}

/// The basis `f_0, ..., f_{t-1}` with `f_i = w3^(alpha_i s_{i-1}) g_{n-2+2^i-s_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedBasis {
    pub params: GrassmannParams,
    pub f: Vec<Polynomial>,
}

impl ClosedBasis {
    /// As an (unverified) [`GroebnerBasis`].
    pub fn to_groebner_basis(&self) -> GroebnerBasis {
        GroebnerBasis::new(self.f.clone()).expect("closed basis elements are nonzero")
    }
}

/// The `f_i` straight from their definition, without any checks.
pub(crate) fn closed_basis_raw(p: &GrassmannParams, seq: &mut GSequence) -> Vec<Polynomial> {
    (0..p.t as usize)
        .map(|i| {
            seq.get(p.g_index(i))
                .mul_monomial(Monomial::new(0, p.shift(i)))
        })
        .collect()
}

/// Builds the closed-form basis and checks every `f_i` is nonzero with the
/// predicted leading monomial.
pub fn closed_basis(n: u64, seq: &mut GSequence) -> Result<ClosedBasis, GrassmannError> {
    let params = GrassmannParams::new(n)?;
    let f = closed_basis_raw(&params, seq);
    for (i, fi) in f.iter().enumerate() {
        let lm = fi
            .leading_monomial()
            .map_err(|_| GrassmannError::Internal(format!("f_{i} = 0 for n = {n}")))?;
        let want = params.predicted_lm(i)?;
        if lm != want {
            return Err(GrassmannError::Internal(format!(
                "LM(f_{i}) = {lm}, expected {want} for n = {n}"
            )));
        }
    }
    Ok(ClosedBasis { params, f })
}

/// A verified Gröbner basis of `I_n`: the closed form (checked with the
/// S-polynomial criterion) for `n >= 7`, Buchberger for `n = 6`.
pub fn ideal_basis(n: u64, seq: &mut GSequence) -> Result<GroebnerBasis, GrassmannError> {
    if n >= 7 {
        Ok(closed_basis(n, seq)?.to_groebner_basis().into_verified()?)
    } else {
        let gens = ideal_generators(n, seq)?;
        Ok(groebner::reduce_basis(&groebner::buchberger(&gens)?))
    }
}

/// Reduced Gröbner basis of `I_n` computed by Buchberger from the generators.
pub fn brute_force_basis(n: u64, seq: &mut GSequence) -> Result<GroebnerBasis, GrassmannError> {
    let gens = ideal_generators(n, seq)?;
    Ok(groebner::reduce_basis(&groebner::buchberger(&gens)?))
}
