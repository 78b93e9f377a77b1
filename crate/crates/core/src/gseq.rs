//! The polynomials `g_r` defined by `(1 + w2 + w3) * (g_0 + g_1 + ...) = 1`.
//!
//! `g_0 = 1`, `g_1 = 0`, `g_2 = w2` and `g_{r+3} = w2 g_{r+1} + w3 g_r`.
//! Each nonzero `g_r` is homogeneous of weighted degree `r`.

use thiserror::Error;

use crate::poly::{Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GSeqError {
    #[error("g_{0} is zero")]
    ZeroTerm(u64),
    #[error("t = {t} is out of range for closed form ({kind})")]
    OutOfRange { kind: ClosedFamily, t: u32 },
}

/// Memoized `g_r`. The memo only ever grows.
///
/// `GSequence` is `Send`; give each worker thread its own instance.
#[derive(Debug, Clone)]
pub struct GSequence {
    memo: Vec<Polynomial>,
}

impl Default for GSequence {
    fn default() -> Self {
        Self::new()
    }
}

impl GSequence {
    pub fn new() -> Self {
        GSequence {
            memo: vec![Polynomial::one(), Polynomial::zero(), Polynomial::w2()],
        }
    }

    /// Number of materialized entries.
    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn extend_to(&mut self, r: usize) {
        let w2 = Monomial::W2;
        let w3 = Monomial::W3;
        while self.memo.len() <= r {
            let k = self.memo.len();
            let next = self.memo[k - 2]
                .mul_monomial(w2)
                .add(&self.memo[k - 3].mul_monomial(w3));
            self.memo.push(next);
        }
    }

    /// Borrowing access to `g_r`.
    pub fn get(&mut self, r: u64) -> &Polynomial {
        let r = usize::try_from(r).expect("index fits in memory");
        self.extend_to(r);
        &self.memo[r]
    }

    /// `g_r`, by value.
    pub fn g(&mut self, r: u64) -> Polynomial {
        self.get(r).clone()
    }
}

/// Leading monomial of `g_r` without materializing it.
///
/// Writing `r + 3 = 2^i (2l + 3)`, the answer is `w2^(2^i l) * w3^(2^i - 1)`.
pub fn lm_g(r: u64) -> Result<Monomial, GSeqError> {
    let m = r + 3;
    if m.is_power_of_two() {
        return Err(GSeqError::ZeroTerm(r));
    }
    let i = m.trailing_zeros();
    let odd = m >> i;
    let l = (odd - 3) / 2;
    Ok(Monomial::new(l << i, (1u64 << i) - 1))
}

/// The index families that have closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedFamily {
    /// `g_{2^t-3} = 0`
    A,
    /// `g_{2^t+2^{t-1}-3} = w3^(2^{t-1}-1)`
    B,
    /// `g_{2^t+2^{t-2}-3} = w2^(2^{t-2}) w3^(2^{t-2}-1)`
    C,
    /// `g_{2^t+2^{t-1}+2^{t-2}-3} = w2^(2^{t-1}) w3^(2^{t-2}-1)`
    D,
    /// `g_{2^t+2^{t-1}+2^{t-3}-3} = w2^(2^{t-1}+2^{t-3}) w3^(2^{t-3}-1)`, `t >= 3`
    E,
}

impl ClosedFamily {
    pub const ALL: [ClosedFamily; 5] = [
        ClosedFamily::A,
        ClosedFamily::B,
        ClosedFamily::C,
        ClosedFamily::D,
        ClosedFamily::E,
    ];

    pub fn min_t(self) -> u32 {
        match self {
            ClosedFamily::E => 3,
            _ => 2,
        }
    }

    fn check(self, t: u32) -> Result<(), GSeqError> {
        if t < self.min_t() || t > 40 {
            Err(GSeqError::OutOfRange { kind: self, t })
        } else {
            Ok(())
        }
    }

    /// The index `r` this family describes at `t`.
    pub fn index(self, t: u32) -> Result<u64, GSeqError> {
        self.check(t)?;
        let p = |k: u32| 1u64 << k;
        Ok(match self {
            ClosedFamily::A => p(t) - 3,
            ClosedFamily::B => p(t) + p(t - 1) - 3,
            ClosedFamily::C => p(t) + p(t - 2) - 3,
            ClosedFamily::D => p(t) + p(t - 1) + p(t - 2) - 3,
            ClosedFamily::E => p(t) + p(t - 1) + p(t - 3) - 3,
        })
    }
}

impl std::fmt::Display for ClosedFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ClosedFamily::A => "a",
            ClosedFamily::B => "b",
            ClosedFamily::C => "c",
            ClosedFamily::D => "d",
            ClosedFamily::E => "e",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for ClosedFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a" => Ok(ClosedFamily::A),
            "b" => Ok(ClosedFamily::B),
            "c" => Ok(ClosedFamily::C),
            "d" => Ok(ClosedFamily::D),
            "e" => Ok(ClosedFamily::E),
            other => Err(format!("unknown closed-form family {other:?}")),
        }
    }
}

/// Closed form of `g_r` for `r = kind.index(t)`.
pub fn g_closed(kind: ClosedFamily, t: u32) -> Result<Polynomial, GSeqError> {
    kind.check(t)?;
    let p = |k: u32| 1u64 << k;
    Ok(match kind {
        ClosedFamily::A => Polynomial::zero(),
        ClosedFamily::B => Polynomial::term(0, p(t - 1) - 1),
        ClosedFamily::C => Polynomial::term(p(t - 2), p(t - 2) - 1),
        ClosedFamily::D => Polynomial::term(p(t - 1), p(t - 2) - 1),
        ClosedFamily::E => Polynomial::term(p(t - 1) + p(t - 3), p(t - 3) - 1),
    })
}
