//! Finitely supported rational sequences indexed by ordinals.
//!
//! A `FinSeq` stores the nonzero coordinates of a `c00` element as a sorted
//! map `Ordinal -> Rational`. The module also fixes, once and for all, the
//! identification of `c0([1, w^a])` with `c0`: `iota` ranks the points of
//! `[1, w^a]` by their Cantor-normal-form coefficient vectors, first by total
//! coefficient sum and then lexicographically, giving a deterministic
//! injection into the positive naturals that does not depend on any function
//! being transported.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num::{One, Zero};

use crate::ordinal::{Nat, Ordinal, OrdinalError};
use crate::rational::Rational;

/// Finitely supported map `Ordinal -> Rational`; zero values are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FinSeq {
    entries: BTreeMap<Ordinal, Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqError {
    IndexOutOfRange(OrdinalError),
    /// Operation expected indices that are naturals `>= 1`.
    NonNaturalIndex(Ordinal),
}

impl fmt::Display for SeqError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqError::IndexOutOfRange(e) => write!(f, "{e}"),
            SeqError::NonNaturalIndex(t) => {
                write!(f, "index {t} is not a natural number >= 1")
            }
        }
    }
}

impl From<OrdinalError> for SeqError {
    fn from(e: OrdinalError) -> Self {
        SeqError::IndexOutOfRange(e)
    }
}

impl FinSeq {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Ordinal, Rational)>) -> Self {
        let mut s = Self::new();
        for (t, v) in pairs {
            s.set(t, v);
        }
        s
    }

    /// Sets one coordinate; a zero value removes the entry.
    pub fn set(&mut self, index: Ordinal, value: Rational) {
        if value.is_zero() {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
    }

    pub fn get(&self, index: &Ordinal) -> Rational {
        self.entries.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Ordinal, &Rational)> {
        self.entries.iter()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The `c0` norm: largest `|value|`, 0 for the empty sequence.
    pub fn sup_norm(&self) -> Rational {
        self.entries
            .values()
            .map(|v| num::Signed::abs(v))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &FinSeq) -> FinSeq {
        let mut out = self.clone();
        for (t, v) in other.iter() {
            out.set(t.clone(), out.get(t) + v);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> FinSeq {
        if c.is_zero() {
            return FinSeq::new();
        }
        FinSeq {
            entries: self.entries.iter().map(|(t, v)| (t.clone(), c * v)).collect(),
        }
    }

    /// Applies `iota(.., alpha)` to every index, producing a sequence over the
    /// naturals. Norm-preserving because `iota` is injective.
    pub fn reindex(&self, alpha: u64) -> Result<FinSeq, SeqError> {
        let mut out = FinSeq::new();
        for (t, v) in self.iter() {
            out.set(Ordinal::from_nat(iota(t, alpha)?), v.clone());
        }
        Ok(out)
    }
}

/// `C(n, k)` for arbitrary-precision `n`; 0 when `n < k`.
fn binom(n: &Nat, k: u64) -> Nat {
    if *n < Nat::from(k) {
        return Nat::zero();
    }
    let mut r = Nat::one();
    let base = n - Nat::from(k);
    for i in 1..=k {
        r = r * (&base + Nat::from(i)) / Nat::from(i);
    }
    r
}

/// Deterministic rank of `t` in `[1, w^alpha]`, independent of any function.
///
/// Coefficient vectors `(k_alpha, k_{alpha-1}, ..., k_0)` of length
/// `alpha + 1` (where `k_alpha = 1` flags `t = w^alpha`) are ordered first by
/// total coefficient sum, then lexicographically; `iota` is the 1-based rank.
pub fn iota(t: &Ordinal, alpha: u64) -> Result<Nat, OrdinalError> {
    let top = Ordinal::omega_pow(alpha);
    if t.is_zero() || *t > top {
        return Err(OrdinalError::OutsideInterval { point: t.clone(), alpha });
    }
    if *t == top {
        // (1, 0, ..., 0) sits after the `alpha` low unit vectors of sum 1
        return Ok(Nat::from(alpha + 1));
    }
    // low coefficient vector, most significant first: v[0] = k_{alpha-1}, ...
    let coeffs: Vec<Nat> = (0..alpha).map(|j| t.coefficient(alpha - 1 - j)).collect();
    let total: Nat = coeffs.iter().sum();
    // vectors of strictly smaller sum: hockey-stick closed form, plus the
    // top-point vector which lives in the sum-1 class
    let mut rank = binom(&(&total - Nat::one() + Nat::from(alpha)), alpha) - Nat::one();
    if total > Nat::one() {
        rank += Nat::one();
    }
    // lexicographically smaller vectors with the same sum
    let mut rem = total;
    for (idx, v) in coeffs.iter().enumerate() {
        let parts = alpha - 1 - idx as u64; // positions strictly below this one
        if parts == 0 {
            break; // the last coordinate is forced by the sum
        }
        // sum over c < v of C((rem - c) + parts - 1, parts - 1)
        rank += binom(&(&rem + Nat::from(parts)), parts)
            - binom(&(&rem - v + Nat::from(parts)), parts);
        rem -= v;
    }
    Ok(rank + Nat::one())
}
