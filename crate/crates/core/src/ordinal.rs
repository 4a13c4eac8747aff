//! Ordinals below `w^w` in Cantor normal form.
//!
//! An ordinal is a strictly-descending list of `(exponent, coefficient)`
//! terms, `w^e1*k1 + ... + w^en*kn`, with every coefficient >= 1; the empty
//! list is 0. Exponents and coefficients are arbitrary-precision naturals.
//! Besides ordering and (left-absorbing) addition, this module carries the
//! two structure maps used by the sequence-space isomorphism: `beta0`, the
//! least exponent present in a point of `[1, w^a]`, and `ell`, which rounds a
//! point up to the next limit one level above.
//!
//! Text form, used verbatim by the CLI: `w^3*2 + w*5 + 7`, terms descending,
//! `0` for zero.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num::{BigUint, One, Zero};

/// Arbitrary-precision natural number.
pub type Nat = BigUint;

/// Convenience constructor for `Nat` literals.
pub fn nat(n: u64) -> Nat {
    Nat::from(n)
}

/// Ordinal below `w^w` in Cantor normal form.
///
/// The derived lexicographic order on the descending term list coincides with
/// the ordinal order, so `Ord`/`PartialOrd` are derived.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal {
    // (exponent, coefficient), exponents strictly descending, coefficients >= 1
    terms: Vec<(Nat, Nat)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrdinalError {
    Parse { input: String, reason: &'static str },
    /// Point outside the interval `[1, w^alpha]` expected by the operation.
    OutsideInterval { point: Ordinal, alpha: u64 },
}

impl fmt::Display for OrdinalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdinalError::Parse { input, reason } => {
                write!(f, "invalid ordinal `{input}`: {reason}")
            }
            OrdinalError::OutsideInterval { point, alpha } => {
                write!(f, "ordinal {point} lies outside [1, w^{alpha}]")
            }
        }
    }
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn natural(n: u64) -> Self {
        Self::from_nat(nat(n))
    }

    pub fn from_nat(n: Nat) -> Self {
        if n.is_zero() {
            Self::zero()
        } else {
            Ordinal { terms: alloc::vec![(Nat::zero(), n)] }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(1)
    }

    /// `w^e`.
    pub fn omega_pow(e: u64) -> Self {
        Ordinal { terms: alloc::vec![(nat(e), Nat::one())] }
    }

    /// `w^e * k`; zero when `k == 0`.
    pub fn term(e: u64, k: u64) -> Self {
        Self::term_big(e, nat(k))
    }

    pub fn term_big(e: u64, k: Nat) -> Self {
        if k.is_zero() {
            Self::zero()
        } else {
            Ordinal { terms: alloc::vec![(nat(e), k)] }
        }
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs; the pairs must
    /// be strictly descending in exponent with nonzero coefficients.
    pub fn from_terms(terms: Vec<(Nat, Nat)>) -> Result<Self, OrdinalError> {
        let bad = |reason| OrdinalError::Parse { input: String::from("<terms>"), reason };
        for window in terms.windows(2) {
            if window[0].0 <= window[1].0 {
                return Err(bad("exponents must be strictly descending"));
            }
        }
        if terms.iter().any(|(_, k)| k.is_zero()) {
            return Err(bad("coefficients must be >= 1"));
        }
        Ok(Ordinal { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The terms of the Cantor normal form, descending by exponent.
    pub fn terms(&self) -> &[(Nat, Nat)] {
        &self.terms
    }

    /// `Some(n)` iff the ordinal is the finite natural `n`.
    pub fn as_natural(&self) -> Option<Nat> {
        match self.terms.as_slice() {
            [] => Some(Nat::zero()),
            [(e, k)] if e.is_zero() => Some(k.clone()),
            _ => None,
        }
    }

    /// Coefficient of `w^e` in the normal form (0 when absent).
    pub fn coefficient(&self, e: u64) -> Nat {
        let e = nat(e);
        self.terms
            .iter()
            .find(|(exp, _)| *exp == e)
            .map(|(_, k)| k.clone())
            .unwrap_or_else(Nat::zero)
    }

    /// Ordinal comparison (same as the derived `Ord`).
    pub fn compare(&self, other: &Ordinal) -> Ordering {
        self.cmp(other)
    }

    /// Ordinal addition on normal forms: terms of `self` strictly below the
    /// leading exponent of `other` are absorbed.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((lead, lead_coef)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Nat, Nat)> = self
            .terms
            .iter()
            .take_while(|(e, _)| e > lead)
            .cloned()
            .collect();
        let mut rest = other.terms.clone();
        if let Some((_, k)) = self.terms.iter().find(|(e, _)| e == lead) {
            rest[0].1 = lead_coef + k;
        }
        terms.extend(rest);
        Ordinal { terms }
    }

    /// Zeroes every coefficient of exponent `< j`: the largest ordinal `<=
    /// self` all of whose exponents are `>= j`.
    pub fn floor_level(&self, j: u64) -> Ordinal {
        let j = nat(j);
        Ordinal {
            terms: self.terms.iter().take_while(|(e, _)| *e >= j).cloned().collect(),
        }
    }

    fn check_in_interval(&self, alpha: u64) -> Result<(), OrdinalError> {
        let top = Ordinal::omega_pow(alpha);
        if self.is_zero() || *self > top {
            return Err(OrdinalError::OutsideInterval { point: self.clone(), alpha });
        }
        Ok(())
    }

    /// Least exponent with a nonzero coefficient, for `1 <= self <= w^alpha`;
    /// by convention `beta0(w^alpha) = alpha`, which makes the telescoping
    /// reconstruction below `ell` degenerate correctly at the right endpoint.
    pub fn beta0(&self, alpha: u64) -> Result<u64, OrdinalError> {
        self.check_in_interval(alpha)?;
        if *self == Ordinal::omega_pow(alpha) {
            return Ok(alpha);
        }
        let (e, _) = self.terms.last().expect("nonzero ordinal has terms");
        // self < w^alpha, so e < alpha fits in u64
        Ok(num::ToPrimitive::to_u64(e).expect("exponent below alpha"))
    }

    /// Rounds `t` up to the next limit one level above `beta0(t)`: drops all
    /// terms of exponent `<= beta0(t)` and bumps the coefficient at
    /// `beta0(t) + 1`. Fixes `w^alpha`.
    pub fn ell(&self, alpha: u64) -> Result<Ordinal, OrdinalError> {
        self.check_in_interval(alpha)?;
        let top = Ordinal::omega_pow(alpha);
        if *self == top {
            return Ok(top);
        }
        let b0 = self.beta0(alpha)?;
        let target = nat(b0 + 1);
        let mut terms: Vec<(Nat, Nat)> = self
            .terms
            .iter()
            .take_while(|(e, _)| *e > target)
            .cloned()
            .collect();
        let k = self.coefficient(b0 + 1);
        terms.push((target, k + Nat::one()));
        Ok(Ordinal { terms })
    }

    /// Every point of `[1, w^alpha]` whose coefficients are all `<= max_coef`,
    /// in increasing order. Exhaustive-grid helper for verification suites.
    pub fn grid(alpha: u64, max_coef: u64) -> Vec<Ordinal> {
        let mut out = Vec::new();
        let mut coeffs = alloc::vec![0u64; alpha as usize];
        loop {
            if coeffs.iter().any(|&k| k != 0) {
                let mut terms = Vec::new();
                // coeffs[i] is the coefficient of w^(alpha-1-i)
                for (i, &k) in coeffs.iter().enumerate() {
                    if k != 0 {
                        terms.push((nat(alpha - 1 - i as u64), nat(k)));
                    }
                }
                out.push(Ordinal { terms });
            }
            // odometer, least-significant position last
            let mut pos = coeffs.len();
            loop {
                if pos == 0 {
                    out.push(Ordinal::omega_pow(alpha));
                    out.sort();
                    return out;
                }
                pos -= 1;
                if coeffs[pos] < max_coef {
                    coeffs[pos] += 1;
                    break;
                }
                coeffs[pos] = 0;
            }
        }
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, k)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{k}")?;
            } else if e.is_one() {
                if k.is_one() {
                    write!(f, "w")?;
                } else {
                    write!(f, "w*{k}")?;
                }
            } else if k.is_one() {
                write!(f, "w^{e}")?;
            } else {
                write!(f, "w^{e}*{k}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| OrdinalError::Parse { input: String::from(s), reason };
        let body = s.trim();
        if body.is_empty() {
            return Err(err("empty input"));
        }
        if body == "0" {
            return Ok(Ordinal::zero());
        }
        let mut terms: Vec<(Nat, Nat)> = Vec::new();
        for part in body.split('+') {
            let part = part.trim();
            if part.is_empty() {
                return Err(err("empty term"));
            }
            let (exp, coef) = if let Some(rest) = part.strip_prefix('w') {
                let (exp_str, coef_str) = match rest.split_once('*') {
                    Some((e, c)) => (e.trim(), Some(c.trim())),
                    None => (rest.trim(), None),
                };
                let exp: Nat = if exp_str.is_empty() {
                    Nat::one()
                } else {
                    let digits = exp_str
                        .strip_prefix('^')
                        .ok_or_else(|| err("expected `^` after `w`"))?
                        .trim();
                    parse_nat(digits).ok_or_else(|| err("invalid exponent"))?
                };
                let coef: Nat = match coef_str {
                    Some(c) => parse_nat(c).ok_or_else(|| err("invalid coefficient"))?,
                    None => Nat::one(),
                };
                (exp, coef)
            } else {
                let n = parse_nat(part).ok_or_else(|| err("invalid term"))?;
                (Nat::zero(), n)
            };
            if coef.is_zero() {
                return Err(err("coefficients must be >= 1"));
            }
            if let Some((prev, _)) = terms.last() {
                if *prev <= exp {
                    return Err(err("exponents must be strictly descending"));
                }
            }
            terms.push((exp, coef));
        }
        Ok(Ordinal { terms })
    }
}

fn parse_nat(s: &str) -> Option<Nat> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}
