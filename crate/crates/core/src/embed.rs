//! Embedding operators between spaces of step functions on ordinal intervals.
//!
//! The chain of constructions, bottom to top:
//!
//! * [`c0_basis`] / [`c0_embed`]: the isometric copy of `c0` inside
//!   `C_0[1, w^2)` spanned by the overlapping basis functions `x^(n)`; any
//!   two normalized combinations overlap in modulus by at least 1/3.
//! * [`c0_coeffs`] / [`c0_coeffs_w2`]: contractive coefficient transforms
//!   `C[1, w^a] -> c00` (resp. `C_0[1, w^2) -> c00`) with exact lower bounds
//!   `1/(2(a+1))` (resp. `1/4`); inverses are given by a telescoping sum
//!   along the `ell` chain.
//! * [`pair_embed`]: `f -> (c0_embed(coeffs(f)), f)` into the sup direct sum,
//!   an isometry whose image overlaps by at least `1/(6(a+1))`.
//! * [`glued_embed`] / [`glued_embed_w2`]: the same map with the direct sum
//!   realized as a single ordinal interval by concatenation.
//! * [`interleave`] / [`self_embed_w2`]: the odd/even-block realization of
//!   `C_0[1,w^2) (+) C_0[1,w^2) = C_0[1,w^2)` and the resulting isometric
//!   self-embedding with overlap at least 1/12.
//! * [`LinOperator`]: positive unital isometries into larger intervals (the
//!   value-reproducing witnesses make them preserve overlap bounds), and the
//!   composed embeddings selected by [`spr_embed_into`].

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num::{One, ToPrimitive, Zero};

use crate::ordinal::{Nat, Ordinal, OrdinalError};
use crate::rational::{rat, Rational};
use crate::seqspace::{FinSeq, SeqError};
use crate::stepfn::{FnPair, StepFn, StepFnError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbedError {
    Step(StepFnError),
    Seq(SeqError),
    Ordinal(OrdinalError),
    /// Sequence index is not a natural number >= 1.
    InvalidIndex,
    /// Input function lives on the wrong interval.
    WrongDomain { expected: Ordinal },
    /// The construction needs a larger level parameter.
    AlphaTooSmall { alpha: u64, min: u64 },
    /// The target interval is too short for the requested source.
    TargetTooSmall { gamma: Ordinal, required: Ordinal },
    /// A level-2 overlap-preserving embedding needs two points of second
    /// derived type in the target; `[1, gamma]` with `gamma < w^2*2` has one.
    SecondDerivativeSingleton { gamma: Ordinal },
}

impl fmt::Display for EmbedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbedError::Step(e) => write!(f, "{e}"),
            EmbedError::Seq(e) => write!(f, "{e}"),
            EmbedError::Ordinal(e) => write!(f, "{e}"),
            EmbedError::InvalidIndex => write!(f, "sequence index must be a natural >= 1"),
            EmbedError::WrongDomain { expected } => {
                write!(f, "input must live on [1, {expected}]")
            }
            EmbedError::AlphaTooSmall { alpha, min } => {
                write!(f, "alpha = {alpha} is below the minimum {min} for this construction")
            }
            EmbedError::TargetTooSmall { gamma, required } => {
                write!(f, "target [1, {gamma}] is smaller than the required [1, {required}]")
            }
            EmbedError::SecondDerivativeSingleton { gamma } => write!(
                f,
                "no isometric overlap-preserving embedding of C[1, w^2] into [1, {gamma}]: \
                 the second derived set of the target is a single point"
            ),
        }
    }
}

impl From<StepFnError> for EmbedError {
    fn from(e: StepFnError) -> Self {
        EmbedError::Step(e)
    }
}

impl From<SeqError> for EmbedError {
    fn from(e: SeqError) -> Self {
        EmbedError::Seq(e)
    }
}

impl From<OrdinalError> for EmbedError {
    fn from(e: OrdinalError) -> Self {
        EmbedError::Ordinal(e)
    }
}

fn expect_domain(f: &StepFn, expected: &Ordinal) -> Result<(), EmbedError> {
    if f.domain_end() != expected {
        return Err(EmbedError::WrongDomain { expected: expected.clone() });
    }
    Ok(())
}

fn small(n: &Nat) -> u64 {
    n.to_u64().expect("coefficient too large to enumerate")
}

/// The `n`-th basis function of the `c0` copy in `C_0[1, w^2)`: value 1 at
/// the point `n`, 1/2 on the block `(w*n, w*(n+1)]`, and 1/2 at the points
/// `w*(m-1) + n` for `2 <= m <= n`.
pub fn c0_basis(n: u64) -> Result<StepFn, EmbedError> {
    if n == 0 {
        return Err(EmbedError::InvalidIndex);
    }
    let half = rat(1, 2);
    let mut cells: Vec<(Ordinal, Rational)> = Vec::new();
    if n >= 2 {
        cells.push((Ordinal::natural(n - 1), Rational::zero()));
    }
    cells.push((Ordinal::natural(n), Rational::one()));
    for m in 2..=n {
        let block = Ordinal::term(1, m - 1);
        cells.push((block.add(&Ordinal::natural(n - 1)), Rational::zero()));
        cells.push((block.add(&Ordinal::natural(n)), half.clone()));
    }
    cells.push((Ordinal::term(1, n), Rational::zero()));
    cells.push((Ordinal::term(1, n + 1), half));
    cells.push((Ordinal::omega_pow(2), Rational::zero()));
    Ok(StepFn::from_cells(Ordinal::omega_pow(2), cells)?)
}

/// Embeds a finitely supported sequence (indices: naturals >= 1) into
/// `C_0[1, w^2)` as `sum lambda_n c0_basis(n)`, built in one pass. The map is
/// a linear isometry onto its image.
pub fn c0_embed(lambda: &FinSeq) -> Result<StepFn, EmbedError> {
    let w2 = Ordinal::omega_pow(2);
    let half = rat(1, 2);
    let mut supp: Vec<(u64, Rational)> = Vec::new();
    for (t, v) in lambda.iter() {
        let n = t
            .as_natural()
            .filter(|n| !n.is_zero())
            .ok_or(EmbedError::InvalidIndex)?;
        supp.push((small(&n), v.clone()));
    }
    let mut cells: Vec<(Ordinal, Rational)> = Vec::new();
    // values lambda_k at the finite points
    let mut prev = 0u64;
    for (k, v) in &supp {
        if k - 1 > prev {
            cells.push((Ordinal::natural(k - 1), Rational::zero()));
        }
        cells.push((Ordinal::natural(*k), v.clone()));
        prev = *k;
    }
    cells.push((Ordinal::omega(), Rational::zero()));
    // block (w*n, w*(n+1)]: baseline lambda_n/2, plus (lambda_n+lambda_m)/2
    // at w*n + m for supported m > n
    let n_max = supp.last().map(|(k, _)| *k).unwrap_or(0);
    for n in 1..=n_max {
        let base = Ordinal::term(1, n);
        let baseline = &half * lambda.get(&Ordinal::natural(n));
        let mut prev_off = 0u64;
        for (m, v) in supp.iter().filter(|(m, _)| *m > n) {
            if m - 1 > prev_off {
                cells.push((base.add(&Ordinal::natural(m - 1)), baseline.clone()));
            }
            cells.push((base.add(&Ordinal::natural(*m)), &baseline + &half * v));
            prev_off = *m;
        }
        cells.push((Ordinal::term(1, n + 1), baseline));
    }
    cells.push((w2.clone(), Rational::zero()));
    Ok(StepFn::from_cells(w2, cells)?)
}

/// Coefficients of `f` on `[1, w^a]` under the `2(a+1)`-isomorphism onto
/// `c00`: `a(w^a) = f(w^a)/2` and `a(t) = (f(t) - f(ell(t)))/2` below the top.
/// The support is recovered from the breakpoints of `f`: `a(t)` can only be
/// nonzero when some cell end `b` satisfies `t <= b < ell(t)`, and those `t`
/// are exactly `floor_level(b, j+1) + w^j*r` for `j < a`, `1 <= r <= k_j(b)`.
pub fn c0_coeffs(f: &StepFn, alpha: u64) -> Result<FinSeq, EmbedError> {
    let top = Ordinal::omega_pow(alpha);
    expect_domain(f, &top)?;
    let half = rat(1, 2);
    let mut candidates: BTreeSet<Ordinal> = BTreeSet::new();
    candidates.insert(top.clone());
    for cell in f.cells() {
        let b = &cell.end;
        if *b >= top {
            continue;
        }
        for j in 0..alpha {
            let k_j = small(&b.coefficient(j));
            let base = b.floor_level(j + 1);
            for r in 1..=k_j {
                candidates.insert(base.add(&Ordinal::term(j, r)));
            }
        }
    }
    let mut out = FinSeq::new();
    for t in candidates {
        let value = if t == top {
            &half * f.eval(&top)?
        } else {
            &half * (f.eval(&t)? - f.eval(&t.ell(alpha)?)?)
        };
        out.set(t, value);
    }
    Ok(out)
}

/// Coefficients of `f` in `C_0[1, w^2)` under the 4-isomorphism onto `c00`:
/// `a(w*n) = f(w*n)/2` and `a(w*(n-1)+m) = (f(w*(n-1)+m) - f(w*n))/2`.
pub fn c0_coeffs_w2(f: &StepFn) -> Result<FinSeq, EmbedError> {
    let w2 = Ordinal::omega_pow(2);
    expect_domain(f, &w2)?;
    if !f.vanishes_at_end() {
        return Err(EmbedError::Step(StepFnError::DoesNotVanish));
    }
    let half = rat(1, 2);
    let mut out = FinSeq::new();
    let cells = f.cells();
    // beyond the last internal breakpoint every value equals f(w^2) = 0
    let mut max_block = 0u64;
    let mut finite_parts: Vec<(u64, u64)> = Vec::new(); // (block n, max offset)
    if cells.len() > 1 {
        for cell in &cells[..cells.len() - 1] {
            let k1 = small(&cell.end.coefficient(1));
            let k0 = small(&cell.end.coefficient(0));
            if k0 > 0 {
                finite_parts.push((k1 + 1, k0));
                max_block = max_block.max(k1 + 1);
            } else {
                max_block = max_block.max(k1);
            }
        }
    }
    for n in 1..=max_block {
        let limit = Ordinal::term(1, n);
        out.set(limit, &half * f.eval(&Ordinal::term(1, n))?);
    }
    for (n, max_off) in finite_parts {
        let block = Ordinal::term(1, n - 1);
        let at_limit = f.eval(&Ordinal::term(1, n))?;
        for m in 1..=max_off {
            let t = block.add(&Ordinal::natural(m));
            out.set(t.clone(), &half * (f.eval(&t)? - &at_limit));
        }
    }
    Ok(out)
}

/// `f -> (c0_embed(reindexed coefficients), f)`: an exact isometry of
/// `C[1, w^a]` into `C_0[1, w^2) (+)_inf C[1, w^a]` whose image admits a
/// uniform meet-norm floor `1/(6(a+1))` on normalized pairs.
pub fn pair_embed(f: &StepFn, alpha: u64) -> Result<FnPair, EmbedError> {
    if alpha < 2 {
        return Err(EmbedError::AlphaTooSmall { alpha, min: 2 });
    }
    let coeffs = c0_coeffs(f, alpha)?;
    let left = c0_embed(&coeffs.reindex(alpha)?)?;
    Ok(FnPair::new(left, f.clone()))
}

/// The pair embedding with the direct sum written as one interval:
/// `[1, w^2] . [1, w^a] = [1, w^a]` for `a >= 3`. The witness point for the
/// right summand is `w^2 + t`.
pub fn glued_embed(f: &StepFn, alpha: u64) -> Result<StepFn, EmbedError> {
    if alpha < 3 {
        return Err(EmbedError::AlphaTooSmall { alpha, min: 3 });
    }
    let pair = pair_embed(f, alpha)?;
    Ok(pair.left.glue(&pair.right))
}

/// Same gluing at level 2, landing in `[1, w^2*2]`.
pub fn glued_embed_w2(f: &StepFn) -> Result<StepFn, EmbedError> {
    let pair = pair_embed(f, 2)?;
    Ok(pair.left.glue(&pair.right))
}

/// Realizes `C_0[1,w^2) (+)_inf C_0[1,w^2) = C_0[1,w^2)` by sending block `n`
/// of `f1` to block `2n-1` and block `n` of `f2` to block `2n` (block `n` is
/// `(w*(n-1), w*n]`). A lattice isometry onto `C_0[1, w^2)`.
pub fn interleave(f1: &StepFn, f2: &StepFn) -> Result<StepFn, EmbedError> {
    let w2 = Ordinal::omega_pow(2);
    for f in [f1, f2] {
        expect_domain(f, &w2)?;
        if !f.vanishes_at_end() {
            return Err(EmbedError::Step(StepFnError::DoesNotVanish));
        }
    }
    let blocks_of = |f: &StepFn| -> u64 {
        let cells = f.cells();
        if cells.len() == 1 {
            return 0;
        }
        let e = &cells[cells.len() - 2].end;
        let k1 = small(&e.coefficient(1));
        if e.coefficient(0).is_zero() {
            k1
        } else {
            k1 + 1
        }
    };
    let nblocks = blocks_of(f1).max(blocks_of(f2));
    let mut cells: Vec<(Ordinal, Rational)> = Vec::new();
    for n in 1..=nblocks {
        let src_start = Ordinal::term(1, n - 1);
        let src_end = Ordinal::term(1, n);
        for (src, parity) in [(f1, 0u64), (f2, 1u64)] {
            let tgt_start = Ordinal::term(1, 2 * (n - 1) + parity);
            for cell in src.cells() {
                if cell.end > src_start && cell.end < src_end {
                    let offset = cell.end.coefficient(0);
                    cells.push((
                        tgt_start.add(&Ordinal::from_nat(offset)),
                        cell.value.clone(),
                    ));
                }
            }
            cells.push((
                Ordinal::term(1, 2 * (n - 1) + parity + 1),
                src.eval(&src_end)?,
            ));
        }
    }
    cells.push((w2.clone(), Rational::zero()));
    Ok(StepFn::from_cells(w2, cells)?)
}

/// Isometric self-embedding of `C_0[1, w^2)`: the coefficient transform into
/// `c0`, embedded back through the basis functions, interleaved with the
/// original on odd/even blocks. Normalized image pairs overlap by >= 1/12.
pub fn self_embed_w2(f: &StepFn) -> Result<StepFn, EmbedError> {
    let coeffs = c0_coeffs_w2(f)?;
    let left = c0_embed(&coeffs.reindex(2)?)?;
    interleave(&left, f)
}

/// Declared properties of an operator. Declarations are verified by the
/// search-and-metrics layer, never assumed by it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorProps {
    pub isometric: bool,
    pub positive: bool,
    pub unital: bool,
    /// Claimed overlap constant: normalized image pairs have meet norm at
    /// least the reciprocal of this value.
    pub spr_constant: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum OpKind {
    /// Extend by the value at the right endpoint: the composition with the
    /// continuous retraction `u -> min(u, source_end)` of the target onto the
    /// source. Positive, unital, isometric, and value-reproducing (`s_t = t`).
    ExtendRight,
    /// `glued_embed` followed by right extension; witness `s_t = w^2 + t`.
    GluedEmbed { alpha: u64 },
    /// `glued_embed_w2` followed by right extension; witness `s_t = w^2 + t`.
    GluedEmbedW2,
    /// Pointwise scaling; a deliberately non-value-reproducing operator for
    /// negative tests.
    Scale(Rational),
}

/// A named linear map `StepFn -> StepFn` between ordinal intervals, carrying
/// its declared properties and (when it has one) the value-reproducing
/// witness map `t -> s_t` with `(Tf)(s_t) = f(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinOperator {
    source_end: Ordinal,
    target_end: Ordinal,
    kind: OpKind,
    props: OperatorProps,
}

impl LinOperator {
    pub fn source_end(&self) -> &Ordinal {
        &self.source_end
    }

    pub fn target_end(&self) -> &Ordinal {
        &self.target_end
    }

    pub fn props(&self) -> &OperatorProps {
        &self.props
    }

    /// Pointwise scaling on `[1, gamma]`; useful as a negative control.
    pub fn scaling(gamma: Ordinal, c: Rational) -> Self {
        let props = OperatorProps {
            isometric: num::Signed::abs(&c).is_one(),
            positive: c >= Rational::zero(),
            unital: c.is_one(),
            spr_constant: None,
        };
        LinOperator { source_end: gamma.clone(), target_end: gamma, kind: OpKind::Scale(c), props }
    }

    pub fn apply(&self, f: &StepFn) -> Result<StepFn, EmbedError> {
        expect_domain(f, &self.source_end)?;
        match &self.kind {
            OpKind::ExtendRight => Ok(extend_to(f, &self.target_end)),
            OpKind::GluedEmbed { alpha } => {
                Ok(extend_to(&glued_embed(f, *alpha)?, &self.target_end))
            }
            OpKind::GluedEmbedW2 => Ok(extend_to(&glued_embed_w2(f)?, &self.target_end)),
            OpKind::Scale(c) => Ok(f.scale(c)),
        }
    }

    /// The point `s_t` of the target at which images reproduce the source
    /// value `f(t)`. For the scaling control this is just `t`, and the
    /// reproduction genuinely fails unless the factor is 1.
    pub fn witness(&self, t: &Ordinal) -> Result<Ordinal, EmbedError> {
        if t.is_zero() || *t > self.source_end {
            return Err(EmbedError::Ordinal(OrdinalError::OutsideInterval {
                point: t.clone(),
                alpha: 0,
            }));
        }
        match &self.kind {
            OpKind::ExtendRight | OpKind::Scale(_) => Ok(t.clone()),
            OpKind::GluedEmbed { .. } | OpKind::GluedEmbedW2 => {
                Ok(Ordinal::omega_pow(2).add(t))
            }
        }
    }
}

fn extend_to(f: &StepFn, gamma: &Ordinal) -> StepFn {
    if f.domain_end() == gamma {
        return f.clone();
    }
    let mut cells: Vec<(Ordinal, Rational)> =
        f.cells().iter().map(|c| (c.end.clone(), c.value.clone())).collect();
    cells.last_mut().expect("non-empty").0 = gamma.clone();
    StepFn::from_cells(gamma.clone(), cells).expect("extension keeps cells valid")
}

/// The positive unital isometry `C[1, w^a] -> C[1, gamma]` (for
/// `gamma >= w^a`) obtained from the canonical clopen choices: they collapse
/// the recursive construction to "extend by the right-endpoint value", the
/// composition with the retraction `u -> min(u, w^a)`. Each source point is
/// its own witness, so the operator reproduces values and preserves overlap
/// bounds. For `gamma = w^a` this is the identity.
pub fn urysohn_embed(alpha: u64, gamma: &Ordinal) -> Result<LinOperator, EmbedError> {
    let top = Ordinal::omega_pow(alpha);
    if *gamma < top {
        return Err(EmbedError::TargetTooSmall { gamma: gamma.clone(), required: top });
    }
    Ok(LinOperator {
        source_end: top,
        target_end: gamma.clone(),
        kind: OpKind::ExtendRight,
        props: OperatorProps {
            isometric: true,
            positive: true,
            unital: true,
            spr_constant: None,
        },
    })
}

/// The isometric overlap-preserving embedding of `C[1, w^a]` into
/// `[1, gamma]`: the glued pair embedding followed by the right extension.
/// Requires `gamma >= w^a` for `a >= 3`, and `gamma >= w^2*2` for `a = 2`
/// (a target with a single second-derived point admits none); `a <= 1` is
/// rejected outright. The claimed overlap constant `6(a+1)` is recorded in
/// the metadata.
pub fn spr_embed_into(alpha: u64, gamma: &Ordinal) -> Result<LinOperator, EmbedError> {
    if alpha < 2 {
        return Err(EmbedError::AlphaTooSmall { alpha, min: 2 });
    }
    let constant = Rational::from_integer((6 * (alpha + 1)).into());
    let props = OperatorProps {
        isometric: true,
        positive: false,
        unital: false,
        spr_constant: Some(constant),
    };
    if alpha == 2 {
        let required = Ordinal::term(2, 2);
        if *gamma < required {
            return Err(EmbedError::SecondDerivativeSingleton { gamma: gamma.clone() });
        }
        return Ok(LinOperator {
            source_end: Ordinal::omega_pow(2),
            target_end: gamma.clone(),
            kind: OpKind::GluedEmbedW2,
            props,
        });
    }
    let top = Ordinal::omega_pow(alpha);
    if *gamma < top {
        return Err(EmbedError::TargetTooSmall { gamma: gamma.clone(), required: top });
    }
    Ok(LinOperator {
        source_end: top,
        target_end: gamma.clone(),
        kind: OpKind::GluedEmbed { alpha },
        props,
    })
}
