//! Step functions on ordinal intervals `[1, gamma]` with exact lattice algebra.
//!
//! A `StepFn` is a finite list of cells `(end, value)`: cell `i` takes `value`
//! on the clopen interval `(end_{i-1}, end_i]`, with a formal left endpoint 0
//! so the first cell covers `[1, end_1]`, and the last end equals the domain
//! end. Indicators of clopen intervals are continuous on ordinal intervals, so
//! every such function is continuous. The representation is canonical:
//! adjacent cells never share a value, which makes structural equality
//! semantic equality and keeps isometry checks exact.
//!
//! All binary operations run through one primitive: merge the two breakpoint
//! lists into a common refinement and combine cell-wise.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num::{One, Signed, Zero};

use crate::ordinal::{Nat, Ordinal};
use crate::rational::Rational;

/// One cell of a step function: constant `value` on `(previous end, end]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub end: Ordinal,
    pub value: Rational,
}

/// Canonical piecewise-constant function on `[1, domain_end]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFn {
    domain_end: Ordinal,
    cells: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepFnError {
    /// The domain end must be an ordinal >= 1.
    EmptyDomain,
    InvalidCells(&'static str),
    /// `indicator(a, b, gamma)` needs `a < b <= gamma`.
    InvalidInterval,
    /// Block index depth must satisfy `1 <= k <= alpha`, entries >= 1.
    InvalidBlockIndex,
    /// Binary operations need equal domain ends.
    DomainMismatch,
    /// Evaluation point outside `[1, domain_end]`.
    OutOfDomain(Ordinal),
    /// The requested operation needs a function vanishing at the domain end.
    DoesNotVanish,
    /// Cannot rescale the zero function to norm one.
    ZeroFunction,
}

impl fmt::Display for StepFnError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepFnError::EmptyDomain => write!(f, "domain end must be >= 1"),
            StepFnError::InvalidCells(r) => write!(f, "invalid cell list: {r}"),
            StepFnError::InvalidInterval => write!(f, "indicator needs 0 <= a < b <= gamma"),
            StepFnError::InvalidBlockIndex => {
                write!(f, "block index needs 1 <= depth <= alpha and entries >= 1")
            }
            StepFnError::DomainMismatch => write!(f, "operands live on different intervals"),
            StepFnError::OutOfDomain(t) => write!(f, "point {t} outside the domain"),
            StepFnError::DoesNotVanish => write!(f, "function does not vanish at the domain end"),
            StepFnError::ZeroFunction => write!(f, "zero function cannot be normalized"),
        }
    }
}

fn canonical(domain_end: Ordinal, raw: Vec<Cell>) -> StepFn {
    let mut cells: Vec<Cell> = Vec::with_capacity(raw.len());
    for cell in raw {
        match cells.last_mut() {
            Some(prev) if prev.value == cell.value => prev.end = cell.end,
            _ => cells.push(cell),
        }
    }
    StepFn { domain_end, cells }
}

impl StepFn {
    /// Builds a function from ascending `(end, value)` pairs; the last end
    /// must equal `domain_end`. Adjacent equal values are merged.
    pub fn from_cells(
        domain_end: Ordinal,
        cells: Vec<(Ordinal, Rational)>,
    ) -> Result<Self, StepFnError> {
        if domain_end.is_zero() {
            return Err(StepFnError::EmptyDomain);
        }
        if cells.is_empty() {
            return Err(StepFnError::InvalidCells("no cells"));
        }
        let mut prev = Ordinal::zero();
        for (end, _) in &cells {
            if *end <= prev {
                return Err(StepFnError::InvalidCells("ends must be strictly increasing"));
            }
            prev = end.clone();
        }
        if cells.last().map(|(e, _)| e) != Some(&domain_end) {
            return Err(StepFnError::InvalidCells("last end must equal the domain end"));
        }
        Ok(canonical(
            domain_end,
            cells.into_iter().map(|(end, value)| Cell { end, value }).collect(),
        ))
    }

    /// The zero function on `[1, gamma]`.
    pub fn zero(gamma: Ordinal) -> Result<Self, StepFnError> {
        Self::constant(gamma, Rational::zero())
    }

    /// The constant function `value` on `[1, gamma]`.
    pub fn constant(gamma: Ordinal, value: Rational) -> Result<Self, StepFnError> {
        if gamma.is_zero() {
            return Err(StepFnError::EmptyDomain);
        }
        Ok(StepFn { domain_end: gamma.clone(), cells: alloc::vec![Cell { end: gamma, value }] })
    }

    /// Indicator of the clopen interval `(a, b]` inside `[1, gamma]`.
    pub fn indicator(a: &Ordinal, b: &Ordinal, gamma: &Ordinal) -> Result<Self, StepFnError> {
        if gamma.is_zero() {
            return Err(StepFnError::EmptyDomain);
        }
        if a >= b || b > gamma {
            return Err(StepFnError::InvalidInterval);
        }
        let mut cells = Vec::with_capacity(3);
        if !a.is_zero() {
            cells.push(Cell { end: a.clone(), value: Rational::zero() });
        }
        cells.push(Cell { end: b.clone(), value: Rational::one() });
        if b < gamma {
            cells.push(Cell { end: gamma.clone(), value: Rational::zero() });
        }
        Ok(StepFn { domain_end: gamma.clone(), cells })
    }

    /// Indicator of the nested block `(sum w^(a-i)*(m_i - 1), .. + w^(a-k)*m_k]`
    /// inside `[1, w^alpha]`; depth `k = alpha` gives the indicator of a
    /// singleton.
    pub fn block_indicator(m: &[Nat], alpha: u64) -> Result<Self, StepFnError> {
        let k = m.len() as u64;
        if k == 0 || k > alpha || m.iter().any(|mi| mi.is_zero()) {
            return Err(StepFnError::InvalidBlockIndex);
        }
        let mut lo_terms: Vec<(Nat, Nat)> = Vec::new();
        let mut hi_terms: Vec<(Nat, Nat)> = Vec::new();
        for (i, mi) in m.iter().enumerate() {
            let exp = Nat::from(alpha - 1 - i as u64);
            let shifted = mi - Nat::one();
            let last = i as u64 + 1 == k;
            if !shifted.is_zero() {
                lo_terms.push((exp.clone(), shifted.clone()));
            }
            let hi_coef = if last { mi.clone() } else { shifted };
            if !hi_coef.is_zero() {
                hi_terms.push((exp, hi_coef));
            }
        }
        let a = Ordinal::from_terms(lo_terms).expect("descending by construction");
        let b = Ordinal::from_terms(hi_terms).expect("descending by construction");
        Self::indicator(&a, &b, &Ordinal::omega_pow(alpha))
    }

    pub fn domain_end(&self) -> &Ordinal {
        &self.domain_end
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn is_zero(&self) -> bool {
        self.cells.len() == 1 && self.cells[0].value.is_zero()
    }

    /// Value at `t`, for `1 <= t <= domain_end`.
    pub fn eval(&self, t: &Ordinal) -> Result<Rational, StepFnError> {
        if t.is_zero() || *t > self.domain_end {
            return Err(StepFnError::OutOfDomain(t.clone()));
        }
        let idx = self.cells.partition_point(|c| c.end < *t);
        Ok(self.cells[idx].value.clone())
    }

    fn zip_with(
        &self,
        other: &StepFn,
        op: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<StepFn, StepFnError> {
        if self.domain_end != other.domain_end {
            return Err(StepFnError::DomainMismatch);
        }
        let mut raw = Vec::with_capacity(self.cells.len() + other.cells.len());
        let (mut i, mut j) = (0, 0);
        while i < self.cells.len() && j < other.cells.len() {
            let a = &self.cells[i];
            let b = &other.cells[j];
            let (end, step_i, step_j) = match a.end.cmp(&b.end) {
                Ordering::Less => (a.end.clone(), true, false),
                Ordering::Greater => (b.end.clone(), false, true),
                Ordering::Equal => (a.end.clone(), true, true),
            };
            raw.push(Cell { end, value: op(&a.value, &b.value) });
            i += usize::from(step_i);
            j += usize::from(step_j);
        }
        Ok(canonical(self.domain_end.clone(), raw))
    }

    pub fn add(&self, other: &StepFn) -> Result<StepFn, StepFnError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &StepFn) -> Result<StepFn, StepFnError> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise minimum.
    pub fn meet(&self, other: &StepFn) -> Result<StepFn, StepFnError> {
        self.zip_with(other, |a, b| if a <= b { a.clone() } else { b.clone() })
    }

    /// Pointwise maximum.
    pub fn join(&self, other: &StepFn) -> Result<StepFn, StepFnError> {
        self.zip_with(other, |a, b| if a >= b { a.clone() } else { b.clone() })
    }

    pub fn scale(&self, c: &Rational) -> StepFn {
        if c.is_zero() {
            return StepFn::zero(self.domain_end.clone()).expect("domain already valid");
        }
        StepFn {
            domain_end: self.domain_end.clone(),
            cells: self
                .cells
                .iter()
                .map(|cell| Cell { end: cell.end.clone(), value: c * &cell.value })
                .collect(),
        }
    }

    pub fn neg(&self) -> StepFn {
        self.scale(&-Rational::one())
    }

    /// Pointwise absolute value.
    pub fn abs(&self) -> StepFn {
        canonical(
            self.domain_end.clone(),
            self.cells
                .iter()
                .map(|c| Cell { end: c.end.clone(), value: c.value.abs() })
                .collect(),
        )
    }

    /// Exact supremum norm: the largest `|value|` over the cells.
    pub fn sup_norm(&self) -> Rational {
        self.cells
            .iter()
            .map(|c| c.value.abs())
            .max()
            .expect("a step function has at least one cell")
    }

    /// `self / sup_norm(self)`; errors on the zero function.
    pub fn normalized(&self) -> Result<StepFn, StepFnError> {
        let n = self.sup_norm();
        if n.is_zero() {
            return Err(StepFnError::ZeroFunction);
        }
        Ok(self.scale(&n.recip()))
    }

    /// Moves the function onto the shifted carrier `(delta, delta + gamma]`,
    /// padding `[1, delta]` with zero: every cell end `b` becomes
    /// `delta + b`, values unchanged.
    pub fn shift(&self, delta: &Ordinal) -> StepFn {
        if delta.is_zero() {
            return self.clone();
        }
        let mut raw = Vec::with_capacity(self.cells.len() + 1);
        raw.push(Cell { end: delta.clone(), value: Rational::zero() });
        for cell in &self.cells {
            raw.push(Cell { end: delta.add(&cell.end), value: cell.value.clone() });
        }
        canonical(delta.add(&self.domain_end), raw)
    }

    /// Concatenates two intervals: the result equals `self` on `(0, gamma1]`
    /// and `f(s)` at `gamma1 + s`, on the interval `[1, gamma1 + gamma2]`.
    pub fn glue(&self, f: &StepFn) -> StepFn {
        let gamma1 = &self.domain_end;
        let mut raw = self.cells.clone();
        for cell in &f.cells {
            raw.push(Cell { end: gamma1.add(&cell.end), value: cell.value.clone() });
        }
        canonical(gamma1.add(&f.domain_end), raw)
    }

    /// True iff the value at the right endpoint is 0.
    pub fn vanishes_at_end(&self) -> bool {
        self.cells.last().expect("non-empty").value.is_zero()
    }

    /// Membership in the sublattice of `C_0[1, w^2)` cut out by the
    /// constraints `(1/n) f(w*(n-1)+1) = f(w*n)` for all `n >= 1`.
    pub fn am_member(&self) -> Result<bool, StepFnError> {
        if self.domain_end != Ordinal::omega_pow(2) {
            return Err(StepFnError::DomainMismatch);
        }
        if !self.vanishes_at_end() {
            return Ok(false);
        }
        // Beyond the last breakpoint below w^2 both sides of the constraint
        // sit in the final (zero) cell, so finitely many n suffice.
        let bound = match self.cells.len() {
            1 => 0,
            n => num::ToPrimitive::to_u64(&self.cells[n - 2].end.coefficient(1))
                .expect("breakpoint block index fits u64"),
        };
        for n in 1..=bound + 1 {
            let at_start = self.eval(&Ordinal::term(1, n - 1).add(&Ordinal::natural(1)))?;
            let at_limit = self.eval(&Ordinal::term(1, n))?;
            if at_start / Rational::from_integer(n.into()) != at_limit {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Element of the sup-normed direct sum of two intervals: the norm is the
/// larger of the component norms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnPair {
    pub left: StepFn,
    pub right: StepFn,
}

impl FnPair {
    pub fn new(left: StepFn, right: StepFn) -> Self {
        FnPair { left, right }
    }

    pub fn norm(&self) -> Rational {
        self.left.sup_norm().max(self.right.sup_norm())
    }

    /// `|| |self| /\ |other| ||` in the direct sum: the max of the two
    /// component meet norms.
    pub fn meet_norm(&self, other: &FnPair) -> Result<Rational, StepFnError> {
        let l = crate::spr::meet_norm(&self.left, &other.left)?;
        let r = crate::spr::meet_norm(&self.right, &other.right)?;
        Ok(l.max(r))
    }

    pub fn add(&self, other: &FnPair) -> Result<FnPair, StepFnError> {
        Ok(FnPair {
            left: self.left.add(&other.left)?,
            right: self.right.add(&other.right)?,
        })
    }

    pub fn scale(&self, c: &Rational) -> FnPair {
        FnPair { left: self.left.scale(c), right: self.right.scale(c) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::nat;
    use crate::rational::{rat, rat_int};
    use proptest::prelude::*;

    fn ord(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn w2() -> Ordinal {
        Ordinal::omega_pow(2)
    }

    #[test]
    fn indicator_examples() {
        let f = StepFn::indicator(&Ordinal::zero(), &Ordinal::omega(), &w2()).unwrap();
        assert_eq!(f.eval(&Ordinal::natural(3)).unwrap(), rat_int(1));
        assert_eq!(f.eval(&ord("w + 1")).unwrap(), rat_int(0));
        let g = StepFn::indicator(&Ordinal::omega(), &ord("w*2"), &w2()).unwrap();
        assert_eq!(g.eval(&ord("w*2")).unwrap(), rat_int(1));
        assert_eq!(g.eval(&Ordinal::omega()).unwrap(), rat_int(0));
        assert!(StepFn::indicator(&Ordinal::omega(), &Ordinal::omega(), &w2()).is_err());
        assert!(StepFn::indicator(&Ordinal::zero(), &ord("w^3"), &w2()).is_err());
    }

    #[test]
    fn block_indicator_examples() {
        // depth alpha: singleton {w*(m1-1) + m2}
        let f = StepFn::block_indicator(&[nat(1), nat(5)], 2).unwrap();
        let singleton = StepFn::indicator(&Ordinal::natural(4), &Ordinal::natural(5), &w2()).unwrap();
        assert_eq!(f, singleton);

        let g = StepFn::block_indicator(&[nat(2)], 2).unwrap();
        let block = StepFn::indicator(&Ordinal::omega(), &ord("w*2"), &w2()).unwrap();
        assert_eq!(g, block);

        let h = StepFn::block_indicator(&[nat(1), nat(1), nat(1)], 3).unwrap();
        let one = StepFn::indicator(&Ordinal::zero(), &Ordinal::natural(1), &Ordinal::omega_pow(3))
            .unwrap();
        assert_eq!(h, one);

        assert!(StepFn::block_indicator(&[], 2).is_err());
        assert!(StepFn::block_indicator(&[nat(1), nat(1), nat(1)], 2).is_err());
        assert!(StepFn::block_indicator(&[nat(0)], 2).is_err());
    }

    #[test]
    fn eval_examples() {
        let zero = StepFn::zero(w2()).unwrap();
        assert_eq!(zero.eval(&ord("w + 7")).unwrap(), rat_int(0));
        let half = StepFn::indicator(&Ordinal::omega(), &ord("w*2"), &w2())
            .unwrap()
            .scale(&rat(1, 2));
        assert_eq!(half.eval(&ord("w + 7")).unwrap(), rat(1, 2));
        assert!(half.eval(&Ordinal::zero()).is_err());
        assert!(half.eval(&ord("w^2 + 1")).is_err());
    }

    #[test]
    fn combine_examples() {
        let a = StepFn::indicator(&Ordinal::zero(), &Ordinal::omega(), &w2()).unwrap();
        let b = StepFn::indicator(&Ordinal::omega(), &ord("w*2"), &w2()).unwrap();
        assert!(a.meet(&b).unwrap().is_zero());

        let one = StepFn::constant(w2(), rat_int(1)).unwrap();
        assert_eq!(one.scale(&rat(-1, 2)).abs(), one.scale(&rat(1, 2)));

        let c = StepFn::indicator(&Ordinal::zero(), &Ordinal::natural(5), &w2()).unwrap();
        let d = StepFn::indicator(&Ordinal::natural(3), &Ordinal::omega(), &w2()).unwrap();
        assert_eq!(c.add(&d).unwrap().eval(&Ordinal::natural(4)).unwrap(), rat_int(2));

        let other_domain = StepFn::zero(Ordinal::omega_pow(3)).unwrap();
        assert_eq!(a.add(&other_domain), Err(StepFnError::DomainMismatch));
    }

    #[test]
    fn sup_norm_examples() {
        assert_eq!(StepFn::zero(w2()).unwrap().sup_norm(), rat_int(0));
        // 1/2 * unit - indicator of the first block: values -1/2 and 1/2
        let one = StepFn::constant(w2(), rat_int(1)).unwrap();
        let first = StepFn::block_indicator(&[nat(1)], 2).unwrap();
        let f = one.scale(&rat(1, 2)).sub(&first).unwrap();
        assert_eq!(f.sup_norm(), rat(1, 2));
        assert_eq!(f.eval(&Ordinal::natural(1)).unwrap(), rat(-1, 2));
        assert_eq!(f.eval(&ord("w + 1")).unwrap(), rat(1, 2));
    }

    #[test]
    fn shift_examples() {
        let point = StepFn::indicator(&Ordinal::zero(), &Ordinal::natural(1), &w2()).unwrap();
        let shifted = point.shift(&w2());
        assert_eq!(shifted.domain_end(), &ord("w^2*2"));
        assert_eq!(shifted.eval(&ord("w^2 + 1")).unwrap(), rat_int(1));
        assert_eq!(shifted.eval(&ord("w^2")).unwrap(), rat_int(0));
        assert_eq!(shifted.eval(&ord("w^2 + 2")).unwrap(), rat_int(0));

        let f = StepFn::indicator(&Ordinal::natural(2), &Ordinal::omega(), &w2()).unwrap();
        assert_eq!(f.shift(&Ordinal::zero()), f);

        // absorption: a copy of [1, w^3] shifted past w^2 still ends at w^3
        let one = StepFn::constant(Ordinal::omega_pow(3), rat_int(1)).unwrap();
        let s = one.shift(&w2());
        assert_eq!(s.domain_end(), &ord("w^3"));
        assert_eq!(s.eval(&ord("w^2 + 5")).unwrap(), rat_int(1));
        assert_eq!(s.eval(&ord("w^2")).unwrap(), rat_int(0));
        assert_eq!(s.sup_norm(), rat_int(1));
    }

    #[test]
    fn glue_examples() {
        let g = StepFn::indicator(&Ordinal::zero(), &Ordinal::omega(), &w2()).unwrap();
        let f = StepFn::constant(Ordinal::omega_pow(3), rat_int(2)).unwrap();
        let glued = g.glue(&f);
        assert_eq!(glued.domain_end(), &ord("w^3"));
        assert_eq!(glued.eval(&Ordinal::natural(3)).unwrap(), rat_int(1));
        assert_eq!(glued.eval(&ord("w^2")).unwrap(), rat_int(0));
        assert_eq!(glued.eval(&ord("w^2 + 5")).unwrap(), rat_int(2));

        let h = StepFn::zero(w2()).unwrap().glue(&StepFn::zero(w2()).unwrap());
        assert_eq!(h.domain_end(), &ord("w^2*2"));

        // glue restricted to the first interval equals the first argument
        for t in [Ordinal::natural(1), Ordinal::natural(7), ord("w"), ord("w*3 + 1"), ord("w^2")] {
            assert_eq!(glued.eval(&t).unwrap(), g.eval(&t).unwrap());
        }
    }

    #[test]
    fn vanishes_at_end_examples() {
        assert!(StepFn::zero(w2()).unwrap().vanishes_at_end());
        assert!(!StepFn::constant(w2(), rat_int(1)).unwrap().vanishes_at_end());
        let f = StepFn::indicator(&Ordinal::zero(), &Ordinal::omega(), &w2()).unwrap();
        assert!(f.vanishes_at_end());
    }

    #[test]
    fn am_member_examples() {
        assert!(StepFn::zero(w2()).unwrap().am_member().unwrap());
        // indicator of {1}: n = 1 forces f(w) = 1, but f(w) = 0
        let point = StepFn::indicator(&Ordinal::zero(), &Ordinal::natural(1), &w2()).unwrap();
        assert!(!point.am_member().unwrap());
        // indicator of [1, w]: f(1) = 1 = f(w); all later constraints are 0 = 0
        let first = StepFn::indicator(&Ordinal::zero(), &Ordinal::omega(), &w2()).unwrap();
        assert!(first.am_member().unwrap());
        // wrong domain
        assert!(StepFn::zero(Ordinal::omega_pow(3)).unwrap().am_member().is_err());
        // does not vanish at the end
        assert!(!StepFn::constant(w2(), rat_int(1)).unwrap().am_member().unwrap());
        // scaled member stays a member: (1/2) on [1,1], (1/2) at w... build
        // f with f(1) = 2, f(w) = 2, elsewhere 0 on the first block only:
        let f = first.scale(&rat_int(2));
        assert!(f.am_member().unwrap());
    }

    #[test]
    fn canonical_merges_adjacent_equal_cells() {
        let f = StepFn::from_cells(
            w2(),
            alloc::vec![
                (Ordinal::natural(1), rat_int(1)),
                (Ordinal::natural(2), rat_int(1)),
                (w2(), rat_int(0)),
            ],
        )
        .unwrap();
        assert_eq!(f.cells().len(), 2);
        assert_eq!(f.cells()[0].end, Ordinal::natural(2));
    }

    #[test]
    fn from_cells_validates() {
        assert!(StepFn::from_cells(w2(), alloc::vec![]).is_err());
        assert!(StepFn::from_cells(
            w2(),
            alloc::vec![(Ordinal::natural(2), rat_int(1)), (Ordinal::natural(1), rat_int(0))]
        )
        .is_err());
        assert!(StepFn::from_cells(w2(), alloc::vec![(Ordinal::natural(1), rat_int(1))]).is_err());
        assert!(StepFn::zero(Ordinal::zero()).is_err());
    }

    prop_compose! {
        fn small_stepfn()(
            ends in proptest::collection::btree_set((0u64..4, 0u64..4), 1..6),
            nums in proptest::collection::vec(-4i64..=4, 6),
        ) -> StepFn {
            let w2 = Ordinal::omega_pow(2);
            let mut cells: Vec<(Ordinal, Rational)> = Vec::new();
            let mut ordered: Vec<Ordinal> = ends
                .into_iter()
                .map(|(k1, k0)| Ordinal::term(1, k1).add(&Ordinal::natural(k0)))
                .filter(|o| !o.is_zero() && *o < w2)
                .collect();
            ordered.sort();
            ordered.dedup();
            ordered.push(w2.clone());
            for (i, end) in ordered.into_iter().enumerate() {
                cells.push((end, rat(nums[i % nums.len()], 2)));
            }
            StepFn::from_cells(w2, cells).unwrap()
        }
    }

    proptest! {
        // AM-space identity: for positive f, g the norm of the join is the
        // max of the norms.
        #[test]
        fn join_norm_is_max_for_positive(f in small_stepfn(), g in small_stepfn()) {
            let (f, g) = (f.abs(), g.abs());
            let lhs = f.join(&g).unwrap().sup_norm();
            prop_assert_eq!(lhs, f.sup_norm().max(g.sup_norm()));
        }

        #[test]
        fn abs_is_join_with_negation(f in small_stepfn()) {
            prop_assert_eq!(f.abs(), f.join(&f.neg()).unwrap());
        }

        #[test]
        fn lattice_identities(f in small_stepfn(), g in small_stepfn(), h in small_stepfn()) {
            prop_assert_eq!(f.meet(&g).unwrap(), g.meet(&f).unwrap());
            prop_assert_eq!(f.join(&g).unwrap(), g.join(&f).unwrap());
            prop_assert_eq!(
                f.meet(&g).unwrap().meet(&h).unwrap(),
                f.meet(&g.meet(&h).unwrap()).unwrap()
            );
            prop_assert_eq!(
                f.join(&g).unwrap().join(&h).unwrap(),
                f.join(&g.join(&h).unwrap()).unwrap()
            );
            // absorption
            prop_assert_eq!(f.meet(&f.join(&g).unwrap()).unwrap(), f.clone());
            prop_assert_eq!(f.join(&f.meet(&g).unwrap()).unwrap(), f.clone());
        }

        // eval agrees with the cell-wise definition at every breakpoint and
        // its successor.
        #[test]
        fn eval_matches_cells_at_boundaries(f in small_stepfn()) {
            let mut prev = Ordinal::zero();
            for cell in f.cells() {
                prop_assert_eq!(f.eval(&cell.end).unwrap(), cell.value.clone());
                let succ = prev.add(&Ordinal::natural(1));
                prop_assert_eq!(f.eval(&succ).unwrap(), cell.value.clone());
                prev = cell.end.clone();
            }
        }

        // shift preserves norms and lattice structure on its image
        #[test]
        fn shift_is_norm_preserving_lattice_hom(f in small_stepfn(), g in small_stepfn()) {
            let delta = Ordinal::omega_pow(2);
            prop_assert_eq!(f.shift(&delta).sup_norm(), f.sup_norm());
            prop_assert_eq!(
                f.shift(&delta).meet(&g.shift(&delta)).unwrap(),
                f.meet(&g).unwrap().shift(&delta)
            );
            prop_assert_eq!(
                f.shift(&delta).join(&g.shift(&delta)).unwrap(),
                f.join(&g).unwrap().shift(&delta)
            );
        }
    }
}
