//! Seeded random generators shared by the integration suites.
#![allow(dead_code)] // each test target compiles its own copy

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use sprck_core::ordinal::Ordinal;
use sprck_core::rational::{rat, Rational};
use sprck_core::seqspace::FinSeq;
use sprck_core::stepfn::StepFn;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn pick(rng: &mut ChaCha20Rng, n: u64) -> u64 {
    rng.next_u64() % n
}

/// Rational in `[-1, 1]` with denominator at most `max_den`.
pub fn rand_unit_rational(rng: &mut ChaCha20Rng, max_den: u64) -> Rational {
    let den = 1 + pick(rng, max_den) as i64;
    let num = pick(rng, 2 * den as u64 + 1) as i64 - den;
    rat(num, den)
}

/// Rational with numerator in `[-max_num, max_num]` and denominator at most
/// `max_den`.
pub fn rand_rational(rng: &mut ChaCha20Rng, max_num: u64, max_den: u64) -> Rational {
    let num = pick(rng, 2 * max_num + 1) as i64 - max_num as i64;
    let den = 1 + pick(rng, max_den) as i64;
    rat(num, den)
}

/// Nonzero ordinal below `w^alpha` with coefficients at most `max_coef`.
pub fn rand_point_below(rng: &mut ChaCha20Rng, alpha: u64, max_coef: u64) -> Ordinal {
    loop {
        let mut t = Ordinal::zero();
        for e in (0..alpha).rev() {
            t = t.add(&Ordinal::term(e, pick(rng, max_coef + 1)));
        }
        if !t.is_zero() {
            return t;
        }
    }
}

/// Random step function on `[1, w^alpha]`: at most `max_cells` cells,
/// breakpoint coefficients at most `max_coef`, values with denominators at
/// most `max_den` and numerators up to `max_den` in modulus.
pub fn rand_stepfn(
    rng: &mut ChaCha20Rng,
    alpha: u64,
    max_cells: usize,
    max_coef: u64,
    max_den: u64,
) -> StepFn {
    let top = Ordinal::omega_pow(alpha);
    let mut ends: Vec<Ordinal> = (0..max_cells.saturating_sub(1))
        .map(|_| rand_point_below(rng, alpha, max_coef))
        .collect();
    ends.sort();
    ends.dedup();
    ends.push(top.clone());
    let cells = ends
        .into_iter()
        .map(|end| (end, rand_rational(rng, max_den, max_den)))
        .collect();
    StepFn::from_cells(top, cells).expect("generated cells are valid")
}

/// Random element of `C_0[1, w^2)` (vanishes at the right endpoint).
pub fn rand_vanishing_w2(
    rng: &mut ChaCha20Rng,
    max_cells: usize,
    max_coef: u64,
    max_den: u64,
) -> StepFn {
    let f = rand_stepfn(rng, 2, max_cells, max_coef, max_den);
    let mut cells: Vec<(Ordinal, Rational)> =
        f.cells().iter().map(|c| (c.end.clone(), c.value.clone())).collect();
    cells.last_mut().unwrap().1 = rat(0, 1);
    StepFn::from_cells(f.domain_end().clone(), cells).unwrap()
}

/// Random nonzero function, normalized to sup norm 1.
pub fn rand_normalized(
    rng: &mut ChaCha20Rng,
    alpha: u64,
    max_cells: usize,
    max_coef: u64,
    max_den: u64,
) -> StepFn {
    loop {
        let f = rand_stepfn(rng, alpha, max_cells, max_coef, max_den);
        if let Ok(n) = f.normalized() {
            return n;
        }
    }
}

pub fn rand_normalized_vanishing_w2(
    rng: &mut ChaCha20Rng,
    max_cells: usize,
    max_coef: u64,
    max_den: u64,
) -> StepFn {
    loop {
        let f = rand_vanishing_w2(rng, max_cells, max_coef, max_den);
        if let Ok(n) = f.normalized() {
            return n;
        }
    }
}

/// Finitely supported sequence over the naturals `1..=max_index` with at most
/// `max_support` entries, values in `[-1, 1]`.
pub fn rand_finseq(
    rng: &mut ChaCha20Rng,
    max_support: usize,
    max_index: u64,
    max_den: u64,
) -> FinSeq {
    let mut s = FinSeq::new();
    let count = pick(rng, max_support as u64 + 1);
    for _ in 0..count {
        let idx = 1 + pick(rng, max_index);
        s.set(Ordinal::natural(idx), rand_unit_rational(rng, max_den));
    }
    s
}
