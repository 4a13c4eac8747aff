//! Exact lattice computations on ordinal intervals `[1, w^a]`.
//!
//! Everything is computed in exact arithmetic: scalars are arbitrary-precision
//! rationals, points are ordinals below `w^w` in Cantor normal form, and
//! functions are canonical step functions (finite rational combinations of
//! indicators of clopen intervals). On top of that sit the embedding operators
//! between `C[1,w^a]` spaces and the search machinery that measures how far a
//! pair of functions is from being disjoint in modulus.
//!
//! The crate is `no_std` (with `alloc`); IO, JSON encodings and the command
//! line front end live in the companion `sprck-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod embed;
pub mod ordinal;
pub mod rational;
pub mod seqspace;
pub mod spr;
pub mod stepfn;

pub use embed::LinOperator;
pub use ordinal::Ordinal;
pub use rational::Rational;
pub use seqspace::FinSeq;
pub use spr::SprCertificate;
pub use stepfn::{FnPair, StepFn};
