//! # biperiodic
//!
//! Exact evaluation of generalized bi-periodic Horadam sequences
//! `w_n = chi(n) w_{n-1} + c w_{n-2}` (with `chi` alternating between `a`
//! and `b`), their Fibonacci-type (`u`) and Lucas-type (`v`) specializations,
//! and a harness that checks the known identities for these sequences by
//! exact evaluation at sampled rational parameters.
//!
//! - [`exact`]: rationals and 2x2 matrices with exact arithmetic.
//! - [`sequence`]: parameters and the naive recurrence (the reference).
//! - [`matforms`]: the `U`, `K`, `H`, `T`, `A` matrices and closed-form powers.
//! - [`fastpath`]: O(log n) evaluation by matrix powers and fast doubling.
//! - [`identities`]: two-sided evaluation of each identity and a sampler.
//! - [`catalog`]: named classical special cases.
//! - [`cli`]: the command-line front end used by the `biperiodic` binary.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod exact;
pub mod fastpath;
pub mod identities;
pub mod matforms;
pub mod sequence;

pub use error::{Error, Result};
pub use exact::{Mat2, Rational};
pub use fastpath::{term_fast, Method};
pub use sequence::{term_naive, Params, SequenceKind};
