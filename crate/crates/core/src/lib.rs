//! Shuffle algebra and regularization for multiple zeta values, multiple
//! polylogarithms, the Drinfeld associator of the formal KZ equation, and the
//! connection formulas that tie them together.
//!
//! The crate is organised bottom-up:
//!
//! * [`words`]: exact arithmetic in `Q<x, y>` (shuffle, concatenation,
//!   antipode, duality, letter substitutions).
//! * [`regularize`]: the shuffle regularization `reg` and the decomposition of
//!   a word into shuffles of convergent words with powers of `x` and `y`.
//! * [`polylog`]: multiple polylogarithms `Li(w; z)` for every word.
//! * [`mzv`]: multiple zeta values and weight/depth sums.
//! * [`ncseries`]: truncated noncommutative power series in `X, Y`.
//! * [`associator`]: `G0`, `G1`, the associator `phi_KZ` and the connection
//!   identities (duality, Euler, Landen, hexagon).
//! * [`mellin_sum`]: Mellin transforms of the Euler and Landen formulas and the
//!   sum formula.
//! * [`hurwitz`]: Hurwitz zeta, Kummer functions and the Hurwitz relation.

// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod associator;
mod error;
pub mod hurwitz;
pub mod mellin_sum;
pub mod mzv;
pub mod ncseries;
pub mod polylog;
pub mod quad;
pub mod regularize;
pub mod special;
pub mod words;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use polylog::{ApproxValue, EvalConfig};
pub use words::{Letter, Mobius, MultiIndex, NCPoly, SubstRule, Word};
