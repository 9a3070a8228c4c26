//! Exact verification of the q-analogue of Farhi's lcm identity
//!
//! ```text
//! lcm([n,0]_q, [n,1]_q, ..., [n,n]_q) = lcm([1]_q, ..., [n+1]_q) / [n+1]_q
//! ```
//!
//! together with the lemmas behind it: the cyclotomic factorization of
//! q-binomials, the carry criterion for which cyclotomic factors occur, the
//! value of `Phi_d(1)`, and the base-p carry counts that connect the identity
//! back to integers at `q = 1`. Every closed form is paired with a brute-force
//! or generic-algebra route so the two can be compared.

pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod numthy;
pub mod poly;
pub mod qcalc;

pub use cyclotomic::CycFactorization;
pub use error::{Error, Result};
pub use poly::IntPoly;
pub use qcalc::{Depth, QBinomialSpec, VerificationReport};
