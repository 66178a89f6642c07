//! Independent numeric ground truth: brute-force summation of every family
//! with tail bounds, numeric zeta values and linear Euler sums, and the
//! verification report comparing a closed form with the direct sum.

mod sum;
mod terms;
mod verify;
mod zeta;

use rug::Float;

pub use sum::{direct_sum, direct_sum_with, sum_series, Decay, Mode, OracleResult, SumOptions, MIN_TERMS};
pub use terms::{term, ExactTerm};
pub use verify::{verify, Verdict, VerificationReport, VerifyConfig};
pub use zeta::{euler_lin, hurwitz, zeta, AtomOracle};

use crate::algebra::{bits_for_digits, Atom, AtomEval};

/// Numeric value of an atom at `digits` decimal digits.
pub fn eval_atom(atom: Atom, digits: u32) -> Float {
    AtomOracle::global()
        .eval_atom(atom, bits_for_digits(digits))
        .expect("atoms always evaluate")
}
