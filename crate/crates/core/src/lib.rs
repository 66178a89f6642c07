//! Exact closed forms for Euler-type sums of harmonic and hyperharmonic
//! numbers with reciprocal binomial coefficients and index shifts, together
//! with an independent high-precision summation oracle that checks them.
//!
//! * [`exact`]: rational combinatorics (binomials, harmonic, hyperharmonic
//!   and r-Stirling numbers).
//! * [`algebra`]: canonical rational-linear combinations of zeta-value and
//!   linear-Euler-sum monomials.
//! * [`closed`]: the closed-form evaluators, one per [`SumSpec`] family.
//! * [`oracle`]: brute-force summation with tail bounds, atom evaluation and
//!   the verification report that ties the two sides together.
//! * [`audit`]: numerical audit of transcribed literature formulas.

pub mod algebra;
pub mod audit;
pub mod closed;
mod error;
pub mod exact;
pub mod oracle;
mod sumspec;

pub use algebra::{Atom, Monomial, ZetaExpr};
pub use error::{Error, Result};
pub use sumspec::{Family, SumSpec};
