//! Literature formulas exactly as transcribed, including the ones that fail
//! numerical audit. Only the audit uses these; the evaluators in the parent
//! module ship the verified variants.

use rug::Rational;

use super::{b2, h, pw, sgn, z};
use crate::algebra::ZetaExpr;
use crate::error::{invalid, Result};

/// Quadratic Euler sum `sum H_n^2/n^p` as transcribed (it actually equals
/// `sum H_n^2/(n+1)^p`).
pub fn quadratic_euler_sum(p: i64) -> Result<ZetaExpr> {
    if p < 2 {
        return Err(invalid(format!("needs p >= 2, got {p}")));
    }
    super::basic::h2_shifted_index(p)
}

/// `sum H_n^2/(n^p C(n+l,l))` as transcribed, with weight `a^(m-1)`.
pub fn quadratic_binomial_sum(p: i64, l: i64) -> Result<ZetaExpr> {
    super::basic::h2_binom_with(p, l, 1)
}

/// `sum H_n^2/(n(n+a))` as transcribed.
pub fn quadratic_linear_sum(a: i64) -> Result<ZetaExpr> {
    super::basic::h2_linear(a)
}

/// `sum H_n/(n+j)^2` as transcribed.
pub fn harmonic_square_shift(j: i64) -> Result<ZetaExpr> {
    if j < 1 {
        return Err(invalid(format!("needs j >= 1, got {j}")));
    }
    let hj = h(j - 1, 1);
    let mut e = z(3)? + z(2)?.scale(&hj);
    e.add_constant(-(hj * h(j - 1, 2)) - h(j - 1, 3));
    Ok(e)
}

/// `sum H_n/((n+s)(n+j))`, `j > s >= 1`, via `sum_{k<j} H_k/k` as transcribed.
pub fn harmonic_two_shift(s: i64, j: i64) -> Result<ZetaExpr> {
    if s < 1 || j <= s {
        return Err(invalid(format!("needs j > s >= 1, got s = {s}, j = {j}")));
    }
    let partial = |n: i64| {
        let mut acc = Rational::new();
        for k in 1..n {
            acc += h(k, 1) / Rational::from(k);
        }
        acc
    };
    Ok(ZetaExpr::constant((partial(j) - partial(s)) / Rational::from(j - s)))
}

/// `sum_{k<=n} H_k/k` by the transcribed closed form `(H_n^2 + H_n^(2))/2`.
pub fn harmonic_over_index_partial(n: i64) -> Rational {
    let hn = h(n, 1);
    (Rational::from(hn.square_ref()) + h(n, 2)) / Rational::from(2)
}

/// Binomial extension of the shifted Euler sum as transcribed (sign of the
/// `H_r` term flipped relative to the verified form).
pub fn shifted_binomial_extension(p: i64, r: i64, q: i64) -> Result<ZetaExpr> {
    super::shifted::shifted_h_binom_with(p, r, q, -1)
}

/// Second finite sum of the negative-order formula as transcribed; the
/// partial-fraction sum is empty for `l = 0`.
pub fn negative_order_finite_sum(r: i64, k: i64, p: i64, l: i64) -> Rational {
    super::finite::finite_sum_2_partial_fractions(r, k, p, l)
}

/// `sum H_n/(n^p (n+a))` through the linear recursion from the `s = 0`
/// base case.
pub fn harmonic_linear_recursion(p: i64, a: i64) -> Result<ZetaExpr> {
    if p < 1 || a < 1 {
        return Err(invalid(format!("needs p, a >= 1, got p = {p}, a = {a}")));
    }
    let mut e = ZetaExpr::zero();
    for m in 1..p {
        e.add_scaled(&super::zh(p + 1 - m)?, &(sgn(m - 1) * pw(a, -m)));
    }
    e.add_scaled(&b2(0, a)?, &(sgn(p - 1) * pw(a, 1 - p)));
    Ok(e)
}
