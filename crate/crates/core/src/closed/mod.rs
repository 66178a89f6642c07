//! Closed-form evaluators: every supported series as a [`ZetaExpr`].
//!
//! Routes are compositions of a few helper tables (`mu`, `b1`, `b2`, `b3`)
//! and partial-fraction reductions. Each public function checks its own
//! convergence precondition and reports [`Error::InvalidParameter`]; when a
//! composite route would need a divergent or unsupported intermediate it
//! reports [`Error::NotReducibleByThisRoute`] instead.

mod basic;
mod finite;
mod hyper;
pub mod printed;
mod shifted;
mod tables;

use rug::Rational;

use crate::algebra::ZetaExpr;
use crate::error::{Error, Result};
use crate::exact;
use crate::sumspec::{Family, SumSpec};

pub use basic::{
    h2, h2_binom, h2_linear, h_binom, h_linear, h_shift_binom, inv_binom, inv_shift_binom,
    inv_two_shift_binom,
};
pub use finite::{
    finite_sum_1_closed, finite_sum_1_direct, finite_sum_2_closed, finite_sum_2_direct,
    FiniteSumRoute,
};
pub use hyper::{
    hes, hyper_binom, hyper_h_binom, hyper_linear_binom, hyper_pair_binom, hyper_shifted,
    neg_euler, neg_hyper_binom, neg_hyper_binom_with,
};
pub use shifted::{hurwitz_series, hzs, shifted_h_binom, shifted_h_top, xu_li_shifted};
pub use tables::{b1, b2, b3, mu, two_pole, two_pole_square_shift};

pub use crate::algebra::euler_reduce;

/// Closed form of the series described by `spec`.
pub fn closed_form(spec: &SumSpec) -> Result<ZetaExpr> {
    use Family::*;
    let v = spec.params();
    match spec.family() {
        InvBinom => inv_binom(v[0], v[1]),
        InvShiftBinom => inv_shift_binom(v[0], v[1], v[2]),
        InvTwoShiftBinom => inv_two_shift_binom(v[0], v[1], v[2], v[3]),
        HBinom => h_binom(v[0], v[1]),
        HShiftBinom => h_shift_binom(v[0], v[1], v[2]),
        HLinear => h_linear(v[0], v[1]),
        H2 => h2(v[0]),
        H2Linear => h2_linear(v[0]),
        H2Binom => h2_binom(v[0], v[1]),
        Mu => mu(v[0], v[1]),
        EulerLinR1 => euler_reduce(v[0]),
        Hes => hes(v[0], v[1]),
        NegEuler => neg_euler(v[0], v[1]),
        HyperBinom => hyper_binom(v[0], v[1], v[2]),
        NegHyperBinom => neg_hyper_binom(v[0], v[1], v[2]),
        HyperShifted => hyper_shifted(v[0], v[1], v[2], v[3]),
        HyperHBinom => hyper_h_binom(v[0], v[1], v[2]),
        HyperLinearBinom => hyper_linear_binom(v[0], v[1], v[2], v[3]),
        HyperPairBinom => hyper_pair_binom(v[0], v[1], v[2], v[3]),
        HurwitzSeries => hurwitz_series(v[0], v[1]),
        ShiftedHBinom => shifted_h_binom(v[0], v[1], v[2]),
        ShiftedHTop => shifted_h_top(v[0], v[1], v[2]),
        XuLiShifted => xu_li_shifted(v[0], v[1]),
    }
}

// ---- small helpers shared by the route modules ----

fn z(k: i64) -> Result<ZetaExpr> {
    ZetaExpr::zeta(k)
}

/// `zeta_H(p)` reduced through Euler's identity.
fn zh(p: i64) -> Result<ZetaExpr> {
    ZetaExpr::euler_lin(1, p)
}

/// `H_n^(r)` for `n >= 0`.
fn h(n: i64, r: u32) -> Rational {
    assert!(n >= 0, "harmonic index must be non-negative");
    exact::harmonic(n as u64, r)
}

/// `(-1)^e`.
fn sgn(e: i64) -> Rational {
    Rational::from(exact::sign(e))
}

/// `a^e` for any integer exponent, `a != 0`.
fn pw(a: i64, e: i64) -> Rational {
    if e >= 0 {
        Rational::from(rug::Integer::from(a).pow(e as u32))
    } else {
        let mut q = exact::inv_pow(a.abs(), (-e) as u32);
        if a < 0 && e % 2 != 0 {
            q = -q;
        }
        q
    }
}

fn c(n: i64, k: i64) -> Rational {
    exact::binomial(n, k)
}

fn konst(q: Rational) -> ZetaExpr {
    ZetaExpr::constant(q)
}

/// Sub-route call: a parameter rejected by a helper means this composite
/// route cannot evaluate the series.
fn via<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::InvalidParameter(msg) => Error::NotReducibleByThisRoute(msg),
        other => other,
    })
}

/// Weights `w_j = [R+1, j+1] / R!`, `j = 0..=R`, of
/// `C(n+R, R) = sum_j w_j n^j`.
fn stirling_weights(big_r: i64) -> Vec<Rational> {
    let big_r = u32::try_from(big_r).expect("order must be non-negative");
    let fact = exact::factorial(big_r);
    (0..=big_r)
        .map(|j| Rational::from((exact::r_stirling1(big_r, j, 1), fact.clone())))
        .collect()
}

use rug::ops::Pow;
