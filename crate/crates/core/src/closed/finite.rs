//! The two finite sums of the negative-order formula, by direct exact
//! summation and by closed form. Direct summation is the reference.

use rug::Rational;

use super::{c, h, pw, sgn};

/// How [`super::neg_hyper_binom_with`] evaluates its finite sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiniteSumRoute {
    Direct,
    Closed,
}

/// `sum_{n=1}^{r} 1/(n^(p+1) C(n+l,l))`.
pub fn finite_sum_1_direct(r: i64, p: i64, l: i64) -> Rational {
    let mut acc = Rational::new();
    for n in 1..=r {
        acc += pw(n, -(p + 1)) / c(n + l, l);
    }
    acc
}

pub fn finite_sum_1_closed(r: i64, p: i64, l: i64) -> Rational {
    let mut acc = h(r, (p + 1) as u32);
    for a in 1..=l {
        let mut inner = Rational::new();
        for j in 1..=p {
            inner += sgn(p + j) * pw(a, -(p + 1 - j)) * h(r, j as u32);
        }
        inner += sgn(p) * pw(a, -p) * (h(a + r, 1) - h(a, 1));
        acc += sgn(a) * c(l, a) * inner;
    }
    acc
}

/// `sum_{n=k+1}^{r} 1/((n-k) n^p C(n+l,l))`.
pub fn finite_sum_2_direct(r: i64, k: i64, p: i64, l: i64) -> Rational {
    let mut acc = Rational::new();
    for n in k + 1..=r {
        acc += pw(n, -p) / (c(n + l, l) * Rational::from(n - k));
    }
    acc
}

/// Closed form; for `l = 0` the partial-fraction sum over `a` is empty, so
/// the plain `1/((n-k) n^p)` decomposition is used instead.
pub fn finite_sum_2_closed(r: i64, k: i64, p: i64, l: i64) -> Rational {
    if l == 0 {
        return finite_sum_2_unweighted(r, k, p);
    }
    finite_sum_2_partial_fractions(r, k, p, l)
}

fn finite_sum_2_unweighted(r: i64, k: i64, p: i64) -> Rational {
    let mut acc = h(r - k, 1) * pw(k, -p);
    for j in 1..=p {
        acc -= (h(r, j as u32) - h(k, j as u32)) * pw(k, -(p + 1 - j));
    }
    acc
}

pub(crate) fn finite_sum_2_partial_fractions(r: i64, k: i64, p: i64, l: i64) -> Rational {
    let mut acc = Rational::new();
    for a in 1..=l {
        let mut inner = finite_sum_2_unweighted(r, k, p);
        for j in 1..=p {
            inner -= sgn(p + j) * (h(r, j as u32) - h(k, j as u32)) * pw(a, -(p + 1 - j));
        }
        inner -= sgn(p) * pw(a, -p) * (h(r + a, 1) - h(a + k, 1));
        acc += c(l, a) * sgn(a - 1) * Rational::from((a, a + k)) * inner;
    }
    acc
}
