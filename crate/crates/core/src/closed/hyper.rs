//! Hyperharmonic sums of positive, zero and negative order.
//!
//! Positive orders use `h_n^(r) = C(n+R,R) (H_{n+R} - H_R)` with `R = r-1`
//! and the polynomial expansion `C(n+R,R) = sum_j w_j n^j`, which turns each
//! series into shifted harmonic sums with lower powers of `n`.

use rug::Rational;

use super::basic::{
    h2_binom, h_binom, h_shift_binom, inv_binom, inv_shift_binom, inv_two_shift_binom,
};
use super::finite::{finite_sum_1_closed, finite_sum_1_direct, finite_sum_2_closed, finite_sum_2_direct};
use super::tables::mu;
use super::{c, h, konst, pw, sgn, stirling_weights, via, z, zh, FiniteSumRoute};
use crate::algebra::ZetaExpr;
use crate::error::{invalid, Result};

/// `zeta_{h^(r+1)}(p) = sum h_n^(r+1)/n^p`, `r >= 0`, `p > r + 1`.
pub fn hes(r: i64, p: i64) -> Result<ZetaExpr> {
    if r < 0 || p <= r + 1 {
        return Err(invalid(format!("hes({r},{p}) needs r >= 0 and p > r + 1")));
    }
    let hr = h(r, 1);
    let mut e = ZetaExpr::zero();
    for (k, w) in stirling_weights(r).iter().enumerate() {
        let k = k as i64;
        let mut inner = zh(p - k)? - z(p - k)?.scale(&hr);
        for j in 1..=r {
            inner += mu(p - k, j)?;
        }
        e.add_scaled(&inner, w);
    }
    Ok(e)
}

/// `zeta_{h^(-r)}(p) = sum h_n^(-r)/n^p`, `r, p >= 1`.
pub fn neg_euler(r: i64, p: i64) -> Result<ZetaExpr> {
    if r < 1 || p < 1 {
        return Err(invalid(format!("neg_euler({r},{p}) needs r >= 1, p >= 1")));
    }
    let mut e = z(p + 1)?;
    for k in 1..=r {
        let mut inner = konst(h(k, 1) * pw(k, -p));
        for j in 2..=p {
            let wj = pw(k, -(p + 1 - j));
            inner.add_constant(h(k, j as u32) * &wj);
            inner.add_scaled(&z(j)?, &(-wj));
        }
        e.add_scaled(&inner, &(sgn(k) * c(r, k)));
    }
    Ok(e)
}

fn check_positive_order(name: &str, r: i64, p: i64, l: i64, extra: i64) -> Result<()> {
    if r < 1 || p < 0 || l < 0 || p + l + extra <= r {
        return Err(invalid(format!(
            "{name}: order {r}, p = {p}, l = {l} does not give a convergent series"
        )));
    }
    Ok(())
}

/// `sum h_n^(r)/(n^p C(n+l,l))`, `r >= 1`, `p + l > r`.
pub fn hyper_binom(r: i64, p: i64, l: i64) -> Result<ZetaExpr> {
    check_positive_order("hyper_binom", r, p, l, 0)?;
    let big_r = r - 1;
    let hr = h(big_r, 1);
    let mut e = ZetaExpr::zero();
    for (j, w) in stirling_weights(big_r).iter().enumerate() {
        let pj = p - j as i64;
        let mut inner = via(h_binom(pj, l))?;
        for v in 1..=big_r {
            inner += via(inv_shift_binom(pj, v, l))?;
        }
        if big_r > 0 {
            inner.add_scaled(&via(inv_binom(pj, l))?, &Rational::from(-&hr));
        }
        e.add_scaled(&inner, w);
    }
    Ok(e)
}

/// `sum h_n^(r) H_n/(n^p C(n+l,l))`, `r >= 1`, `p + l > r`.
pub fn hyper_h_binom(r: i64, p: i64, l: i64) -> Result<ZetaExpr> {
    check_positive_order("hyper_h_binom", r, p, l, 0)?;
    let big_r = r - 1;
    let hr = h(big_r, 1);
    let mut e = ZetaExpr::zero();
    for (j, w) in stirling_weights(big_r).iter().enumerate() {
        let pj = p - j as i64;
        let mut inner = via(h2_binom(pj, l))?;
        for v in 1..=big_r {
            inner += via(h_shift_binom(pj, v, l))?;
        }
        if big_r > 0 {
            inner.add_scaled(&via(h_binom(pj, l))?, &Rational::from(-&hr));
        }
        e.add_scaled(&inner, w);
    }
    Ok(e)
}

/// `sum h_n^(r)/(n^p (n+m) C(n+l,l))`, `r, m >= 1`, `p + l >= r`.
pub fn hyper_linear_binom(r: i64, p: i64, m: i64, l: i64) -> Result<ZetaExpr> {
    check_positive_order("hyper_linear_binom", r, p, l, 1)?;
    if m < 1 {
        return Err(invalid(format!("hyper_linear_binom needs m >= 1, got {m}")));
    }
    let big_r = r - 1;
    let hr = h(big_r, 1);
    let mut e = ZetaExpr::zero();
    for (k, w) in stirling_weights(big_r).iter().enumerate() {
        let pk = p - k as i64;
        let mut inner = via(h_shift_binom(pk, m, l))?;
        for j in 1..=big_r {
            inner += via(inv_two_shift_binom(pk, m, j, l))?;
        }
        if big_r > 0 {
            inner.add_scaled(&via(inv_shift_binom(pk, m, l))?, &Rational::from(-&hr));
        }
        e.add_scaled(&inner, w);
    }
    Ok(e)
}

/// `sum h_n^(r) h_n^(q)/(n^p C(n+l,l))`, `r, q >= 1`, `p + l >= r + q`.
///
/// Symmetric in `(r, q)`; the larger order is expanded.
pub fn hyper_pair_binom(r: i64, q: i64, p: i64, l: i64) -> Result<ZetaExpr> {
    if r < 1 || q < 1 || p < 0 || l < 0 || p + l < r + q {
        return Err(invalid(format!(
            "hyper_pair_binom({r},{q},{p},{l}) needs r, q >= 1, p, l >= 0, p + l >= r + q"
        )));
    }
    let (r, q) = if r >= q { (r, q) } else { (q, r) };
    let big_r = r - 1;
    let hr = h(big_r, 1);
    let mut e = ZetaExpr::zero();
    for (j, w) in stirling_weights(big_r).iter().enumerate() {
        let pj = p - j as i64;
        let mut inner = via(hyper_h_binom(q, pj, l))?;
        for v in 1..=big_r {
            inner += via(hyper_linear_binom(q, pj, v, l))?;
        }
        if big_r > 0 {
            inner.add_scaled(&via(hyper_binom(q, pj, l))?, &Rational::from(-&hr));
        }
        e.add_scaled(&inner, w);
    }
    Ok(e)
}

/// `sum h_n^(-r)/(n^p C(n+l,l))`, `r, p >= 1`, `l >= 0`.
pub fn neg_hyper_binom(r: i64, p: i64, l: i64) -> Result<ZetaExpr> {
    neg_hyper_binom_with(r, p, l, FiniteSumRoute::Direct)
}

pub fn neg_hyper_binom_with(r: i64, p: i64, l: i64, route: FiniteSumRoute) -> Result<ZetaExpr> {
    if r < 1 || p < 1 || l < 0 {
        return Err(invalid(format!(
            "neg_hyper_binom({r},{p},{l}) needs r >= 1, p >= 1, l >= 0"
        )));
    }
    let (fs1, fs2): (fn(i64, i64, i64) -> Rational, fn(i64, i64, i64, i64) -> Rational) =
        match route {
            FiniteSumRoute::Direct => (finite_sum_1_direct, finite_sum_2_direct),
            FiniteSumRoute::Closed => (finite_sum_1_closed, finite_sum_2_closed),
        };
    let mut e = z(p + 1)?;
    e.add_constant(fs1(r, p, l) - h(r, (p + 1) as u32));
    for k in 1..r {
        e.add_constant(c(r, k) * sgn(k) * fs2(r, k, p, l));
    }
    let outer = sgn(r) / c(r + l, l);
    for a in 0..=r + l {
        if a == r {
            continue;
        }
        let d = r - a;
        let mut inner = konst((h(r, 1) - h(a, 1)) * pw(d, -p));
        for j in 2..=p {
            let wj = pw(d, -(p - j + 1));
            inner.add_constant(h(r, j as u32) * &wj);
            inner.add_scaled(&z(j)?, &(-wj));
        }
        e.add_scaled(&inner, &(c(r + l, a) * sgn(a) * &outer));
    }
    Ok(e)
}

/// `sum h_n^(r)/((n+m)^p C(n+m+l,l))` for any integer order `r`, via the
/// binomial transform `h_{n-m}^(r) = sum_k C(m,k) (-1)^k h_n^(r-k)`.
pub fn hyper_shifted(r: i64, m: i64, p: i64, l: i64) -> Result<ZetaExpr> {
    if m < 0 || p < 0 || l < 0 || p + l <= r {
        return Err(invalid(format!(
            "hyper_shifted({r},{m},{p},{l}) needs m, p, l >= 0 and p + l > r"
        )));
    }
    let mut e = ZetaExpr::zero();
    for k in 0..=m {
        let s = r - k;
        let t = match s {
            s if s >= 1 => via(hyper_binom(s, p, l))?,
            0 => via(inv_binom(p + 1, l))?,
            s => via(neg_hyper_binom(-s, p, l))?,
        };
        e.add_scaled(&t, &(c(m, k) * sgn(k)));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn zz(k: i64) -> ZetaExpr {
        z(k).unwrap()
    }

    #[test]
    fn extended_euler_examples() {
        assert_eq!(hes(0, 2).unwrap(), zz(3).scale(&q(2, 1)));
        let want = zz(4).scale(&q(5, 2)) - (&zz(2) * &zz(2)).scale(&q(1, 2)) + zz(3).scale(&q(2, 1)) - zz(2);
        assert_eq!(hes(1, 3).unwrap(), want);
        assert!(hes(1, 2).is_err());
    }

    #[test]
    fn negative_order_examples() {
        assert_eq!(neg_euler(1, 2).unwrap(), zz(3) + zz(2) - konst(q(2, 1)));
        assert_eq!(neg_euler(1, 1).unwrap(), zz(2) - konst(q(1, 1)));
        assert_eq!(neg_hyper_binom(1, 2, 0).unwrap(), neg_euler(1, 2).unwrap());
    }

    #[test]
    fn hyper_examples() {
        assert_eq!(hyper_binom(1, 2, 0).unwrap(), zz(3).scale(&q(2, 1)));
        assert_eq!(hyper_shifted(1, 0, 2, 0).unwrap(), zz(3).scale(&q(2, 1)));
        assert_eq!(hyper_shifted(1, 1, 2, 0).unwrap(), zz(3));
        assert_eq!(hyper_h_binom(1, 1, 1).unwrap(), zz(3).scale(&q(3, 1)));
        assert_eq!(hyper_linear_binom(1, 1, 1, 0).unwrap(), zz(2));
        assert_eq!(hyper_pair_binom(1, 1, 1, 1).unwrap(), zz(3).scale(&q(3, 1)));
        assert_eq!(hyper_pair_binom(1, 1, 2, 0).unwrap(), super::super::h2(2).unwrap());
    }

    #[test]
    fn golden_worked_example() {
        // -(3/2)z5 - (1/2)z3^2 + (5/4)z3 + (1/2)z2 z3 + (7/4)z6 - (11/16)z4 - (27/16)z2 + 15/8
        let z2 = zz(2);
        let z3 = zz(3);
        let want = zz(5).scale(&q(-3, 2)) - (&z3 * &z3).scale(&q(1, 2))
            + z3.scale(&q(5, 4))
            + (&z2 * &z3).scale(&q(1, 2))
            + zz(6).scale(&q(945, 540))
            - zz(4).scale(&q(990, 1440))
            - z2.scale(&q(54, 32))
            + konst(q(15, 8));
        // even zeta products may be grouped differently; compare in pi form
        let got = hyper_binom(2, 5, 2).unwrap();
        assert_eq!(
            crate::algebra::DisplayExpr::from_expr(&got, true),
            crate::algebra::DisplayExpr::from_expr(&want, true)
        );
    }
}
