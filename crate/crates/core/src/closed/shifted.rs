//! Shifted Euler sums and the Hurwitz zeta series.

use rug::Rational;

use super::hyper::hyper_binom;
use super::tables::mu;
use super::{c, h, pw, sgn, via, z, zh};
use crate::algebra::ZetaExpr;
use crate::error::{invalid, Result};
use crate::exact;

/// `sum_{k>=1} zeta(p,k)/(r+k)`, `p >= 2`, `r >= 1`.
pub fn hurwitz_series(p: i64, r: i64) -> Result<ZetaExpr> {
    if p < 2 || r < 1 {
        return Err(invalid(format!("hurwitz_series({p},{r}) needs p >= 2, r >= 1")));
    }
    let mut e = zh(p)?;
    for j in 2..p {
        e.add_scaled(&z(p + 1 - j)?, &(sgn(j - 1) * h(r, j as u32)));
    }
    let mut tail = Rational::new();
    for j in 1..=r {
        tail += h(j, 1) * pw(j, -p);
    }
    e.add_constant(sgn(p - 1) * tail);
    Ok(e)
}

/// `sum_{n>r} H_n/(n-r)^p`, `p >= 2`, `r >= 1`.
pub fn xu_li_shifted(p: i64, r: i64) -> Result<ZetaExpr> {
    if p < 2 || r < 1 {
        return Err(invalid(format!("xu_li_shifted({p},{r}) needs p >= 2, r >= 1")));
    }
    let mut e = zh(p)?;
    for m in 1..p {
        e.add_scaled(&z(p + 1 - m)?, &(-sgn(m) * h(r, m as u32)));
    }
    let mut tail = Rational::new();
    for m in 1..=r {
        tail += h(m, 1) * pw(m, -p);
    }
    e.add_constant(-sgn(p) * tail);
    Ok(e)
}

/// `sum_k zeta(p,k)/k`, written out independently of [`crate::algebra::euler_reduce`].
pub fn hzs(p: i64) -> Result<ZetaExpr> {
    if p < 2 {
        return Err(invalid(format!("hzs({p}) needs p >= 2")));
    }
    let mut e = z(p + 1)?.scale(&Rational::from((p + 2, 2)));
    let half = Rational::from((-1, 2));
    for n in 1..=p - 2 {
        e.add_scaled(&(&z(p - n)? * &z(n + 1)?), &half);
    }
    Ok(e)
}

/// `sum_{n>r} H_n/((n-r)^p C(n+q,q))`, `r >= 0`, `q >= 1`, `p + q > 1`.
pub fn shifted_h_binom(p: i64, r: i64, q: i64) -> Result<ZetaExpr> {
    shifted_h_binom_with(p, r, q, 1)
}

/// `harmonic_sign = 1` is the verified form; `-1` flips the `H_r` term.
pub(crate) fn shifted_h_binom_with(p: i64, r: i64, q: i64, harmonic_sign: i64) -> Result<ZetaExpr> {
    if p < 0 || r < 0 || q < 1 || p + q <= 1 {
        return Err(invalid(format!(
            "shifted_h_binom({p},{r},{q}) needs p >= 0, r >= 0, q >= 1, p + q > 1"
        )));
    }
    let mut e = via(hyper_binom(r + 1, p, q + r))?.scale(&(Rational::from(1) / c(r + q, q)));
    if r > 0 {
        let hr = h(r, 1) * Rational::from(harmonic_sign);
        for a in 1..=q {
            let w = sgn(a - 1) * c(q, a) * Rational::from(a) * &hr;
            e.add_scaled(&via(mu(p, r + a))?, &w);
        }
    }
    Ok(e)
}

/// `sum_{n>q+l} C(n,q) H_n/(n-l-q)^p`, `q >= 1`, `l >= 0`, `p > q + 1`.
pub fn shifted_h_top(p: i64, q: i64, l: i64) -> Result<ZetaExpr> {
    if q < 1 || l < 0 || p <= q + 1 {
        return Err(invalid(format!(
            "shifted_h_top({p},{q},{l}) needs q >= 1, l >= 0, p > q + 1"
        )));
    }
    let mut e = via(hyper_binom(q + l + 1, p, l))?.scale(&c(q + l, l));
    let scale = h(q + l, 1) / Rational::from(exact::factorial(q as u32));
    for k in 0..=q {
        let w = Rational::from(exact::r_stirling1(q as u32, k as u32, (l + 1) as u32)) * &scale;
        e.add_scaled(&z(p - k)?, &w);
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
    fn examples() {
        for p in 2..8 {
            assert_eq!(hzs(p).unwrap(), crate::algebra::euler_reduce(p).unwrap());
        }
        assert_eq!(
            xu_li_shifted(2, 1).unwrap(),
            zz(3).scale(&q(2, 1)) + zz(2) - ZetaExpr::constant(1)
        );
        assert_eq!(hurwitz_series(2, 1).unwrap(), zz(3).scale(&q(2, 1)) - ZetaExpr::constant(1));
        assert_eq!(shifted_h_binom(2, 0, 1).unwrap(), zz(3).scale(&q(2, 1)) - zz(2));
    }
}
