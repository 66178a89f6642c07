//! Sums with weights `1`, `H_n` and `H_n^2` over reciprocal binomials and
//! linear shifts.

use rug::Rational;

use super::tables::{b1, b2, mu, two_pole, two_pole_square_shift};
use super::{c, h, pw, sgn, via, z, zh};
use crate::algebra::ZetaExpr;
use crate::error::{invalid, not_reducible, Result};

/// `sum 1/(n^p C(n+l,l))`.
pub fn inv_binom(p: i64, l: i64) -> Result<ZetaExpr> {
    if p < 0 || l < 0 || p + l < 2 {
        return Err(invalid(format!("inv_binom({p},{l}) needs p, l >= 0 and p + l >= 2")));
    }
    if l == 0 {
        return z(p);
    }
    let mut e = ZetaExpr::zero();
    for a in 1..=l {
        let cla = c(l, a);
        for m in 1..p {
            e.add_scaled(&z(p + 1 - m)?, &(sgn(a + m) * pw(a, 1 - m) * &cla));
        }
        e.add_constant(sgn(a + p) * h(a, 1) * pw(a, 1 - p) * cla);
    }
    Ok(e)
}

/// `sum 1/(n^p (n+j) C(n+l,l))`.
pub fn inv_shift_binom(p: i64, j: i64, l: i64) -> Result<ZetaExpr> {
    if p < 1 || j < 1 || l < 0 {
        return Err(invalid(format!(
            "inv_shift_binom({p},{j},{l}) needs p >= 1, j >= 1, l >= 0"
        )));
    }
    let mut e = ZetaExpr::zero();
    for m in 1..p {
        let mut inner = z(p + 1 - m)?;
        for a in 1..=l {
            inner.add_scaled(&mu(p - m, a)?, &(c(l, a) * sgn(a)));
        }
        e.add_scaled(&inner, &(sgn(m - 1) * pw(j, -m)));
    }
    let tail = sgn(p - 1) * pw(j, 1 - p);
    for s in 0..=l {
        e.add_scaled(&b1(s, j)?, &(sgn(s) * c(l, s) * &tail));
    }
    Ok(e)
}

/// `sum 1/(n^p (n+m)(n+j) C(n+l,l))`.
pub fn inv_two_shift_binom(p: i64, m: i64, j: i64, l: i64) -> Result<ZetaExpr> {
    if p < 1 || m < 1 || j < 1 || l < 0 {
        return Err(invalid(format!(
            "inv_two_shift_binom({p},{m},{j},{l}) needs p, m, j >= 1, l >= 0"
        )));
    }
    if m != j {
        let diff = inv_shift_binom(p, m, l)? - inv_shift_binom(p, j, l)?;
        return Ok(diff.scale(&Rational::from((1, j - m))));
    }
    if l == 0 {
        return two_pole(0, p, m, 2);
    }
    // 1/C(n+l,l) = sum_s (-1)^(s-1) C(l,s) s / (n+s)
    let mut e = ZetaExpr::zero();
    for s in 1..=l {
        e.add_scaled(&two_pole_square_shift(p, m, s)?, &(sgn(s - 1) * c(l, s) * Rational::from(s)));
    }
    Ok(e)
}

/// `sum H_n/(n^p (n+a))`, by peeling powers of `n` down to `b2(0, a)`.
pub fn h_linear(p: i64, a: i64) -> Result<ZetaExpr> {
    if p < 1 || a < 1 {
        return Err(invalid(format!("h_linear({p},{a}) needs p >= 1, a >= 1")));
    }
    let mut e = ZetaExpr::zero();
    for m in 1..p {
        e.add_scaled(&zh(p + 1 - m)?, &(sgn(m - 1) * pw(a, -m)));
    }
    e.add_scaled(&b2(0, a)?, &(sgn(p - 1) * pw(a, 1 - p)));
    Ok(e)
}

/// `sum H_n/(n^p C(n+l,l))`.
pub fn h_binom(p: i64, l: i64) -> Result<ZetaExpr> {
    if p < 0 || l < 0 || p + l < 2 {
        return Err(invalid(format!("h_binom({p},{l}) needs p, l >= 0 and p + l >= 2")));
    }
    if l == 0 {
        return zh(p);
    }
    match p {
        0 => Err(not_reducible(format!(
            "h_binom(0,{l}) splits into divergent sums H_n/(n+a)"
        ))),
        1 => {
            let mut e = ZetaExpr::zero();
            for a in 1..=l {
                e.add_scaled(&h_linear(1, a)?, &(sgn(a - 1) * c(l, a) * Rational::from(a)));
            }
            Ok(e)
        }
        _ => {
            let mut e = zh(p)?;
            for a in 1..=l {
                let mut inner = ZetaExpr::zero();
                for m in 1..p - 1 {
                    inner.add_scaled(&zh(p - m)?, &(sgn(m - 1) * pw(a, -m)));
                }
                let mut base = z(2)?.scale(&Rational::from(2));
                let ha = h(a - 1, 1);
                base.add_constant(Rational::from(ha.square_ref()) + h(a - 1, 2));
                inner.add_scaled(&base, &(sgn(p) * pw(a, 1 - p) / Rational::from(2)));
                e.add_scaled(&inner, &(c(l, a) * sgn(a)));
            }
            Ok(e)
        }
    }
}

/// `sum H_n/(n^p (n+j) C(n+l,l))`.
pub fn h_shift_binom(p: i64, j: i64, l: i64) -> Result<ZetaExpr> {
    if p < 1 || j < 1 || l < 0 {
        return Err(invalid(format!(
            "h_shift_binom({p},{j},{l}) needs p >= 1, j >= 1, l >= 0"
        )));
    }
    let mut e = ZetaExpr::zero();
    for m in 1..p {
        let mut inner = zh(p + 1 - m)?;
        for a in 1..=l {
            inner.add_scaled(&h_linear(p - m, a)?, &(c(l, a) * sgn(a)));
        }
        e.add_scaled(&inner, &(sgn(m - 1) * pw(j, -m)));
    }
    let tail = sgn(p - 1) * pw(j, 1 - p);
    for s in 0..=l {
        e.add_scaled(&b2(s, j)?, &(sgn(s) * c(l, s) * &tail));
    }
    Ok(e)
}

/// Printed quadratic-sum right-hand side; it equals `sum H_n^2/(n+1)^p`.
pub(crate) fn h2_shifted_index(p: i64) -> Result<ZetaExpr> {
    let mut e = ZetaExpr::euler_lin(2, p)?;
    e.add_scaled(&z(p + 2)?, &Rational::from((p * p + p - 3, 3)));
    e += &z(2)? * &z(p)?;
    for k in 0..=p - 2 {
        let prod = &z(p - k)? * &z(k + 2)?;
        e.add_scaled(&prod, &Rational::from((-p, 2)));
        for j in 1..k {
            let triple = &(&z(p - k)? * &z(j + 1)?) * &z(k + 1 - j)?;
            e.add_scaled(&triple, &Rational::from((1, 3)));
        }
    }
    Ok(e)
}

/// `sum H_n^2 / n^p`, `p >= 2`; keeps `zeta_{H^(2)}(p)` atomic.
pub fn h2(p: i64) -> Result<ZetaExpr> {
    if p < 2 {
        return Err(invalid(format!("h2({p}) needs p >= 2")));
    }
    // sum H_n^2/n^p - sum H_n^2/(n+1)^p = 2 zeta_H(p+1) - zeta(p+2)
    let mut e = h2_shifted_index(p)?;
    e.add_scaled(&zh(p + 1)?, &Rational::from(2));
    e -= z(p + 2)?;
    Ok(e)
}

/// `sum H_n^2 / (n (n+a))`, `a >= 1`.
pub fn h2_linear(a: i64) -> Result<ZetaExpr> {
    if a < 1 {
        return Err(invalid(format!("h2_linear({a}) needs a >= 1")));
    }
    let aq = Rational::from(a);
    let (ha, ha2, ha3) = (h(a, 1), h(a, 2), h(a, 3));
    let mut e = z(3)?.scale(&Rational::from((3, a)));
    e.add_scaled(&z(2)?, &(h(a - 1, 1) / &aq));
    let mut k = Rational::from(ha.square_ref()) * &ha + Rational::from(3) * &ha * &ha2 + Rational::from(2) * ha3;
    k /= Rational::from(3) * &aq;
    k -= (Rational::from(ha.square_ref()) + ha2) / Rational::from(aq.square_ref());
    let mut tail = Rational::new();
    for i in 1..a {
        tail += h(i, 1) * pw(i, -2);
    }
    k -= tail / &aq;
    e.add_constant(k);
    Ok(e)
}

/// Shared body of the reciprocal-binomial quadratic sum; `weight_sign`
/// selects the exponent of `a` in the zeta-sum weight (`-1`: `a^(1-m)`).
pub(crate) fn h2_binom_with(p: i64, l: i64, weight_sign: i64) -> Result<ZetaExpr> {
    if p < 1 || l < 0 || p + l < 2 {
        return Err(invalid(format!("h2_binom({p},{l}) needs p >= 1, l >= 0, p + l >= 2")));
    }
    if l == 0 {
        return h2(p);
    }
    let mut e = ZetaExpr::zero();
    for a in 1..=l {
        let cla = c(l, a);
        for m in 1..p {
            let w = sgn(a + m) * pw(a, weight_sign * (m - 1)) * &cla;
            e.add_scaled(&via(h2(p + 1 - m))?, &w);
        }
        e.add_scaled(&h2_linear(a)?, &(sgn(a + p) * pw(a, 2 - p) * cla));
    }
    Ok(e)
}

/// `sum H_n^2 / (n^p C(n+l,l))`.
pub fn h2_binom(p: i64, l: i64) -> Result<ZetaExpr> {
    h2_binom_with(p, l, -1)
}
