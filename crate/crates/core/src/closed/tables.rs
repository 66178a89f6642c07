//! Helper tables: `mu`, the two-term partial-fraction sums and the
//! degenerate-shift tables `b1`, `b2`, `b3`.

use rug::Rational;

use super::{c, h, konst, pw, sgn, z};
use crate::algebra::ZetaExpr;
use crate::error::{invalid, Result};

/// `mu(p, j) = sum 1/(n^p (n+j))`.
pub fn mu(p: i64, j: i64) -> Result<ZetaExpr> {
    if p < 1 || j < 1 {
        return Err(invalid(format!("mu({p},{j}) needs p >= 1, j >= 1")));
    }
    let mut e = ZetaExpr::zero();
    for n in 1..p {
        e.add_scaled(&z(p + 1 - n)?, &(sgn(n - 1) * pw(j, -n)));
    }
    e.add_constant(sgn(p - 1) * h(j, 1) * pw(j, -p));
    Ok(e)
}

/// `b1(s, j) = sum 1/((n+s)(n+j))`.
pub fn b1(s: i64, j: i64) -> Result<ZetaExpr> {
    if s < 0 || j < 1 {
        return Err(invalid(format!("b1({s},{j}) needs s >= 0, j >= 1")));
    }
    if s == j {
        return Ok(z(2)? - konst(h(j, 2)));
    }
    Ok(konst((h(s, 1) - h(j, 1)) / Rational::from(s - j)))
}

fn square_sum(n: i64) -> Rational {
    let hn = h(n, 1);
    Rational::from(hn.square_ref()) + h(n, 2)
}

/// `b2(s, j) = sum H_n/((n+s)(n+j))`.
pub fn b2(s: i64, j: i64) -> Result<ZetaExpr> {
    if s < 0 || j < 1 {
        return Err(invalid(format!("b2({s},{j}) needs s >= 0, j >= 1")));
    }
    if s == 0 {
        let mut e = z(2)?.scale(&Rational::from((1, j)));
        e.add_constant(square_sum(j - 1) / Rational::from(2 * j));
        return Ok(e);
    }
    if s != j {
        return Ok(konst(
            (square_sum(j - 1) - square_sum(s - 1)) / Rational::from(2 * (j - s)),
        ));
    }
    let hj = h(j - 1, 1);
    let mut e = z(3)? + z(2)?.scale(&hj);
    e.add_constant(-(hj * h(j - 1, 2)) - h(j - 1, 3));
    Ok(e)
}

/// `b3(m, s) = sum 1/((n+m)^2 (n+s))`.
pub fn b3(m: i64, s: i64) -> Result<ZetaExpr> {
    if m < 1 || s < 1 {
        return Err(invalid(format!("b3({m},{s}) needs m >= 1, s >= 1")));
    }
    if m == s {
        return Ok(z(3)? - konst(h(m, 3)));
    }
    let d = Rational::from(s - m);
    let mut e = z(2)?.scale(&Rational::from(d.recip_ref()));
    e.add_constant((h(m, 1) - h(s, 1)) / Rational::from(d.square_ref()) - h(m, 2) / d);
    Ok(e)
}

/// `sum 1/((n+b)^s (n+c)^t)` for `b != c`, `s, t >= 1`, `b, c >= 0`.
pub fn two_pole(b: i64, s: i64, cc: i64, t: i64) -> Result<ZetaExpr> {
    if b < 0 || cc < 0 || b == cc || s < 1 || t < 1 {
        return Err(invalid(format!(
            "two_pole({b},{s},{cc},{t}) needs distinct non-negative shifts and positive powers"
        )));
    }
    let d = cc - b;
    let mut e = ZetaExpr::zero();
    for j in 2..=s {
        let coef = sgn(s + j) * pw(d, -(t + s - j)) * c(s + t - j - 1, t - 1);
        e.add_scaled(&(z(j)? - konst(h(b, j as u32))), &coef);
    }
    for j in 2..=t {
        let coef = sgn(s) * pw(d, -(t + s - j)) * c(s + t - j - 1, s - 1);
        e.add_scaled(&(z(j)? - konst(h(cc, j as u32))), &coef);
    }
    e.add_constant(sgn(s) * pw(d, -(t + s - 1)) * c(s + t - 2, s - 1) * (h(b, 1) - h(cc, 1)));
    Ok(e)
}

/// `sum 1/(n^p (n+m)^2 (n+s))`, `p >= 0`, `m, s >= 1`.
pub fn two_pole_square_shift(p: i64, m: i64, s: i64) -> Result<ZetaExpr> {
    if p < 0 || m < 1 || s < 1 {
        return Err(invalid(format!(
            "sum 1/(n^{p} (n+{m})^2 (n+{s})) needs p >= 0, m >= 1, s >= 1"
        )));
    }
    let hm = h(m, 1);
    let mut e = ZetaExpr::zero();
    for v in 0..p {
        let mut inner = z(2)?;
        inner.add_constant(-h(m, 2) - Rational::from(v + 1) * &hm / Rational::from(m));
        for n in 0..v {
            inner.add_scaled(&z(n + 2)?, &(pw(-m, n) * Rational::from(v - n)));
        }
        e.add_scaled(&inner, &(sgn(p) * pw(s, v - p) * pw(m, -(v + 1))));
    }
    e.add_scaled(&b3(m, s)?, &(sgn(p) * pw(s, -p)));
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(1, 3).unwrap(), konst(q(11, 18)));
        assert_eq!(mu(2, 1).unwrap(), z(2).unwrap() - konst(q(1, 1)));
        let want = z(3).unwrap().scale(&q(1, 2)) - z(2).unwrap().scale(&q(1, 4)) + konst(q(3, 16));
        assert_eq!(mu(3, 2).unwrap(), want);
        assert!(mu(0, 1).is_err());
    }

    #[test]
    fn table_examples() {
        assert_eq!(b1(0, 1).unwrap(), konst(q(1, 1)));
        assert_eq!(b2(1, 1).unwrap(), z(3).unwrap());
        assert_eq!(b3(1, 2).unwrap(), z(2).unwrap() - konst(q(3, 2)));
        assert!(b3(0, 1).is_err());
    }

    #[test]
    fn two_pole_telescoping() {
        // sum 1/(n(n+1)) = 1
        assert_eq!(two_pole(0, 1, 1, 1).unwrap(), konst(q(1, 1)));
        // sum 1/(n^2(n+1)) = zeta(2) - 1
        assert_eq!(two_pole(0, 2, 1, 1).unwrap(), z(2).unwrap() - konst(q(1, 1)));
        // sum 1/(n(n+1)^2) = 2 - zeta(2)
        assert_eq!(two_pole(0, 1, 1, 2).unwrap(), konst(q(2, 1)) - z(2).unwrap());
    }
}
