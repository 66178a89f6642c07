//! Exact integer and rational combinatorics.
//!
//! Everything here is a pure function of its arguments. Tables of harmonic,
//! hyperharmonic, r-Stirling and Bernoulli numbers are memoized in
//! process-wide caches that only ever grow; a cached value is identical to a
//! freshly computed one, so callers cannot observe the caches.

mod cache;

use rug::ops::PowAssign;
use rug::{Integer, Rational};

use cache::{bernoulli_table, harmonic_table, hyperharmonic_table, stirling_row};

/// Binomial coefficient `C(n, k)` as an integer; zero outside `0 <= k <= n`.
pub fn binomial_int(n: i64, k: i64) -> Integer {
    if n < 0 || k < 0 || k > n {
        return Integer::new();
    }
    let n = u32::try_from(n).expect("binomial index exceeds u32");
    let k = u32::try_from(k).expect("binomial index exceeds u32");
    Integer::from(Integer::binomial_u(n, k))
}

/// Binomial coefficient `C(n, k)` as a rational (always integer valued).
pub fn binomial(n: i64, k: i64) -> Rational {
    Rational::from(binomial_int(n, k))
}

/// Generalized harmonic number `H_n^(r) = sum_{k=1..n} 1/k^r`.
///
/// `H_0^(r) = 0` and `H_n^(0) = n`.
pub fn harmonic(n: u64, r: u32) -> Rational {
    if n == 0 {
        return Rational::new();
    }
    if r == 0 {
        return Rational::from(n);
    }
    harmonic_table(r, n as usize)
}

/// Hyperharmonic number `h_n^(r)` for `r >= 1`, built by the iterated
/// partial-sum recurrence `h_n^(r) = sum_{k<=n} h_k^(r-1)` from `h^(1) = H`.
///
/// # Panics
///
/// If `r == 0`; use [`hyperharmonic_any`] for orders below one.
pub fn hyperharmonic(n: u64, r: u32) -> Rational {
    assert!(r >= 1, "hyperharmonic order must be positive");
    if n == 0 {
        return Rational::new();
    }
    hyperharmonic_table(r, n as usize)
}

/// Hyperharmonic number of negative order `h_n^(-r)`, `n >= 1`, `r >= 1`.
///
/// For `n > r` this is `(-1)^r / ((n-r) C(n,r))`; for `r >= n` it is the
/// finite alternating sum `sum_{k<n} C(r,k) (-1)^k / (n-k)`.
pub fn hyperharmonic_neg(n: u64, r: u32) -> Rational {
    assert!(n >= 1, "negative-order hyperharmonic numbers start at n = 1");
    assert!(r >= 1, "order must be positive");
    let (ni, ri) = (n as i64, i64::from(r));
    if ni > ri {
        let den = binomial_int(ni, ri) * Integer::from(ni - ri);
        let num = if r % 2 == 0 { 1 } else { -1 };
        Rational::from((Integer::from(num), den))
    } else {
        let mut acc = Rational::new();
        for k in 0..ni {
            let mut term = Rational::from((binomial_int(ri, k), Integer::from(ni - k)));
            if k % 2 == 1 {
                term = -term;
            }
            acc += term;
        }
        acc
    }
}

/// Hyperharmonic number of any integer order: `h^(r)` for `r >= 1`,
/// `1/n` for `r = 0` and `h^(-|r|)` for `r < 0`. `h_0^(r)` is `0` for every
/// order so binomial-transform sums stay well formed at their last index.
pub fn hyperharmonic_any(n: u64, r: i64) -> Rational {
    if n == 0 {
        return Rational::new();
    }
    match r {
        r if r >= 1 => hyperharmonic(n, r as u32),
        0 => Rational::from((1, n)),
        r => hyperharmonic_neg(n, (-r) as u32),
    }
}

/// r-Stirling number of the first kind: the coefficient of `x^k` in
/// `(x+r)(x+r+1)...(x+r+n-1)`.
pub fn r_stirling1(n: u32, k: u32, r: u32) -> Integer {
    if k > n {
        return Integer::new();
    }
    stirling_row(n, r)[k as usize].clone()
}

/// Bernoulli number `B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli(n: u32) -> Rational {
    bernoulli_table(n as usize)
}

/// `n!` as an integer.
pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// `1 / k^e` as an exact rational; `k` must be non-zero.
pub fn inv_pow(k: i64, e: u32) -> Rational {
    assert!(k != 0, "inv_pow of zero");
    let mut den = Integer::from(k);
    den.pow_assign(e);
    Rational::from((Integer::from(1), den))
}

/// Rational `num / den` from small integers.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

/// `(-1)^e` as `i64`.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        ratio(n, d)
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(3, -1), 0);
    }

    #[test]
    fn harmonic_small_values() {
        assert_eq!(harmonic(0, 1), 0);
        assert_eq!(harmonic(3, 1), q(11, 6));
        assert_eq!(harmonic(3, 2), q(49, 36));
        assert_eq!(harmonic(7, 0), 7);
    }

    #[test]
    fn harmonic_telescopes() {
        for r in 0..5 {
            for n in 1..40u64 {
                let diff = harmonic(n, r) - harmonic(n - 1, r);
                assert_eq!(diff, inv_pow(n as i64, r), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn hyperharmonic_small_values() {
        for r in 1..6 {
            assert_eq!(hyperharmonic(1, r), 1);
        }
        assert_eq!(hyperharmonic(3, 2), q(13, 3));
        assert_eq!(hyperharmonic(2, 3), q(7, 2));
        assert_eq!(hyperharmonic(5, 1), harmonic(5, 1));
    }

    #[test]
    fn negative_order_values() {
        assert_eq!(hyperharmonic_neg(3, 1), q(-1, 6));
        assert_eq!(hyperharmonic_neg(1, 4), 1);
        assert_eq!(hyperharmonic_neg(2, 3), q(-5, 2));
    }

    #[test]
    fn any_order_dispatch() {
        assert_eq!(hyperharmonic_any(4, 0), q(1, 4));
        assert_eq!(hyperharmonic_any(3, 1), q(11, 6));
        assert_eq!(hyperharmonic_any(3, -1), q(-1, 6));
        assert_eq!(hyperharmonic_any(0, 5), 0);
        assert_eq!(hyperharmonic_any(0, -2), 0);
    }

    #[test]
    fn r_stirling_small_values() {
        assert_eq!(r_stirling1(2, 1, 0), 1);
        assert_eq!(r_stirling1(2, 1, 1), 3);
        assert_eq!(r_stirling1(0, 0, 7), 1);
        assert_eq!(r_stirling1(3, 4, 1), 0);
        // [n,k]_1 = [n+1,k+1]
        for n in 0..8 {
            for k in 0..=n {
                assert_eq!(r_stirling1(n, k, 1), r_stirling1(n + 1, k + 1, 0));
            }
        }
    }

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), 1);
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), 0);
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(12), q(-691, 2730));
    }
}
