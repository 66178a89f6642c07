use eulersum_core::exact::{
    binomial, binomial_int, harmonic, hyperharmonic, hyperharmonic_any, hyperharmonic_neg, inv_pow, r_stirling1,
};
use rug::{Integer, Rational};

/// Table of `h_n^(r)` for `0 <= n <= n_max`, orders `-neg..=pos`, built only
/// from `h^(0)_n = 1/n`, partial sums upward and differences downward.
struct OrderTable {
    neg: i64,
    rows: Vec<Vec<Rational>>,
}

impl OrderTable {
    fn new(n_max: usize, neg: i64, pos: i64) -> Self {
        let width = (neg + pos + 1) as usize;
        let mut rows = vec![vec![Rational::new(); n_max + 1]; width];
        let zero = neg as usize;
        for n in 1..=n_max {
            rows[zero][n] = Rational::from((1, n as u64));
        }
        for o in zero + 1..width {
            for n in 1..=n_max {
                rows[o][n] = Rational::from(&rows[o][n - 1] + &rows[o - 1][n]);
            }
        }
        for o in (0..zero).rev() {
            for n in 1..=n_max {
                rows[o][n] = Rational::from(&rows[o + 1][n] - &rows[o + 1][n - 1]);
            }
        }
        OrderTable { neg, rows }
    }

    fn get(&self, n: u64, r: i64) -> &Rational {
        &self.rows[(r + self.neg) as usize][n as usize]
    }
}

#[test]
fn binomial_edges() {
    assert_eq!(binomial(5, 2), 10);
    assert_eq!(binomial(4, 0), 1);
    assert_eq!(binomial(3, 5), 0);
    assert_eq!(binomial(3, -1), 0);
    assert_eq!(binomial_int(40, 20), Integer::from(137_846_528_820u64));
}

#[test]
fn harmonic_telescoping_and_conventions() {
    for r in 0..=5u32 {
        assert_eq!(harmonic(0, r), 0);
        for n in 1..=40u64 {
            let want = if r == 0 { Rational::from(1) } else { inv_pow(n as i64, r) };
            assert_eq!(harmonic(n, r) - harmonic(n - 1, r), want, "n={n} r={r}");
        }
    }
    assert_eq!(harmonic(7, 0), 7);
    assert_eq!(harmonic(4, 1), Rational::from((25, 12)));
}

#[test]
fn hyperharmonic_matches_iterated_sums() {
    let t = OrderTable::new(30, 0, 8);
    for r in 1..=8i64 {
        for n in 1..=30u64 {
            assert_eq!(&hyperharmonic(n, r as u32), t.get(n, r), "n={n} r={r}");
        }
    }
}

#[test]
fn hyperharmonic_binomial_closed_form() {
    for n in 1..=30u64 {
        for r in 1..=8u32 {
            let top = n as i64 + i64::from(r) - 1;
            let want = binomial(top, i64::from(r) - 1) * (harmonic(top as u64, 1) - harmonic(u64::from(r) - 1, 1));
            assert_eq!(hyperharmonic(n, r), want, "n={n} r={r}");
        }
    }
}

#[test]
fn negative_orders_match_differences() {
    let t = OrderTable::new(20, 8, 0);
    for r in 1..=8i64 {
        for n in 1..=20u64 {
            assert_eq!(&hyperharmonic_any(n, -r), t.get(n, -r), "n={n} r=-{r}");
        }
    }
}

#[test]
fn negative_order_branches_meet() {
    // n = r + 1 is the first index of the rational branch; the finite
    // alternating branch must reach it through the order recurrence.
    for r in 1..=10u32 {
        let n = u64::from(r) + 1;
        let sign = if r % 2 == 0 { 1 } else { -1 };
        assert_eq!(hyperharmonic_neg(n, r), Rational::from((sign, u64::from(r) + 1)));
        let via = hyperharmonic_any(n, 1 - i64::from(r)) - hyperharmonic_any(n - 1, 1 - i64::from(r));
        assert_eq!(hyperharmonic_neg(n, r), via, "r={r}");
        let before = hyperharmonic_any(n - 1, 1 - i64::from(r)) - hyperharmonic_any(n - 2, 1 - i64::from(r));
        assert_eq!(hyperharmonic_neg(n - 1, r), before, "r={r}");
    }
}

#[test]
fn order_downshift_transform() {
    let t = OrderTable::new(20, 4, 9);
    for n in 1..=20u64 {
        for r in -3..=6i64 {
            for m in 0..=r + 3 {
                let mut rhs = Rational::new();
                for k in 0..=(n as i64).min(m) {
                    let term = binomial(m, k) * hyperharmonic_any(n - k as u64, r);
                    if k % 2 == 0 {
                        rhs += term;
                    } else {
                        rhs -= term;
                    }
                }
                assert_eq!(hyperharmonic_any(n, r - m), rhs, "n={n} r={r} m={m}");
                assert_eq!(t.get(n, r - m), &rhs, "table n={n} r={r} m={m}");
            }
        }
    }
}

/// Coefficients of `(x+r)(x+r+1)...(x+r+n-1)`, lowest degree first.
fn rising_coefficients(n: u32, r: u32) -> Vec<Integer> {
    let mut poly = vec![Integer::from(1)];
    for i in 0..n {
        let shift = Integer::from(r + i);
        let mut next = vec![Integer::new(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k] += Integer::from(c * &shift);
            next[k + 1] += c;
        }
        poly = next;
    }
    poly
}

#[test]
fn r_stirling_rising_factorial() {
    for r in 0..=4u32 {
        for n in 0..=15u32 {
            let poly = rising_coefficients(n, r);
            for k in 0..=n + 1 {
                let want = poly.get(k as usize).cloned().unwrap_or_default();
                assert_eq!(r_stirling1(n, k, r), want, "n={n} k={k} r={r}");
            }
        }
    }
}

#[test]
fn r_stirling_pascal_recurrence() {
    for r in 0..=4u32 {
        for n in 1..=15u32 {
            for k in 0..=n {
                let mut want = Integer::from(n - 1 + r) * r_stirling1(n - 1, k, r);
                if k >= 1 {
                    want += r_stirling1(n - 1, k - 1, r);
                }
                assert_eq!(r_stirling1(n, k, r), want, "n={n} k={k} r={r}");
            }
        }
    }
}
