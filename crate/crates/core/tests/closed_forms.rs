use eulersum_core::algebra::{bits_for_digits, eval_expr};
use eulersum_core::closed::{self, closed_form, FiniteSumRoute};
use eulersum_core::oracle::AtomOracle;
use eulersum_core::{Atom, Error, Family, SumSpec, ZetaExpr};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

const DIGITS: u32 = 50;

fn bits() -> u32 {
    bits_for_digits(DIGITS)
}

fn value(e: &ZetaExpr) -> Float {
    eval_expr(e, DIGITS, AtomOracle::global()).unwrap()
}

fn mpfr_zeta(k: u32) -> Float {
    Float::with_val(bits(), Float::zeta_u(k))
}

fn close(a: &Float, b: &Float, digits: i32) -> bool {
    Float::with_val(bits(), a - b).abs() <= Float::with_val(bits(), 10u32).pow(-digits)
}

/// Every valid point with parameters in `lo..=4`.
fn grid(family: Family) -> Vec<SumSpec> {
    let names = family.params();
    let lo = |n: &str| if family == Family::HyperShifted && n == "r" { -2 } else { 0 };
    let mut out = Vec::new();
    let mut cur: Vec<i64> = names.iter().map(|n| lo(n)).collect();
    'outer: loop {
        if let Ok(s) = SumSpec::new(family, &cur) {
            out.push(s);
        }
        for i in (0..cur.len()).rev() {
            if cur[i] < 4 {
                cur[i] += 1;
                for (j, c) in cur.iter_mut().enumerate().skip(i + 1) {
                    *c = lo(names[j]);
                }
                continue 'outer;
            }
        }
        return out;
    }
}

#[test]
fn closed_forms_use_permitted_atoms() {
    let mut produced = 0;
    for &family in Family::ALL {
        let euler_lin_allowed = matches!(
            family,
            Family::HyperHBinom | Family::HyperPairBinom | Family::H2 | Family::H2Linear | Family::H2Binom
        );
        for spec in grid(family) {
            let e = match closed_form(&spec) {
                Ok(e) => e,
                Err(Error::NotReducibleByThisRoute(_)) => continue,
                Err(other) => panic!("{spec}: {other}"),
            };
            produced += 1;
            for a in e.atoms() {
                match a {
                    Atom::Zeta(k) => assert!(k >= 2, "{spec}: {a}"),
                    Atom::EulerLin(r, p) => {
                        assert!(euler_lin_allowed, "{spec}: unexpected {a}");
                        assert!(r == 2 && p >= 2, "{spec}: {a}");
                    }
                }
            }
        }
    }
    assert!(produced >= 150, "only {produced} closed forms");
}

#[test]
fn cross_formula_consistency() {
    for r in 0..=4 {
        for p in r + 2..=7 {
            assert_eq!(closed::hes(r, p).unwrap(), closed::hyper_binom(r + 1, p, 0).unwrap(), "r={r} p={p}");
        }
    }
    for r in 1..=4 {
        for p in 0..=4 {
            for l in 0..=4 {
                match (closed::hyper_shifted(r, 0, p, l), closed::hyper_binom(r, p, l)) {
                    (Ok(a), Ok(b)) => assert_eq!(a, b, "r={r} p={p} l={l}"),
                    (Err(_), Err(_)) => {}
                    (a, b) => panic!("r={r} p={p} l={l}: {a:?} vs {b:?}"),
                }
            }
        }
    }
    for p in 2..=10 {
        assert_eq!(closed::hzs(p).unwrap(), closed::euler_reduce(p).unwrap(), "p={p}");
    }
    for r in 1..=4 {
        for p in 1..=4 {
            assert_eq!(closed::neg_hyper_binom(r, p, 0).unwrap(), closed::neg_euler(r, p).unwrap(), "r={r} p={p}");
        }
    }
}

#[test]
fn pair_sum_is_symmetric() {
    for r in 1..=3 {
        for q in 1..r {
            for p in 0..=4 {
                for l in 0..=3 {
                    let (a, b) = (closed::hyper_pair_binom(r, q, p, l), closed::hyper_pair_binom(q, r, p, l));
                    if let (Ok(a), Ok(b)) = (a, b) {
                        assert!(close(&value(&a), &value(&b), 40), "r={r} q={q} p={p} l={l}");
                    }
                }
            }
        }
    }
}

/// `1/(n^e C(n+l,l))` computed from scratch.
fn weight(n: i64, e: i64, l: i64) -> Rational {
    let mut c = Rational::from(1);
    for i in 1..=l {
        c *= Rational::from((n + i, i));
    }
    Rational::from(n).pow(-(e as i32)) / c
}

#[test]
fn finite_sums_match_direct_summation() {
    for r in 1..=5i64 {
        for p in 0..=4i64 {
            for l in 0..=4i64 {
                let direct: Rational = (1..=r).map(|n| weight(n, p + 1, l)).sum();
                assert_eq!(closed::finite_sum_1_direct(r, p, l), direct);
                assert_eq!(closed::finite_sum_1_closed(r, p, l), direct, "first r={r} p={p} l={l}");
                for k in 1..r {
                    let direct: Rational = (k + 1..=r).map(|n| weight(n, p, l) / Rational::from(n - k)).sum();
                    assert_eq!(closed::finite_sum_2_direct(r, k, p, l), direct);
                    assert_eq!(closed::finite_sum_2_closed(r, k, p, l), direct, "second r={r} k={k} p={p} l={l}");
                }
            }
        }
    }
    for r in 1..=4 {
        for p in 1..=4 {
            for l in 0..=4 {
                assert_eq!(
                    closed::neg_hyper_binom_with(r, p, l, FiniteSumRoute::Direct).unwrap(),
                    closed::neg_hyper_binom_with(r, p, l, FiniteSumRoute::Closed).unwrap()
                );
            }
        }
    }
}

#[test]
fn classical_values() {
    let z = mpfr_zeta;
    let pi = Float::with_val(bits(), Constant::Pi);
    let ok = |e: ZetaExpr, want: Float| assert!(close(&value(&e), &want, 45), "{e}");
    // sum H_n/n^2 = 2 zeta(3), sum H_n/n^3 = pi^4/72
    assert_eq!(closed::euler_reduce(2).unwrap(), ZetaExpr::zeta(3).unwrap().scale(&Rational::from(2)));
    ok(closed::euler_reduce(3).unwrap(), Float::with_val(bits(), pi.clone().pow(4u32) / 72u32));
    ok(closed::h2(2).unwrap(), Float::with_val(bits(), z(4) * 17u32 / 4u32));
    ok(closed::h2(3).unwrap(), Float::with_val(bits(), z(5) * 7u32 / 2u32 - z(2) * z(3)));
    ok(closed::hes(1, 3).unwrap(), Float::with_val(bits(), z(4) * 5u32 / 2u32 - z(2) * z(2) / 2u32 + z(3) * 2u32 - z(2)));
    ok(closed::neg_euler(1, 2).unwrap(), Float::with_val(bits(), z(2) + z(3) - 2u32));
    // H_(m+1) = H_m + 1/(m+1) splits this into 2 zeta(3) + sum 1/(m^2 (m+1))
    ok(closed::xu_li_shifted(2, 1).unwrap(), Float::with_val(bits(), z(3) * 2u32 + z(2) - 1u32));
    // telescoping and partial-fraction values
    assert_eq!(closed::inv_binom(1, 1).unwrap(), ZetaExpr::constant(1));
    assert_eq!(closed::mu(1, 1).unwrap(), ZetaExpr::constant(1));
    assert_eq!(closed::mu(1, 2).unwrap(), ZetaExpr::constant(Rational::from((3, 4))));
    assert_eq!(closed::inv_two_shift_binom(1, 1, 2, 0).unwrap(), ZetaExpr::constant(Rational::from((1, 4))));
}

#[test]
fn precondition_policy() {
    assert!(matches!(SumSpec::new(Family::Hes, &[1, 2]), Err(Error::InvalidParameter(_))));
    assert!(matches!(SumSpec::new(Family::EulerLinR1, &[1]), Err(Error::InvalidParameter(_))));
    // convergent, but the Stirling route would need zeta(1)
    let spec = SumSpec::new(Family::HyperBinom, &[3, 2, 2]).unwrap();
    assert!(matches!(closed_form(&spec), Err(Error::NotReducibleByThisRoute(_))));
}
