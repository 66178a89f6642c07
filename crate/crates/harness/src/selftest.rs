//! Aggregate self-test: golden values, invariant suites and the formula
//! audit, each reported as one named suite.

use eulersum_core::algebra::{bits_for_digits, eval_expr, euler_reduce, parse_text, DisplayExpr};
use eulersum_core::oracle::VerificationReport;
use eulersum_core::audit::{typo_ledger, LedgerEntry};
use eulersum_core::closed::{self, FiniteSumRoute};
use eulersum_core::exact::{binomial, harmonic, hyperharmonic, hyperharmonic_any, inv_pow, r_stirling1};
use eulersum_core::oracle::{direct_sum_with, eval_atom, AtomOracle, Mode, SumOptions, Verdict};
use eulersum_core::{Atom, Family, Result as CoreResult, SumSpec, ZetaExpr};
use rug::float::Constant;
use rug::ops::{Pow, PowAssign};
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::config::RunConfig;
use crate::grid::SweepGrid;
use crate::report::{sweep, verify_point};

/// Displayed value of the hyperharmonic binomial worked example
/// (`r = l = 2`, `p = 5`).
pub const GOLDEN_HYPER_BINOM: &str = "-(3/2)*zeta(5) - (1/2)*zeta(3)^2 + (5/4)*zeta(3) \
    + (1/12)*pi^2*zeta(3) + (1/540)*pi^6 - (11/1440)*pi^4 - (9/32)*pi^2 + 15/8";

/// Displayed value of the shifted example (`r = 2`, `m = 4`, `p = 5`, `l = 2`).
pub const GOLDEN_HYPER_SHIFTED: &str = "(19/2)*zeta(5) + (3/2)*zeta(3)^2 + (15/2)*zeta(3) \
    - (11/12)*pi^2*zeta(3) - (1/420)*pi^6 - (43/1440)*pi^4 - (7/24)*pi^2 - 533/256";

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfTestReport {
    pub config: RunConfig,
    pub suites: Vec<SuiteResult>,
    pub typo_ledger: Vec<LedgerEntry>,
    pub passed: bool,
}

/// Collects checks for one suite; keeps the first few failure messages.
struct Suite {
    name: &'static str,
    checks: usize,
    failures: Vec<String>,
    total_failures: usize,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, checks: 0, failures: Vec::new(), total_failures: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.total_failures += 1;
            if self.failures.len() < 10 {
                self.failures.push(what());
            }
        }
    }

    fn check_result<T>(&mut self, r: CoreResult<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{what}: {e}"));
                None
            }
        }
    }

    fn finish(mut self) -> SuiteResult {
        if self.total_failures > self.failures.len() {
            let more = self.total_failures - self.failures.len();
            self.failures.push(format!("... and {more} more"));
        }
        SuiteResult {
            name: self.name,
            passed: self.total_failures == 0 && self.checks > 0,
            checks: self.checks,
            failures: self.failures,
        }
    }
}

fn ten_pow(bits: u32, e: i32) -> Float {
    Float::with_val(bits, 10u32).pow(e)
}

fn value(e: &ZetaExpr, digits: u32) -> CoreResult<Float> {
    eval_expr(e, digits, AtomOracle::global())
}

fn golden(name: &'static str, family: Family, params: &[i64], text: &str, config: &RunConfig) -> SuiteResult {
    let mut s = Suite::new(name);
    let spec = SumSpec::new(family, params).expect("golden parameters are valid");
    let Some(expected) = s.check_result(parse_text(text).and_then(|d| d.to_zeta_expr()), "parse golden") else {
        return s.finish();
    };
    let report = verify_point(&spec, config);
    // even zeta values only have a canonical form once written as powers of pi
    let pi_form = |e: &ZetaExpr| DisplayExpr::from_expr(e, true);
    let closed = report.closed_form.clone();
    s.check(closed.as_ref().map(pi_form) == Some(pi_form(&expected)), || {
        format!("{spec}: closed form {:?} differs from the displayed value", closed.map(|e| e.to_string()))
    });
    if let (Some(c), Some(v)) = (&report.closed_numeric, s.check_result(value(&expected, config.precision_digits), "evaluate golden")) {
        let bits = bits_for_digits(config.precision_digits);
        let err = Float::with_val(bits, c - &v).abs();
        s.check(err <= ten_pow(bits, -25), || format!("{spec}: numeric deviation {err:.3e}"));
    }
    s.check(report.verdict == Verdict::Pass, || format!("{spec}: oracle verdict {:?}", report.verdict));
    s.check(report.strict == Some(true), || format!("{spec}: disagrees with the extrapolated oracle limit"));
    s.finish()
}

fn classical_anchors(config: &RunConfig) -> SuiteResult {
    let mut s = Suite::new("classical anchors");
    let d = config.precision_digits;
    let bits = bits_for_digits(d);
    let z = |k| eval_atom(Atom::Zeta(k), d);
    let zeta3 = ZetaExpr::zeta(3).unwrap().scale(&Rational::from(2));
    s.check(euler_reduce(2).ok() == Some(zeta3), || "sum H_n/n^2 is not 2 zeta(3)".into());
    if let Some(e) = s.check_result(euler_reduce(3), "euler_reduce(3)") {
        if let Some(v) = s.check_result(value(&e, d), "evaluate") {
            let mut pi4 = Float::with_val(bits, Constant::Pi);
            pi4.pow_assign(4u32);
            let err = Float::with_val(bits, &v - &(pi4 / 72u32)).abs();
            s.check(err <= ten_pow(bits, -40), || format!("sum H_n/n^3 - pi^4/72 = {err:.3e}"));
        }
    }
    if let Some(e) = s.check_result(closed::neg_euler(1, 2), "neg_euler(1,2)") {
        if let Some(v) = s.check_result(value(&e, d), "evaluate") {
            let want = z(2) + z(3) - 2u32;
            let err = Float::with_val(bits, &v - &want).abs();
            s.check(err <= ten_pow(bits, -40), || format!("neg_euler(1,2) deviation {err:.3e}"));
        }
    }
    s.finish()
}

/// Binomial sum of order `r` chosen by the sign of `r`.
fn order_binom(r: i64, p: i64, l: i64) -> CoreResult<ZetaExpr> {
    match r {
        r if r >= 1 => closed::hyper_binom(r, p, l),
        0 => closed::inv_binom(p + 1, l),
        r => closed::neg_hyper_binom(-r, p, l),
    }
}

fn structural_consistency() -> SuiteResult {
    let mut s = Suite::new("structural consistency");
    let same = |a: CoreResult<ZetaExpr>, b: CoreResult<ZetaExpr>| match (a, b) {
        (Ok(x), Ok(y)) => Some(x == y),
        // both routes unavailable together is consistent
        (Err(_), Err(_)) => None,
        _ => Some(false),
    };
    for r in 0..=4 {
        for p in 0..=6 {
            if p > r + 1 {
                if let Some(ok) = same(closed::hes(r, p), closed::hyper_binom(r + 1, p, 0)) {
                    s.check(ok, || format!("hes({r},{p}) != hyper_binom({},{p},0)", r + 1));
                }
            }
        }
    }
    for r in -2..=4 {
        for p in 0..=4 {
            for l in 0..=4 {
                if p + l > r {
                    if let Some(ok) = same(closed::hyper_shifted(r, 0, p, l), order_binom(r, p, l)) {
                        s.check(ok, || format!("hyper_shifted({r},0,{p},{l}) != order-{r} binomial sum"));
                    }
                }
            }
        }
    }
    for p in 2..=10 {
        s.check(closed::hzs(p).ok() == euler_reduce(p).ok(), || format!("hzs({p}) != euler_reduce({p})"));
    }
    for r in 1..=4 {
        for p in 1..=4 {
            if let Some(ok) = same(closed::neg_hyper_binom(r, p, 0), closed::neg_euler(r, p)) {
                s.check(ok, || format!("neg_hyper_binom({r},{p},0) != neg_euler({r},{p})"));
            }
        }
    }
    s.finish()
}

fn finite_sum_duality() -> SuiteResult {
    let mut s = Suite::new("finite-sum duality");
    for r in 1..=5 {
        for p in 1..=4 {
            for l in 0..=4 {
                let (a, b) = (closed::finite_sum_1_direct(r, p, l), closed::finite_sum_1_closed(r, p, l));
                s.check(a == b, || format!("first finite sum r={r} p={p} l={l}: {a} vs {b}"));
                for k in 1..r {
                    let (a, b) = (closed::finite_sum_2_direct(r, k, p, l), closed::finite_sum_2_closed(r, k, p, l));
                    s.check(a == b, || format!("second finite sum r={r} k={k} p={p} l={l}: {a} vs {b}"));
                }
            }
            let (a, b) = (
                closed::neg_hyper_binom_with(r, p, 2, FiniteSumRoute::Direct),
                closed::neg_hyper_binom_with(r, p, 2, FiniteSumRoute::Closed),
            );
            s.check(a.is_ok() && a == b, || format!("neg_hyper_binom({r},{p},2) routes differ"));
        }
    }
    s.finish()
}

fn exact_identities() -> SuiteResult {
    let mut s = Suite::new("exact-core identities");
    for n in 1..=30u64 {
        for r in 1..=8u32 {
            let lhs = hyperharmonic(n, r);
            let top = n as i64 + i64::from(r) - 1;
            let rhs = binomial(top, i64::from(r) - 1) * (harmonic(top as u64, 1) - harmonic(u64::from(r) - 1, 1));
            s.check(lhs == rhs, || format!("hyperharmonic closed form fails at n={n}, r={r}"));
        }
    }
    for n in 1..=20u64 {
        for r in -3..=5i64 {
            for m in 0..=r + 3 {
                let lhs = hyperharmonic_any(n, r - m);
                let mut rhs = Rational::new();
                for k in 0..=(n as i64).min(m) {
                    let term = binomial(m, k) * hyperharmonic_any(n - k as u64, r);
                    if k % 2 == 0 {
                        rhs += term;
                    } else {
                        rhs -= term;
                    }
                }
                s.check(lhs == rhs, || format!("order downshift fails at n={n}, r={r}, m={m}"));
            }
        }
    }
    for r in 0..=4u32 {
        for n in 1..=15u32 {
            for k in 0..=n {
                let lhs = r_stirling1(n, k, r);
                let mut rhs = Integer::from(n - 1 + r) * r_stirling1(n - 1, k, r);
                if k >= 1 {
                    rhs += r_stirling1(n - 1, k - 1, r);
                }
                s.check(lhs == rhs, || format!("r-Stirling recurrence fails at n={n}, k={k}, r={r}"));
            }
        }
    }
    for n in 1..=40u64 {
        for r in 0..=4u32 {
            let diff = harmonic(n, r) - harmonic(n - 1, r);
            let want = if r == 0 { Rational::from(1) } else { inv_pow(n as i64, r) };
            s.check(diff == want, || format!("harmonic telescoping fails at n={n}, r={r}"));
        }
    }
    s.finish()
}

fn oracle_selftest(config: &RunConfig) -> SuiteResult {
    let mut s = Suite::new("oracle self-test");
    let d = config.precision_digits;
    let bits = bits_for_digits(d);
    let telescoping = [
        (Family::InvBinom, vec![1, 1], Rational::from(1)),
        (Family::InvTwoShiftBinom, vec![1, 1, 2, 0], Rational::from((1, 4))),
        (Family::Mu, vec![1, 3], Rational::from((11, 18))),
    ];
    for (f, p, exact) in telescoping {
        let spec = SumSpec::new(f, &p).unwrap();
        for n in [1_000u64, 10_000, config.max_terms] {
            for mode in [Mode::Plain, Mode::Accelerated] {
                let opts = SumOptions { mode: Some(mode), ..SumOptions::new(d, n) };
                if let Some(r) = s.check_result(direct_sum_with(&spec, &opts), "direct sum") {
                    let err = Float::with_val(bits, &r.partial_sum - &exact).abs();
                    s.check(err <= r.tail_bound, || {
                        format!("{spec} N={n} {mode}: error {err:.3e} above tail bound {:.3e}", r.tail_bound)
                    });
                }
            }
        }
    }
    for (f, p) in [(Family::HBinom, vec![2, 1]), (Family::HyperBinom, vec![2, 4, 1]), (Family::NegEuler, vec![2, 2])] {
        let spec = SumSpec::new(f, &p).unwrap();
        let mut last: Option<Float> = None;
        for n in [1_000u64, 2_000, 5_000, 20_000] {
            let opts = SumOptions { mode: Some(Mode::Plain), ..SumOptions::new(d, n) };
            if let Some(r) = s.check_result(direct_sum_with(&spec, &opts), "direct sum") {
                if let Some(prev) = &last {
                    s.check(r.tail_bound <= *prev, || format!("{spec}: tail bound grew at N={n}"));
                }
                last = Some(r.tail_bound);
            }
        }
    }
    s.finish()
}

fn formula_audit(config: &RunConfig, ledger: &CoreResult<&'static [LedgerEntry]>) -> SuiteResult {
    let mut s = Suite::new("formula audit");
    match ledger {
        Ok(entries) => s.check(!entries.is_empty(), || "empty ledger".into()),
        Err(e) => s.check(false, || e.to_string()),
    }
    let d = config.precision_digits;
    let bits = bits_for_digits(d);
    let want = eval_atom(Atom::Zeta(4), d) * 17u32 / 4u32;
    let tol = ten_pow(bits, -20);
    if let Some(e) = s.check_result(closed::h2(2), "h2(2)") {
        if let Some(v) = s.check_result(value(&e, d), "evaluate h2(2)") {
            let err = Float::with_val(bits, &v - &want).abs();
            s.check(err <= tol, || format!("sum H_n^2/n^2 closed form off (17/4) zeta(4) by {err:.3e}"));
        }
    }
    let spec = SumSpec::new(Family::H2, &[2]).unwrap();
    if let Some(r) = s.check_result(direct_sum_with(&spec, &SumOptions::new(d, config.max_terms)), "direct sum") {
        let err = Float::with_val(bits, &r.extrapolated - &want).abs();
        s.check(err <= tol, || format!("direct sum of H_n^2/n^2 off (17/4) zeta(4) by {err:.3e}"));
    }
    s.finish()
}

/// Grid used by the self-test unless the full standard grid is requested.
fn quick_grids() -> Vec<SweepGrid> {
    Family::ALL.iter().map(|&f| SweepGrid::up_to(f, 2)).collect()
}

fn precision_soundness(config: &RunConfig, at_config: &[VerificationReport]) -> SuiteResult {
    let mut s = Suite::new("precision soundness");
    let low = RunConfig { precision_digits: config.tol_digits + 15, ..config.clone() };
    let (b, _) = sweep(&quick_grids(), &low);
    for (x, y) in at_config.iter().zip(&b) {
        s.check(x.verdict == y.verdict, || {
            format!("{}: {:?} at {} digits, {:?} at {}", x.spec, x.verdict, config.precision_digits, y.verdict, low.precision_digits)
        });
    }
    s.finish()
}

fn oracle_equivalence(name: &'static str, results: &[VerificationReport]) -> SuiteResult {
    let mut s = Suite::new(name);
    for r in results {
        match r.verdict {
            Verdict::Skipped => continue,
            v => s.check(v == Verdict::Pass, || {
                format!("{}: {}", r.spec, r.reason.clone().unwrap_or_else(|| "closed form outside tail bound".into()))
            }),
        }
    }
    s.finish()
}

/// Run every suite. `full` sweeps the standard grid instead of the quick one.
pub fn run(config: &RunConfig, full: bool) -> SelfTestReport {
    let ledger = typo_ledger();
    let (quick, _) = sweep(&quick_grids(), config);
    let suites = vec![
        golden("golden: hyperharmonic binomial sum", Family::HyperBinom, &[2, 5, 2], GOLDEN_HYPER_BINOM, config),
        golden("golden: shifted hyperharmonic sum", Family::HyperShifted, &[2, 4, 5, 2], GOLDEN_HYPER_SHIFTED, config),
        classical_anchors(config),
        structural_consistency(),
        finite_sum_duality(),
        exact_identities(),
        oracle_selftest(config),
        formula_audit(config, &ledger),
        precision_soundness(config, &quick),
        if full {
            oracle_equivalence("oracle equivalence (standard grid)", &sweep(&crate::grid::standard_grids(), config).0)
        } else {
            oracle_equivalence("oracle equivalence (grid up to 2)", &quick)
        },
    ];
    let passed = suites.iter().all(|s| s.passed);
    SelfTestReport {
        config: config.clone(),
        suites,
        typo_ledger: ledger.map(<[LedgerEntry]>::to_vec).unwrap_or_default(),
        passed,
    }
}
