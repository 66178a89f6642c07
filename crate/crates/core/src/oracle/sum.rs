//! Partial sums with tail bounds, and Richardson extrapolation for slowly
//! convergent series.

use std::fmt;

use rug::ops::{Pow, PowAssign};
use rug::Float;
use serde::{Serialize, Serializer};

use super::terms::TermStream;
use super::zeta::zeta;
use crate::algebra::bits_for_digits;
use crate::error::{invalid, Error, Result};
use crate::sumspec::{Family, SumSpec};

/// Smallest budget for which the integral-comparison tail model is trusted.
pub const MIN_TERMS: u64 = 1000;

/// Asymptotic shape of the terms: `t_n ~ ln(n)^log_power / n^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decay {
    pub exponent: i64,
    pub log_power: u32,
}

impl Decay {
    pub fn of(spec: &SumSpec) -> Decay {
        Decay { exponent: spec.decay(), log_power: spec.log_power() }
    }

    pub fn is_slow(&self) -> bool {
        self.exponent < 3
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Plain,
    Accelerated,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Plain => "plain",
            Mode::Accelerated => "accelerated",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SumOptions {
    pub digits: u32,
    pub max_terms: u64,
    /// `None` picks accelerated mode exactly for slow series.
    pub mode: Option<Mode>,
    /// Fail with [`Error::BudgetExceeded`] unless the tail bound reaches
    /// `10^-target_digits`.
    pub target_digits: Option<u32>,
}

impl SumOptions {
    pub fn new(digits: u32, max_terms: u64) -> Self {
        SumOptions { digits, max_terms, mode: None, target_digits: None }
    }
}

/// Outcome of a direct summation.
///
/// `partial_sum` is the estimate of the full series: the raw partial sum in
/// plain mode and the extrapolated limit in accelerated mode. `tail_bound`
/// is an engineering bound on `|true - partial_sum|` under the decay model
/// (integral comparison with a safety factor of two, and in accelerated
/// mode at least ten times the last extrapolation increment); it is not a
/// rigorous enclosure.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub partial_sum: Float,
    pub raw_partial_sum: Float,
    pub tail_bound: Float,
    pub terms_used: u64,
    pub mode: Mode,
    /// Richardson estimate of the limit and the change from the next-lower
    /// fitting order, computed in both modes.
    pub extrapolated: Float,
    pub increment: Float,
    pub digits: u32,
}

pub(crate) fn float_string(x: &Float, digits: u32) -> String {
    x.to_string_radix(10, Some(digits as usize))
}

impl Serialize for OracleResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let d = self.digits;
        let mut st = s.serialize_struct("OracleResult", 7)?;
        st.serialize_field("partial_sum", &float_string(&self.partial_sum, d))?;
        st.serialize_field("raw_partial_sum", &float_string(&self.raw_partial_sum, d))?;
        st.serialize_field("tail_bound", &float_string(&self.tail_bound, 6))?;
        st.serialize_field("terms_used", &self.terms_used)?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("extrapolated", &float_string(&self.extrapolated, d))?;
        st.serialize_field("increment", &float_string(&self.increment, 6))?;
        st.end()
    }
}

/// Working precision of the summation for `digits` output digits.
fn work_bits(digits: u32) -> u32 {
    bits_for_digits(digits) + 64
}

/// Sum `term(n)` for `n = 1 ..= start - 1 + max_terms` (terms below `start`
/// are expected to be zero) and attach tail bounds.
pub fn sum_series(
    start: u64,
    decay: Decay,
    opts: &SumOptions,
    mut term: impl FnMut(u64) -> Float,
) -> Result<OracleResult> {
    if decay.exponent < 2 {
        return Err(Error::NonConvergent(format!(
            "terms decay like n^-{}, need an exponent above one",
            decay.exponent
        )));
    }
    if opts.max_terms < MIN_TERMS {
        return Err(invalid(format!(
            "max_terms {} is below the minimum {MIN_TERMS}",
            opts.max_terms
        )));
    }
    if opts.digits < 20 {
        return Err(invalid(format!("precision {} is below 20 digits", opts.digits)));
    }
    let bits = work_bits(opts.digits);
    let last = start - 1 + opts.max_terms;
    let fit = FitPlan::new(start, last, decay);
    let mut checkpoints = fit.nodes.iter().rev().copied().peekable();
    let mut samples = Vec::with_capacity(fit.nodes.len());
    let mut sum = Float::with_val(bits, 0);
    let mut t = Float::new(bits);
    for n in 1..=last {
        t = term(n);
        sum += &t;
        if checkpoints.peek() == Some(&n) {
            checkpoints.next();
            samples.push(sum.clone());
        }
    }
    samples.reverse();
    let mode = opts.mode.unwrap_or(if decay.is_slow() { Mode::Accelerated } else { Mode::Plain });

    // sum_{n>N} t_n <= |t_N| N / (d-1), doubled for logarithmic factors
    let mut plain = Float::with_val(bits, t.abs_ref());
    plain *= last;
    plain /= (decay.exponent - 1) as u32;
    plain *= 2u32;

    let (extrapolated, increment) = fit.extrapolate(&samples, bits);
    let (partial_sum, tail_bound) = match mode {
        Mode::Plain => (sum.clone(), plain),
        Mode::Accelerated => {
            let ten_inc = Float::with_val(bits, &increment * 10u32);
            (extrapolated.clone(), plain.max(&ten_inc))
        }
    };
    if let Some(target) = opts.target_digits {
        let goal = Float::with_val(bits, 10u32).pow(-(target as i32));
        if tail_bound > goal {
            return Err(Error::BudgetExceeded {
                bound: float_string(&tail_bound, 6),
                target: format!("1e-{target}"),
                terms: opts.max_terms,
            });
        }
    }
    let out = |x: Float| Float::with_val(bits_for_digits(opts.digits), x);
    Ok(OracleResult {
        partial_sum: out(partial_sum),
        raw_partial_sum: out(sum),
        tail_bound: out(tail_bound),
        terms_used: opts.max_terms,
        mode,
        extrapolated: out(extrapolated),
        increment: out(increment),
        digits: opts.digits,
    })
}

/// Brute-force sum of a family's series with default mode selection.
pub fn direct_sum(spec: &SumSpec, max_terms: u64, digits: u32) -> Result<OracleResult> {
    direct_sum_with(spec, &SumOptions::new(digits, max_terms))
}

pub fn direct_sum_with(spec: &SumSpec, opts: &SumOptions) -> Result<OracleResult> {
    let bits = work_bits(opts.digits);
    let zeta_p = match spec.family() {
        Family::HurwitzSeries => Some(zeta(spec.params()[0] as u32, bits + 64)),
        _ => None,
    };
    // the Hurwitz tail zeta(p) - H_{n-1}^(p) cancels about log10(N^(p-1))
    // digits, so that stream carries extra guard bits
    let stream_bits = if zeta_p.is_some() { bits + 64 } else { bits };
    let mut stream = TermStream::new(spec, stream_bits, zeta_p);
    sum_series(spec.start(), Decay::of(spec), opts, |n| {
        let t = stream.next_term();
        debug_assert_eq!(stream.index(), n);
        Float::with_val(bits, t)
    })
}

/// Checkpoints and basis for fitting
/// `S_N = S + sum_{k0 <= k < k0+K} sum_{i <= L} c_{k,i} ln(N)^i / N^k`.
struct FitPlan {
    /// Largest first.
    nodes: Vec<u64>,
    k0: i64,
    orders: usize,
    logs: u32,
}

impl FitPlan {
    fn new(start: u64, last: u64, decay: Decay) -> Self {
        let logs = decay.log_power;
        let orders = match logs {
            0 => 10,
            1 => 7,
            _ => 5,
        };
        let unknowns = 1 + orders * (logs as usize + 1);
        let low = (last / 40).max(start + 8);
        let ratio = (last as f64 / low as f64).powf(1.0 / (unknowns - 1) as f64);
        let mut nodes = Vec::with_capacity(unknowns);
        let mut x = last as f64;
        for _ in 0..unknowns {
            let n = (x.round() as u64).max(start);
            if nodes.last().is_none_or(|&prev| n < prev) {
                nodes.push(n);
            } else {
                nodes.push(nodes.last().unwrap() - 1);
            }
            x /= ratio;
        }
        FitPlan { nodes, k0: (decay.exponent - 1).max(1), orders, logs }
    }

    fn basis(&self, n: u64, orders: usize, bits: u32) -> Vec<Float> {
        let nf = Float::with_val(bits, n);
        let ln = Float::with_val(bits, nf.ln_ref());
        let mut row = vec![Float::with_val(bits, 1)];
        let mut inv = Float::with_val(bits, 1) / &nf;
        inv.pow_assign(self.k0 as u32);
        for _ in 0..orders {
            let mut v = inv.clone();
            for _ in 0..=self.logs {
                row.push(v.clone());
                v *= &ln;
            }
            inv /= &nf;
        }
        row
    }

    /// Limit estimate from the order-`K` fit and `|fit_K - fit_{K-1}|`.
    fn extrapolate(&self, samples: &[Float], bits: u32) -> (Float, Float) {
        let wb = bits + 64;
        let solve_order = |orders: usize| {
            let size = 1 + orders * (self.logs as usize + 1);
            let rows: Vec<Vec<Float>> = self.nodes[..size]
                .iter()
                .map(|&n| self.basis(n, orders, wb))
                .collect();
            let rhs: Vec<Float> = samples[..size].iter().map(|s| Float::with_val(wb, s)).collect();
            solve(rows, rhs)
        };
        let hi = solve_order(self.orders);
        let lo = solve_order(self.orders - 1);
        let inc = Float::with_val(wb, &hi - &lo).abs();
        (Float::with_val(bits, hi), Float::with_val(bits, inc))
    }
}

/// First component of the solution of `a x = b` (Gaussian elimination with
/// partial pivoting).
fn solve(mut a: Vec<Vec<Float>>, mut b: Vec<Float>) -> Float {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| {
                let (x, y) = (a[i][col].clone().abs(), a[j][col].clone().abs());
                x.partial_cmp(&y).expect("NaN in extrapolation matrix")
            })
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = Float::with_val(a[row][col].prec(), &a[row][col] / &a[col][col]);
            for k in col..n {
                let sub = Float::with_val(f.prec(), &f * &a[col][k]);
                a[row][k] -= sub;
            }
            let sub = Float::with_val(f.prec(), &f * &b[col]);
            b[row] -= sub;
        }
    }
    let mut x = vec![Float::new(b[0].prec()); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..n {
            acc -= Float::with_val(acc.prec(), &a[row][k] * &x[k]);
        }
        x[row] = acc / &a[row][row];
    }
    x.swap_remove(0)
}
