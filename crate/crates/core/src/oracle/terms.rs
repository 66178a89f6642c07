//! General terms of every family, exactly and as a floating-point stream.

use rug::ops::{Pow, PowAssign};
use rug::{Float, Integer, Rational};

use crate::error::{invalid, Result};
use crate::exact::{harmonic, hyperharmonic_any, hyperharmonic_neg};
use crate::sumspec::{Family, SumSpec};

/// Exact general term. Only the Hurwitz family has a non-zero
/// `zeta_coeff`: its term is `rational + zeta_coeff * zeta(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactTerm {
    pub rational: Rational,
    pub zeta_coeff: Rational,
}

impl ExactTerm {
    fn rational(q: Rational) -> Self {
        ExactTerm { rational: q, zeta_coeff: Rational::new() }
    }
}

/// What multiplies the rational weight.
#[derive(Debug, Clone, Copy)]
enum Numer {
    One,
    H,
    H2,
    /// `h_n^(r)` of any integer order (`1/n` at order zero).
    Hyper(i64),
    HyperH(u32),
    Pair(u32, u32),
    /// `zeta(p, n) = zeta(p) - H_{n-1}^(p)`.
    HurwitzTail(u32),
}

fn numer(spec: &SumSpec) -> Numer {
    use Family::*;
    let v = spec.params();
    match spec.family() {
        InvBinom | InvShiftBinom | InvTwoShiftBinom | Mu => Numer::One,
        HBinom | HShiftBinom | HLinear | EulerLinR1 | ShiftedHBinom | ShiftedHTop | XuLiShifted => {
            Numer::H
        }
        H2 | H2Linear | H2Binom => Numer::H2,
        Hes => Numer::Hyper(v[0] + 1),
        NegEuler | NegHyperBinom => Numer::Hyper(-v[0]),
        HyperBinom | HyperShifted | HyperLinearBinom => Numer::Hyper(v[0]),
        HyperHBinom => Numer::HyperH(v[0] as u32),
        HyperPairBinom => Numer::Pair(v[0] as u32, v[1] as u32),
        HurwitzSeries => Numer::HurwitzTail(v[0] as u32),
    }
}

fn ipow(b: i64, e: i64) -> Integer {
    Integer::from(b).pow(e as u32)
}

fn binom(n: i64, k: i64) -> Integer {
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

/// Rational weight `num/den` of the `n`-th term, or `None` below range.
fn weight(spec: &SumSpec, n: u64) -> Option<(Integer, Integer)> {
    use Family::*;
    let v = spec.params();
    let n = n as i64;
    if (n as u64) < spec.start() {
        return None;
    }
    let one = Integer::from(1);
    let den = match spec.family() {
        InvBinom | HBinom | H2Binom => ipow(n, v[0]) * binom(n + v[1], v[1]),
        InvShiftBinom | HShiftBinom => ipow(n, v[0]) * (n + v[1]) * binom(n + v[2], v[2]),
        InvTwoShiftBinom => ipow(n, v[0]) * (n + v[1]) * (n + v[2]) * binom(n + v[3], v[3]),
        HLinear | Mu => ipow(n, v[0]) * (n + v[1]),
        H2 | EulerLinR1 => ipow(n, v[0]),
        H2Linear => Integer::from(n) * (n + v[0]),
        Hes | NegEuler => ipow(n, v[1]),
        HyperBinom | HyperHBinom | NegHyperBinom => ipow(n, v[1]) * binom(n + v[2], v[2]),
        HyperShifted => {
            let (m, p, l) = (v[1], v[2], v[3]);
            ipow(n + m, p) * binom(n + m + l, l)
        }
        HyperLinearBinom => ipow(n, v[1]) * (n + v[2]) * binom(n + v[3], v[3]),
        HyperPairBinom => ipow(n, v[2]) * binom(n + v[3], v[3]),
        HurwitzSeries => Integer::from(n + v[1]),
        ShiftedHBinom => ipow(n - v[1], v[0]) * binom(n + v[2], v[2]),
        ShiftedHTop => {
            let (p, q, l) = (v[0], v[1], v[2]);
            return Some((binom(n, q), ipow(n - l - q, p)));
        }
        XuLiShifted => ipow(n - v[1], v[0]),
    };
    Some((one, den))
}

/// Exact `n`-th term of the series (`n >= 1`); zero below the family's
/// summation range.
pub fn term(spec: &SumSpec, n: u64) -> Result<ExactTerm> {
    if n == 0 {
        return Err(invalid("term index starts at 1"));
    }
    let Some((num, den)) = weight(spec, n) else {
        return Ok(ExactTerm::rational(Rational::new()));
    };
    let w = Rational::from((num, den));
    let x = match numer(spec) {
        Numer::One => Rational::from(1),
        Numer::H => harmonic(n, 1),
        Numer::H2 => Rational::from(harmonic(n, 1).square_ref()),
        Numer::Hyper(r) => hyperharmonic_any(n, r),
        Numer::HyperH(r) => hyperharmonic_any(n, i64::from(r)) * harmonic(n, 1),
        Numer::Pair(r, q) => hyperharmonic_any(n, i64::from(r)) * hyperharmonic_any(n, i64::from(q)),
        Numer::HurwitzTail(p) => {
            return Ok(ExactTerm {
                rational: -(harmonic(n - 1, p) * &w),
                zeta_coeff: w,
            })
        }
    };
    Ok(ExactTerm::rational(x * w))
}

/// Floating-point terms `t_1, t_2, ...` in order, carrying harmonic and
/// hyperharmonic numbers incrementally.
pub(crate) struct TermStream {
    spec: SumSpec,
    numer: Numer,
    bits: u32,
    n: u64,
    /// `hs[k] = h_n^(k)` for `1 <= k < hs.len()`.
    hs: Vec<Float>,
    /// `zeta(p) - H_{n-1}^(p)` for the Hurwitz family.
    hurwitz: Option<(u32, Float)>,
}

impl TermStream {
    /// `zeta_p` must be supplied (at `bits`) for the Hurwitz family.
    pub(crate) fn new(spec: &SumSpec, bits: u32, zeta_p: Option<Float>) -> Self {
        let numer = numer(spec);
        let order = match numer {
            Numer::H | Numer::H2 => 1,
            Numer::Hyper(r) => r.max(0) as usize,
            Numer::HyperH(r) => (r as usize).max(1),
            Numer::Pair(r, q) => r.max(q) as usize,
            Numer::One | Numer::HurwitzTail(_) => 0,
        };
        let hurwitz = match numer {
            Numer::HurwitzTail(p) => Some((p, zeta_p.expect("hurwitz stream needs zeta(p)"))),
            _ => None,
        };
        TermStream {
            spec: spec.clone(),
            numer,
            bits,
            n: 0,
            hs: vec![Float::new(bits); order + 1],
            hurwitz,
        }
    }

    /// Index of the term returned by the last call to `next_term`.
    pub(crate) fn index(&self) -> u64 {
        self.n
    }

    pub(crate) fn next_term(&mut self) -> Float {
        self.n += 1;
        let n = self.n;
        let b = self.bits;
        if self.hs.len() > 1 {
            self.hs[1] += Float::with_val(b, 1) / n;
            for k in 2..self.hs.len() {
                let (lo, hi) = self.hs.split_at_mut(k);
                hi[0] += &lo[k - 1];
            }
        }
        let hurwitz_now = self.hurwitz.as_mut().map(|(p, z)| {
            let cur = z.clone();
            let mut np = Float::with_val(b, n);
            np.pow_assign(*p);
            *z -= np.recip();
            cur
        });
        let Some((num, den)) = weight(&self.spec, n) else {
            return Float::new(b);
        };
        let x = match self.numer {
            Numer::One => Float::with_val(b, 1),
            Numer::H => self.hs[1].clone(),
            Numer::H2 => Float::with_val(b, self.hs[1].square_ref()),
            Numer::Hyper(r) if r >= 1 => self.hs[r as usize].clone(),
            Numer::Hyper(0) => Float::with_val(b, 1) / n,
            Numer::Hyper(r) => {
                let s = (-r) as u64;
                if n > s {
                    // (-1)^s / ((n-s) C(n,s))
                    let d = binom(n as i64, s as i64) * (n - s);
                    let mut f = Float::with_val(b, 1) / d;
                    if s % 2 == 1 {
                        f = -f;
                    }
                    f
                } else {
                    Float::with_val(b, &hyperharmonic_neg(n, s as u32))
                }
            }
            Numer::HyperH(r) => Float::with_val(b, &self.hs[r as usize] * &self.hs[1]),
            Numer::Pair(r, q) => Float::with_val(b, &self.hs[r as usize] * &self.hs[q as usize]),
            Numer::HurwitzTail(_) => hurwitz_now.expect("hurwitz state"),
        };
        let mut t = x * num;
        t /= den;
        t
    }
}
