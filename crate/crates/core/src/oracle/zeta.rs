//! Numeric zeta values, Hurwitz zeta values and linear Euler sums.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::ops::PowAssign;
use rug::{Float, Integer};

use crate::algebra::{Atom, AtomEval};
use crate::error::Result;
use crate::exact::{bernoulli, factorial, harmonic};

/// Shift below which Euler–Maclaurin is started: its error is roughly
/// `exp(-2 pi x)`, so `x ~ bits/6` leaves ample margin.
fn em_cutoff(bits: u32) -> u64 {
    u64::from(bits) / 6 + 10
}

/// Hurwitz zeta `zeta(s, a) = sum_{n>=0} (n+a)^-s` for integers `s >= 2`,
/// `a >= 1`, by Euler–Maclaurin summation.
pub fn hurwitz(s: u32, a: u64, bits: u32) -> Float {
    assert!(s >= 2 && a >= 1, "hurwitz needs s >= 2, a >= 1");
    let wb = bits + 32;
    let x0 = a.max(em_cutoff(bits));
    let mut sum = Float::with_val(wb, 0);
    for n in a..x0 {
        let mut t = Float::with_val(wb, n);
        t.pow_assign(s);
        t.recip_mut();
        sum += t;
    }
    let x = Float::with_val(wb, x0);
    // x^(1-s)/(s-1) + x^(-s)/2
    let mut xs = x.clone();
    xs.pow_assign(s);
    xs.recip_mut();
    sum += Float::with_val(wb, &xs * &x) / (s - 1);
    sum += Float::with_val(wb, &xs / 2u32);
    let eps = Float::with_val(wb, Float::i_exp(1, -(wb as i32)));
    let x2 = Float::with_val(wb, x.square_ref());
    // sum_k B_2k/(2k)! (s)_(2k-1) x^(-s-2k+1)
    let mut xpow = Float::with_val(wb, &xs / &x);
    let mut poch = Integer::from(s);
    let mut last = None::<Float>;
    for k in 1u32.. {
        let coeff = bernoulli(2 * k) / factorial(2 * k);
        let mut term = Float::with_val(wb, &coeff);
        term *= &poch;
        term *= &xpow;
        let mag = Float::with_val(wb, term.abs_ref());
        if let Some(prev) = &last {
            if mag > *prev {
                break;
            }
        }
        sum += &term;
        if mag < eps {
            break;
        }
        last = Some(mag);
        poch *= (s + 2 * k - 1) * (s + 2 * k);
        xpow /= &x2;
    }
    Float::with_val(bits, sum)
}

/// Riemann zeta `zeta(s)` for integer `s >= 2`.
pub fn zeta(s: u32, bits: u32) -> Float {
    hurwitz(s, 1, bits)
}

/// Linear Euler sum `sum_n H_n^(r) / n^p`, `r >= 1`, `p >= 2`.
///
/// A direct head up to `N` plus the tail
/// `sum_{n>N} (zeta(r) - zeta(r, n+1)) / n^p`, where `zeta(r, n+1)` is
/// replaced by its asymptotic expansion in `1/n` and each power is summed
/// as a Hurwitz zeta value.
pub fn euler_lin(r: u32, p: u32, bits: u32) -> Float {
    assert!(r >= 1 && p >= 2, "euler_lin needs r >= 1, p >= 2");
    let wb = bits + 32;
    let big_n = em_cutoff(bits) + 20;
    let mut head = Float::with_val(wb, 0);
    let mut hn = Float::with_val(wb, 0);
    for n in 1..=big_n {
        let mut t = Float::with_val(wb, n);
        t.pow_assign(r);
        t.recip_mut();
        hn += t;
        let mut np = Float::with_val(wb, n);
        np.pow_assign(p);
        head += Float::with_val(wb, &hn / &np);
    }
    let a = big_n + 1;
    let tail_zeta = |s: u32| hurwitz(s, a, wb);
    let mut tail = Float::with_val(wb, 0);
    if r == 1 {
        // zeta(1) diverges; instead
        // sum_{n>N} H_n/n^p = H_N zeta(p, N+1) + sum_{m>N} zeta(p, m)/m
        let hn_exact = Float::with_val(wb, &harmonic(big_n, 1));
        tail += Float::with_val(wb, &hn_exact * &tail_zeta(p));
        tail += shifted_reciprocal_tail(p, a, wb);
    } else {
        let zr = zeta(r, wb);
        tail += Float::with_val(wb, &zr * &tail_zeta(p));
        // zeta(r, n+1) ~ n^(1-r)/(r-1) - n^-r/2 + sum_k B_2k/(2k)! (r)_(2k-1) n^(-r-2k+1)
        let mut expansion = Float::with_val(wb, tail_zeta(p + r - 1) / (r - 1));
        expansion -= Float::with_val(wb, tail_zeta(p + r) / 2u32);
        let eps = Float::with_val(wb, Float::i_exp(1, -(wb as i32)));
        let mut poch = Integer::from(r);
        let mut last = None::<Float>;
        for k in 1u32.. {
            let coeff = bernoulli(2 * k) / factorial(2 * k);
            let mut term = Float::with_val(wb, &coeff);
            term *= &poch;
            term *= tail_zeta(p + r + 2 * k - 1);
            let mag = Float::with_val(wb, term.abs_ref());
            if let Some(prev) = &last {
                if mag > *prev {
                    break;
                }
            }
            expansion += &term;
            if mag < eps {
                break;
            }
            last = Some(mag);
            poch *= (r + 2 * k - 1) * (r + 2 * k);
        }
        tail -= expansion;
    }
    Float::with_val(bits, head + tail)
}

/// `sum_{m >= a} zeta(p, m) / m`, from the asymptotic expansion
/// `zeta(p, m) ~ m^(1-p)/(p-1) + m^-p/2 + sum_k B_2k/(2k)! (p)_(2k-1) m^(-p-2k+1)`.
fn shifted_reciprocal_tail(p: u32, a: u64, wb: u32) -> Float {
    let z = |s: u32| hurwitz(s, a, wb);
    let mut acc = Float::with_val(wb, z(p) / (p - 1));
    acc += Float::with_val(wb, z(p + 1) / 2u32);
    let eps = Float::with_val(wb, Float::i_exp(1, -(wb as i32)));
    let mut poch = Integer::from(p);
    let mut last = None::<Float>;
    for k in 1u32.. {
        let coeff = bernoulli(2 * k) / factorial(2 * k);
        let mut term = Float::with_val(wb, &coeff);
        term *= &poch;
        term *= z(p + 2 * k);
        let mag = Float::with_val(wb, term.abs_ref());
        if let Some(prev) = &last {
            if mag > *prev {
                break;
            }
        }
        acc += &term;
        if mag < eps {
            break;
        }
        last = Some(mag);
        poch *= (p + 2 * k - 1) * (p + 2 * k);
    }
    acc
}

/// Atom evaluator with a process-wide cache keyed by atom and precision.
#[derive(Default)]
pub struct AtomOracle {
    cache: Mutex<HashMap<(Atom, u32), Float>>,
}

impl AtomOracle {
    pub fn global() -> &'static AtomOracle {
        static O: OnceLock<AtomOracle> = OnceLock::new();
        O.get_or_init(AtomOracle::default)
    }
}

impl AtomEval for AtomOracle {
    fn eval_atom(&self, atom: Atom, bits: u32) -> Result<Float> {
        if let Some(v) = self.cache.lock().expect("atom cache poisoned").get(&(atom, bits)) {
            return Ok(v.clone());
        }
        let v = match atom {
            Atom::Zeta(k) => zeta(k, bits),
            Atom::EulerLin(r, p) => euler_lin(r, p, bits),
        };
        self.cache
            .lock()
            .expect("atom cache poisoned")
            .insert((atom, bits), v.clone());
        Ok(v)
    }
}
