use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, OnceLock, RwLock};

use rug::ops::PowAssign;
use rug::{Integer, Rational};

/// Grow-only table of prefix-computed values. Readers clone an `Arc` of the
/// current table; writers publish a longer table. Two racing writers compute
/// the same prefix, so whichever lands last is still correct.
struct Tables<K, V> {
    inner: RwLock<HashMap<K, Arc<Vec<V>>>>,
}

impl<K: Eq + Hash + Copy, V: Clone> Tables<K, V> {
    fn new() -> Self {
        Tables {
            inner: RwLock::new(HashMap::new()),
        }
    }

    fn get(&self, key: K, len: usize) -> Option<Arc<Vec<V>>> {
        let map = self.inner.read().expect("cache lock poisoned");
        map.get(&key).filter(|t| t.len() >= len).cloned()
    }

    fn current(&self, key: K) -> Option<Arc<Vec<V>>> {
        self.inner.read().expect("cache lock poisoned").get(&key).cloned()
    }

    fn publish(&self, key: K, table: Vec<V>) -> Arc<Vec<V>> {
        let table = Arc::new(table);
        let mut map = self.inner.write().expect("cache lock poisoned");
        match map.get(&key) {
            Some(existing) if existing.len() >= table.len() => existing.clone(),
            _ => {
                map.insert(key, table.clone());
                table
            }
        }
    }
}

fn harmonic_tables() -> &'static Tables<u32, Rational> {
    static T: OnceLock<Tables<u32, Rational>> = OnceLock::new();
    T.get_or_init(Tables::new)
}

fn hyper_tables() -> &'static Tables<u32, Rational> {
    static T: OnceLock<Tables<u32, Rational>> = OnceLock::new();
    T.get_or_init(Tables::new)
}

fn stirling_rows() -> &'static Tables<(u32, u32), Integer> {
    static T: OnceLock<Tables<(u32, u32), Integer>> = OnceLock::new();
    T.get_or_init(Tables::new)
}

fn bernoulli_numbers() -> &'static Tables<(), Rational> {
    static T: OnceLock<Tables<(), Rational>> = OnceLock::new();
    T.get_or_init(Tables::new)
}

/// Table entry `n` is `H_n^(r)`, `r >= 1`.
fn harmonic_prefix(r: u32, n: usize) -> Arc<Vec<Rational>> {
    let tables = harmonic_tables();
    if let Some(t) = tables.get(r, n + 1) {
        return t;
    }
    let mut table: Vec<Rational> = tables
        .current(r)
        .map(|t| t.as_ref().clone())
        .unwrap_or_else(|| vec![Rational::new()]);
    let target = (n + 1).max(2 * table.len()).max(32);
    while table.len() < target {
        let k = table.len() as u64;
        let mut den = Integer::from(k);
        den.pow_assign(r);
        let next = table.last().unwrap() + Rational::from((Integer::from(1), den));
        table.push(next);
    }
    tables.publish(r, table)
}

pub(super) fn harmonic_table(r: u32, n: usize) -> Rational {
    harmonic_prefix(r, n)[n].clone()
}

fn hyper_prefix(r: u32, n: usize) -> Arc<Vec<Rational>> {
    if r == 1 {
        return harmonic_prefix(1, n);
    }
    let tables = hyper_tables();
    if let Some(t) = tables.get(r, n + 1) {
        return t;
    }
    let target = (n + 1).max(32);
    let lower = hyper_prefix(r - 1, target - 1);
    let mut table = Vec::with_capacity(target);
    table.push(Rational::new());
    for k in 1..target {
        let next = Rational::from(&table[k - 1] + &lower[k]);
        table.push(next);
    }
    tables.publish(r, table)
}

pub(super) fn hyperharmonic_table(r: u32, n: usize) -> Rational {
    hyper_prefix(r, n)[n].clone()
}

/// Coefficients of `(x+r)(x+r+1)...(x+r+n-1)`, lowest degree first.
pub(super) fn stirling_row(n: u32, r: u32) -> Arc<Vec<Integer>> {
    let tables = stirling_rows();
    if let Some(t) = tables.get((n, r), 0) {
        return t;
    }
    let mut poly = vec![Integer::from(1)];
    for i in 0..n {
        let shift = Integer::from(r + i);
        let mut next = vec![Integer::new(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] += Integer::from(c * &shift);
        }
        poly = next;
    }
    tables.publish((n, r), poly)
}

pub(super) fn bernoulli_table(n: usize) -> Rational {
    let tables = bernoulli_numbers();
    if let Some(t) = tables.get((), n + 1) {
        return t[n].clone();
    }
    let mut table: Vec<Rational> = tables
        .current(())
        .map(|t| t.as_ref().clone())
        .unwrap_or_else(|| vec![Rational::from(1)]);
    let target = (n + 1).max(2 * table.len());
    while table.len() < target {
        // B_m = -1/(m+1) * sum_{k<m} C(m+1,k) B_k
        let m = table.len() as u32;
        let mut acc = Rational::new();
        for (k, b) in table.iter().enumerate() {
            let c = Integer::from(Integer::binomial_u(m + 1, k as u32));
            acc += Rational::from(b * &c);
        }
        acc /= m + 1;
        table.push(-acc);
    }
    tables.publish((), table)[n].clone()
}
