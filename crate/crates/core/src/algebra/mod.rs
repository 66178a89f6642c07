//! Canonical symbolic expressions over zeta values.
//!
//! A [`ZetaExpr`] is a finite rational-linear combination of monomials in
//! two kinds of atoms: Riemann zeta values `zeta(k)` (`k >= 2`) and linear
//! Euler sums `zeta_{H^(r)}(p) = sum H_n^(r) / n^p` (`r, p >= 2`). The
//! representation is a sorted map from atom multisets to non-zero
//! coefficients, so two expressions are equal exactly when their normal
//! forms are. Linear Euler sums of order one never survive as atoms; they
//! are rewritten through Euler's reduction on construction.

mod eval;
mod render;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, not_reducible, Result};

pub use eval::{bits_for_digits, eval_expr, AtomEval};
pub use render::{parse_text, render, DisplayExpr, DisplayTerm, Format};

/// A transcendental building block of a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Atom {
    /// `zeta(k)`, `k >= 2`.
    Zeta(u32),
    /// `zeta_{H^(r)}(p) = sum_n H_n^(r) / n^p`, `r >= 2`, `p >= 2`.
    #[serde(rename = "eulerlin")]
    EulerLin(u32, u32),
}

impl Atom {
    pub fn zeta(k: i64) -> Result<Atom> {
        if k < 2 {
            return Err(not_reducible(format!("zeta({k}) is not a finite constant")));
        }
        Ok(Atom::Zeta(k as u32))
    }

    /// Linear Euler sum atom; order one is rejected because it always reduces.
    pub fn euler_lin(r: i64, p: i64) -> Result<Atom> {
        if r < 2 {
            return Err(invalid(format!(
                "linear Euler sum atom needs order >= 2, got {r}"
            )));
        }
        if p < 2 {
            return Err(not_reducible(format!(
                "linear Euler sum with exponent {p} diverges"
            )));
        }
        Ok(Atom::EulerLin(r as u32, p as u32))
    }

    fn validate(self) -> Result<Atom> {
        match self {
            Atom::Zeta(k) => Atom::zeta(i64::from(k)),
            Atom::EulerLin(r, p) => Atom::euler_lin(i64::from(r), i64::from(p)),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Zeta(k) => write!(f, "zeta({k})"),
            Atom::EulerLin(r, p) => write!(f, "eulerlin({r},{p})"),
        }
    }
}

/// `coeff * prod(atoms)`; an empty atom list is the constant monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Rational,
    pub atoms: Vec<Atom>,
}

impl Monomial {
    pub fn new(coeff: Rational, mut atoms: Vec<Atom>) -> Self {
        atoms.sort_unstable();
        Monomial { coeff, atoms }
    }

    pub fn constant(coeff: Rational) -> Self {
        Monomial {
            coeff,
            atoms: Vec::new(),
        }
    }
}

/// Normalized rational-linear combination of atom monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ZetaExpr {
    terms: BTreeMap<Vec<Atom>, Rational>,
}

/// Merge, sort and drop zero coefficients.
pub fn normalize(raw: impl IntoIterator<Item = Monomial>) -> ZetaExpr {
    let mut e = ZetaExpr::zero();
    for m in raw {
        let Monomial { coeff, mut atoms } = m;
        atoms.sort_unstable();
        e.add_term(atoms, coeff);
    }
    e
}

impl ZetaExpr {
    pub fn zero() -> Self {
        ZetaExpr::default()
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        let mut e = ZetaExpr::zero();
        e.add_term(Vec::new(), c.into());
        e
    }

    pub fn atom(a: Atom) -> Self {
        let mut e = ZetaExpr::zero();
        e.add_term(vec![a], Rational::from(1));
        e
    }

    /// `zeta(k)`; fails for `k < 2`.
    pub fn zeta(k: i64) -> Result<Self> {
        Ok(ZetaExpr::atom(Atom::zeta(k)?))
    }

    /// `zeta_{H^(r)}(p)`, with order one reduced by Euler's identity.
    pub fn euler_lin(r: i64, p: i64) -> Result<Self> {
        if r == 1 {
            return euler_reduce(p).map_err(|_| not_reducible(format!("zeta_H({p}) diverges")));
        }
        Ok(ZetaExpr::atom(Atom::euler_lin(r, p)?))
    }

    fn add_term(&mut self, atoms: Vec<Atom>, coeff: Rational) {
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(atoms) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of monomials in normal form.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Monomials in canonical order (constant term first).
    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(atoms, c)| Monomial {
            coeff: c.clone(),
            atoms: atoms.clone(),
        })
    }

    pub(crate) fn terms(&self) -> impl Iterator<Item = (&Vec<Atom>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, atoms: &[Atom]) -> Rational {
        let mut key = atoms.to_vec();
        key.sort_unstable();
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&[])
    }

    /// The rational value when no atoms are present.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::new()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Every distinct atom that occurs in the expression.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out: Vec<Atom> = self.terms.keys().flatten().copied().collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn scale(&self, c: &Rational) -> ZetaExpr {
        if *c == 0 {
            return ZetaExpr::zero();
        }
        ZetaExpr {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), Rational::from(v * c)))
                .collect(),
        }
    }

    /// In-place `self += c * other`.
    pub fn add_scaled(&mut self, other: &ZetaExpr, c: &Rational) {
        if *c == 0 {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), Rational::from(v * c));
        }
    }

    pub fn add_constant(&mut self, c: Rational) {
        self.add_term(Vec::new(), c);
    }

    fn product(&self, other: &ZetaExpr) -> ZetaExpr {
        let mut out = ZetaExpr::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let mut atoms = Vec::with_capacity(ka.len() + kb.len());
                atoms.extend_from_slice(ka);
                atoms.extend_from_slice(kb);
                atoms.sort_unstable();
                out.add_term(atoms, Rational::from(va * vb));
            }
        }
        out
    }

    /// Check the structural invariants; used on deserialized input.
    fn validated(self) -> Result<ZetaExpr> {
        for atoms in self.terms.keys() {
            for a in atoms {
                a.validate()?;
            }
        }
        Ok(self)
    }
}

impl fmt::Display for ZetaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, Format::Text, false))
    }
}

impl From<Rational> for ZetaExpr {
    fn from(c: Rational) -> Self {
        ZetaExpr::constant(c)
    }
}

impl From<Atom> for ZetaExpr {
    fn from(a: Atom) -> Self {
        ZetaExpr::atom(a)
    }
}

impl AddAssign<&ZetaExpr> for ZetaExpr {
    fn add_assign(&mut self, rhs: &ZetaExpr) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), v.clone());
        }
    }
}

impl AddAssign for ZetaExpr {
    fn add_assign(&mut self, rhs: ZetaExpr) {
        for (k, v) in rhs.terms {
            self.add_term(k, v);
        }
    }
}

impl SubAssign<&ZetaExpr> for ZetaExpr {
    fn sub_assign(&mut self, rhs: &ZetaExpr) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), Rational::from(-v));
        }
    }
}

impl SubAssign for ZetaExpr {
    fn sub_assign(&mut self, rhs: ZetaExpr) {
        *self -= &rhs;
    }
}

impl Add for ZetaExpr {
    type Output = ZetaExpr;
    fn add(mut self, rhs: ZetaExpr) -> ZetaExpr {
        self += rhs;
        self
    }
}

impl Add<&ZetaExpr> for &ZetaExpr {
    type Output = ZetaExpr;
    fn add(self, rhs: &ZetaExpr) -> ZetaExpr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for ZetaExpr {
    type Output = ZetaExpr;
    fn sub(mut self, rhs: ZetaExpr) -> ZetaExpr {
        self -= &rhs;
        self
    }
}

impl Sub<&ZetaExpr> for &ZetaExpr {
    type Output = ZetaExpr;
    fn sub(self, rhs: &ZetaExpr) -> ZetaExpr {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for ZetaExpr {
    type Output = ZetaExpr;
    fn neg(self) -> ZetaExpr {
        ZetaExpr {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl Mul for ZetaExpr {
    type Output = ZetaExpr;
    fn mul(self, rhs: ZetaExpr) -> ZetaExpr {
        self.product(&rhs)
    }
}

impl Mul<&ZetaExpr> for &ZetaExpr {
    type Output = ZetaExpr;
    fn mul(self, rhs: &ZetaExpr) -> ZetaExpr {
        self.product(rhs)
    }
}

impl Mul<&Rational> for ZetaExpr {
    type Output = ZetaExpr;
    fn mul(self, rhs: &Rational) -> ZetaExpr {
        self.scale(rhs)
    }
}

impl Mul<Rational> for ZetaExpr {
    type Output = ZetaExpr;
    fn mul(self, rhs: Rational) -> ZetaExpr {
        self.scale(&rhs)
    }
}

/// Euler's reduction of `zeta_H(p) = sum H_n / n^p`, `p >= 2`:
/// `(1/2) [ (p+2) zeta(p+1) - sum_{j=1}^{p-2} zeta(p-j) zeta(j+1) ]`.
pub fn euler_reduce(p: i64) -> Result<ZetaExpr> {
    if p < 2 {
        return Err(invalid(format!("zeta_H({p}) diverges; need p >= 2")));
    }
    let half = Rational::from((1, 2));
    let mut e = ZetaExpr::zeta(p + 1)?.scale(&Rational::from((p + 2, 2)));
    for j in 1..=p - 2 {
        let prod = &ZetaExpr::zeta(p - j)? * &ZetaExpr::zeta(j + 1)?;
        e.add_scaled(&prod, &Rational::from(-&half));
    }
    Ok(e)
}

#[derive(Serialize, Deserialize)]
struct JsonMonomial {
    coeff: String,
    atoms: Vec<Atom>,
}

#[derive(Serialize, Deserialize)]
struct JsonExpr {
    monomials: Vec<JsonMonomial>,
}

pub(crate) fn fraction_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub(crate) fn parse_fraction(s: &str) -> Result<Rational> {
    let s = s.trim();
    Rational::from_str_radix(s, 10).map_err(|e| crate::Error::Parse(format!("bad rational {s:?}: {e}")))
}

impl Serialize for ZetaExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonExpr {
            monomials: self
                .terms
                .iter()
                .map(|(atoms, c)| JsonMonomial {
                    coeff: fraction_string(c),
                    atoms: atoms.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZetaExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = JsonExpr::deserialize(d)?;
        let mut mons = Vec::with_capacity(raw.monomials.len());
        for m in raw.monomials {
            let c = parse_fraction(&m.coeff).map_err(D::Error::custom)?;
            mons.push(Monomial::new(c, m.atoms));
        }
        normalize(mons).validated().map_err(D::Error::custom)
    }
}

impl ZetaExpr {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ZetaExpr serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<ZetaExpr> {
        serde_json::from_str(s).map_err(|e| crate::Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64) -> ZetaExpr {
        ZetaExpr::zeta(k).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn normalize_cancels_and_merges() {
        let e = normalize(vec![
            Monomial::new(q(2, 1), vec![Atom::Zeta(3)]),
            Monomial::new(q(-2, 1), vec![Atom::Zeta(3)]),
        ]);
        assert!(e.is_zero());

        let e = normalize(vec![
            Monomial::new(q(1, 1), vec![Atom::Zeta(2), Atom::Zeta(3)]),
            Monomial::new(q(1, 1), vec![Atom::Zeta(3), Atom::Zeta(2)]),
        ]);
        assert_eq!(e, (&z(2) * &z(3)).scale(&q(2, 1)));

        let e = normalize(vec![Monomial::constant(q(3, 2)), Monomial::constant(q(1, 2))]);
        assert_eq!(e.as_rational(), Some(q(2, 1)));
    }

    #[test]
    fn ring_examples() {
        let sq = &z(3) * &z(3);
        assert_eq!(sq.coefficient(&[Atom::Zeta(3), Atom::Zeta(3)]), 1);
        assert!(z(5).scale(&Rational::new()).is_zero());
        let sum = z(3).scale(&q(2, 1)) + (z(2) - ZetaExpr::constant(1));
        assert_eq!(sum.len(), 3);
        assert_eq!(sum.coefficient(&[Atom::Zeta(2)]), 1);
        assert_eq!(sum.coefficient(&[Atom::Zeta(3)]), 2);
        assert_eq!(sum.constant_term(), -1);
    }

    #[test]
    fn euler_reduction_small_cases() {
        assert_eq!(euler_reduce(2).unwrap(), z(3).scale(&q(2, 1)));
        let three = z(4).scale(&q(5, 2)) - (&z(2) * &z(2)).scale(&q(1, 2));
        assert_eq!(euler_reduce(3).unwrap(), three);
        let four = z(5).scale(&q(3, 1)) - &z(2) * &z(3);
        assert_eq!(euler_reduce(4).unwrap(), four);
        assert!(matches!(euler_reduce(1), Err(crate::Error::InvalidParameter(_))));
    }

    #[test]
    fn order_one_linear_sum_never_survives() {
        let e = ZetaExpr::euler_lin(1, 5).unwrap();
        assert!(e.atoms().iter().all(|a| matches!(a, Atom::Zeta(_))));
        assert!(ZetaExpr::zeta(1).is_err());
        assert!(Atom::euler_lin(1, 3).is_err());
    }

    #[test]
    fn json_schema_shape() {
        assert_eq!(ZetaExpr::zero().to_json(), r#"{"monomials":[]}"#);
        let e = z(3).scale(&q(2, 1)) + ZetaExpr::euler_lin(2, 4).unwrap();
        assert_eq!(
            e.to_json(),
            r#"{"monomials":[{"coeff":"2/1","atoms":[{"zeta":3}]},{"coeff":"1/1","atoms":[{"eulerlin":[2,4]}]}]}"#
        );
        assert_eq!(ZetaExpr::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn json_rejects_forbidden_atoms() {
        let bad = r#"{"monomials":[{"coeff":"1/1","atoms":[{"zeta":1}]}]}"#;
        assert!(ZetaExpr::from_json(bad).is_err());
        let bad = r#"{"monomials":[{"coeff":"1/1","atoms":[{"eulerlin":[1,3]}]}]}"#;
        assert!(ZetaExpr::from_json(bad).is_err());
    }
}
