//! Text / LaTeX / JSON rendering and a parser for the text form.
//!
//! With `pi_form` every even zeta value is rewritten as a rational multiple
//! of a power of pi, `zeta(2m) = (-1)^(m+1) B_2m 2^(2m-1) / (2m)! * pi^(2m)`.
//! The rewrite only affects the printed string.

use std::collections::BTreeMap;

use rug::{Integer, Rational};

use super::{Atom, ZetaExpr};
use crate::error::{Error, Result};
use crate::exact::{bernoulli, factorial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

/// One printed term: `coeff * pi^pi_power * prod(atoms)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplayTerm {
    pub coeff: Rational,
    pub pi_power: u32,
    pub atoms: Vec<Atom>,
}

/// Expression as printed, possibly containing explicit powers of pi.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DisplayExpr {
    pub terms: Vec<DisplayTerm>,
}

/// `zeta(2m) / pi^(2m)`.
pub(crate) fn even_zeta_pi_coeff(m: u32) -> Rational {
    let two_m = 2 * m;
    let mut c = bernoulli(two_m);
    c *= Integer::from(1) << (two_m - 1);
    c /= factorial(two_m);
    if m % 2 == 0 {
        c = -c;
    }
    c
}

impl DisplayExpr {
    pub fn from_expr(e: &ZetaExpr, pi_form: bool) -> DisplayExpr {
        let mut merged: BTreeMap<(Vec<Atom>, u32), Rational> = BTreeMap::new();
        for (atoms, c) in e.terms() {
            let mut coeff = c.clone();
            let mut pi_power = 0;
            let mut rest = Vec::with_capacity(atoms.len());
            for &a in atoms {
                match a {
                    Atom::Zeta(k) if pi_form && k % 2 == 0 => {
                        coeff *= even_zeta_pi_coeff(k / 2);
                        pi_power += k;
                    }
                    other => rest.push(other),
                }
            }
            *merged.entry((rest, pi_power)).or_default() += coeff;
        }
        let mut terms: Vec<DisplayTerm> = merged
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|((atoms, pi_power), coeff)| DisplayTerm {
                coeff,
                pi_power,
                atoms,
            })
            .collect();
        // Transcendental atoms first, then pure pi powers (highest first),
        // then the rational constant.
        terms.sort_by(|a, b| {
            let key = |t: &DisplayTerm| (t.atoms.is_empty(), t.atoms.clone(), std::cmp::Reverse(t.pi_power));
            key(a).cmp(&key(b))
        });
        DisplayExpr { terms }
    }

    /// Convert back to a canonical expression, reading `pi^(2m)` as
    /// `zeta(2m) / c_m`. Odd powers of pi have no zeta representation.
    pub fn to_zeta_expr(&self) -> Result<ZetaExpr> {
        let mut out = ZetaExpr::zero();
        for t in &self.terms {
            let mut coeff = t.coeff.clone();
            let mut atoms = t.atoms.clone();
            if t.pi_power > 0 {
                if t.pi_power % 2 == 1 {
                    return Err(Error::Parse(format!(
                        "pi^{} is not a zeta value",
                        t.pi_power
                    )));
                }
                coeff /= even_zeta_pi_coeff(t.pi_power / 2);
                atoms.push(Atom::Zeta(t.pi_power));
            }
            for a in &atoms {
                a.validate()?;
            }
            atoms.sort_unstable();
            out.add_term(atoms, coeff);
        }
        Ok(out)
    }
}

/// Render `e` in the requested format. JSON ignores `pi_form`.
pub fn render(e: &ZetaExpr, format: Format, pi_form: bool) -> String {
    match format {
        Format::Json => e.to_json(),
        Format::Text => render_display(&DisplayExpr::from_expr(e, pi_form), &TEXT),
        Format::Latex => render_display(&DisplayExpr::from_expr(e, pi_form), &LATEX),
    }
}

struct Style {
    frac: fn(&Integer, &Integer, bool) -> String,
    pi: fn(u32) -> String,
    atom: fn(Atom) -> String,
    power: fn(String, usize) -> String,
    join: &'static str,
    /// Separator between a coefficient and the first factor.
    after_coeff: &'static str,
}

const TEXT: Style = Style {
    frac: |n, d, has_factors| {
        if *d == 1 {
            n.to_string()
        } else if has_factors {
            format!("({n}/{d})")
        } else {
            format!("{n}/{d}")
        }
    },
    pi: |k| if k == 1 { "pi".into() } else { format!("pi^{k}") },
    atom: |a| a.to_string(),
    power: |s, e| if e == 1 { s } else { format!("{s}^{e}") },
    join: "*",
    after_coeff: "*",
};

const LATEX: Style = Style {
    frac: |n, d, _| {
        if *d == 1 {
            n.to_string()
        } else {
            format!("\\frac{{{n}}}{{{d}}}")
        }
    },
    pi: |k| if k == 1 { "\\pi".into() } else { format!("\\pi^{{{k}}}") },
    atom: |a| match a {
        Atom::Zeta(k) => format!("\\zeta({k})"),
        Atom::EulerLin(r, p) => format!("\\zeta_{{H^{{({r})}}}}({p})"),
    },
    power: |s, e| if e == 1 { s } else { format!("{s}^{{{e}}}") },
    join: " ",
    after_coeff: "",
};

fn render_display(d: &DisplayExpr, style: &Style) -> String {
    if d.terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in d.terms.iter().enumerate() {
        let negative = t.coeff < 0;
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mut factors = Vec::new();
        if t.pi_power > 0 {
            factors.push((style.pi)(t.pi_power));
        }
        let mut i = 0;
        while i < t.atoms.len() {
            let a = t.atoms[i];
            let run = t.atoms[i..].iter().take_while(|&&b| b == a).count();
            factors.push((style.power)((style.atom)(a), run));
            i += run;
        }
        let abs = Rational::from(t.coeff.abs_ref());
        let (n, den) = (abs.numer(), abs.denom());
        if factors.is_empty() {
            out.push_str(&(style.frac)(n, den, false));
        } else {
            if !(*n == 1 && *den == 1) {
                out.push_str(&(style.frac)(n, den, true));
                out.push_str(style.after_coeff);
            }
            out.push_str(&factors.join(style.join));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(Integer),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut buf = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                buf.push(d);
                chars.next();
            }
            toks.push(Tok::Int(buf.parse().expect("digits parse")));
        } else if c.is_ascii_alphabetic() {
            let mut buf = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                buf.push(d);
                chars.next();
            }
            toks.push(Tok::Ident(buf.to_ascii_lowercase()));
        } else if "()+-*/^,".contains(c) {
            toks.push(Tok::Sym(c));
            chars.next();
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {c:?} at token {}", self.pos)))
        }
    }

    fn int(&mut self) -> Result<Integer> {
        match self.toks.get(self.pos) {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(Error::Parse(format!("expected integer at token {}", self.pos))),
        }
    }

    fn small(&mut self) -> Result<u32> {
        self.int()?
            .to_u32()
            .ok_or_else(|| Error::Parse("index out of range".into()))
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.eat('^') {
            self.small()
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self, t: &mut DisplayTerm) -> Result<()> {
        match self.peek().cloned() {
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let n = self.int()?;
                let d = if self.eat('/') { self.int()? } else { Integer::from(1) };
                self.expect(')')?;
                t.coeff *= fraction(n, d)?;
            }
            Some(Tok::Int(_)) => {
                let n = self.int()?;
                let d = if self.eat('/') { self.int()? } else { Integer::from(1) };
                t.coeff *= fraction(n, d)?;
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let atom = match name.as_str() {
                    "pi" => None,
                    "zeta" => {
                        self.expect('(')?;
                        let k = self.small()?;
                        self.expect(')')?;
                        Some(Atom::Zeta(k))
                    }
                    "eulerlin" => {
                        self.expect('(')?;
                        let r = self.small()?;
                        self.expect(',')?;
                        let p = self.small()?;
                        self.expect(')')?;
                        Some(Atom::EulerLin(r, p))
                    }
                    other => return Err(Error::Parse(format!("unknown symbol {other:?}"))),
                };
                let e = self.exponent()?;
                match atom {
                    None => t.pi_power += e,
                    Some(a) => {
                        a.validate()?;
                        t.atoms.extend(std::iter::repeat_n(a, e as usize));
                    }
                }
            }
            _ => return Err(Error::Parse(format!("unexpected token at {}", self.pos))),
        }
        Ok(())
    }

    fn term(&mut self, negative: bool) -> Result<DisplayTerm> {
        let mut t = DisplayTerm {
            coeff: Rational::from(if negative { -1 } else { 1 }),
            pi_power: 0,
            atoms: Vec::new(),
        };
        self.factor(&mut t)?;
        while self.eat('*') {
            self.factor(&mut t)?;
        }
        t.atoms.sort_unstable();
        Ok(t)
    }
}

fn fraction(n: Integer, d: Integer) -> Result<Rational> {
    if d == 0 {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::from((n, d)))
}

/// Parse the text form produced by [`render`] (with or without `pi_form`).
pub fn parse_text(s: &str) -> Result<DisplayExpr> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut negative = p.eat('-');
    loop {
        terms.push(p.term(negative)?);
        if p.eat('+') {
            negative = false;
        } else if p.eat('-') {
            negative = true;
        } else {
            break;
        }
    }
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    terms.retain(|t| t.coeff != 0);
    Ok(DisplayExpr { terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64) -> ZetaExpr {
        ZetaExpr::zeta(k).unwrap()
    }

    #[test]
    fn text_examples() {
        let two_z3 = z(3).scale(&Rational::from(2));
        assert_eq!(render(&two_z3, Format::Text, false), "2*zeta(3)");
        assert_eq!(render(&z(2), Format::Text, true), "(1/6)*pi^2");
        assert_eq!(render(&ZetaExpr::zero(), Format::Json, false), r#"{"monomials":[]}"#);
        assert_eq!(render(&ZetaExpr::zero(), Format::Text, false), "0");
    }

    #[test]
    fn even_zeta_coefficients() {
        assert_eq!(even_zeta_pi_coeff(1), Rational::from((1, 6)));
        assert_eq!(even_zeta_pi_coeff(2), Rational::from((1, 90)));
        assert_eq!(even_zeta_pi_coeff(3), Rational::from((1, 945)));
    }

    #[test]
    fn signs_and_constants() {
        let e = ZetaExpr::constant(Rational::from((15, 8))) - z(5).scale(&Rational::from((3, 2)));
        assert_eq!(render(&e, Format::Text, false), "-(3/2)*zeta(5) + 15/8");
        assert_eq!(render(&e, Format::Latex, false), "-\\frac{3}{2}\\zeta(5) + \\frac{15}{8}");
    }

    #[test]
    fn powers_and_products() {
        let e = &(&z(3) * &z(3)) * &z(2);
        assert_eq!(render(&e, Format::Text, false), "zeta(2)*zeta(3)^2");
        assert_eq!(render(&e, Format::Text, true), "(1/6)*pi^2*zeta(3)^2");
        assert_eq!(render(&e, Format::Latex, true), "\\frac{1}{6}\\pi^{2} \\zeta(3)^{2}");
    }

    #[test]
    fn pi_form_merges_even_products() {
        // zeta(2)^2 and zeta(4) both become multiples of pi^4
        let e = &z(2) * &z(2) + z(4);
        let d = DisplayExpr::from_expr(&e, true);
        assert_eq!(d.terms.len(), 1);
        assert_eq!(d.terms[0].coeff, Rational::from((1, 36)) + Rational::from((1, 90)));
        assert_eq!(d.terms[0].pi_power, 4);
    }

    #[test]
    fn parse_round_trip_without_pi() {
        let e = z(3).scale(&Rational::from(-2))
            + ZetaExpr::euler_lin(2, 4).unwrap()
            + &z(2) * &z(3)
            + ZetaExpr::constant(Rational::from((7, 3)));
        let s = render(&e, Format::Text, false);
        assert_eq!(parse_text(&s).unwrap().to_zeta_expr().unwrap(), e);
    }

    #[test]
    fn parse_pi_powers() {
        let d = parse_text("(1/6)*pi^2").unwrap();
        assert_eq!(d.to_zeta_expr().unwrap(), z(2));
        assert!(parse_text("pi^3").unwrap().to_zeta_expr().is_err());
        assert!(parse_text("zeta(1)").is_err());
        assert!(parse_text("2 +").is_err());
    }
}
