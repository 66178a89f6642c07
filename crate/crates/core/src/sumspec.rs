use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

macro_rules! families {
    ($($name:ident [$($param:literal),*] $anchor:literal;)*) => {
        /// Series families with closed forms.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum Family {
            $($name,)*
        }

        impl Family {
            pub const ALL: &'static [Family] = &[$(Family::$name,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Family::$name => stringify!($name),)*
                }
            }

            /// Parameter names in positional order.
            pub fn params(self) -> &'static [&'static str] {
                match self {
                    $(Family::$name => &[$($param),*],)*
                }
            }

            /// Human readable description of the formula under test.
            pub fn anchor(self) -> &'static str {
                match self {
                    $(Family::$name => $anchor,)*
                }
            }
        }
    };
}

families! {
    InvBinom ["p", "l"] "sum 1/(n^p C(n+l,l)): partial fractions of the reciprocal binomial";
    InvShiftBinom ["p", "j", "l"] "sum 1/(n^p (n+j) C(n+l,l)): mu and B1 tables";
    InvTwoShiftBinom ["p", "m", "j", "l"] "sum 1/(n^p (n+m)(n+j) C(n+l,l)): two-shift reduction with B3 table";
    HBinom ["p", "l"] "sum H_n/(n^p C(n+l,l)): Euler reduction and B2 table";
    HShiftBinom ["p", "j", "l"] "sum H_n/(n^p (n+j) C(n+l,l)): linear harmonic recursion";
    HLinear ["p", "a"] "sum H_n/(n^p (n+a)): shift recursion from the B2 base case";
    H2 ["p"] "sum H_n^2/n^p: quadratic Euler sum (corrected transcription)";
    H2Linear ["a"] "sum H_n^2/(n (n+a)): quadratic sum with one linear shift";
    H2Binom ["p", "l"] "sum H_n^2/(n^p C(n+l,l)): quadratic sum over reciprocal binomial (corrected transcription)";
    Mu ["p", "j"] "sum 1/(n^p (n+j)): mu(p,j)";
    EulerLinR1 ["p"] "sum H_n/n^p: Euler's identity";
    Hes ["r", "p"] "sum h_n^(r+1)/n^p: extended Euler identity";
    NegEuler ["r", "p"] "sum h_n^(-r)/n^p: negative-order Euler sum";
    HyperBinom ["r", "p", "l"] "sum h_n^(r)/(n^p C(n+l,l)): Stirling expansion over reciprocal binomial";
    NegHyperBinom ["r", "p", "l"] "sum h_n^(-r)/(n^p C(n+l,l)): negative-order four-piece formula";
    HyperShifted ["r", "m", "p", "l"] "sum h_n^(r)/((n+m)^p C(n+m+l,l)): binomial-transform order shift";
    HyperHBinom ["r", "p", "l"] "sum h_n^(r) H_n/(n^p C(n+l,l)): Stirling expansion with harmonic factor";
    HyperLinearBinom ["r", "p", "m", "l"] "sum h_n^(r)/(n^p (n+m) C(n+l,l)): Stirling expansion with linear shift";
    HyperPairBinom ["r", "q", "p", "l"] "sum h_n^(r) h_n^(q)/(n^p C(n+l,l)): non-linear hyperharmonic Euler-type sum";
    HurwitzSeries ["p", "r"] "sum_k zeta(p,k)/(r+k): Hurwitz zeta series";
    ShiftedHBinom ["p", "r", "q"] "sum_{n>r} H_n/((n-r)^p C(n+q,q)): binomial extension of the shifted Euler sum (corrected sign)";
    ShiftedHTop ["p", "q", "l"] "sum_{n>q+l} C(n,q) H_n/(n-l-q)^p: shifted sum with binomial numerator";
    XuLiShifted ["p", "r"] "sum_{n>r} H_n/(n-r)^p: shifted Euler sum";
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

/// A validated series: family plus integer parameters in positional order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SumSpec {
    family: Family,
    params: Vec<i64>,
}

fn require(ok: bool, spec: &SumSpec, why: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(invalid(format!("{spec}: requires {why}")))
    }
}

impl SumSpec {
    /// Build and validate; the error names the violated precondition.
    pub fn new(family: Family, params: &[i64]) -> Result<SumSpec> {
        if params.len() != family.params().len() {
            return Err(invalid(format!(
                "{family} takes {} parameters ({}), got {}",
                family.params().len(),
                family.params().join(","),
                params.len()
            )));
        }
        let spec = SumSpec {
            family,
            params: params.to_vec(),
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        use Family::*;
        let s = self;
        let v = &self.params;
        match self.family {
            InvBinom | HBinom => {
                let (p, l) = (v[0], v[1]);
                require(p >= 0 && l >= 0, s, "p >= 0, l >= 0")?;
                require(p + l >= 2, s, "p + l >= 2")
            }
            InvShiftBinom | HShiftBinom => {
                require(v[0] >= 1 && v[1] >= 1 && v[2] >= 0, s, "p >= 1, j >= 1, l >= 0")
            }
            InvTwoShiftBinom => require(
                v[0] >= 1 && v[1] >= 1 && v[2] >= 1 && v[3] >= 0,
                s,
                "p >= 1, m >= 1, j >= 1, l >= 0",
            ),
            HLinear => require(v[0] >= 1 && v[1] >= 1, s, "p >= 1, a >= 1"),
            H2 | EulerLinR1 => require(v[0] >= 2, s, "p >= 2"),
            H2Linear => require(v[0] >= 1, s, "a >= 1"),
            H2Binom => {
                require(v[0] >= 1 && v[1] >= 0, s, "p >= 1, l >= 0")?;
                require(v[0] + v[1] >= 2, s, "p + l >= 2")
            }
            Mu => require(v[0] >= 1 && v[1] >= 1, s, "p >= 1, j >= 1"),
            Hes => {
                require(v[0] >= 0, s, "r >= 0")?;
                require(v[1] > v[0] + 1, s, "p > r + 1")
            }
            NegEuler => require(v[0] >= 1 && v[1] >= 1, s, "r >= 1, p >= 1"),
            HyperBinom | HyperHBinom => {
                let (r, p, l) = (v[0], v[1], v[2]);
                require(r >= 1 && p >= 0 && l >= 0, s, "r >= 1, p >= 0, l >= 0")?;
                require(p + l > r, s, "p + l > r")
            }
            NegHyperBinom => require(
                v[0] >= 1 && v[1] >= 1 && v[2] >= 0,
                s,
                "r >= 1, p >= 1, l >= 0",
            ),
            HyperShifted => {
                let (r, m, p, l) = (v[0], v[1], v[2], v[3]);
                require(m >= 0 && p >= 0 && l >= 0, s, "m >= 0, p >= 0, l >= 0")?;
                require(p + l > r, s, "p + l > r")
            }
            HyperLinearBinom => {
                let (r, p, m, l) = (v[0], v[1], v[2], v[3]);
                require(r >= 1 && p >= 0 && m >= 1 && l >= 0, s, "r >= 1, p >= 0, m >= 1, l >= 0")?;
                require(p + l >= r, s, "p + l >= r")
            }
            HyperPairBinom => {
                let (r, q, p, l) = (v[0], v[1], v[2], v[3]);
                require(r >= 1 && q >= 1 && p >= 0 && l >= 0, s, "r >= 1, q >= 1, p >= 0, l >= 0")?;
                require(p + l >= r + q, s, "p + l >= r + q")
            }
            HurwitzSeries | XuLiShifted => require(v[0] >= 2 && v[1] >= 1, s, "p >= 2, r >= 1"),
            ShiftedHBinom => {
                let (p, r, q) = (v[0], v[1], v[2]);
                require(p >= 0 && r >= 0 && q >= 1, s, "p >= 0, r >= 0, q >= 1")?;
                require(p + q > 1, s, "p + q > 1")
            }
            ShiftedHTop => {
                let (p, q, l) = (v[0], v[1], v[2]);
                require(q >= 1 && l >= 0, s, "q >= 1, l >= 0")?;
                require(p > q + 1, s, "p > q + 1")
            }
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &[i64] {
        &self.params
    }

    /// Parameters as a fixed-size array; panics on arity mismatch.
    pub fn args<const N: usize>(&self) -> [i64; N] {
        self.params
            .as_slice()
            .try_into()
            .expect("parameter arity mismatch")
    }

    /// Named parameter lookup.
    pub fn get(&self, name: &str) -> Option<i64> {
        self.family
            .params()
            .iter()
            .position(|p| *p == name)
            .map(|i| self.params[i])
    }

    /// Exponent `d` such that terms decay like `n^-d` (up to logarithms).
    pub fn decay(&self) -> i64 {
        use Family::*;
        let v = &self.params;
        match self.family {
            InvBinom | HBinom | H2Binom => v[0] + v[1],
            InvShiftBinom | HShiftBinom => v[0] + v[2] + 1,
            InvTwoShiftBinom => v[0] + v[3] + 2,
            HLinear | Mu => v[0] + 1,
            H2 | EulerLinR1 | HurwitzSeries | XuLiShifted => v[0],
            H2Linear => 2,
            Hes => v[1] - v[0],
            NegEuler => v[0] + v[1] + 1,
            HyperBinom | HyperHBinom => v[1] + v[2] - v[0] + 1,
            NegHyperBinom => v[0] + v[1] + v[2] + 1,
            HyperShifted => v[2] + v[3] - v[0] + 1,
            HyperLinearBinom => v[1] + v[3] - v[0] + 2,
            HyperPairBinom => v[2] + v[3] - v[0] - v[1] + 2,
            ShiftedHBinom => v[0] + v[2],
            ShiftedHTop => v[0] - v[1],
        }
    }

    /// Highest power of `ln n` multiplying the leading asymptotic terms.
    pub fn log_power(&self) -> u32 {
        use Family::*;
        match self.family {
            InvBinom | InvShiftBinom | InvTwoShiftBinom | Mu | NegEuler | NegHyperBinom
            | HurwitzSeries => 0,
            HBinom | HShiftBinom | HLinear | EulerLinR1 | Hes | HyperBinom | HyperLinearBinom
            | ShiftedHBinom | ShiftedHTop | XuLiShifted => 1,
            H2 | H2Linear | H2Binom | HyperHBinom | HyperPairBinom => 2,
            HyperShifted => u32::from(self.params[0] >= 1),
        }
    }

    /// First summation index carrying a non-zero term.
    pub fn start(&self) -> u64 {
        use Family::*;
        let v = &self.params;
        match self.family {
            XuLiShifted => v[1] as u64 + 1,
            ShiftedHBinom => v[1] as u64 + 1,
            ShiftedHTop => (v[1] + v[2]) as u64 + 1,
            _ => 1,
        }
    }

    /// Slowly convergent series are verified with extrapolation and a
    /// relaxed tolerance.
    pub fn is_slow(&self) -> bool {
        self.decay() < 3
    }
}

impl fmt::Display for SumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.family)?;
        for (i, v) in self.params.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for SumSpec {
    type Err = Error;
    /// Parses `Family(a,b,...)`.
    fn from_str(s: &str) -> Result<SumSpec> {
        let s = s.trim();
        let open = s
            .find('(')
            .ok_or_else(|| Error::Parse(format!("expected Family(params): {s:?}")))?;
        let body = s[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("missing ')' in {s:?}")))?;
        let family: Family = s[..open].parse()?;
        let params = body
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad parameter {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        SumSpec::new(family, &params)
    }
}

impl Serialize for SumSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SumSpec", 2)?;
        st.serialize_field("family", &self.family)?;
        st.serialize_field("params", &NamedParams(self))?;
        st.end()
    }
}

/// Serializes as an ordered map `{"r":2,"p":5,...}`.
struct NamedParams<'a>(&'a SumSpec);

impl Serialize for NamedParams<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let names = self.0.family.params();
        let mut m = s.serialize_map(Some(names.len()))?;
        for (k, v) in names.iter().zip(&self.0.params) {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for SumSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            family: Family,
            params: std::collections::HashMap<String, i64>,
        }
        let raw = Raw::deserialize(d)?;
        let params = raw
            .family
            .params()
            .iter()
            .map(|name| {
                raw.params
                    .get(*name)
                    .copied()
                    .ok_or_else(|| D::Error::custom(format!("missing parameter {name}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        SumSpec::new(raw.family, &params).map_err(D::Error::custom)
    }
}
