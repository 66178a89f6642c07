//! Parameter grids for sweeps.

use std::fmt;

use eulersum_core::{Family, SumSpec};

/// Largest parameter value in the standard grids.
pub const STANDARD_MAX: i64 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepGrid {
    pub family: Family,
    /// Inclusive `(low, high)` per parameter, in the family's order.
    pub ranges: Vec<(i64, i64)>,
}

impl fmt::Display for SweepGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        for (name, (lo, hi)) in self.family.params().iter().zip(&self.ranges) {
            write!(f, " {name}={lo}..{hi}")?;
        }
        Ok(())
    }
}

/// Lower end of a parameter's standard range: `r` of the shifted family
/// runs through negative orders, everything else starts at zero and relies
/// on the family constructor to drop points outside its domain.
fn standard_low(family: Family, name: &str) -> i64 {
    if family == Family::HyperShifted && name == "r" {
        -2
    } else {
        0
    }
}

impl SweepGrid {
    /// All parameters up to `max`.
    pub fn up_to(family: Family, max: i64) -> Self {
        let ranges = family
            .params()
            .iter()
            .map(|n| (standard_low(family, n), max))
            .collect();
        SweepGrid { family, ranges }
    }

    pub fn standard(family: Family) -> Self {
        Self::up_to(family, STANDARD_MAX)
    }

    /// Replace the range of parameter `name`.
    pub fn with_range(mut self, name: &str, lo: i64, hi: i64) -> Option<Self> {
        let i = self.family.params().iter().position(|p| *p == name)?;
        self.ranges[i] = (lo, hi);
        Some(self)
    }

    /// Valid grid points in lexicographic parameter order, and the number
    /// of points rejected by the family's preconditions.
    pub fn points(&self) -> (Vec<SumSpec>, usize) {
        let mut specs = Vec::new();
        let mut invalid = 0;
        if self.ranges.iter().any(|(lo, hi)| lo > hi) {
            return (specs, 0);
        }
        let mut cur: Vec<i64> = self.ranges.iter().map(|r| r.0).collect();
        loop {
            match SumSpec::new(self.family, &cur) {
                Ok(s) => specs.push(s),
                Err(_) => invalid += 1,
            }
            // odometer increment, last parameter fastest
            let mut i = cur.len();
            loop {
                if i == 0 {
                    return (specs, invalid);
                }
                i -= 1;
                if cur[i] < self.ranges[i].1 {
                    cur[i] += 1;
                    for (c, r) in cur[i + 1..].iter_mut().zip(&self.ranges[i + 1..]) {
                        *c = r.0;
                    }
                    break;
                }
            }
        }
    }
}

/// One standard grid per family.
pub fn standard_grids() -> Vec<SweepGrid> {
    Family::ALL.iter().map(|&f| SweepGrid::standard(f)).collect()
}

/// Parse `"3"` or `"1..4"` (inclusive).
pub fn parse_range(s: &str) -> Option<(i64, i64)> {
    match s.split_once("..") {
        Some((a, b)) => Some((a.trim().parse().ok()?, b.trim().parse().ok()?)),
        None => {
            let v = s.trim().parse().ok()?;
            Some((v, v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_and_counted() {
        let g = SweepGrid::standard(Family::InvBinom)
            .with_range("p", 0, 2)
            .unwrap()
            .with_range("l", 0, 1)
            .unwrap();
        let (pts, invalid) = g.points();
        let labels: Vec<String> = pts.iter().map(|s| s.to_string()).collect();
        assert_eq!(labels, ["InvBinom(1,1)", "InvBinom(2,0)", "InvBinom(2,1)"]);
        assert_eq!(invalid, 3);
    }

    #[test]
    fn empty_grid() {
        let g = SweepGrid::standard(Family::Mu).with_range("p", 3, 2).unwrap();
        assert_eq!(g.points(), (vec![], 0));
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..4"), Some((1, 4)));
        assert_eq!(parse_range("-2..0"), Some((-2, 0)));
        assert_eq!(parse_range("3"), Some((3, 3)));
        assert_eq!(parse_range("a"), None);
    }
}
