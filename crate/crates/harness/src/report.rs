//! Sweep execution and report persistence.

use std::io::Write;

use anyhow::{Context, Result};
use eulersum_core::audit::LedgerEntry;
use eulersum_core::oracle::{verify, Verdict, VerificationReport};
use eulersum_core::{Error, SumSpec};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::grid::SweepGrid;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    /// Grid points satisfying their family's preconditions.
    pub points: usize,
    pub pass: usize,
    pub fail: usize,
    /// Valid points without a closed form by the implemented route.
    pub skipped: usize,
    /// Grid points rejected by the family's preconditions.
    pub invalid: usize,
    /// Passing points whose closed form also disagrees with the
    /// extrapolated oracle limit.
    pub strict_fail: usize,
}

impl Summary {
    fn add(&mut self, r: &VerificationReport) {
        self.points += 1;
        match r.verdict {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Skipped => self.skipped += 1,
        }
        if r.verdict == Verdict::Pass && r.strict == Some(false) {
            self.strict_fail += 1;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub results: Vec<VerificationReport>,
    pub summary: Summary,
    pub typo_ledger: Vec<LedgerEntry>,
}

impl Report {
    pub fn new(config: &RunConfig, results: Vec<VerificationReport>, invalid: usize, ledger: &[LedgerEntry]) -> Self {
        let mut summary = Summary { invalid, ..Summary::default() };
        for r in &results {
            summary.add(r);
        }
        Report { config: config.clone(), results, summary, typo_ledger: ledger.to_vec() }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Columns `family,params,closed_numeric,oracle,abs_err,tail_bound,verdict,strict`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "family",
            "params",
            "closed_numeric",
            "oracle",
            "abs_err",
            "tail_bound",
            "verdict",
            "strict",
        ])?;
        let digits = self.config.precision_digits as usize;
        let num = |x: Option<&rug::Float>, d: usize| {
            x.map(|v| v.to_string_radix(10, Some(d))).unwrap_or_default()
        };
        for r in &self.results {
            let params: Vec<String> = r
                .spec
                .family()
                .params()
                .iter()
                .zip(r.spec.params())
                .map(|(n, v)| format!("{n}={v}"))
                .collect();
            let oracle = r.oracle.as_ref();
            w.write_record([
                r.spec.family().name().to_string(),
                params.join(";"),
                num(r.closed_numeric.as_ref(), digits),
                num(oracle.map(|o| &o.partial_sum), digits),
                num(r.abs_err.as_ref(), 6),
                num(oracle.map(|o| &o.tail_bound), 6),
                verdict_name(r.verdict).to_string(),
                r.strict.map(|s| s.to_string()).unwrap_or_default(),
            ])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    /// Serialize as CSV when `csv` is set, JSON otherwise.
    pub fn write(&self, out: &mut dyn Write, csv: bool) -> Result<()> {
        let body = if csv { self.to_csv()? } else { self.to_json()? + "\n" };
        out.write_all(body.as_bytes()).context("writing report")
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Skipped => "skipped",
    }
}

/// Verify one point; errors other than a missing route become failures
/// carrying the error text, so a sweep never drops a point silently.
pub fn verify_point(spec: &SumSpec, config: &RunConfig) -> VerificationReport {
    let cfg = config.verify_config();
    verify(spec, &cfg).unwrap_or_else(|e| {
        let verdict = match e {
            Error::NotReducibleByThisRoute(_) => Verdict::Skipped,
            _ => Verdict::Fail,
        };
        VerificationReport {
            spec: spec.clone(),
            closed_form: None,
            closed_numeric: None,
            oracle: None,
            abs_err: None,
            extrapolation_err: None,
            tol_digits: cfg.tol_for(spec),
            verdict,
            strict: None,
            reason: Some(e.to_string()),
            digits: cfg.digits,
        }
    })
}

/// Verify every valid point of every grid, in grid order and lexicographic
/// parameter order within a grid; parallel across points.
pub fn sweep(grids: &[SweepGrid], config: &RunConfig) -> (Vec<VerificationReport>, usize) {
    let mut specs = Vec::new();
    let mut invalid = 0;
    for g in grids {
        let (pts, bad) = g.points();
        specs.extend(pts);
        invalid += bad;
    }
    let results = specs.par_iter().map(|s| verify_point(s, config)).collect();
    (results, invalid)
}
