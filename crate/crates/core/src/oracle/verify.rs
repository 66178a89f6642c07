//! Closed form versus brute-force sum.

use rug::ops::Pow;
use rug::Float;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::sum::{direct_sum, float_string, OracleResult};
use super::zeta::AtomOracle;
use crate::algebra::{bits_for_digits, eval_expr, ZetaExpr};
use crate::closed::closed_form;
use crate::error::{invalid, Error, Result};
use crate::sumspec::SumSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub digits: u32,
    pub max_terms: u64,
    /// Tolerance for series decaying at least like `n^-3`.
    pub tol_digits: u32,
    /// Tolerance for slower series, summed in accelerated mode.
    pub slow_tol_digits: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { digits: 60, max_terms: 200_000, tol_digits: 25, slow_tol_digits: 8 }
    }
}

impl VerifyConfig {
    pub fn tol_for(&self, spec: &SumSpec) -> u32 {
        if spec.is_slow() {
            self.slow_tol_digits.min(self.tol_digits)
        } else {
            self.tol_digits
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub spec: SumSpec,
    pub closed_form: Option<ZetaExpr>,
    pub closed_numeric: Option<Float>,
    pub oracle: Option<OracleResult>,
    /// `|closed_numeric - oracle.partial_sum|`.
    pub abs_err: Option<Float>,
    /// `|closed_numeric - oracle.extrapolated|`.
    pub extrapolation_err: Option<Float>,
    pub tol_digits: u32,
    /// `abs_err <= tail_bound + 10^-tol`.
    pub verdict: Verdict,
    /// `extrapolation_err <= 10 * increment + 10^-tol`: agreement with the
    /// extrapolated limit, much tighter than the tail bound for series that
    /// converge like a low power of `n`.
    pub strict: Option<bool>,
    pub reason: Option<String>,
    pub digits: u32,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn skipped(spec: &SumSpec, cfg: &VerifyConfig, reason: String) -> Self {
        VerificationReport {
            spec: spec.clone(),
            closed_form: None,
            closed_numeric: None,
            oracle: None,
            abs_err: None,
            extrapolation_err: None,
            tol_digits: cfg.tol_for(spec),
            verdict: Verdict::Skipped,
            strict: None,
            reason: Some(reason),
            digits: cfg.digits,
        }
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let d = self.digits;
        let num = |x: &Option<Float>, digits: u32| x.as_ref().map(|v| float_string(v, digits));
        let mut st = s.serialize_struct("VerificationReport", 12)?;
        st.serialize_field("spec", &self.spec)?;
        st.serialize_field("label", &self.spec.to_string())?;
        st.serialize_field("anchor", self.spec.family().anchor())?;
        st.serialize_field("closed_form", &self.closed_form.as_ref().map(|e| e.to_string()))?;
        st.serialize_field("closed_numeric", &num(&self.closed_numeric, d))?;
        st.serialize_field("oracle", &self.oracle)?;
        st.serialize_field("abs_err", &num(&self.abs_err, 6))?;
        st.serialize_field("extrapolation_err", &num(&self.extrapolation_err, 6))?;
        st.serialize_field("tol_digits", &self.tol_digits)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("strict", &self.strict)?;
        st.serialize_field("reason", &self.reason)?;
        st.end()
    }
}

/// Evaluate the closed form and the direct sum and compare them.
///
/// A closed form that is not available by its route gives a skipped report;
/// other errors propagate.
pub fn verify(spec: &SumSpec, cfg: &VerifyConfig) -> Result<VerificationReport> {
    if cfg.digits < cfg.tol_digits + 10 {
        return Err(invalid(format!(
            "precision {} must exceed the tolerance {} by at least 10 digits",
            cfg.digits, cfg.tol_digits
        )));
    }
    let expr = match closed_form(spec) {
        Ok(e) => e,
        Err(Error::NotReducibleByThisRoute(why)) => {
            return Ok(VerificationReport::skipped(spec, cfg, why));
        }
        Err(e) => return Err(e),
    };
    let closed = eval_expr(&expr, cfg.digits, AtomOracle::global())?;
    let oracle = direct_sum(spec, cfg.max_terms, cfg.digits)?;
    let bits = bits_for_digits(cfg.digits);
    let tol_digits = cfg.tol_for(spec);
    let tol = Float::with_val(bits, 10u32).pow(-(tol_digits as i32));
    let abs_err = Float::with_val(bits, &closed - &oracle.partial_sum).abs();
    let ext_err = Float::with_val(bits, &closed - &oracle.extrapolated).abs();
    let pass = abs_err <= Float::with_val(bits, &oracle.tail_bound + &tol);
    let strict = ext_err <= Float::with_val(bits, &oracle.increment * 10u32) + &tol;
    Ok(VerificationReport {
        spec: spec.clone(),
        closed_form: Some(expr),
        closed_numeric: Some(closed),
        oracle: Some(oracle),
        abs_err: Some(abs_err),
        extrapolation_err: Some(ext_err),
        tol_digits,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        strict: Some(strict),
        reason: None,
        digits: cfg.digits,
    })
}
