//! Structured pass/fail records for one identity instance, with a stable
//! line-oriented JSON wire form.
//!
//! A report is deterministic given its parameters (up to the elapsed
//! time); `passed` is always the result of an exact comparison of the
//! typed values, never of their rendered strings.

use crate::algebra::WeightPoly;
use crate::laurent::{rational_eq, LaurentQ, RationalQ};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::time::Duration;

/// Which identity a report is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum IdentityId {
    Eq1,
    Eq8,
    Eq7,
    Prop1,
    Eq5,
    Norm,
    Symmetry,
    GaussEval,
}

impl IdentityId {
    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityId::Eq1 => "EQ1",
            IdentityId::Eq8 => "EQ8",
            IdentityId::Eq7 => "EQ7",
            IdentityId::Prop1 => "PROP1",
            IdentityId::Eq5 => "EQ5",
            IdentityId::Norm => "NORM",
            IdentityId::Symmetry => "SYMMETRY",
            IdentityId::GaussEval => "GAUSS_EVAL",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Instance parameters. Weights are rendered as comma-separated
/// fundamental coefficients (the CLI input encoding); `order` is a
/// truncation order `p` or `p/r` where one applies.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

impl fmt::Display for ReportParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut put = |f: &mut fmt::Formatter<'_>, key: &str, val: String| -> fmt::Result {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{key}={val}")
        };
        if let Some(n) = self.n {
            put(f, "n", n.to_string())?;
        }
        if let Some(k) = self.k {
            put(f, "k", k.to_string())?;
        }
        if let Some(l) = &self.lambda {
            put(f, "lambda", l.clone())?;
        }
        if let Some(m) = &self.mu {
            put(f, "mu", m.clone())?;
        }
        if let Some(o) = &self.order {
            put(f, "order", o.clone())?;
        }
        Ok(())
    }
}

/// One side of a verified identity: a Laurent polynomial, a rational
/// function, or a (possibly truncated) weight-polynomial series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReportValue {
    Laurent(LaurentQ),
    Rational(RationalQ),
    Series(WeightPoly),
}

impl ReportValue {
    /// Exact equality of the appropriate kind; mixing kinds is a bug.
    pub fn eq_exact(&self, other: &ReportValue) -> bool {
        match (self, other) {
            (ReportValue::Laurent(a), ReportValue::Laurent(b)) => a == b,
            (ReportValue::Rational(a), ReportValue::Rational(b)) => rational_eq(a, b),
            (ReportValue::Series(a), ReportValue::Series(b)) => a == b,
            _ => panic!("comparing report values of different kinds"),
        }
    }

    /// lhs - rhs in the appropriate ring; renders `0` exactly when the
    /// sides agree.
    pub fn difference(&self, other: &ReportValue) -> ReportValue {
        match (self, other) {
            (ReportValue::Laurent(a), ReportValue::Laurent(b)) => ReportValue::Laurent(a - b),
            (ReportValue::Rational(a), ReportValue::Rational(b)) => ReportValue::Rational(a - b),
            (ReportValue::Series(a), ReportValue::Series(b)) => ReportValue::Series(a - b),
            _ => panic!("differencing report values of different kinds"),
        }
    }
}

impl fmt::Display for ReportValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportValue::Laurent(v) => write!(f, "{v}"),
            ReportValue::Rational(v) => write!(f, "{v}"),
            ReportValue::Series(v) => write!(f, "{v}"),
        }
    }
}

/// The result of checking one identity instance.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub params: ReportParams,
    pub lhs: ReportValue,
    pub rhs: ReportValue,
    /// Third value for joint checks (e.g. both closed forms of the same
    /// left-hand side); not part of the wire format.
    pub rhs_alt: Option<ReportValue>,
    pub passed: bool,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(
        identity: IdentityId,
        params: ReportParams,
        lhs: ReportValue,
        rhs: ReportValue,
        elapsed: Duration,
    ) -> Self {
        let passed = lhs.eq_exact(&rhs);
        VerificationReport { identity, params, lhs, rhs, rhs_alt: None, passed, elapsed }
    }

    pub fn with_alt(mut self, alt: ReportValue) -> Self {
        self.passed = self.passed && self.lhs.eq_exact(&alt);
        self.rhs_alt = Some(alt);
        self
    }

    pub fn difference(&self) -> ReportValue {
        self.lhs.difference(&self.rhs)
    }

    pub fn to_json_line(&self) -> String {
        let wire = JsonReport {
            identity: self.identity.as_str().to_string(),
            params: self.params.clone(),
            lhs: self.lhs.to_string(),
            rhs: self.rhs.to_string(),
            difference: self.difference().to_string(),
            passed: self.passed,
            elapsed_ms: self.elapsed.as_millis() as u64,
        };
        serde_json::to_string(&wire).expect("report serialization cannot fail")
    }

    pub fn to_text_line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        if self.passed {
            format!(
                "[{status}] {} {} ({} ms)",
                self.identity,
                self.params,
                self.elapsed.as_millis()
            )
        } else {
            format!(
                "[{status}] {} {} lhs={} rhs={} difference={} ({} ms)",
                self.identity,
                self.params,
                self.lhs,
                self.rhs,
                self.difference(),
                self.elapsed.as_millis()
            )
        }
    }
}

/// Line-oriented JSON wire form. Values are canonical strings; parsing a
/// line into this struct and re-serializing reproduces the bytes.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct JsonReport {
    pub identity: String,
    pub params: ReportParams,
    pub lhs: String,
    pub rhs: String,
    pub difference: String,
    pub passed: bool,
    pub elapsed_ms: u64,
}
