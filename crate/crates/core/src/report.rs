//! Verdicts for inequality and identity checks.
//!
//! A [`CheckReport`] carries the two sides of the checked relation and a
//! verdict that always agrees with them. Aggregate checks over many tuples
//! report the first violation (with its witness) or, when every tuple passes,
//! the tuple with the smallest slack.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// lhs ≤ rhs
    Le,
    /// lhs = rhs
    Eq,
    /// lhs ≥ rhs
    Ge,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "==",
            Relation::Ge => ">=",
        }
    }

    fn holds<T: PartialOrd>(self, lhs: &T, rhs: &T) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Quantity {
    Exact(Rational),
    Approx(f64),
}

impl Quantity {
    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Quantity::Exact(r) => Some(r),
            Quantity::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Quantity::Exact(r) => rational::to_f64(r),
            Quantity::Approx(x) => *x,
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Quantity::Exact(r) => s.serialize_str(&rational::format(r)),
            Quantity::Approx(x) => s.serialize_f64(*x),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Exact(r) => write!(f, "{r}"),
            Quantity::Approx(x) => write!(f, "{x:.12e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub relation: Relation,
    pub lhs: Quantity,
    pub rhs: Quantity,
    /// Number of elementary tuples examined.
    pub examined: usize,
    /// Set when nothing was examined, so the pass is vacuous.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub inconclusive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckReport {
    /// Single exact comparison; the verdict is computed from the sides.
    pub fn exact(check: impl Into<String>, relation: Relation, lhs: Rational, rhs: Rational) -> Self {
        let passed = relation.holds(&lhs, &rhs);
        CheckReport {
            check: check.into(),
            passed,
            relation,
            lhs: Quantity::Exact(lhs),
            rhs: Quantity::Exact(rhs),
            examined: 1,
            inconclusive: false,
            witness: None,
        }
    }

    pub fn approx(check: impl Into<String>, relation: Relation, lhs: f64, rhs: f64) -> Self {
        let passed = relation.holds(&lhs, &rhs);
        CheckReport {
            check: check.into(),
            passed,
            relation,
            lhs: Quantity::Approx(lhs),
            rhs: Quantity::Approx(rhs),
            examined: 1,
            inconclusive: false,
            witness: None,
        }
    }

    /// A pass with nothing examined.
    pub fn vacuous(check: impl Into<String>) -> Self {
        CheckReport {
            inconclusive: true,
            examined: 0,
            ..CheckReport::exact(check, Relation::Eq, rational::zero(), rational::zero())
        }
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    /// Exact `rhs - lhs` oriented so that a passing check has nonnegative slack.
    fn slack(&self) -> Option<Rational> {
        let (l, r) = (self.lhs.as_exact()?, self.rhs.as_exact()?);
        Some(match self.relation {
            Relation::Le => r - l,
            Relation::Ge => l - r,
            Relation::Eq => -num_traits::Signed::abs(&(l - r)),
        })
    }

    fn slack_f64(&self) -> f64 {
        let (l, r) = (self.lhs.to_f64(), self.rhs.to_f64());
        match self.relation {
            Relation::Le => r - l,
            Relation::Ge => l - r,
            Relation::Eq => -(l - r).abs(),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.passed, self.inconclusive) {
            (true, true) => "PASS (vacuous)",
            (true, false) => "PASS",
            (false, _) => "FAIL",
        };
        write!(
            f,
            "{verdict} {}: lhs {} {} rhs {} [{} examined]",
            self.check,
            self.lhs,
            self.relation.symbol(),
            self.rhs,
            self.examined
        )?;
        if let Some(w) = &self.witness {
            write!(f, " witness {w}")?;
        }
        Ok(())
    }
}

/// Folds per-tuple reports into one aggregate report.
#[derive(Debug)]
pub struct Aggregate {
    check: String,
    examined: usize,
    failure: Option<CheckReport>,
    tightest: Option<CheckReport>,
}

impl Aggregate {
    pub fn new(check: impl Into<String>) -> Self {
        Aggregate { check: check.into(), examined: 0, failure: None, tightest: None }
    }

    pub fn has_failure(&self) -> bool {
        self.failure.is_some()
    }

    pub fn push(&mut self, report: CheckReport) {
        self.examined += report.examined;
        if !report.passed {
            if self.failure.is_none() {
                self.failure = Some(report);
            }
            return;
        }
        let tighter = match &self.tightest {
            None => true,
            Some(best) => match (report.slack(), best.slack()) {
                (Some(a), Some(b)) => a < b,
                _ => report.slack_f64() < best.slack_f64(),
            },
        };
        if tighter {
            self.tightest = Some(report);
        }
    }

    pub fn finish(self) -> CheckReport {
        let picked = self.failure.or(self.tightest);
        match picked {
            None => CheckReport::vacuous(self.check),
            Some(mut r) => {
                r.check = self.check;
                r.examined = self.examined;
                r
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn verdict_follows_sides() {
        assert!(CheckReport::exact("a", Relation::Le, int(1), int(3)).passed);
        assert!(!CheckReport::exact("a", Relation::Le, rat(1, 24), rat(1, 40)).passed);
        assert!(CheckReport::exact("a", Relation::Eq, rat(2, 4), rat(1, 2)).passed);
        assert!(CheckReport::exact("a", Relation::Ge, int(0), int(0)).passed);
    }

    #[test]
    fn aggregate_keeps_first_failure_and_tightest_pass() {
        let mut agg = Aggregate::new("agg");
        agg.push(CheckReport::exact("t", Relation::Le, int(0), int(5)));
        agg.push(CheckReport::exact("t", Relation::Le, int(4), int(5)));
        let r = agg.finish();
        assert!(r.passed);
        assert_eq!(r.lhs, Quantity::Exact(int(4)));
        assert_eq!(r.examined, 2);

        let mut agg = Aggregate::new("agg");
        agg.push(CheckReport::exact("t", Relation::Le, int(7), int(5)));
        agg.push(CheckReport::exact("t", Relation::Le, int(9), int(5)));
        let r = agg.finish();
        assert!(!r.passed);
        assert_eq!(r.lhs, Quantity::Exact(int(7)));
    }

    #[test]
    fn empty_aggregate_is_vacuous() {
        let r = Aggregate::new("none").finish();
        assert!(r.passed && r.inconclusive);
    }
}
