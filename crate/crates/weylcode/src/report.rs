//! Structured run reports.
//!
//! Every command produces one [`Report`]. Reports serialize
//! deterministically: exact quantities appear as integer coefficient
//! lists, collections are emitted in a fixed order, and the only
//! run-dependent data (wall-clock timing) is segregated in the final
//! `timing` field so that comparison tooling can strip it and expect
//! byte-identical payloads across runs.

use serde::Serialize;

/// One named verification with its outcome.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Human-readable detail, present on failures and for recorded
    /// outcomes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Exact structured payload backing the verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<serde_json::Value>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass: true,
            witness: None,
            value: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass: false,
            witness: Some(witness.into()),
            value: None,
        }
    }

    pub fn outcome(name: impl Into<String>, pass: bool, witness: impl Into<String>) -> Check {
        if pass {
            Check::pass(name)
        } else {
            Check::fail(name, witness)
        }
    }

    pub fn with_value(mut self, value: serde_json::Value) -> Check {
        self.value = Some(value);
        self
    }
}

/// Summary of a built quantum code.
#[derive(Debug, Clone, Serialize)]
pub struct CodeSummary {
    pub n: u32,
    pub l: usize,
    /// Number of logical systems of dimension `n` the code encodes.
    pub k_logical: usize,
    pub convention: String,
    pub unit_word: Vec<u32>,
    pub generators: Vec<GeneratorSummary>,
    pub punctured_size: usize,
    pub shortened_size: usize,
    pub punctured_min_weight: Option<usize>,
    pub punctured_dual_min_weight: Option<usize>,
}

/// One stabilizer generator as an error index.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorSummary {
    pub x: Vec<u32>,
    pub y: Vec<u32>,
}

/// One nonzero entry of the pair inner-product table.
#[derive(Debug, Clone, Serialize)]
pub struct LambdaEntry {
    pub a: usize,
    pub b: usize,
    pub value: serde_json::Value,
}

/// Tally of a recovery sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    /// Errors attempted, each applied to all `n` logical states.
    pub tried: u64,
    /// Errors whose residual logical operator was the identity.
    pub recovered: u64,
    /// Errors the decoder had no table entry for.
    pub no_correction: u64,
    /// Histogram of residual logical operators, keyed by `(a, b)`.
    pub residuals: Vec<ResidualBucket>,
}

/// One residual class count: after correction the net logical action sent
/// `|i>` to `zeta^(a i) |i + b>`, classified jointly across basis states.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualBucket {
    pub a: u32,
    pub b: u32,
    pub count: u64,
}

/// Summary of a constructed error basis.
#[derive(Debug, Clone, Serialize)]
pub struct BasisSummary {
    pub dim: usize,
    pub size: usize,
    pub labels: Vec<String>,
    pub elements: Vec<serde_json::Value>,
}

/// Wall-clock timing, the only nondeterministic part of a report.
#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub total_ms: u128,
    pub phases: Vec<PhaseTiming>,
}

/// Elapsed time of one named phase of a command.
#[derive(Debug, Clone, Serialize)]
pub struct PhaseTiming {
    pub name: String,
    pub ms: u128,
}

/// The complete result of one command invocation.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    /// Echo of the subcommand and its significant arguments.
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code: Option<CodeSummary>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_table: Option<Vec<LambdaEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSummary>,
    /// True iff every check passed.
    pub pass: bool,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            tool: "weylcode",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            basis: None,
            code: None,
            checks: Vec::new(),
            lambda_table: None,
            sweep: None,
            pass: true,
            timing: Timing {
                total_ms: 0,
                phases: Vec::new(),
            },
        }
    }

    /// Records one named phase duration.
    pub fn phase(&mut self, name: impl Into<String>, ms: u128) {
        self.timing.phases.push(PhaseTiming {
            name: name.into(),
            ms,
        });
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    /// Renders the report as JSON with the timing field populated.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Renders the report as plain text, one line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} {} {}\n",
            self.tool, self.version, self.command
        ));
        if let Some(code) = &self.code {
            out.push_str(&format!(
                "code: n={} l={} k={} convention={} generators={}\n",
                code.n,
                code.l,
                code.k_logical,
                code.convention,
                code.generators.len()
            ));
        }
        if let Some(basis) = &self.basis {
            out.push_str(&format!(
                "basis: dim={} size={}\n",
                basis.dim, basis.size
            ));
        }
        for check in &self.checks {
            if check.pass {
                out.push_str(&format!("PASS {}\n", check.name));
            } else {
                out.push_str(&format!(
                    "FAIL {}: {}\n",
                    check.name,
                    check.witness.as_deref().unwrap_or("no witness")
                ));
            }
        }
        if let Some(sweep) = &self.sweep {
            out.push_str(&format!(
                "sweep: tried={} recovered={} no_correction={}\n",
                sweep.tried, sweep.recovered, sweep.no_correction
            ));
            for bucket in &sweep.residuals {
                out.push_str(&format!(
                    "  residual ({},{}): {}\n",
                    bucket.a, bucket.b, bucket.count
                ));
            }
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!(
            "result: {} ({}/{} checks passed)\n",
            if self.pass { "PASS" } else { "FAIL" },
            passed,
            self.checks.len()
        ));
        out.push_str(&format!("time: {} ms\n", self.timing.total_ms));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_tracking_follows_checks() {
        let mut r = Report::new("basis verify --shift-clock 2");
        r.push(Check::pass("first"));
        assert!(r.pass);
        r.push(Check::fail("second", "broke"));
        assert!(!r.pass);
        r.push(Check::pass("third"));
        assert!(!r.pass);
        let text = r.to_text();
        assert!(text.contains("PASS first"));
        assert!(text.contains("FAIL second: broke"));
        assert!(text.contains("result: FAIL (2/3 checks passed)"));
    }

    #[test]
    fn json_has_timing_as_the_last_field_and_skips_empty_sections() {
        let mut r = Report::new("x");
        r.push(Check::pass("only"));
        let json = r.to_json();
        assert!(json.contains("\"timing\""));
        assert!(!json.contains("\"lambda_table\""));
        assert!(!json.contains("\"sweep\""));
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["pass"], serde_json::Value::Bool(true));
    }
}
