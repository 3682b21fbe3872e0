use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Domain in which a check's identity is asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Validity {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "mod-c8'")]
    ModC8,
    #[serde(rename = "mod-torsion")]
    ModTorsion,
    #[serde(rename = "both-delta-values")]
    BothDeltaValues,
}

impl Validity {
    pub fn label(self) -> &'static str {
        match self {
            Validity::Exact => "exact",
            Validity::ModC8 => "mod-c8'",
            Validity::ModTorsion => "mod-torsion",
            Validity::BothDeltaValues => "both-delta-values",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub statement: String,
    pub verdict: Verdict,
    pub validity: Validity,
    pub witness: Vec<String>,
}

impl Check {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, statement: impl Into<String>, ok: bool) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            statement: statement.into(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            validity: Validity::Exact,
            witness: Vec::new(),
        }
    }

    pub fn validity(mut self, v: Validity) -> Self {
        self.validity = v;
        self
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witness.push(w.into());
        self
    }

    pub fn witnesses<I: IntoIterator<Item = String>>(mut self, ws: I) -> Self {
        self.witness.extend(ws);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub max_degree: Option<i64>,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn new(suite: &str, max_degree: Option<i64>) -> Self {
        Self { suite: suite.into(), max_degree, checks: Vec::new(), summary: Summary::default(), wall_time_ms: 0 }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn finish(mut self, started: std::time::Instant) -> Self {
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        self.summary = Summary { total: self.checks.len(), passed, failed: self.checks.len() - passed };
        self.wall_time_ms = started.elapsed().as_millis() as u64;
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "== {} ==", self.suite);
        for c in &self.checks {
            let v = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "[{v}] {} ({}): {}", c.id, c.validity.label(), c.statement);
            if !c.passed() {
                for w in &c.witness {
                    let _ = writeln!(s, "       {w}");
                }
            }
        }
        let _ = writeln!(
            s,
            "{}: {}/{} passed in {} ms",
            self.suite, self.summary.passed, self.summary.total, self.wall_time_ms
        );
        s
    }
}

/// Check id -> anchor, for every check of every report.
pub fn cross_reference(reports: &[VerificationReport]) -> String {
    let width = reports.iter().flat_map(|r| r.checks.iter().map(|c| c.id.len())).max().unwrap_or(0);
    let mut s = String::new();
    let _ = writeln!(s, "{:width$}  anchor", "check");
    for r in reports {
        for c in &r.checks {
            let _ = writeln!(s, "{:width$}  {}", c.id, c.anchor);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_and_formats() {
        let mut r = VerificationReport::new("demo", Some(4));
        r.push(Check::new("a", "anchor a", "holds", true));
        r.push(Check::new("b", "anchor b", "fails", false).validity(Validity::ModC8).witness("x"));
        let r = r.finish(std::time::Instant::now());
        assert_eq!(r.summary, Summary { total: 2, passed: 1, failed: 1 });
        assert!(!r.passed());
        let j = r.to_json();
        assert!(j.contains("\"validity\": \"mod-c8'\""));
        assert!(j.contains("\"verdict\": \"fail\""));
        assert!(r.to_text().contains("[FAIL] b (mod-c8'): fails"));
        assert!(cross_reference(&[r]).contains("b  anchor b"));
    }
}
