//! Verification suites. Each suite returns a report whose checks pass or
//! fail; an `Err` means the suite itself could not run.

mod characters;
mod g2;
mod invariants;
mod negative;
mod report;
mod so4;
mod spin7;

use std::time::Instant;

use thiserror::Error;

use crate::catalog::Catalog;

pub use report::{cross_reference, Check, Summary, Validity, Verdict, VerificationReport};

#[derive(Debug, Error)]
pub enum SuiteError {
    /// The suite could not run.
    #[error("{0}")]
    Internal(String),
    /// A catalog map does not respect the relations of its source.
    #[error("{0}")]
    Unverified(String),
}

macro_rules! suite_error_from {
    ($($t:ty),*) => {$(
        impl From<$t> for SuiteError {
            fn from(e: $t) -> Self {
                SuiteError::Internal(e.to_string())
            }
        }
    )*};
}

impl From<crate::maps::MapError> for SuiteError {
    fn from(e: crate::maps::MapError) -> Self {
        match e {
            crate::maps::MapError::NotVerified(..) => SuiteError::Unverified(e.to_string()),
            e => SuiteError::Internal(e.to_string()),
        }
    }
}

suite_error_from!(
    crate::catalog::CatalogError,
    crate::maps::constants::ConstantError,
    crate::presentations::PresentationError,
    crate::presentations::g2::CompletenessError,
    crate::invariants::InvariantError,
    crate::chern::ChernError,
    crate::polyring::PolyError
);

pub const SUITES: [&str; 6] = ["g2", "so4", "spin7", "dickson", "weyl", "characters"];

pub const DEFAULT_G2_DEGREE: i64 = 20;
pub const DEFAULT_SPIN7_DEGREE: i64 = 16;
pub const DEFAULT_DICKSON_DEGREE: i64 = 14;
pub const DEFAULT_WEYL_DEGREE: i64 = 12;

/// Number of random ideal elements (and of non-members) in the G2
/// completeness check.
pub const COMPLETENESS_SAMPLES: usize = 200;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub catalog: Catalog,
    /// Overrides every suite's default degree bound.
    pub max_degree: Option<i64>,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { catalog: Catalog::builtin(), max_degree: None, seed: 0x5eed }
    }
}

impl SuiteConfig {
    fn bound(&self, default: i64) -> i64 {
        self.max_degree.unwrap_or(default)
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let started = Instant::now();
    let outcome = match name {
        "g2" => g2::verify_g2(cfg),
        "so4" => so4::verify_so4(cfg),
        "spin7" => spin7::verify_spin7(cfg),
        "dickson" => invariants::verify_dickson(cfg),
        "weyl" => invariants::verify_weyl(cfg),
        "characters" => characters::verify_characters(cfg),
        "negative" => negative::verify_negative_controls(cfg),
        other => return Err(SuiteError::Internal(format!("unknown suite `{other}`"))),
    };
    let report = match outcome {
        Ok(r) => r,
        Err(SuiteError::Unverified(msg)) => {
            let mut r = VerificationReport::new(name, cfg.max_degree);
            r.push(
                Check::new(format!("{name}.maps"), "ring maps", "every catalog map used by the suite is well defined", false)
                    .witness(msg),
            );
            r
        }
        Err(e) => return Err(e),
    };
    Ok(report.finish(started))
}

pub fn verify_g2(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    run_suite("g2", cfg)
}

pub fn verify_so4(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    run_suite("so4", cfg)
}

pub fn verify_spin7(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    run_suite("spin7", cfg)
}

pub fn verify_dickson(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    run_suite("dickson", cfg)
}

pub fn verify_weyl(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    run_suite("weyl", cfg)
}

pub fn verify_characters(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    run_suite("characters", cfg)
}

pub fn verify_negative_controls(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    run_suite("negative", cfg)
}

/// Every suite, in a fixed order, optionally followed by the negative
/// controls.
pub fn run_all(cfg: &SuiteConfig, negative_controls: bool) -> Result<Vec<VerificationReport>, SuiteError> {
    let mut names: Vec<&str> = SUITES.to_vec();
    if negative_controls {
        names.push("negative");
    }
    names.into_iter().map(|n| run_suite(n, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_small_degree() {
        let cfg = SuiteConfig { max_degree: Some(10), ..Default::default() };
        for name in SUITES.iter().chain(["negative"].iter()) {
            let r = run_suite(name, &cfg).unwrap();
            let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed()).map(|c| (&c.id, &c.witness)).collect();
            assert!(failed.is_empty(), "{name}: {failed:#?}");
        }
    }
}
