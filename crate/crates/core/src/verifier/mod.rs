//! Seeded property campaigns over the three ring families, reported as JSON.
//!
//! A campaign is identified by a [`CheckId`] and driven by [`CheckParams`]. Randomised campaigns
//! give trial `i` the stream [`crate::rng::trial_stream`]`(seed, i)`, so trials run in parallel and
//! the report does not depend on scheduling. Reports are byte-identical for identical inputs
//! unless wall-clock timing is requested.

mod cofinite;
mod finite;
mod quadratic;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cofinring::CofinError;
use crate::quadorder::QuadError;

pub use finite::{default_corpus, standard_corpus};
pub use quadratic::{elements_of_norm, greedy_descending_chain, sample_ideal_with_norm_cap};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown check '{0}' (expected one of akizuki, reduced-rm, cdr, poly-rm, cofinite, ufd)")]
    UnknownCheck(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Cofin(#[from] CofinError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    Akizuki,
    ReducedRm,
    Cdr,
    PolyRm,
    Cofinite,
    Ufd,
}

impl CheckId {
    pub const ALL: [CheckId; 6] = [
        CheckId::Akizuki,
        CheckId::ReducedRm,
        CheckId::Cdr,
        CheckId::PolyRm,
        CheckId::Cofinite,
        CheckId::Ufd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Akizuki => "akizuki",
            CheckId::ReducedRm => "reduced-rm",
            CheckId::Cdr => "cdr",
            CheckId::PolyRm => "poly-rm",
            CheckId::Cofinite => "cofinite",
            CheckId::Ufd => "ufd",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = VerifyError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == text)
            .ok_or_else(|| VerifyError::UnknownCheck(text.to_string()))
    }
}

/// Campaign inputs. Each check reads only the fields it needs and echoes them in the report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckParams {
    pub s: u64,
    pub trials: u64,
    pub bound: u64,
    pub seed: u64,
    /// Length of the ascending chain for the cofinite check.
    pub n: usize,
    /// Ring descriptors for the finite-ring checks; `None` selects the default corpus.
    pub corpus: Option<Vec<String>>,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams {
            s: 14,
            trials: 100,
            bound: 20,
            seed: 0,
            n: 100,
            corpus: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    CounterexampleFoundAsExpected,
}

impl Verdict {
    /// Pass and expected counterexamples both count as success.
    pub fn is_success(self) -> bool {
        self != Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::CounterexampleFoundAsExpected => "counterexample_found_as_expected",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub trials: u64,
    pub max_chain: u64,
    /// Sampled objects discarded for exceeding a size cap.
    pub resampled: u64,
    /// Wall time, present only when timing was requested.
    pub ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub verdict: Verdict,
    /// Tagged JSON objects; every object carries a `kind` field.
    pub witnesses: Vec<Value>,
    pub stats: Stats,
    pub summary: String,
    pub schema_version: u32,
}

impl VerifyReport {
    fn new(check: CheckId) -> Self {
        VerifyReport {
            check: check.name().to_string(),
            params: BTreeMap::new(),
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            stats: Stats::default(),
            summary: String::new(),
            schema_version: SCHEMA_VERSION,
        }
    }

    fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Witnesses of the given kind.
    pub fn witnesses_of<'a>(&'a self, kind: &'a str) -> impl Iterator<Item = &'a Value> + 'a {
        self.witnesses.iter().filter(move |w| w["kind"] == kind)
    }
}

/// Runs one campaign. Wall time is recorded only when `timing` is set.
pub fn run(check: CheckId, params: &CheckParams, timing: bool) -> Result<VerifyReport, VerifyError> {
    let start = Instant::now();
    let mut report = VerifyReport::new(check);
    match check {
        CheckId::Akizuki => finite::check_akizuki(params, &mut report),
        CheckId::PolyRm => finite::check_polynomial_rm(params, &mut report),
        CheckId::ReducedRm => quadratic::check_reduced_rm(params, &mut report)?,
        CheckId::Cdr => quadratic::check_cdr(params, &mut report)?,
        CheckId::Ufd => quadratic::check_ufd_failure(params, &mut report)?,
        CheckId::Cofinite => cofinite::check_cofinite(params, &mut report)?,
    }
    if timing {
        report.stats.ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}
