//! The acceptance suite as a library: every criterion is a pure function of
//! the seed, and the rendered report is byte-stable.

mod criteria;
pub mod instances;

use std::fmt::Write;

use serde::Serialize;

pub use criteria::run_criterion;

/// Default seed of the suite.
pub const DEFAULT_SEED: u64 = 7;

/// Number of criteria.
pub const CRITERIA: u8 = 12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub details: Vec<String>,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelftestReport {
    pub schema: &'static str,
    pub seed: u64,
    pub outcomes: Vec<CriterionOutcome>,
}

impl SelftestReport {
    pub fn pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("lamplighter selftest, seed {}\n", self.seed);
        for o in &self.outcomes {
            let _ = writeln!(out, "{}", o.line());
            for d in &o.details {
                let _ = writeln!(out, "        {d}");
            }
        }
        let passed = self.outcomes.iter().filter(|o| o.pass).count();
        let _ = writeln!(out, "{passed}/{} criteria passed", self.outcomes.len());
        out
    }
}

/// Runs every criterion in order.
pub fn run(seed: u64) -> SelftestReport {
    SelftestReport {
        schema: "lamplighter.selftest/1",
        seed,
        outcomes: (1..=CRITERIA).map(|id| run_criterion(id, seed)).collect(),
    }
}
