//! Outcomes of witness searches.
//!
//! A `Found` verdict always carries a witness that has been re-verified
//! exactly. `No` is only issued from complete linear reasoning. Randomized
//! searches that run out of budget report `NoWitnessFound` (Hom-space
//! isomorphism searches) or `Unknown` (bilinear dual-basis searches).

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::linalg::Mat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Found,
    No,
    NoWitnessFound,
    Unknown,
}

impl Status {
    /// CLI exit code: 0 found, 1 no, 2 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Found => 0,
            Status::No => 1,
            Status::NoWitnessFound | Status::Unknown => 2,
        }
    }

    pub fn is_definitive(self) -> bool {
        matches!(self, Status::Found | Status::No)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Found => "FOUND",
            Status::No => "NO",
            Status::NoWitnessFound => "NO_WITNESS_FOUND",
            Status::Unknown => "UNKNOWN",
        };
        f.write_str(s)
    }
}

/// One randomized attempt of a search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub index: u64,
    pub height: u64,
    pub outcome: String,
}

/// Search log: the seed, the trial budget and what each trial did.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub seed: Option<u64>,
    pub budget: Option<u64>,
    pub trials: Vec<TrialRecord>,
    pub notes: Vec<String>,
}

impl Trace {
    pub fn seeded(seed: u64, budget: u64) -> Trace {
        Trace { seed: Some(seed), budget: Some(budget), ..Trace::default() }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn record(&mut self, index: u64, outcome: impl Into<String>) {
        self.trials.push(TrialRecord { index, height: trial_height(index), outcome: outcome.into() });
    }
}

#[derive(Clone, Debug)]
pub struct Verdict<W> {
    pub status: Status,
    pub witness: Option<W>,
    pub trace: Trace,
}

impl<W> Verdict<W> {
    pub fn found(witness: W, trace: Trace) -> Self {
        Verdict { status: Status::Found, witness: Some(witness), trace }
    }

    pub fn no(trace: Trace) -> Self {
        Verdict { status: Status::No, witness: None, trace }
    }

    pub fn inconclusive(status: Status, trace: Trace) -> Self {
        debug_assert!(!status.is_definitive());
        Verdict { status, witness: None, trace }
    }

    pub fn is_found(&self) -> bool {
        self.status == Status::Found
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        Verdict { status: self.status, witness: self.witness.map(f), trace: self.trace }
    }
}

/// One equation family evaluated on every basis element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub equation: String,
    pub holds: bool,
    /// First basis element on which the two sides differ.
    pub failing_basis: Option<usize>,
}

impl Check {
    /// Compares two maps column by column.
    pub fn compare(equation: impl Into<String>, lhs: &Mat, rhs: &Mat) -> Check {
        let failing_basis = if lhs.shape() != rhs.shape() { Some(0) } else { lhs.first_differing_column(rhs) };
        Check { equation: equation.into(), holds: failing_basis.is_none(), failing_basis }
    }

    pub fn flag(equation: impl Into<String>, holds: bool) -> Check {
        Check { equation: equation.into(), holds, failing_basis: None }
    }
}

/// The outcome of re-verifying a witness against its defining equations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.holds)
    }

    pub fn equations(&self) -> Vec<String> {
        self.checks.iter().map(|c| c.equation.clone()).collect()
    }
}

/// Trials per coefficient height; heights run 1, 2, 4, ... batch by batch.
pub const TRIALS_PER_HEIGHT: u64 = 4;

pub fn trial_height(trial: u64) -> u64 {
    1u64 << (trial / TRIALS_PER_HEIGHT).min(40)
}

/// Independent random stream for one trial of a seeded search.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}
