//! Randomized and exhaustive searches for discrete gradients.
//!
//! Every randomized search runs `attempts` independent attempts. Attempt `i`
//! draws from a ChaCha8 stream seeded with `seed + i`, so an attempt can be
//! rerun in isolation and results do not depend on [`Execution`].

use std::ops::ControlFlow;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_range, Execution};

mod boundary;
mod brute;
mod collapse;
pub(crate) mod engine;
mod heuristic;
mod shelling;
mod trace;

pub use boundary::{
    boundary_critical_search, collapse_depth, depth_of_interior_vector, validate_boundary, BoundaryCriticalRun,
};
pub use brute::{optimal_morse_bruteforce, BruteForceConfig, BruteForceOptimum};
pub use collapse::{
    collapses_onto, decide_collapsibility_exhaustively, is_collapsible, is_endocollapsible, CollapseCertificate,
    EndoCertificate,
};
pub use heuristic::{random_discrete_morse, random_discrete_morse_until, single_attempt, MorseRun, MorseSearch};
pub use shelling::{is_shellable_bruteforce, ShellingConfig};
pub use trace::{CollapseTrace, LabelledEvent, ReplayError, TraceEvent};

/// How a face is chosen among the candidates at each step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Uniformly at random.
    #[default]
    Uniform,
    /// Smallest face id. Deterministic, useful for worked examples.
    LexMin,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Strategy::Uniform),
            "lex-min" | "lex-min-tiebreak" => Ok(Strategy::LexMin),
            other => Err(Error::Config(format!("unknown strategy {other:?}"))),
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Strategy::Uniform => "uniform",
            Strategy::LexMin => "lex-min",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    pub attempts: usize,
    pub strategy: Strategy,
    /// Wall-clock limit, checked between batches of attempts.
    pub time_budget: Option<Duration>,
    pub execution: Execution,
    /// Largest number of barycentric subdivisions a search may try.
    pub max_subdivisions: usize,
}

impl SearchConfig {
    pub fn new(seed: u64, attempts: usize) -> Self {
        SearchConfig {
            seed,
            attempts,
            strategy: Strategy::Uniform,
            time_budget: None,
            execution: Execution::default(),
            max_subdivisions: 0,
        }
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.attempts == 0 {
            return Err(Error::Config("attempts must be at least 1".into()));
        }
        Ok(())
    }

    /// Seed of attempt `i`.
    pub fn attempt_seed(&self, i: usize) -> u64 {
        self.seed.wrapping_add(i as u64)
    }
}

pub(crate) fn attempt_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Outcome of a search that can prove, fail to decide, or disprove.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<T> {
    Certified(T),
    Unknown,
    CertifiedNot,
}

impl<T> Verdict<T> {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified(_))
    }

    pub fn certificate(&self) -> Option<&T> {
        match self {
            Verdict::Certified(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct DriveStats {
    pub attempts_run: usize,
    pub budget_exhausted: bool,
}

const BATCH: usize = 64;

/// Runs attempts in batches, absorbing results in attempt order until
/// `absorb` breaks, the attempts run out, or the time budget is spent.
pub(crate) fn drive<T, R, A>(cfg: &SearchConfig, run: R, mut absorb: A) -> DriveStats
where
    T: Send,
    R: Fn(usize, u64) -> T + Sync + Send,
    A: FnMut(usize, T) -> ControlFlow<()>,
{
    let start = Instant::now();
    let batch = match cfg.execution {
        Execution::Parallel if Execution::parallel_available() => BATCH,
        _ => 1,
    };
    let mut done = 0;
    while done < cfg.attempts {
        if done > 0 && cfg.time_budget.is_some_and(|b| start.elapsed() >= b) {
            log::info!("time budget spent after {done} attempts");
            return DriveStats { attempts_run: done, budget_exhausted: true };
        }
        let n = batch.min(cfg.attempts - done);
        let results = map_range(n, cfg.execution, |j| run(done + j, cfg.attempt_seed(done + j)));
        for (j, r) in results.into_iter().enumerate() {
            if absorb(done + j, r).is_break() {
                return DriveStats { attempts_run: done + j + 1, budget_exhausted: false };
            }
        }
        done += n;
    }
    DriveStats { attempts_run: done, budget_exhausted: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn driving_is_order_stable() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let cfg = SearchConfig::new(10, 200).with_execution(exec);
            let mut seen = Vec::new();
            let stats = drive(
                &cfg,
                |i, s| (i, s),
                |i, (j, s)| {
                    assert_eq!(i, j);
                    seen.push(s);
                    if i == 130 {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                },
            );
            assert_eq!(stats.attempts_run, 131);
            assert_eq!(seen, (10..141).collect::<Vec<u64>>());
        }
        assert!(SearchConfig::new(0, 0).validate().is_err());
        assert_eq!("lex-min-tiebreak".parse::<Strategy>().unwrap(), Strategy::LexMin);
    }
}
