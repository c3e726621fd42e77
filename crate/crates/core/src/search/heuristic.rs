//! The random discrete Morse heuristic: collapse a random free face while one
//! exists, otherwise delete a random top-dimensional face as critical.

use std::ops::ControlFlow;

use super::engine::CollapseState;
use super::trace::CollapseTrace;
use super::{attempt_rng, drive, SearchConfig, Strategy};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::morse::{Gradient, MorseVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseRun {
    pub attempt: usize,
    pub seed: u64,
    pub gradient: Gradient,
    pub vector: MorseVector,
    pub trace: CollapseTrace,
}

#[derive(Clone, Debug)]
pub struct MorseSearch {
    /// Best run by total count, then lexicographically, then attempt index.
    pub best: MorseRun,
    /// Vector of every attempt run, in attempt order.
    pub vectors: Vec<MorseVector>,
    pub attempts_run: usize,
    pub budget_exhausted: bool,
}

/// One attempt from an explicit seed.
pub fn single_attempt(c: &SimplicialComplex, strategy: Strategy, seed: u64) -> MorseRun {
    let mut rng = attempt_rng(seed);
    let mut state = CollapseState::new(c, None);
    state.run_morse(strategy, &mut rng);
    let mut counts = vec![0usize; c.dim().map_or(0, |d| d + 1)];
    for f in state.critical() {
        counts[c.dim_of(f)] += 1;
    }
    MorseRun {
        attempt: 0,
        seed,
        gradient: Gradient::new(state.pairs()),
        vector: MorseVector(counts),
        trace: std::mem::take(&mut state.trace),
    }
}

pub fn random_discrete_morse(c: &SimplicialComplex, cfg: &SearchConfig) -> Result<MorseSearch> {
    random_discrete_morse_until(c, cfg, |_| false)
}

/// Like [`random_discrete_morse`], stopping after the first attempt whose
/// vector satisfies `stop`.
pub fn random_discrete_morse_until(
    c: &SimplicialComplex,
    cfg: &SearchConfig,
    stop: impl Fn(&MorseVector) -> bool,
) -> Result<MorseSearch> {
    cfg.validate()?;
    if c.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut best: Option<MorseRun> = None;
    let mut vectors = Vec::new();
    let stats = drive(
        cfg,
        |i, seed| MorseRun { attempt: i, ..single_attempt(c, cfg.strategy, seed) },
        |_, run| {
            vectors.push(run.vector.clone());
            let halt = stop(&run.vector);
            if best.as_ref().is_none_or(|b| run.vector.cmp_quality(&b.vector).is_lt()) {
                best = Some(run);
            }
            if halt {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        },
    );
    Ok(MorseSearch {
        best: best.expect("at least one attempt"),
        vectors,
        attempts_run: stats.attempts_run,
        budget_exhausted: stats.budget_exhausted,
    })
}
