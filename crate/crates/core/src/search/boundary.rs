//! Boundary-critical gradients and collapse depth.
//!
//! Boundary faces are frozen: the heuristic only matches interior faces,
//! so every boundary face stays critical. The interior vector counts the
//! interior critical faces.

use std::ops::ControlFlow;

use super::engine::CollapseState;
use super::trace::CollapseTrace;
use super::{attempt_rng, drive, SearchConfig, Strategy};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::morse::{Gradient, MorseVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCriticalRun {
    pub attempt: usize,
    pub seed: u64,
    pub interior_vector: MorseVector,
    pub gradient: Gradient,
    /// Depth witnessed by this gradient (see [`depth_of_interior_vector`]).
    pub depth: usize,
    /// Interior events followed by the boundary faces as critical removals,
    /// largest first; it replays to the empty complex.
    pub trace: CollapseTrace,
    /// Attempts run by the search that returned this run.
    pub attempts_run: usize,
}

/// The largest `k ≤ d` with `c_d = 1` and `c_{d-i} = 0` for `0 < i < k`, or
/// 0 when `c_d ≠ 1`.
pub fn depth_of_interior_vector(v: &MorseVector) -> usize {
    let Some(d) = v.len().checked_sub(1) else { return 0 };
    if v.get(d) != 1 {
        return 0;
    }
    let mut k = 1;
    while k < d && v.get(d - k) == 0 {
        k += 1;
    }
    k.min(d.max(1))
}

fn require_pseudomanifold(m: &SimplicialComplex) -> Result<Vec<bool>> {
    if m.is_empty() {
        return Err(Error::EmptyInput);
    }
    let report = m.structure_report();
    if !report.is_pure {
        return Err(Error::NotPure);
    }
    if !report.is_pseudomanifold {
        return Err(Error::NotPseudomanifold);
    }
    m.boundary_face_mask()
}

/// Checks a claimed boundary against the computed one.
pub fn validate_boundary(m: &SimplicialComplex, designated: &SimplicialComplex) -> Result<()> {
    let actual = m.boundary_complex()?;
    if *designated != actual {
        return Err(Error::DesignatedBoundary);
    }
    Ok(())
}

fn attempt(m: &SimplicialComplex, frozen: &[bool], strategy: Strategy, index: usize, seed: u64) -> BoundaryCriticalRun {
    let mut rng = attempt_rng(seed);
    let mut state = CollapseState::new(m, Some(frozen));
    state.run_morse(strategy, &mut rng);
    let mut counts = vec![0usize; m.dim().map_or(0, |d| d + 1)];
    for f in state.critical() {
        counts[m.dim_of(f)] += 1;
    }
    let pairs = state.pairs();
    let mut trace = std::mem::take(&mut state.trace);
    let mut boundary: Vec<usize> = (0..m.num_faces()).filter(|&x| frozen[x]).collect();
    boundary.sort_by_key(|&x| std::cmp::Reverse(m.dim_of(x)));
    trace.events.extend(boundary.into_iter().map(|face| super::TraceEvent::Critical { face }));
    let interior_vector = MorseVector(counts);
    BoundaryCriticalRun {
        attempt: index,
        seed,
        depth: depth_of_interior_vector(&interior_vector),
        interior_vector,
        gradient: Gradient::new(pairs),
        trace,
        attempts_run: 0,
    }
}

/// Best boundary-critical run by interior vector (fewest critical faces,
/// then lexicographic, then earliest attempt).
pub fn boundary_critical_search(m: &SimplicialComplex, cfg: &SearchConfig) -> Result<BoundaryCriticalRun> {
    cfg.validate()?;
    let frozen = require_pseudomanifold(m)?;
    let mut best: Option<BoundaryCriticalRun> = None;
    let stats = drive(
        cfg,
        |i, seed| attempt(m, &frozen, cfg.strategy, i, seed),
        |_, run| {
            if best.as_ref().is_none_or(|b| run.interior_vector.cmp_quality(&b.interior_vector).is_lt()) {
                best = Some(run);
            }
            ControlFlow::Continue(())
        },
    );
    Ok(BoundaryCriticalRun { attempts_run: stats.attempts_run, ..best.expect("at least one attempt") })
}

/// The run witnessing the largest depth. This is a lower bound on the
/// collapse depth, never an exact value. Stops early at depth `d`.
pub fn collapse_depth(m: &SimplicialComplex, cfg: &SearchConfig) -> Result<BoundaryCriticalRun> {
    cfg.validate()?;
    let frozen = require_pseudomanifold(m)?;
    let d = m.dim().unwrap_or(0);
    let mut best: Option<BoundaryCriticalRun> = None;
    let stats = drive(
        cfg,
        |i, seed| attempt(m, &frozen, cfg.strategy, i, seed),
        |_, run| {
            let better = best.as_ref().is_none_or(|b| {
                run.depth > b.depth
                    || (run.depth == b.depth && run.interior_vector.cmp_quality(&b.interior_vector).is_lt())
            });
            let top = run.depth >= d.max(1);
            if better {
                best = Some(run);
            }
            if top {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        },
    );
    Ok(BoundaryCriticalRun { attempts_run: stats.attempts_run, ..best.expect("at least one attempt") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morse::verify_gradient;

    fn c(f: &[&[i64]]) -> SimplicialComplex {
        SimplicialComplex::from_int_facets(f).unwrap()
    }

    #[test]
    fn depth_from_vectors() {
        assert_eq!(depth_of_interior_vector(&MorseVector(vec![0, 0, 1])), 2);
        assert_eq!(depth_of_interior_vector(&MorseVector(vec![0, 0, 0, 1])), 3);
        assert_eq!(depth_of_interior_vector(&MorseVector(vec![1, 0, 1])), 2);
        assert_eq!(depth_of_interior_vector(&MorseVector(vec![1, 1, 1])), 1);
        assert_eq!(depth_of_interior_vector(&MorseVector(vec![1, 0, 2])), 0);
        assert_eq!(depth_of_interior_vector(&MorseVector(vec![0, 1])), 1);
    }

    #[test]
    fn simplices_have_one_interior_critical_cell() {
        for facet in [&[1, 2][..], &[1, 2, 3], &[1, 2, 3, 4], &[1, 2, 3, 4, 5]] {
            let m = c(&[facet]);
            let d = facet.len() - 1;
            let run = boundary_critical_search(&m, &SearchConfig::new(1, 5)).unwrap();
            let mut expected = vec![0; d + 1];
            expected[d] = 1;
            assert_eq!(run.interior_vector, MorseVector(expected));
            assert!(run.gradient.is_empty());
            assert!(run.trace.replays_to(&m, &SimplicialComplex::empty()));
        }
        let run = collapse_depth(&c(&[&[1, 2, 3]]), &SearchConfig::new(0, 3)).unwrap();
        assert_eq!(run.depth, 2);
    }

    #[test]
    fn closed_spheres_behave_like_the_plain_heuristic() {
        let m = c(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        let run = collapse_depth(&m, &SearchConfig::new(0, 20)).unwrap();
        assert_eq!(run.interior_vector, MorseVector(vec![1, 0, 1]));
        assert!(run.depth >= 2);
        assert!(verify_gradient(&m, &run.gradient).unwrap().is_valid());
    }

    #[test]
    fn boundary_is_computed_not_designated() {
        let m = c(&[&[1, 2], &[2, 3], &[1, 3]]);
        assert!(matches!(validate_boundary(&m, &c(&[&[1]])), Err(Error::DesignatedBoundary)));
        let disk = c(&[&[1, 2, 3]]);
        assert!(validate_boundary(&disk, &c(&[&[1, 2], &[2, 3], &[1, 3]])).is_ok());
        assert!(matches!(
            boundary_critical_search(&c(&[&[1, 2], &[1, 3], &[1, 4]]), &SearchConfig::new(0, 1)),
            Err(Error::NotPseudomanifold)
        ));
    }
}
