//! Face-status table driving every randomized collapse search.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::trace::{CollapseTrace, TraceEvent};
use super::Strategy;
use crate::complex::{FaceId, SimplicialComplex};

const ABSENT: u32 = u32::MAX;

/// Set of face ids with O(1) insert, remove and uniform sampling.
#[derive(Clone, Debug)]
struct Pool {
    items: Vec<FaceId>,
    pos: Vec<u32>,
}

impl Pool {
    fn new(n: usize) -> Self {
        Pool { items: Vec::new(), pos: vec![ABSENT; n] }
    }

    fn insert(&mut self, x: FaceId) {
        if self.pos[x] == ABSENT {
            self.pos[x] = self.items.len() as u32;
            self.items.push(x);
        }
    }

    fn remove(&mut self, x: FaceId) {
        let p = self.pos[x];
        if p == ABSENT {
            return;
        }
        let last = self.items.pop().expect("non-empty");
        if last != x {
            self.items[p as usize] = last;
            self.pos[last] = p;
        }
        self.pos[x] = ABSENT;
    }

    fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn pick(&self, strategy: Strategy, rng: &mut ChaCha8Rng) -> FaceId {
        match strategy {
            Strategy::Uniform => self.items[rng.gen_range(0..self.items.len() as u64) as usize],
            Strategy::LexMin => *self.items.iter().min().expect("non-empty"),
        }
    }
}

/// Mutable status of one attempt: which faces remain, how many remaining
/// cofaces each has, and which faces are frozen (never removed).
pub(crate) struct CollapseState<'a> {
    c: &'a SimplicialComplex,
    alive: Vec<bool>,
    live_cofaces: Vec<u32>,
    frozen: Vec<bool>,
    free: Pool,
    by_dim: Vec<Pool>,
    remaining: usize,
    pub(crate) trace: CollapseTrace,
}

impl<'a> CollapseState<'a> {
    pub(crate) fn new(c: &'a SimplicialComplex, frozen: Option<&[bool]>) -> Self {
        let n = c.num_faces();
        let frozen = frozen.map(|f| f.to_vec()).unwrap_or_else(|| vec![false; n]);
        let dims = c.dim().map_or(0, |d| d + 1);
        let mut s = CollapseState {
            c,
            alive: vec![true; n],
            live_cofaces: (0..n).map(|x| c.cofaces_of(x).len() as u32).collect(),
            frozen,
            free: Pool::new(n),
            by_dim: (0..dims).map(|_| Pool::new(n)).collect(),
            remaining: 0,
            trace: CollapseTrace::default(),
        };
        for x in 0..n {
            if !s.frozen[x] {
                s.by_dim[c.dim_of(x)].insert(x);
                s.remaining += 1;
                if s.live_cofaces[x] == 1 {
                    s.free.insert(x);
                }
            }
        }
        s
    }

    /// Non-frozen faces still present.
    pub(crate) fn remaining(&self) -> usize {
        self.remaining
    }

    pub(crate) fn alive(&self) -> &[bool] {
        &self.alive
    }

    fn remove(&mut self, x: FaceId) {
        debug_assert!(self.alive[x] && !self.frozen[x]);
        self.alive[x] = false;
        self.free.remove(x);
        self.by_dim[self.c.dim_of(x)].remove(x);
        self.remaining -= 1;
        for &y in self.c.boundary_of(x) {
            self.live_cofaces[y] -= 1;
            if self.alive[y] && !self.frozen[y] && self.live_cofaces[y] == 1 {
                self.free.insert(y);
            } else {
                self.free.remove(y);
            }
        }
    }

    /// One elementary collapse, if a free face exists.
    pub(crate) fn collapse_step(&mut self, strategy: Strategy, rng: &mut ChaCha8Rng) -> Option<(FaceId, FaceId)> {
        if self.free.is_empty() {
            return None;
        }
        let face = self.free.pick(strategy, rng);
        let coface =
            *self.c.cofaces_of(face).iter().find(|&&y| self.alive[y]).expect("a free face has one remaining coface");
        self.remove(coface);
        self.remove(face);
        self.trace.events.push(TraceEvent::Collapse { face, coface });
        Some((face, coface))
    }

    /// Removes a top-dimensional remaining face as critical.
    pub(crate) fn critical_step(&mut self, strategy: Strategy, rng: &mut ChaCha8Rng) -> Option<FaceId> {
        let pool = self.by_dim.iter().rev().find(|p| !p.is_empty())?;
        let face = pool.pick(strategy, rng);
        self.remove_critical(face);
        Some(face)
    }

    /// Removes a given maximal, non-frozen face as critical.
    pub(crate) fn remove_critical(&mut self, face: FaceId) {
        debug_assert_eq!(self.live_cofaces[face], 0);
        self.remove(face);
        self.trace.events.push(TraceEvent::Critical { face });
    }

    /// Collapses until stuck. Returns the number of pairs removed.
    pub(crate) fn collapse_all(&mut self, strategy: Strategy, rng: &mut ChaCha8Rng) -> usize {
        let mut k = 0;
        while self.collapse_step(strategy, rng).is_some() {
            k += 1;
        }
        k
    }

    /// The heuristic loop: collapse while possible, otherwise remove a
    /// critical top face, until only frozen faces remain.
    pub(crate) fn run_morse(&mut self, strategy: Strategy, rng: &mut ChaCha8Rng) {
        loop {
            if self.collapse_step(strategy, rng).is_some() {
                continue;
            }
            if self.critical_step(strategy, rng).is_none() {
                break;
            }
        }
    }

    /// Pairs of the trace, i.e. the gradient built so far.
    pub(crate) fn pairs(&self) -> Vec<(FaceId, FaceId)> {
        self.trace
            .events
            .iter()
            .filter_map(|e| match *e {
                TraceEvent::Collapse { face, coface } => Some((face, coface)),
                TraceEvent::Critical { .. } => None,
            })
            .collect()
    }

    /// Faces removed as critical, in order.
    pub(crate) fn critical(&self) -> Vec<FaceId> {
        self.trace
            .events
            .iter()
            .filter_map(|e| match *e {
                TraceEvent::Critical { face } => Some(face),
                TraceEvent::Collapse { .. } => None,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn pool_sampling_stays_consistent() {
        let mut p = Pool::new(10);
        for x in [3, 5, 7, 9] {
            p.insert(x);
        }
        p.remove(5);
        p.remove(5);
        p.insert(3);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..50 {
            assert!([3, 7, 9].contains(&p.pick(Strategy::Uniform, &mut rng)));
        }
        assert_eq!(p.pick(Strategy::LexMin, &mut rng), 3);
    }

    #[test]
    fn triangle_collapses_to_a_vertex() {
        let k = SimplicialComplex::from_int_facets(&[&[1, 2, 3]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut s = CollapseState::new(&k, None);
        s.run_morse(Strategy::Uniform, &mut rng);
        assert_eq!(s.remaining(), 0);
        assert_eq!(s.pairs().len(), 3);
        assert_eq!(s.critical().len(), 1);
        assert_eq!(k.dim_of(s.critical()[0]), 0);
    }
}
