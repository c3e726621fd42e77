//! Exhaustive search for an optimal Morse vector on small complexes.
//!
//! Faces are bits of a `u64`. The search walks removal sequences (free
//! collapses and deletions of maximal faces), remembers the best partial
//! vector that reached each remaining subcomplex, and prunes with the mod-2
//! Betti numbers of what remains.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::complex::{FaceId, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::betti_mod2;
use crate::morse::{Gradient, MorseVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForceConfig {
    /// Largest face count accepted (at most 64).
    pub face_cap: usize,
    /// Largest number of search states visited before giving up.
    pub state_budget: u64,
}

impl Default for BruteForceConfig {
    fn default() -> Self {
        BruteForceConfig { face_cap: 60, state_budget: 20_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceOptimum {
    pub vector: MorseVector,
    pub gradient: Gradient,
    pub states: u64,
}

#[derive(Clone, Copy)]
enum Move {
    Pair(usize, usize),
    Critical(usize),
}

struct Search {
    n: usize,
    dims: Vec<usize>,
    lower: Vec<u64>,
    upper: Vec<u64>,
    top: usize,
    seen: HashMap<u64, Vec<u32>>,
    best: Option<(Vec<u32>, Vec<Move>)>,
    target: Vec<u32>,
    states: u64,
    budget: u64,
}

fn better(a: &[u32], b: &[u32]) -> Ordering {
    let (ta, tb): (u32, u32) = (a.iter().sum(), b.iter().sum());
    ta.cmp(&tb).then_with(|| a.cmp(b))
}

/// Rank over GF(2) of bit vectors.
fn rank(rows: impl Iterator<Item = u64>) -> usize {
    let mut basis = [0u64; 64];
    let mut r = 0;
    for mut v in rows {
        while v != 0 {
            let h = 63 - v.leading_zeros() as usize;
            if basis[h] == 0 {
                basis[h] = v;
                r += 1;
                break;
            }
            v ^= basis[h];
        }
    }
    r
}

impl Search {
    fn betti(&self, alive: u64) -> Vec<u32> {
        let mut count = vec![0u32; self.top + 1];
        let mut ranks = vec![0u32; self.top + 2];
        for k in 0..=self.top {
            let faces = (0..self.n).filter(|&x| alive >> x & 1 == 1 && self.dims[x] == k);
            count[k] = faces.clone().count() as u32;
            if k > 0 {
                ranks[k] = rank(faces.map(|x| self.lower[x])) as u32;
            }
        }
        (0..=self.top).map(|k| count[k] - ranks[k] - ranks[k + 1]).collect()
    }

    fn moves(&self, alive: u64) -> Vec<Move> {
        let mut pairs = Vec::new();
        let mut crit = Vec::new();
        for x in (0..self.n).filter(|&x| alive >> x & 1 == 1) {
            let up = self.upper[x] & alive;
            match up.count_ones() {
                0 => crit.push(x),
                1 => pairs.push(Move::Pair(x, up.trailing_zeros() as usize)),
                _ => {}
            }
        }
        crit.sort_by_key(|&x| std::cmp::Reverse(self.dims[x]));
        pairs.extend(crit.into_iter().map(Move::Critical));
        pairs
    }

    /// Returns true once the global optimum is known to be reached.
    fn dfs(&mut self, alive: u64, partial: &mut Vec<u32>, path: &mut Vec<Move>) -> Result<bool> {
        self.states += 1;
        if self.states > self.budget {
            return Err(Error::BudgetExhausted(self.budget));
        }
        if alive == 0 {
            if self.best.as_ref().is_none_or(|(b, _)| better(partial, b).is_lt()) {
                self.best = Some((partial.clone(), path.clone()));
            }
            return Ok(*partial == self.target);
        }
        match self.seen.get(&alive) {
            Some(prev) if better(prev, partial).is_le() => return Ok(false),
            _ => {
                self.seen.insert(alive, partial.clone());
            }
        }
        if let Some((b, _)) = &self.best {
            let bound: Vec<u32> = partial.iter().zip(self.betti(alive)).map(|(p, q)| p + q).collect();
            if better(&bound, b).is_ge() {
                return Ok(false);
            }
        }
        for m in self.moves(alive) {
            let next = match m {
                Move::Pair(a, b) => alive & !(1 << a) & !(1 << b),
                Move::Critical(a) => {
                    partial[self.dims[a]] += 1;
                    alive & !(1 << a)
                }
            };
            path.push(m);
            let done = self.dfs(next, partial, path)?;
            path.pop();
            if let Move::Critical(a) = m {
                partial[self.dims[a]] -= 1;
            }
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// The least Morse vector (fewest critical faces, then lexicographic) over
/// all gradients of `c`, with a gradient attaining it.
pub fn optimal_morse_bruteforce(c: &SimplicialComplex, cfg: &BruteForceConfig) -> Result<BruteForceOptimum> {
    let n = c.num_faces();
    let cap = cfg.face_cap.min(64);
    if n > cap {
        return Err(Error::CapExceeded { what: "faces", cap, found: n });
    }
    let Some(top) = c.dim() else { return Err(Error::EmptyInput) };
    let mask = |ids: &[FaceId]| ids.iter().fold(0u64, |m, &y| m | 1 << y);
    let mut s = Search {
        n,
        dims: (0..n).map(|x| c.dim_of(x)).collect(),
        lower: (0..n).map(|x| mask(c.boundary_of(x))).collect(),
        upper: (0..n).map(|x| mask(c.cofaces_of(x))).collect(),
        top,
        seen: HashMap::new(),
        best: None,
        target: betti_mod2(c).iter().map(|&b| b as u32).collect(),
        states: 0,
        budget: cfg.state_budget,
    };
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    s.dfs(full, &mut vec![0; top + 1], &mut Vec::new())?;
    let (vector, path) = s.best.expect("every complex can be removed");
    let pairs = path
        .into_iter()
        .filter_map(|m| match m {
            Move::Pair(a, b) => Some((a, b)),
            Move::Critical(_) => None,
        })
        .collect();
    Ok(BruteForceOptimum {
        vector: MorseVector(vector.into_iter().map(|x| x as usize).collect()),
        gradient: Gradient::new(pairs),
        states: s.states,
    })
}
