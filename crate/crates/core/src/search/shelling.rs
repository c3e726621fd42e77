//! Exhaustive search for shelling orders.

use std::collections::HashSet;

use super::Verdict;
use crate::complex::{FaceId, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShellingConfig {
    /// Largest facet count searched (at most 64).
    pub facet_cap: usize,
    pub state_budget: u64,
}

impl Default for ShellingConfig {
    fn default() -> Self {
        ShellingConfig { facet_cap: 64, state_budget: 5_000_000 }
    }
}

struct Shelling {
    n: usize,
    /// `missing[f][h]`: bits (local vertex positions of f) of f outside h.
    missing: Vec<Vec<u32>>,
    /// `meets[f][h]`: f and h share a vertex.
    meets: Vec<Vec<bool>>,
    visited: HashSet<u64>,
    states: u64,
    budget: u64,
}

impl Shelling {
    /// `f ∩ ∪S` is pure of codimension one in `f`.
    fn can_add(&self, f: usize, set: u64) -> bool {
        let members = || (0..self.n).filter(move |&h| set >> h & 1 == 1);
        // ridges f - v lying in some earlier facet
        let ridges = members().map(|h| self.missing[f][h]).filter(|m| m.count_ones() == 1).fold(0u32, |a, m| a | m);
        ridges != 0 && members().all(|h| !self.meets[f][h] || self.missing[f][h] & ridges != 0)
    }

    fn dfs(&mut self, set: u64, order: &mut Vec<usize>) -> Option<bool> {
        if order.len() == self.n {
            return Some(true);
        }
        if !self.visited.insert(set) {
            return Some(false);
        }
        self.states += 1;
        if self.states > self.budget {
            return None;
        }
        for f in 0..self.n {
            if set >> f & 1 == 0 && (set == 0 || self.can_add(f, set)) {
                order.push(f);
                if self.dfs(set | 1 << f, order)? {
                    return Some(true);
                }
                order.pop();
            }
        }
        Some(false)
    }
}

/// A shelling order of the facets, or a proof that none exists. Inputs over
/// the cap, or searches over budget, give [`Verdict::Unknown`].
pub fn is_shellable_bruteforce(m: &SimplicialComplex, cfg: &ShellingConfig) -> Result<Verdict<Vec<FaceId>>> {
    if m.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !m.is_pure() {
        return Err(Error::NotPure);
    }
    let facets = m.facets();
    if facets.len() > cfg.facet_cap.min(64) {
        log::info!("{} facets exceed the shelling cap {}", facets.len(), cfg.facet_cap);
        return Ok(Verdict::Unknown);
    }
    if m.dim() == Some(0) {
        return Ok(Verdict::Certified(facets.to_vec()));
    }
    let n = facets.len();
    let verts: Vec<&[u32]> = facets.iter().map(|&f| m.vertices(f)).collect();
    let missing = (0..n)
        .map(|f| {
            (0..n)
                .map(|h| {
                    verts[f]
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !verts[h].contains(v))
                        .fold(0u32, |a, (i, _)| a | 1 << i)
                })
                .collect()
        })
        .collect();
    let meets = (0..n).map(|f| (0..n).map(|h| verts[f].iter().any(|v| verts[h].contains(v))).collect()).collect();
    let mut s = Shelling { n, missing, meets, visited: HashSet::new(), states: 0, budget: cfg.state_budget };
    let mut order = Vec::new();
    Ok(match s.dfs(0, &mut order) {
        Some(true) => Verdict::Certified(order.into_iter().map(|i| facets[i]).collect()),
        Some(false) => Verdict::CertifiedNot,
        None => Verdict::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(f: &[&[i64]]) -> SimplicialComplex {
        SimplicialComplex::from_int_facets(f).unwrap()
    }

    #[test]
    fn small_cases() {
        let cfg = ShellingConfig::default();
        assert!(is_shellable_bruteforce(&c(&[&[1, 2, 3]]), &cfg).unwrap().is_certified());
        let sphere = c(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        assert!(is_shellable_bruteforce(&sphere, &cfg).unwrap().is_certified());
        assert_eq!(is_shellable_bruteforce(&c(&[&[1, 2], &[3, 4]]), &cfg).unwrap(), Verdict::CertifiedNot);
        // two triangles sharing only a vertex
        assert_eq!(is_shellable_bruteforce(&c(&[&[1, 2, 3], &[1, 4, 5]]), &cfg).unwrap(), Verdict::CertifiedNot);
        assert!(is_shellable_bruteforce(&c(&[&[1], &[2]]), &cfg).unwrap().is_certified());
    }
}
