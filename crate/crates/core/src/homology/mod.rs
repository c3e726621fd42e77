//! Simplicial homology: boundary operators, Betti numbers over the field with
//! two elements and over the rationals, and integral torsion.

mod mod2;
mod snf;

pub use mod2::rank_mod2;
pub use snf::{dense_smith, invariant_factors};

use num_bigint::BigUint;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::complex::{FaceId, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exec::{map_range, Execution};
use crate::simplex::Simplex;

/// Column-major sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    /// For each column, `(row, value)` entries sorted by row.
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.columns[col].iter().find(|&&(r, _)| r == row).map_or(0, |&(_, v)| v)
    }

    /// `self * other`, exactly.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch");
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc = std::collections::BTreeMap::<usize, i64>::new();
                for &(k, b) in col {
                    for &(i, a) in &self.columns[k] {
                        *acc.entry(i).or_insert(0) += a * b;
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, columns }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|&(_, v)| v == 0))
    }

    /// Rank over the rationals (number of non-zero invariant factors).
    pub fn rank(&self) -> usize {
        invariant_factors(self).len()
    }
}

/// The boundary maps `∂_k : C_k → C_{k-1}` for `k = 1..=dim`.
///
/// Rows and columns are indexed by the position of a face within its
/// dimension. The face omitting the `i`-th vertex gets sign `(-1)^i`.
#[derive(Clone, Debug)]
pub struct BoundaryOperator {
    /// `maps[k - 1]` is `∂_k`.
    pub maps: Vec<SparseMatrix>,
}

impl BoundaryOperator {
    pub fn of(c: &SimplicialComplex) -> Self {
        let top = c.dim().unwrap_or(0);
        let maps = (1..=top)
            .map(|k| {
                let lower = c.faces_of_dim(k - 1).start;
                let columns = c
                    .faces_of_dim(k)
                    .map(|f| {
                        let mut col: Vec<(usize, i64)> = c
                            .boundary_of(f)
                            .iter()
                            .enumerate()
                            .map(|(i, &b)| (b - lower, if i % 2 == 0 { 1 } else { -1 }))
                            .collect();
                        col.sort_unstable();
                        col
                    })
                    .collect();
                SparseMatrix { rows: c.faces_of_dim(k - 1).len(), columns }
            })
            .collect();
        BoundaryOperator { maps }
    }

    /// `∂_k`, if `1 <= k <= dim`.
    pub fn get(&self, k: usize) -> Option<&SparseMatrix> {
        k.checked_sub(1).and_then(|i| self.maps.get(i))
    }

    /// Whether `∂_{k-1} ∘ ∂_k = 0` for every k.
    pub fn squares_to_zero(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }
}

pub fn boundary_operators(c: &SimplicialComplex) -> BoundaryOperator {
    BoundaryOperator::of(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub betti_mod2: Vec<usize>,
    pub betti_rational: Vec<usize>,
    /// Invariant factors greater than one, per dimension.
    #[serde(with = "torsion_as_strings")]
    pub torsion: Vec<Vec<BigUint>>,
}

impl HomologyProfile {
    /// Integral homology of the `n`-sphere (`n >= 0`).
    pub fn is_sphere_of_dim(&self, n: usize) -> bool {
        if self.torsion.iter().any(|t| !t.is_empty()) || self.betti_rational.len() != n + 1 {
            return false;
        }
        if n == 0 {
            return self.betti_rational == [2];
        }
        self.betti_rational.iter().enumerate().all(|(i, &b)| b == usize::from(i == 0 || i == n))
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|t| !t.is_empty())
    }
}

mod torsion_as_strings {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(t: &[Vec<BigUint>], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<String>> = t.iter().map(|d| d.iter().map(ToString::to_string).collect()).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigUint>>, D::Error> {
        let v: Vec<Vec<String>> = Vec::deserialize(d)?;
        v.into_iter()
            .map(|dim| dim.into_iter().map(|x| x.parse::<BigUint>().map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

fn betti_from_ranks(f: &[usize], ranks: &[usize]) -> Vec<usize> {
    // ranks[k] = rank ∂_k, with ∂_0 = 0 and ∂_{dim+1} = 0
    (0..f.len()).map(|k| f[k] - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0)).collect()
}

pub fn betti_mod2(c: &SimplicialComplex) -> Vec<usize> {
    betti_mod2_with(c, Execution::default())
}

pub fn betti_mod2_with(c: &SimplicialComplex, exec: Execution) -> Vec<usize> {
    let ops = BoundaryOperator::of(c);
    let mut ranks = vec![0];
    ranks.extend(map_slice_ops(&ops, exec, rank_mod2));
    betti_from_ranks(&c.f_vector(), &ranks)
}

fn map_slice_ops<R: Send>(
    ops: &BoundaryOperator,
    exec: Execution,
    f: impl Fn(&SparseMatrix) -> R + Sync + Send,
) -> Vec<R> {
    map_range(ops.maps.len(), exec, |i| f(&ops.maps[i]))
}

pub fn homology_integral(c: &SimplicialComplex) -> HomologyProfile {
    homology_integral_with(c, Execution::default())
}

pub fn homology_integral_with(c: &SimplicialComplex, exec: Execution) -> HomologyProfile {
    let ops = BoundaryOperator::of(c);
    let f = c.f_vector();
    let factors = map_slice_ops(&ops, exec, invariant_factors);
    let mut ranks = vec![0];
    ranks.extend(factors.iter().map(Vec::len));
    let betti_rational = betti_from_ranks(&f, &ranks);
    let mut ranks2 = vec![0];
    ranks2.extend(map_slice_ops(&ops, exec, rank_mod2));
    let betti_mod2 = betti_from_ranks(&f, &ranks2);
    let torsion = (0..f.len())
        .map(|k| {
            factors
                .get(k) // invariant factors of ∂_{k+1}
                .map(|d| {
                    d.iter().filter(|x| !x.abs().is_one()).map(|x| x.abs().to_biguint().expect("positive")).collect()
                })
                .unwrap_or_default()
        })
        .collect();
    HomologyProfile { betti_mod2, betti_rational, torsion }
}

/// Result of the link test for closed homology manifolds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldCheck {
    pub is_homology_manifold: bool,
    /// First face, in id order, whose link fails the test.
    pub witness: Option<Simplex>,
}

/// Checks that the link of every face of codimension `k` has the integral
/// homology of a `(k-1)`-sphere.
pub fn is_homology_manifold(c: &SimplicialComplex) -> Result<ManifoldCheck> {
    is_homology_manifold_with(c, Execution::default())
}

pub fn is_homology_manifold_with(c: &SimplicialComplex, exec: Execution) -> Result<ManifoldCheck> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let Some(d) = c.dim() else {
        return Ok(ManifoldCheck { is_homology_manifold: true, witness: None });
    };
    let candidates: Vec<FaceId> = (0..c.num_faces()).filter(|&f| c.dim_of(f) < d).collect();
    let ok = map_range(candidates.len(), exec, |i| {
        let f = candidates[i];
        let codim = d - c.dim_of(f);
        let link = c.link_of(f);
        link_is_sphere(&link, codim - 1)
    });
    let witness = ok.iter().position(|&b| !b).map(|i| c.simplex(candidates[i]));
    Ok(ManifoldCheck { is_homology_manifold: witness.is_none(), witness })
}

fn link_is_sphere(link: &SimplicialComplex, n: usize) -> bool {
    if link.dim() != Some(n) {
        return false;
    }
    if n == 0 {
        return link.num_faces() == 2;
    }
    // the mod-2 test is cheap and rejects most failures
    let b2 = betti_mod2_with(link, Execution::Sequential);
    if b2.iter().enumerate().any(|(i, &b)| b != usize::from(i == 0 || i == n)) {
        return false;
    }
    homology_integral_with(link, Execution::Sequential).is_sphere_of_dim(n)
}

/// `Σ (-1)^i b_i`.
pub fn alternating_sum(betti: &[usize]) -> i64 {
    betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::suspension;

    fn c(f: &[&[i64]]) -> SimplicialComplex {
        SimplicialComplex::from_int_facets(f).unwrap()
    }

    fn rp2() -> SimplicialComplex {
        c(&[
            &[0, 1, 2],
            &[0, 2, 3],
            &[0, 1, 5],
            &[0, 4, 5],
            &[0, 3, 4],
            &[1, 2, 4],
            &[1, 3, 4],
            &[1, 3, 5],
            &[2, 3, 5],
            &[2, 4, 5],
        ])
    }

    fn bd_simplex(n: i64) -> SimplicialComplex {
        let verts: Vec<i64> = (1..=n + 1).collect();
        let facets: Vec<Vec<i64>> = (0..verts.len())
            .map(|skip| verts.iter().copied().enumerate().filter(|&(i, _)| i != skip).map(|(_, v)| v).collect())
            .collect();
        SimplicialComplex::from_facets(facets).unwrap()
    }

    #[test]
    fn edge_boundary_signs() {
        let ops = boundary_operators(&c(&[&[1, 2]]));
        let d1 = ops.get(1).unwrap();
        assert_eq!(d1.entry(0, 0), -1);
        assert_eq!(d1.entry(1, 0), 1);
    }

    #[test]
    fn ranks_of_small_boundaries() {
        let tri = c(&[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(boundary_operators(&tri).get(1).unwrap().rank(), 2);
        let ops = boundary_operators(&bd_simplex(3));
        assert_eq!(ops.get(2).unwrap().rank(), 3);
        assert_eq!(rank_mod2(ops.get(2).unwrap()), 3);
        assert!(ops.squares_to_zero());
    }

    #[test]
    fn spheres_and_cycles() {
        let h = homology_integral(&bd_simplex(4));
        assert_eq!(h.betti_rational, vec![1, 0, 0, 1]);
        assert_eq!(h.betti_mod2, vec![1, 0, 0, 1]);
        assert!(!h.has_torsion());
        assert!(h.is_sphere_of_dim(3));
        assert_eq!(betti_mod2(&c(&[&[1, 2], &[2, 3], &[1, 3]])), vec![1, 1]);
    }

    #[test]
    fn projective_plane_torsion() {
        let h = homology_integral(&rp2());
        assert_eq!(h.betti_mod2, vec![1, 1, 1]);
        assert_eq!(h.betti_rational, vec![1, 0, 0]);
        assert_eq!(h.torsion[1], vec![BigUint::from(2u32)]);
        assert!(h.torsion[0].is_empty() && h.torsion[2].is_empty());
    }

    #[test]
    fn manifold_links() {
        assert!(is_homology_manifold(&bd_simplex(4)).unwrap().is_homology_manifold);
        let wedge = c(&[&[1, 2, 3], &[1, 4, 5]]);
        let chk = is_homology_manifold(&wedge).unwrap();
        assert!(!chk.is_homology_manifold);
        assert_eq!(chk.witness, Some(Simplex::from_ints(&[1])));
        assert!(is_homology_manifold(&suspension(&rp2()).unwrap()).unwrap().witness.is_some());
        assert!(matches!(is_homology_manifold(&c(&[&[1, 2, 3], &[3, 4]])), Err(Error::NotPure)));
    }
}
