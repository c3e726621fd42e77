//! Barycentric subdivision and derived neighborhoods.
//!
//! The vertex of `sd C` at the barycenter of a face `σ` is labelled
//! [`Label::Face`] with the labels of `σ`. Labels are therefore canonical:
//! `sd^r D` is literally a subcomplex of `sd^r M` whenever `D ⊆ M`.

use crate::complex::{FaceId, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exec::{map_slice, Execution};
use crate::label::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubdivisionConfig {
    /// Refuse to build a subdivision with more faces than this.
    pub face_cap: u128,
    pub execution: Execution,
}

impl Default for SubdivisionConfig {
    fn default() -> Self {
        SubdivisionConfig { face_cap: 5_000_000, execution: Execution::default() }
    }
}

/// f-vector of `sd C` from that of `C`: a chain of `j + 1` faces topped by
/// an `i`-face is an ordered partition of its `i + 1` vertices into `j + 1`
/// blocks.
pub fn subdivided_f_vector(f: &[u128]) -> Vec<u128> {
    let n = f.len();
    // ordered[a][b]: ordered partitions of an a-set into b non-empty blocks
    let mut ordered = vec![vec![0u128; n + 1]; n + 1];
    ordered[0][0] = 1;
    for a in 1..=n {
        for b in 1..=a {
            ordered[a][b] = b as u128 * (ordered[a - 1][b - 1] + ordered[a - 1][b]);
        }
    }
    (0..n).map(|j| (j..n).map(|i| f[i].saturating_mul(ordered[i + 1][j + 1])).sum()).collect()
}

pub fn barycentric_subdivide(c: &SimplicialComplex) -> Result<SimplicialComplex> {
    sd_iter_with(c, 1, &SubdivisionConfig::default())
}

pub fn sd_iter(c: &SimplicialComplex, r: usize) -> Result<SimplicialComplex> {
    sd_iter_with(c, r, &SubdivisionConfig::default())
}

pub fn sd_iter_with(c: &SimplicialComplex, r: usize, cfg: &SubdivisionConfig) -> Result<SimplicialComplex> {
    let mut f: Vec<u128> = c.f_vector().iter().map(|&x| x as u128).collect();
    for _ in 0..r {
        f = subdivided_f_vector(&f);
        let projected: u128 = f.iter().sum();
        if projected > cfg.face_cap {
            return Err(Error::SubdivisionCap { projected, cap: cfg.face_cap });
        }
    }
    let mut out = c.clone();
    for round in 0..r {
        out = subdivide_once(&out, cfg.execution);
        log::debug!("sd^{}: f = {:?}", round + 1, out.f_vector());
    }
    Ok(out)
}

fn subdivide_once(c: &SimplicialComplex, exec: Execution) -> SimplicialComplex {
    let n = c.num_faces();
    let mut order: Vec<(Label, FaceId)> = (0..n).map(|id| (Label::Face(c.simplex(id).labels().to_vec()), id)).collect();
    order.sort();
    let mut position = vec![0u32; n];
    for (pos, (_, id)) in order.iter().enumerate() {
        position[*id] = pos as u32;
    }
    let labels: Vec<Label> = order.into_iter().map(|(l, _)| l).collect();

    let per_facet: Vec<Vec<Vec<u32>>> = map_slice(c.facets(), exec, |&facet| {
        let verts = c.vertices(facet);
        let mut chains = Vec::new();
        let mut perm: Vec<u32> = verts.to_vec();
        let mut prefix = Vec::with_capacity(verts.len());
        for_each_permutation(&mut perm, &mut |p| {
            let chain = (1..=p.len())
                .map(|k| {
                    prefix.clear();
                    prefix.extend_from_slice(&p[..k]);
                    prefix.sort_unstable();
                    position[c.face_id_of_vertices(&prefix).expect("faces are closed")]
                })
                .collect();
            chains.push(chain);
        });
        chains
    });
    SimplicialComplex::build(labels, per_facet.into_iter().flatten().collect())
}

/// Heap's algorithm.
fn for_each_permutation(items: &mut [u32], visit: &mut impl FnMut(&[u32])) {
    let n = items.len();
    let mut c = vec![0usize; n];
    visit(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            visit(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// `N^m(D, M)` together with the copy of `sd^m D` it contains.
#[derive(Clone, Debug)]
pub struct DerivedNeighborhood {
    pub neighborhood: SimplicialComplex,
    pub core: SimplicialComplex,
}

/// Faces of `sd^m M` whose closure meets `sd^m D`, with their faces.
pub fn derived_neighborhood(
    d: &SimplicialComplex,
    m: &SimplicialComplex,
    rounds: usize,
) -> Result<DerivedNeighborhood> {
    derived_neighborhood_with(d, m, rounds, &SubdivisionConfig::default())
}

pub fn derived_neighborhood_with(
    d: &SimplicialComplex,
    m: &SimplicialComplex,
    rounds: usize,
    cfg: &SubdivisionConfig,
) -> Result<DerivedNeighborhood> {
    if rounds == 0 {
        return Err(Error::Config("derived neighborhoods need at least one subdivision".into()));
    }
    if d.is_empty() || !d.is_subcomplex_of(m) {
        return Err(Error::NotSubcomplex);
    }
    let sd_m = sd_iter_with(m, rounds, cfg)?;
    let core = sd_iter_with(d, rounds, cfg)?;
    let mut in_core = vec![false; sd_m.labels().len()];
    for l in core.labels() {
        in_core[sd_m.vertex_position(l).expect("sd D sits inside sd M") as usize] = true;
    }
    let sets = sd_m
        .facets()
        .iter()
        .filter(|&&f| sd_m.vertices(f).iter().any(|&v| in_core[v as usize]))
        .map(|&f| sd_m.vertices(f).to_vec())
        .collect();
    Ok(DerivedNeighborhood { neighborhood: sd_m.generated_by(sets), core })
}
