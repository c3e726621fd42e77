//! Simplicial complexes with a materialized, indexed face poset.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::Label;
use crate::poset::HassePoset;
use crate::simplex::Simplex;

/// Global face index. Faces are numbered by dimension, then lexicographically.
pub type FaceId = usize;

/// A finite abstract simplicial complex.
///
/// Every face of the downward closure is stored. Vertex labels are kept in
/// sorted order and faces refer to them by position, so lexicographic order
/// on positions agrees with lexicographic order on labels.
#[derive(Clone)]
pub struct SimplicialComplex {
    labels: Vec<Label>,
    verts: Vec<Box<[u32]>>,
    dims: Vec<u8>,
    dim_start: Vec<usize>,
    index: HashMap<Box<[u32]>, FaceId>,
    boundary: Vec<Box<[FaceId]>>,
    cofaces: Vec<Vec<FaceId>>,
    facets: Vec<FaceId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub is_pure: bool,
    pub is_pseudomanifold: bool,
    pub is_strongly_connected: bool,
    pub boundary_facet_count: usize,
}

impl StructureReport {
    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.is_pseudomanifold && self.boundary_facet_count == 0
    }
}

impl SimplicialComplex {
    /// The complex with no faces.
    pub fn empty() -> Self {
        SimplicialComplex {
            labels: Vec::new(),
            verts: Vec::new(),
            dims: Vec::new(),
            dim_start: vec![0],
            index: HashMap::new(),
            boundary: Vec::new(),
            cofaces: Vec::new(),
            facets: Vec::new(),
        }
    }

    /// Builds the downward closure of the given vertex-label lists.
    /// Non-maximal inputs are absorbed.
    pub fn from_facets<L: Into<Label>>(facets: impl IntoIterator<Item = Vec<L>>) -> Result<Self> {
        let mut lists: Vec<Vec<Label>> = Vec::new();
        for f in facets {
            let labels: Vec<Label> = f.into_iter().map(Into::into).collect();
            if labels.is_empty() {
                return Err(Error::EmptyInput);
            }
            lists.push(labels);
        }
        if lists.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut simplices = Vec::with_capacity(lists.len());
        for labels in lists {
            let mut sorted = labels.clone();
            sorted.sort();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                let shown: Vec<String> = labels.iter().map(ToString::to_string).collect();
                return Err(Error::RepeatedLabel { facet: format!("({})", shown.join(",")), label: w[0].to_string() });
            }
            simplices.push(Simplex::new(labels).expect("checked above"));
        }
        Ok(Self::from_simplices(simplices))
    }

    pub fn from_int_facets(facets: &[&[i64]]) -> Result<Self> {
        Self::from_facets(facets.iter().map(|f| f.to_vec()))
    }

    /// Builds a complex from already-validated simplices. An empty iterator
    /// yields the empty complex.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let simplices: Vec<Simplex> = simplices.into_iter().collect();
        let mut labels: Vec<Label> = simplices.iter().flat_map(|s| s.labels().iter().cloned()).collect();
        labels.sort();
        labels.dedup();
        let sets = simplices.iter().map(|s| {
            s.labels().iter().map(|l| labels.binary_search(l).expect("label present") as u32).collect::<Vec<u32>>()
        });
        let sets: Vec<Vec<u32>> = sets.collect();
        Self::build(labels, sets)
    }

    /// Downward closure of sets of vertex positions into `labels` (sorted,
    /// unique). Unused labels are dropped.
    pub(crate) fn build(labels: Vec<Label>, sets: Vec<Vec<u32>>) -> Self {
        let mut used = vec![false; labels.len()];
        for s in &sets {
            for &v in s {
                used[v as usize] = true;
            }
        }
        let mut remap = vec![u32::MAX; labels.len()];
        let mut kept = Vec::new();
        for (i, l) in labels.into_iter().enumerate() {
            if used[i] {
                remap[i] = kept.len() as u32;
                kept.push(l);
            }
        }

        let mut all: HashSet<Box<[u32]>> = HashSet::new();
        for s in &sets {
            let mut s: Vec<u32> = s.iter().map(|&v| remap[v as usize]).collect();
            s.sort_unstable();
            s.dedup();
            if all.contains(s.as_slice()) {
                continue;
            }
            let n = s.len();
            assert!(n <= 24, "simplex dimension too large");
            for mask in 1u32..(1u32 << n) {
                let sub: Box<[u32]> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                all.insert(sub);
            }
        }
        let mut verts: Vec<Box<[u32]>> = all.into_iter().collect();
        verts.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

        let top = verts.last().map(|v| v.len()).unwrap_or(0);
        let mut dim_start = vec![0usize; top + 1];
        let mut dims = Vec::with_capacity(verts.len());
        for v in &verts {
            dims.push((v.len() - 1) as u8);
        }
        for k in 0..top {
            dim_start[k + 1] = dim_start[k] + dims.iter().filter(|&&d| d as usize == k).count();
        }
        let index: HashMap<Box<[u32]>, FaceId> = verts.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();

        let mut boundary: Vec<Box<[FaceId]>> = Vec::with_capacity(verts.len());
        let mut cofaces: Vec<Vec<FaceId>> = vec![Vec::new(); verts.len()];
        let mut scratch = Vec::new();
        for (id, v) in verts.iter().enumerate() {
            if v.len() == 1 {
                boundary.push(Box::new([]));
                continue;
            }
            let mut bd = Vec::with_capacity(v.len());
            for omit in 0..v.len() {
                scratch.clear();
                scratch.extend(v.iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, &x)| x));
                let f = index[scratch.as_slice()];
                bd.push(f);
                cofaces[f].push(id);
            }
            boundary.push(bd.into_boxed_slice());
        }
        for c in &mut cofaces {
            c.sort_unstable();
        }
        let facets = (0..verts.len()).filter(|&i| cofaces[i].is_empty()).collect();
        SimplicialComplex { labels: kept, verts, dims, dim_start, index, boundary, cofaces, facets }
    }

    /// Sub-complex generated by sets of vertex positions of this complex.
    pub(crate) fn generated_by(&self, sets: Vec<Vec<u32>>) -> Self {
        Self::build(self.labels.clone(), sets)
    }

    /// Sorted vertex labels.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn num_faces(&self) -> usize {
        self.verts.len()
    }

    /// Dimension of the largest face, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.verts.last().map(|v| v.len() - 1)
    }

    pub fn dim_of(&self, id: FaceId) -> usize {
        self.dims[id] as usize
    }

    /// Ids of all faces of dimension `k`.
    pub fn faces_of_dim(&self, k: usize) -> std::ops::Range<FaceId> {
        if k + 1 >= self.dim_start.len() {
            let n = self.verts.len();
            return n..n;
        }
        self.dim_start[k]..self.dim_start[k + 1]
    }

    /// Vertex positions (into [`labels`](Self::labels)) of a face.
    pub fn vertices(&self, id: FaceId) -> &[u32] {
        &self.verts[id]
    }

    pub fn simplex(&self, id: FaceId) -> Simplex {
        Simplex::new(self.verts[id].iter().map(|&v| self.labels[v as usize].clone()).collect())
            .expect("stored faces are valid simplices")
    }

    pub fn face_id(&self, s: &Simplex) -> Option<FaceId> {
        let pos: Option<Vec<u32>> =
            s.labels().iter().map(|l| self.labels.binary_search(l).ok().map(|p| p as u32)).collect();
        self.face_id_of_vertices(&pos?)
    }

    pub fn face_id_of_vertices(&self, vs: &[u32]) -> Option<FaceId> {
        self.index.get(vs).copied()
    }

    pub fn vertex_position(&self, label: &Label) -> Option<u32> {
        self.labels.binary_search(label).ok().map(|p| p as u32)
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.face_id(s).is_some()
    }

    /// Codimension-one faces, the i-th omitting the i-th vertex.
    pub fn boundary_of(&self, id: FaceId) -> &[FaceId] {
        &self.boundary[id]
    }

    pub fn cofaces_of(&self, id: FaceId) -> &[FaceId] {
        &self.cofaces[id]
    }

    pub fn facets(&self) -> &[FaceId] {
        &self.facets
    }

    pub fn facet_simplices(&self) -> Vec<Simplex> {
        self.facets.iter().map(|&f| self.simplex(f)).collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.dim_start.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) }).sum()
    }

    fn require_face(&self, s: &Simplex) -> Result<FaceId> {
        self.face_id(s).ok_or_else(|| Error::NotAFace(s.clone()))
    }

    /// Faces containing `s`, together with all their faces.
    pub fn star(&self, s: &Simplex) -> Result<Self> {
        let id = self.require_face(s)?;
        let sets = self.facets_containing(id).map(|f| self.verts[f].to_vec()).collect();
        Ok(self.generated_by(sets))
    }

    /// Faces of the star that miss `s`.
    pub fn link(&self, s: &Simplex) -> Result<Self> {
        let id = self.require_face(s)?;
        Ok(self.link_of(id))
    }

    pub(crate) fn link_of(&self, id: FaceId) -> Self {
        let sigma = &self.verts[id];
        let sets = self
            .facets_containing(id)
            .filter(|&f| f != id)
            .map(|f| self.verts[f].iter().copied().filter(|v| !sigma.contains(v)).collect())
            .collect();
        self.generated_by(sets)
    }

    /// Facets containing a face, found by walking up the coface graph.
    pub(crate) fn facets_containing(&self, id: FaceId) -> impl Iterator<Item = FaceId> + '_ {
        let mut seen = HashSet::new();
        let mut stack = vec![id];
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            if !seen.insert(x) {
                continue;
            }
            if self.cofaces[x].is_empty() {
                out.push(x);
            }
            stack.extend(self.cofaces[x].iter().copied());
        }
        out.sort_unstable();
        out.into_iter()
    }

    pub fn is_pure(&self) -> bool {
        match self.dim() {
            None => true,
            Some(d) => self.facets.iter().all(|&f| self.dim_of(f) == d),
        }
    }

    /// Codimension-one faces of a pure complex that lie in exactly one facet,
    /// with their faces.
    pub fn boundary_complex(&self) -> Result<Self> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let Some(d) = self.dim() else { return Ok(Self::empty()) };
        if d == 0 {
            return Ok(Self::empty());
        }
        let sets =
            self.faces_of_dim(d - 1).filter(|&r| self.cofaces[r].len() == 1).map(|r| self.verts[r].to_vec()).collect();
        Ok(self.generated_by(sets))
    }

    /// Ids of the faces lying in the boundary complex.
    pub(crate) fn boundary_face_mask(&self) -> Result<Vec<bool>> {
        let bd = self.boundary_complex()?;
        let mut mask = vec![false; self.num_faces()];
        for id in 0..bd.num_faces() {
            let s = bd.simplex(id);
            mask[self.face_id(&s).expect("boundary faces belong to the complex")] = true;
        }
        Ok(mask)
    }

    pub fn structure_report(&self) -> StructureReport {
        let is_pure = self.is_pure();
        let d = self.dim().unwrap_or(0);
        let (mut max_ridge, mut boundary_facet_count) = (0, 0);
        if d > 0 {
            for r in self.faces_of_dim(d - 1) {
                let n = self.cofaces[r].iter().filter(|&&c| self.dim_of(c) == d).count();
                max_ridge = max_ridge.max(n);
                if n == 1 {
                    boundary_facet_count += 1;
                }
            }
        } else {
            // A 0-dimensional pseudomanifold is at most two points.
            max_ridge = self.facets.len();
        }
        let is_pseudomanifold = is_pure && !self.is_empty() && max_ridge <= 2;
        StructureReport {
            is_pure,
            is_pseudomanifold,
            is_strongly_connected: self.is_strongly_connected(),
            boundary_facet_count,
        }
    }

    /// Facets connected through shared codimension-one faces.
    fn is_strongly_connected(&self) -> bool {
        if self.facets.is_empty() {
            return false;
        }
        let Some(d) = self.dim() else { return false };
        if !self.is_pure() {
            return false;
        }
        if d == 0 {
            return self.facets.len() == 1;
        }
        let mut seen = HashSet::new();
        let mut stack = vec![self.facets[0]];
        while let Some(f) = stack.pop() {
            if !seen.insert(f) {
                continue;
            }
            for &r in self.boundary_of(f).iter() {
                stack.extend(self.cofaces[r].iter().copied().filter(|c| !seen.contains(c)));
            }
        }
        seen.len() == self.facets.len()
    }

    /// Vertex connectivity of the 1-skeleton.
    pub fn is_connected(&self) -> bool {
        let n = self.faces_of_dim(0).len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            for &e in &self.cofaces[v] {
                for &w in self.boundary_of(e).iter() {
                    if !seen[w] {
                        stack.push(w);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Whether every facet of `self` is a face of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets.iter().all(|&f| other.contains(&self.simplex(f)))
    }

    /// Map from this complex's face ids into a supercomplex's ids.
    pub(crate) fn embed_into(&self, other: &SimplicialComplex) -> Result<Vec<FaceId>> {
        let pos: Vec<Option<u32>> = self.labels.iter().map(|l| other.vertex_position(l)).collect();
        let mut out = Vec::with_capacity(self.num_faces());
        let mut buf = Vec::new();
        for v in &self.verts {
            buf.clear();
            for &x in v.iter() {
                buf.push(pos[x as usize].ok_or(Error::NotSubcomplex)?);
            }
            out.push(other.face_id_of_vertices(&buf).ok_or(Error::NotSubcomplex)?);
        }
        Ok(out)
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.verts == other.verts
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("f_vector", &self.f_vector())
            .field("facets", &self.facet_simplices())
            .finish()
    }
}

impl HassePoset for SimplicialComplex {
    fn len(&self) -> usize {
        self.num_faces()
    }

    fn grade(&self, id: FaceId) -> usize {
        self.dim_of(id)
    }

    fn top_grade(&self) -> Option<usize> {
        self.dim()
    }

    fn lower_covers(&self, id: FaceId) -> &[FaceId] {
        &self.boundary[id]
    }

    fn upper_covers(&self, id: FaceId) -> &[FaceId] {
        &self.cofaces[id]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(f: &[&[i64]]) -> SimplicialComplex {
        SimplicialComplex::from_int_facets(f).unwrap()
    }

    fn bd_tetra() -> SimplicialComplex {
        c(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]])
    }

    #[test]
    fn f_vectors_and_euler() {
        let tri = c(&[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(tri.f_vector(), vec![3, 3]);
        assert_eq!(tri.euler_characteristic(), 0);
        assert_eq!(bd_tetra().f_vector(), vec![4, 6, 4]);
        assert_eq!(bd_tetra().euler_characteristic(), 2);
        let d2 = c(&[&[1, 2, 3]]);
        assert_eq!(d2.f_vector(), vec![3, 3, 1]);
        assert_eq!(d2.euler_characteristic(), 1);
    }

    #[test]
    fn non_maximal_input_is_absorbed() {
        assert_eq!(c(&[&[1, 2, 3], &[1, 2]]), c(&[&[1, 2, 3]]));
    }

    #[test]
    fn input_errors() {
        assert!(matches!(SimplicialComplex::from_facets(Vec::<Vec<i64>>::new()), Err(Error::EmptyInput)));
        match SimplicialComplex::from_int_facets(&[&[1, 2, 2]]) {
            Err(Error::RepeatedLabel { label, .. }) => assert_eq!(label, "2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ids_follow_lexicographic_order() {
        let k = bd_tetra();
        let edges: Vec<String> = k.faces_of_dim(1).map(|e| k.simplex(e).to_string()).collect();
        assert_eq!(edges, ["(1,2)", "(1,3)", "(1,4)", "(2,3)", "(2,4)", "(3,4)"]);
    }

    #[test]
    fn star_and_link() {
        let k = bd_tetra();
        let lk = k.link(&Simplex::from_ints(&[1])).unwrap();
        assert_eq!(lk, c(&[&[2, 3], &[2, 4], &[3, 4]]));
        let tri = c(&[&[1, 2], &[2, 3], &[1, 3]]);
        assert!(tri.link(&Simplex::from_ints(&[1, 2])).unwrap().is_empty());
        let d2 = c(&[&[1, 2, 3]]);
        assert_eq!(d2.star(&Simplex::from_ints(&[1])).unwrap(), d2);
        assert!(matches!(d2.link(&Simplex::from_ints(&[4])), Err(Error::NotAFace(_))));
    }

    #[test]
    fn boundaries_and_reports() {
        let d2 = c(&[&[1, 2, 3]]);
        assert_eq!(d2.boundary_complex().unwrap(), c(&[&[1, 2], &[2, 3], &[1, 3]]));
        assert!(bd_tetra().boundary_complex().unwrap().is_empty());
        assert_eq!(
            bd_tetra().structure_report(),
            StructureReport {
                is_pure: true,
                is_pseudomanifold: true,
                is_strongly_connected: true,
                boundary_facet_count: 0
            }
        );
        let mixed = c(&[&[1, 2, 3], &[3, 4]]);
        assert!(matches!(mixed.boundary_complex(), Err(Error::NotPure)));
        let r = mixed.structure_report();
        assert!(!r.is_pure && !r.is_pseudomanifold);
    }

    #[test]
    fn face_index_is_downward_closure() {
        let k = bd_tetra();
        for id in 0..k.num_faces() {
            for &b in k.boundary_of(id) {
                assert!(k.simplex(id).contains(&k.simplex(b)));
                assert!(k.cofaces_of(b).contains(&id));
            }
        }
    }
}
