//! Graded face posets on which gradients live.

use crate::complex::{FaceId, SimplicialComplex};

/// A graded poset given by its cover relations.
///
/// Gradients, Morse vectors and the acyclicity check only need this view,
/// which lets the same machinery run on a complex and on its opposite poset.
pub trait HassePoset {
    fn len(&self) -> usize;
    fn grade(&self, id: FaceId) -> usize;
    fn top_grade(&self) -> Option<usize>;
    /// Elements covered by `id` (one grade lower).
    fn lower_covers(&self, id: FaceId) -> &[FaceId];
    /// Elements covering `id` (one grade higher).
    fn upper_covers(&self, id: FaceId) -> &[FaceId];

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn covers(&self, lower: FaceId, upper: FaceId) -> bool {
        self.lower_covers(upper).contains(&lower)
    }
}

/// The face poset of a pure complex with the order reversed and grades
/// `d - dim`. For a closed pseudomanifold this is the cell poset of the dual
/// block complex.
#[derive(Clone, Copy)]
pub struct OppositePoset<'a> {
    complex: &'a SimplicialComplex,
    top: usize,
}

impl<'a> OppositePoset<'a> {
    pub fn new(complex: &'a SimplicialComplex) -> Self {
        OppositePoset { complex, top: complex.dim().unwrap_or(0) }
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }
}

impl HassePoset for OppositePoset<'_> {
    fn len(&self) -> usize {
        self.complex.num_faces()
    }

    fn grade(&self, id: FaceId) -> usize {
        self.top - self.complex.dim_of(id)
    }

    fn top_grade(&self) -> Option<usize> {
        self.complex.dim()
    }

    fn lower_covers(&self, id: FaceId) -> &[FaceId] {
        self.complex.cofaces_of(id)
    }

    fn upper_covers(&self, id: FaceId) -> &[FaceId] {
        self.complex.boundary_of(id)
    }
}
