//! Gradients built from other gradients: duals, disjoint unions, cones.

use super::{verify_gradient, Gradient, GradientCheck};
use crate::complex::SimplicialComplex;
use crate::construct::disjoint_union;
use crate::error::{Error, Result};
use crate::label::Label;

fn require_valid(c: &SimplicialComplex, v: &Gradient) -> Result<()> {
    match verify_gradient(c, v)? {
        GradientCheck::Valid => Ok(()),
        other => Err(Error::InvalidGradient(format!("{other:?}"))),
    }
}

/// The gradient `(τ*, σ*)` on the opposite poset (see
/// [`OppositePoset`](crate::poset::OppositePoset)) of a closed pseudomanifold.
///
/// Its Morse vector is the reversal of the original one.
pub fn dualize(c: &SimplicialComplex, v: &Gradient) -> Result<Gradient> {
    let report = c.structure_report();
    if !report.is_pseudomanifold {
        return Err(Error::NotPseudomanifold);
    }
    if report.boundary_facet_count > 0 {
        return Err(Error::HasBoundary);
    }
    require_valid(c, v)?;
    Ok(Gradient::new(v.pairs().iter().map(|&(a, b)| (b, a)).collect()))
}

/// The disjoint union of two complexes with the union of the two gradients.
pub fn disjoint_union_gradient(
    c1: &SimplicialComplex,
    v1: &Gradient,
    c2: &SimplicialComplex,
    v2: &Gradient,
) -> Result<(SimplicialComplex, Gradient)> {
    let union = disjoint_union(c1, c2)?;
    require_valid(c1, v1)?;
    require_valid(c2, v2)?;
    let mut labelled = v1.labelled_pairs(c1);
    labelled.extend(v2.labelled_pairs(c2));
    let v = Gradient::from_labelled_pairs(&union, &labelled)?;
    Ok((union, v))
}

/// Pairs every face `σ` missing the apex with `σ ∪ {apex}`, leaving the apex
/// as the only critical face.
pub fn cone_gradient(cone: &SimplicialComplex, apex: &Label) -> Result<Gradient> {
    let a = cone.vertex_position(apex).ok_or_else(|| Error::NotConePoint(apex.to_string()))?;
    if cone.facets().iter().any(|&f| !cone.vertices(f).contains(&a)) {
        return Err(Error::NotConePoint(apex.to_string()));
    }
    let mut pairs = Vec::new();
    let mut buf = Vec::new();
    for id in 0..cone.num_faces() {
        let vs = cone.vertices(id);
        if vs.contains(&a) {
            continue;
        }
        buf.clear();
        buf.extend_from_slice(vs);
        let pos = buf.partition_point(|&x| x < a);
        buf.insert(pos, a);
        let up = cone.face_id_of_vertices(&buf).expect("cone point lies on every facet");
        pairs.push((id, up));
    }
    Ok(Gradient::new(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::cone;
    use crate::morse::{morse_vector, MorseVector};
    use crate::poset::OppositePoset;
    use crate::simplex::Simplex;

    fn c(f: &[&[i64]]) -> SimplicialComplex {
        SimplicialComplex::from_int_facets(f).unwrap()
    }

    fn optimal_edge(k: &SimplicialComplex, lo: i64, hi: i64) -> Gradient {
        Gradient::new(vec![(
            k.face_id(&Simplex::from_ints(&[hi])).unwrap(),
            k.face_id(&Simplex::from_ints(&[lo, hi])).unwrap(),
        )])
    }

    #[test]
    fn two_edges() {
        let (a, b) = (c(&[&[1, 2]]), c(&[&[3, 4]]));
        let (u, v) = disjoint_union_gradient(&a, &optimal_edge(&a, 1, 2), &b, &optimal_edge(&b, 3, 4)).unwrap();
        assert_eq!(morse_vector(&u, &v).unwrap(), MorseVector(vec![2, 0]));
        let point = c(&[&[9]]);
        let (u, v) = disjoint_union_gradient(&a, &optimal_edge(&a, 1, 2), &point, &Gradient::empty()).unwrap();
        assert_eq!(morse_vector(&u, &v).unwrap(), MorseVector(vec![2, 0]));
        assert!(disjoint_union_gradient(&a, &Gradient::empty(), &a, &Gradient::empty()).is_err());
    }

    #[test]
    fn cones_have_one_critical_vertex() {
        let tri = c(&[&[1, 2], &[2, 3], &[1, 3]]);
        let k = cone(&tri, Label::name("a")).unwrap();
        let v = cone_gradient(&k, &Label::name("a")).unwrap();
        assert_eq!(morse_vector(&k, &v).unwrap(), MorseVector(vec![1, 0, 0]));
        assert!(matches!(cone_gradient(&tri, &Label::Int(1)), Err(Error::NotConePoint(_))));
        assert!(cone_gradient(&k, &Label::Int(7)).is_err());
    }

    #[test]
    fn duals_reverse_the_vector() {
        let k = c(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        let v = Gradient::empty();
        let dual = dualize(&k, &v).unwrap();
        let opp = OppositePoset::new(&k);
        assert_eq!(morse_vector(&opp, &dual).unwrap(), MorseVector(vec![4, 6, 4]));
        assert!(matches!(dualize(&c(&[&[1, 2, 3]]), &v), Err(Error::HasBoundary)));
    }
}
