//! Joins, cones, suspensions and disjoint unions.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::label::Label;
use crate::simplex::Simplex;

fn check_disjoint(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<()> {
    // Both label lists are sorted.
    let (mut i, mut j) = (0, 0);
    let (la, lb) = (a.labels(), b.labels());
    while i < la.len() && j < lb.len() {
        match la[i].cmp(&lb[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Err(Error::LabelCollision(la[i].to_string())),
        }
    }
    Ok(())
}

/// Faces `α ∪ β` for faces (or the empty face) of each side.
pub fn join(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<SimplicialComplex> {
    check_disjoint(a, b)?;
    if a.is_empty() {
        return Ok(b.clone());
    }
    if b.is_empty() {
        return Ok(a.clone());
    }
    let fb = b.facet_simplices();
    let facets =
        a.facet_simplices().into_iter().flat_map(|x| fb.iter().map(move |y| x.union(y))).collect::<Vec<Simplex>>();
    Ok(SimplicialComplex::from_simplices(facets))
}

pub fn cone(c: &SimplicialComplex, apex: Label) -> Result<SimplicialComplex> {
    join(c, &SimplicialComplex::from_simplices([Simplex::vertex(apex)]))
}

/// Suspension with two fresh integer labels.
pub fn suspension(c: &SimplicialComplex) -> Result<SimplicialComplex> {
    let fresh = fresh_labels(c, 2);
    suspension_with(c, fresh[0].clone(), fresh[1].clone())
}

pub fn suspension_with(c: &SimplicialComplex, x: Label, y: Label) -> Result<SimplicialComplex> {
    let poles = SimplicialComplex::from_simplices([Simplex::vertex(x), Simplex::vertex(y)]);
    join(c, &poles)
}

pub fn disjoint_union(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<SimplicialComplex> {
    check_disjoint(a, b)?;
    let mut facets = a.facet_simplices();
    facets.extend(b.facet_simplices());
    Ok(SimplicialComplex::from_simplices(facets))
}

/// `n` integer labels above every integer label of `c`.
pub fn fresh_labels(c: &SimplicialComplex, n: usize) -> Vec<Label> {
    let top = c
        .labels()
        .iter()
        .filter_map(|l| match l {
            Label::Int(v) => Some(*v),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    (1..=n as i64).map(|k| Label::Int(top + k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(f: &[&[i64]]) -> SimplicialComplex {
        SimplicialComplex::from_int_facets(f).unwrap()
    }

    /// Face counts of a join by enumerating unions of faces directly.
    fn join_f_vector_by_enumeration(a: &SimplicialComplex, b: &SimplicialComplex) -> Vec<usize> {
        let mut fa: Vec<Option<Simplex>> = (0..a.num_faces()).map(|i| Some(a.simplex(i))).collect();
        fa.push(None);
        let mut fb: Vec<Option<Simplex>> = (0..b.num_faces()).map(|i| Some(b.simplex(i))).collect();
        fb.push(None);
        let mut counts = vec![0usize; 16];
        for x in &fa {
            for y in &fb {
                let n = match (x, y) {
                    (None, None) => continue,
                    (Some(x), None) => x.labels().len(),
                    (None, Some(y)) => y.labels().len(),
                    (Some(x), Some(y)) => x.labels().len() + y.labels().len(),
                };
                counts[n - 1] += 1;
            }
        }
        while counts.last() == Some(&0) {
            counts.pop();
        }
        counts
    }

    #[test]
    fn cone_and_suspension_counts() {
        let bd2 = c(&[&[1, 2], &[2, 3], &[1, 3]]);
        let k = cone(&bd2, Label::name("a")).unwrap();
        assert_eq!(k.f_vector(), vec![4, 6, 3]);
        assert_eq!(k.euler_characteristic(), 1);
        let s = suspension(&bd2).unwrap();
        assert_eq!(s.f_vector(), vec![5, 9, 6]);
        assert_eq!(s.euler_characteristic(), 2);
        assert_eq!(k.f_vector(), join_f_vector_by_enumeration(&bd2, &c(&[&[0]])));
        let poles = SimplicialComplex::from_simplices([Simplex::from_ints(&[4]), Simplex::from_ints(&[5])]);
        assert_eq!(s.f_vector(), join_f_vector_by_enumeration(&bd2, &poles));
    }

    #[test]
    fn collisions_are_rejected() {
        let a = c(&[&[1, 2]]);
        assert!(matches!(join(&a, &c(&[&[2, 3]])), Err(Error::LabelCollision(l)) if l == "2"));
        assert!(cone(&a, Label::Int(1)).is_err());
        assert!(disjoint_union(&a, &a).is_err());
    }

    #[test]
    fn join_formula_matches_enumeration() {
        let a = c(&[&[1, 2], &[2, 3], &[1, 3]]);
        let b = c(&[&[4, 5, 6], &[6, 7]]);
        let fa = a.f_vector();
        let fb = b.f_vector();
        let j = join(&a, &b).unwrap();
        let brute = join_f_vector_by_enumeration(&a, &b);
        assert_eq!(j.f_vector(), brute);
        for (k, &fk) in brute.iter().enumerate() {
            let mut expect = fa.get(k).copied().unwrap_or(0) + fb.get(k).copied().unwrap_or(0);
            for i in 0..k {
                let jdim = k - 1 - i;
                expect += fa.get(i).copied().unwrap_or(0) * fb.get(jdim).copied().unwrap_or(0);
            }
            assert_eq!(fk, expect);
        }
    }
}
