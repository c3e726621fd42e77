//! Rational-valued discrete Morse functions.
//!
//! A map `f` on the faces is a discrete Morse function when it is monotone
//! along inclusions, takes each value at most twice, and takes a value twice
//! only on a face and one of its cofaces. The faces sharing a value are
//! exactly the pairs of the gradient.

use std::collections::VecDeque;

use num_rational::Rational64;

use super::{verify_gradient, Gradient, GradientCheck};
use crate::complex::FaceId;
use crate::error::{Error, Result};
use crate::poset::HassePoset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteMorseFunction {
    values: Vec<Rational64>,
}

impl DiscreteMorseFunction {
    /// Values indexed by face id.
    pub fn new(values: Vec<Rational64>) -> Self {
        DiscreteMorseFunction { values }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        DiscreteMorseFunction { values: values.iter().map(|&v| Rational64::from_integer(v)).collect() }
    }

    pub fn value(&self, id: FaceId) -> Rational64 {
        self.values[id]
    }

    pub fn values(&self) -> &[Rational64] {
        &self.values
    }
}

/// The first violated axiom, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormanCheck {
    Valid,
    /// `lower ⊂ upper` but `f(lower) > f(upper)`.
    Monotonicity {
        lower: FaceId,
        upper: FaceId,
    },
    /// More than two faces share one value.
    SemiInjectivity {
        faces: Vec<FaceId>,
    },
    /// Two faces share a value without being nested.
    Genericity {
        a: FaceId,
        b: FaceId,
    },
}

impl FormanCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, FormanCheck::Valid)
    }
}

pub fn verify_forman_function<P: HassePoset + ?Sized>(poset: &P, f: &DiscreteMorseFunction) -> Result<FormanCheck> {
    let n = poset.len();
    if f.values.len() != n {
        return Err(Error::InvalidFunction(format!("{} values for {} faces", f.values.len(), n)));
    }
    // Monotonicity along covers implies it along all inclusions.
    for upper in 0..n {
        for &lower in poset.lower_covers(upper) {
            if f.values[lower] > f.values[upper] {
                return Ok(FormanCheck::Monotonicity { lower, upper });
            }
        }
    }
    let groups = equal_value_groups(f);
    if let Some(g) = groups.iter().find(|g| g.len() > 2) {
        return Ok(FormanCheck::SemiInjectivity { faces: g.clone() });
    }
    // With at most two faces per value, nested equal faces differ by one
    // dimension (an intermediate face would be a third).
    for g in groups.iter().filter(|g| g.len() == 2) {
        let (a, b) = (g[0], g[1]);
        if !(poset.covers(a, b) || poset.covers(b, a)) {
            return Ok(FormanCheck::Genericity { a, b });
        }
    }
    Ok(FormanCheck::Valid)
}

/// Faces grouped by value, groups in increasing value order.
fn equal_value_groups(f: &DiscreteMorseFunction) -> Vec<Vec<FaceId>> {
    let mut ids: Vec<FaceId> = (0..f.values.len()).collect();
    ids.sort_by(|&a, &b| f.values[a].cmp(&f.values[b]).then(a.cmp(&b)));
    let mut groups: Vec<Vec<FaceId>> = Vec::new();
    for id in ids {
        match groups.last_mut() {
            Some(g) if f.values[g[0]] == f.values[id] => g.push(id),
            _ => groups.push(vec![id]),
        }
    }
    groups
}

/// Pairs the faces sharing a value.
pub fn function_to_gradient<P: HassePoset + ?Sized>(poset: &P, f: &DiscreteMorseFunction) -> Result<Gradient> {
    match verify_forman_function(poset, f)? {
        FormanCheck::Valid => {}
        other => return Err(Error::InvalidFunction(format!("{other:?}"))),
    }
    let pairs = equal_value_groups(f)
        .into_iter()
        .filter(|g| g.len() == 2)
        .map(|g| if poset.grade(g[0]) < poset.grade(g[1]) { (g[0], g[1]) } else { (g[1], g[0]) })
        .collect();
    Ok(Gradient::new(pairs))
}

/// Consecutive integer values along a breadth-first linear extension of the
/// poset in which each gradient pair is merged into one node.
pub fn gradient_to_function<P: HassePoset + ?Sized>(poset: &P, v: &Gradient) -> Result<DiscreteMorseFunction> {
    match verify_gradient(poset, v)? {
        GradientCheck::Valid => {}
        other => return Err(Error::InvalidGradient(format!("{other:?}"))),
    }
    let n = poset.len();
    // block representative: the lower face of a pair, or the face itself
    let mut block: Vec<FaceId> = (0..n).collect();
    for &(a, b) in v.pairs() {
        block[b] = a;
    }
    let mut indegree = vec![0usize; n];
    let mut succ: Vec<Vec<FaceId>> = vec![Vec::new(); n];
    for upper in 0..n {
        for &lower in poset.lower_covers(upper) {
            let (bl, bu) = (block[lower], block[upper]);
            if bl != bu {
                succ[bl].push(bu);
                indegree[bu] += 1;
            }
        }
    }
    let mut queue: VecDeque<FaceId> = (0..n).filter(|&x| block[x] == x && indegree[x] == 0).collect();
    let mut value = vec![0i64; n];
    let mut next = 0i64;
    let mut placed = 0usize;
    while let Some(b) = queue.pop_front() {
        value[b] = next;
        next += 1;
        placed += 1;
        for &s in &succ[b] {
            indegree[s] -= 1;
            if indegree[s] == 0 {
                queue.push_back(s);
            }
        }
    }
    let blocks = (0..n).filter(|&x| block[x] == x).count();
    if placed != blocks {
        return Err(Error::InvalidGradient("cyclic block order".into()));
    }
    let values = (0..n).map(|x| Rational64::from_integer(value[block[x]])).collect();
    Ok(DiscreteMorseFunction { values })
}
