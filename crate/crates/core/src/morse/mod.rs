//! Discrete gradients and Morse vectors.
//!
//! A discrete Morse function is handled through its gradient: the set of
//! face pairs on which it takes equal values. Explicit rational-valued
//! functions live in [`function`] and are converted at the edges.

pub mod compose;
pub mod function;
pub mod inequalities;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complex::{FaceId, SimplicialComplex};
use crate::error::{Error, Result};
use crate::poset::HassePoset;
use crate::simplex::Simplex;

pub use compose::{cone_gradient, disjoint_union_gradient, dualize};
pub use function::{
    function_to_gradient, gradient_to_function, verify_forman_function, DiscreteMorseFunction, FormanCheck,
};
pub use inequalities::{morse_inequalities, InequalityReport};

const UNMATCHED: usize = usize::MAX;

/// Counts of critical faces per dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MorseVector(pub Vec<usize>);

impl MorseVector {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn alternating_sum(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    pub fn reversed(&self) -> MorseVector {
        MorseVector(self.0.iter().rev().copied().collect())
    }

    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Orders by total count, then lexicographically. Smaller is better.
    pub fn cmp_quality(&self, other: &MorseVector) -> std::cmp::Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }

    /// `(1, 0, ..., 0, 1)` of length `d + 1`, or `(2)` for `d = 0`.
    pub fn sphere(d: usize) -> MorseVector {
        if d == 0 {
            return MorseVector(vec![2]);
        }
        let mut v = vec![0; d + 1];
        v[0] = 1;
        v[d] = 1;
        MorseVector(v)
    }
}

impl fmt::Display for MorseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for MorseVector {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| format!("expected (c0,...,cd), got {s:?}"))?;
        if inner.trim().is_empty() {
            return Ok(MorseVector(Vec::new()));
        }
        inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| e.to_string()))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(MorseVector)
    }
}

/// A set of (face, coface) pairs on a face poset.
///
/// Pairs are stored as `(lower, upper)` face ids. Construction does not
/// validate; use [`verify_gradient`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Gradient {
    pairs: Vec<(FaceId, FaceId)>,
}

impl Gradient {
    pub fn new(mut pairs: Vec<(FaceId, FaceId)>) -> Self {
        pairs.sort_unstable();
        Gradient { pairs }
    }

    pub fn empty() -> Self {
        Gradient::default()
    }

    pub fn pairs(&self) -> &[(FaceId, FaceId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Partner of every face (`None` if critical). Assumes a matching.
    pub fn partners(&self, n: usize) -> Vec<Option<FaceId>> {
        let mut p = vec![None; n];
        for &(a, b) in &self.pairs {
            p[a] = Some(b);
            p[b] = Some(a);
        }
        p
    }

    pub fn labelled_pairs(&self, c: &SimplicialComplex) -> Vec<(Simplex, Simplex)> {
        self.pairs.iter().map(|&(a, b)| (c.simplex(a), c.simplex(b))).collect()
    }

    pub fn from_labelled_pairs(c: &SimplicialComplex, pairs: &[(Simplex, Simplex)]) -> Result<Self> {
        let ids = pairs
            .iter()
            .map(|(a, b)| {
                let ia = c.face_id(a).ok_or_else(|| Error::NotAFace(a.clone()))?;
                let ib = c.face_id(b).ok_or_else(|| Error::NotAFace(b.clone()))?;
                Ok((ia, ib))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Gradient::new(ids))
    }

    /// One pair per line as `(a,b) -> (a,b,c)`.
    pub fn to_text(&self, c: &SimplicialComplex) -> String {
        let mut out = String::new();
        for (a, b) in self.labelled_pairs(c) {
            out.push_str(&format!("{a} -> {b}\n"));
        }
        out
    }

    pub fn parse_text(c: &SimplicialComplex, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { line: i + 1, message };
            let (a, b) = line.split_once("->").ok_or_else(|| err("expected `face -> coface`".into()))?;
            let a = Simplex::parse_tuple(a).map_err(err)?;
            let b = Simplex::parse_tuple(b).map_err(err)?;
            pairs.push((a, b));
        }
        Gradient::from_labelled_pairs(c, &pairs)
    }
}

/// Outcome of [`verify_gradient`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradientCheck {
    Valid,
    /// The pair is not a cover relation of the poset.
    NotACover {
        lower: FaceId,
        upper: FaceId,
    },
    /// The face occurs in more than one pair.
    Reused {
        face: FaceId,
    },
    /// A closed V-path `σ0, τ0, σ1, τ1, ...` returning to `σ0`.
    ClosedPath(Vec<FaceId>),
}

impl GradientCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, GradientCheck::Valid)
    }
}

/// Checks the matching condition and the absence of closed V-paths.
pub fn verify_gradient<P: HassePoset + ?Sized>(poset: &P, v: &Gradient) -> Result<GradientCheck> {
    let n = poset.len();
    let mut partner = vec![UNMATCHED; n];
    for &(a, b) in v.pairs() {
        for x in [a, b] {
            if x >= n {
                return Err(Error::ForeignFace(x));
            }
        }
        if poset.grade(b) != poset.grade(a) + 1 || !poset.covers(a, b) {
            return Ok(GradientCheck::NotACover { lower: a, upper: b });
        }
        for x in [a, b] {
            if partner[x] != UNMATCHED {
                return Ok(GradientCheck::Reused { face: x });
            }
        }
        partner[a] = b;
        partner[b] = a;
    }
    Ok(match find_closed_path(poset, &partner) {
        Some(cycle) => GradientCheck::ClosedPath(cycle),
        None => GradientCheck::Valid,
    })
}

/// Matched-up faces form a digraph per grade: σ → σ' when σ' is another
/// lower cover of V(σ). A cycle there is a closed V-path.
fn find_closed_path<P: HassePoset + ?Sized>(poset: &P, partner: &[usize]) -> Option<Vec<FaceId>> {
    let n = poset.len();
    let matched_up = |x: usize| partner[x] != UNMATCHED && poset.grade(partner[x]) > poset.grade(x);
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut color = vec![0u8; n];
    let mut order: Vec<FaceId> = (0..n).filter(|&x| matched_up(x)).collect();
    order.sort_by_key(|&x| (poset.grade(x), x));
    for &start in &order {
        if color[start] != 0 {
            continue;
        }
        let mut stack: Vec<(FaceId, usize)> = vec![(start, 0)];
        color[start] = 1;
        while let Some(&mut (x, ref mut next)) = stack.last_mut() {
            let covers = poset.lower_covers(partner[x]);
            if *next < covers.len() {
                let y = covers[*next];
                *next += 1;
                if y == x || !matched_up(y) {
                    continue;
                }
                match color[y] {
                    0 => {
                        color[y] = 1;
                        stack.push((y, 0));
                    }
                    1 => {
                        let from = stack.iter().position(|&(s, _)| s == y).expect("on stack");
                        return Some(stack[from..].iter().flat_map(|&(s, _)| [s, partner[s]]).collect());
                    }
                    _ => {}
                }
            } else {
                color[x] = 2;
                stack.pop();
            }
        }
    }
    None
}

fn require_valid<P: HassePoset + ?Sized>(poset: &P, v: &Gradient) -> Result<()> {
    match verify_gradient(poset, v)? {
        GradientCheck::Valid => Ok(()),
        other => Err(Error::InvalidGradient(format!("{other:?}"))),
    }
}

/// Unmatched faces, in id order.
pub fn critical_cells<P: HassePoset + ?Sized>(poset: &P, v: &Gradient) -> Result<Vec<FaceId>> {
    require_valid(poset, v)?;
    Ok(critical_cells_unchecked(poset.len(), v))
}

pub(crate) fn critical_cells_unchecked(n: usize, v: &Gradient) -> Vec<FaceId> {
    let mut matched = vec![false; n];
    for &(a, b) in v.pairs() {
        matched[a] = true;
        matched[b] = true;
    }
    (0..n).filter(|&x| !matched[x]).collect()
}

pub fn critical_simplices(c: &SimplicialComplex, v: &Gradient) -> Result<Vec<Simplex>> {
    Ok(critical_cells(c, v)?.into_iter().map(|id| c.simplex(id)).collect())
}

pub fn morse_vector<P: HassePoset + ?Sized>(poset: &P, v: &Gradient) -> Result<MorseVector> {
    require_valid(poset, v)?;
    Ok(morse_vector_unchecked(poset, v))
}

pub(crate) fn morse_vector_unchecked<P: HassePoset + ?Sized>(poset: &P, v: &Gradient) -> MorseVector {
    let len = poset.top_grade().map_or(0, |d| d + 1);
    let mut counts = vec![0; len];
    for x in critical_cells_unchecked(poset.len(), v) {
        counts[poset.grade(x)] += 1;
    }
    MorseVector(counts)
}
