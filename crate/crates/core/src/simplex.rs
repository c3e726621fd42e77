use std::fmt;

use serde::{Deserialize, Serialize};

use crate::label::Label;

/// A non-empty simplex, stored as its strictly increasing vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Label>", into = "Vec<Label>")]
pub struct Simplex(Vec<Label>);

impl Simplex {
    /// Sorts the labels; fails on an empty list or a repeated label.
    pub fn new(mut labels: Vec<Label>) -> Result<Self, String> {
        if labels.is_empty() {
            return Err("empty simplex".to_string());
        }
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(format!("repeated label {}", w[0]));
        }
        Ok(Simplex(labels))
    }

    pub fn from_ints(vs: &[i64]) -> Self {
        Simplex::new(vs.iter().copied().map(Label::Int).collect()).expect("valid integer simplex")
    }

    pub fn vertex(label: impl Into<Label>) -> Self {
        Simplex(vec![label.into()])
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, other: &Simplex) -> bool {
        other.0.iter().all(|l| self.0.binary_search(l).is_ok())
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        !other.0.iter().any(|l| self.0.binary_search(l).is_ok())
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        v.dedup();
        Simplex(v)
    }

    /// Parses the tuple notation `(a,b,c)` used in gradient files.
    pub fn parse_tuple(text: &str) -> Result<Self, String> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| format!("expected (..) tuple, got {t:?}"))?;
        let mut labels = Vec::new();
        let mut depth = 0usize;
        let mut start = 0;
        for (i, c) in inner.char_indices() {
            match c {
                '[' => depth += 1,
                ']' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    labels.push(Label::parse(inner[start..i].trim())?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        labels.push(Label::parse(inner[start..].trim())?);
        Simplex::new(labels)
    }
}

impl TryFrom<Vec<Label>> for Simplex {
    type Error = String;

    fn try_from(v: Vec<Label>) -> Result<Self, String> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<Label> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_and_duplicates() {
        let s = Simplex::new(vec![Label::Int(3), Label::Int(1)]).unwrap();
        assert_eq!(s, Simplex::from_ints(&[1, 3]));
        assert!(Simplex::new(vec![Label::Int(1), Label::Int(1)]).is_err());
        assert!(Simplex::new(vec![]).is_err());
    }

    #[test]
    fn tuple_notation_round_trips() {
        let s = Simplex::parse_tuple("([1],[1,2],x)").unwrap();
        assert_eq!(s.to_string(), "(x,[1],[1,2])");
        assert_eq!(Simplex::parse_tuple(&s.to_string()).unwrap(), s);
    }
}
