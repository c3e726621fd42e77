//! Vertex labels.
//!
//! Labels are opaque ordered tokens. Integers order numerically and come
//! first, then plain names, then face labels (the vertices introduced by
//! barycentric subdivision, which name the face they subdivide).

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Name(String),
    Face(Vec<Label>),
}

impl Label {
    pub fn name(s: impl Into<String>) -> Self {
        Label::Name(s.into())
    }

    /// Parses one whitespace-free token of the facet-list format.
    pub fn parse(token: &str) -> Result<Self, String> {
        let mut parser = TokenParser { bytes: token.as_bytes(), pos: 0, src: token };
        let label = parser.label()?;
        if parser.pos != token.len() {
            return Err(format!("trailing characters in label {token:?}"));
        }
        Ok(label)
    }

    /// Nesting depth: 0 for plain labels, r for an r-fold subdivision vertex.
    pub fn depth(&self) -> usize {
        match self {
            Label::Face(inner) => 1 + inner.iter().map(Label::depth).max().unwrap_or(0),
            _ => 0,
        }
    }
}

impl From<i64> for Label {
    fn from(v: i64) -> Self {
        Label::Int(v)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::parse(s).unwrap_or_else(|_| Label::Name(s.to_string()))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(v) => write!(f, "{v}"),
            Label::Name(s) => f.write_str(s),
            Label::Face(inner) => {
                f.write_str("[")?;
                for (i, l) in inner.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{l}")?;
                }
                f.write_str("]")
            }
        }
    }
}

struct TokenParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl TokenParser<'_> {
    fn label(&mut self) -> Result<Label, String> {
        match self.bytes.get(self.pos) {
            None => Err("empty label".to_string()),
            Some(b'[') => {
                self.pos += 1;
                let mut inner = Vec::new();
                if self.bytes.get(self.pos) == Some(&b']') {
                    return Err(format!("empty face label in {:?}", self.src));
                }
                loop {
                    inner.push(self.label()?);
                    match self.bytes.get(self.pos) {
                        Some(b',') => self.pos += 1,
                        Some(b']') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(format!("unterminated face label in {:?}", self.src)),
                    }
                }
                Ok(Label::Face(inner))
            }
            Some(_) => {
                let start = self.pos;
                while let Some(&b) = self.bytes.get(self.pos) {
                    if matches!(b, b'[' | b']' | b',' | b'(' | b')') || b.is_ascii_whitespace() {
                        break;
                    }
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(format!("unexpected character in {:?}", self.src));
                }
                let text = &self.src[start..self.pos];
                Ok(match text.parse::<i64>() {
                    Ok(v) => Label::Int(v),
                    Err(_) => Label::Name(text.to_string()),
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_sort_numerically() {
        let mut v = vec![Label::from("10"), Label::from("2"), Label::from("a")];
        v.sort();
        assert_eq!(v, vec![Label::Int(2), Label::Int(10), Label::name("a")]);
    }

    #[test]
    fn nested_labels_round_trip() {
        for text in ["7", "x1", "[1,2]", "[[1],[1,2]]", "[a,[b,3]]"] {
            let l = Label::parse(text).unwrap();
            assert_eq!(l.to_string(), text);
        }
        assert_eq!(Label::parse("[[1],[1,2]]").unwrap().depth(), 2);
    }

    #[test]
    fn malformed_labels_are_rejected() {
        assert!(Label::parse("[1,2").is_err());
        assert!(Label::parse("[]").is_err());
        assert!(Label::parse("1]").is_err());
    }

    #[test]
    fn json_form_is_natural() {
        let l = Label::parse("[1,a]").unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"[1,"a"]"#);
        assert_eq!(serde_json::from_str::<Label>(&s).unwrap(), l);
    }
}
