//! The facet-list text format.
//!
//! One facet per line as whitespace-separated labels. Lines starting with
//! `#` are comments; blank lines are ignored. Subdivision vertices are written
//! as bracketed parent faces, e.g. `[1,2]`.

use std::fmt::Write as _;
use std::path::Path;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::label::Label;
use crate::simplex::Simplex;

pub fn parse_facets(text: &str) -> Result<SimplicialComplex> {
    let mut facets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let labels = line
            .split_whitespace()
            .map(Label::parse)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|message| Error::Parse { line: i + 1, message })?;
        let s = Simplex::new(labels).map_err(|message| Error::Parse { line: i + 1, message })?;
        facets.push(s);
    }
    if facets.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(SimplicialComplex::from_simplices(facets))
}

pub fn read_facets(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
    parse_facets(&std::fs::read_to_string(path)?)
}

/// Facets in id order (by dimension, then lexicographically).
pub fn format_facets(complex: &SimplicialComplex) -> String {
    let mut out = String::new();
    for &f in complex.facets() {
        let s = complex.simplex(f);
        let parts: Vec<String> = s.labels().iter().map(ToString::to_string).collect();
        writeln!(out, "{}", parts.join(" ")).unwrap();
    }
    out
}
