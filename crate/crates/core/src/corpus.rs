//! Named complexes: generated families, two classical small triangulations,
//! and hash-pinned external facet files.
//!
//! | name | complex |
//! |------|---------|
//! | `boundary-simplex-n` (1 ≤ n ≤ 7) | ∂Δⁿ on vertices 1..=n+1 |
//! | `simplex-d` (0 ≤ d ≤ 12) | Δ^d on vertices 1..=d+1 |
//! | `cycle-n` (n ≥ 3) | the n-gon |
//! | `rp2-6` | 6-vertex real projective plane |
//! | `dunce-hat-8` | 8-vertex dunce hat |
//! | `poincare-16` | 16-vertex Poincaré homology sphere (external) |
//! | `torus3-27` | 27-vertex 3-torus (external) |
//!
//! External files are looked up in `$MORSECRAFT_DATA`, falling back to the
//! `data/` directory of the source tree, and are rejected unless their
//! SHA-256 digest matches.

use std::path::PathBuf;

use sha2::{Digest, Sha256};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::io::parse_facets;

const RP2: &[&[i64]] = &[
    &[0, 1, 2],
    &[0, 2, 3],
    &[0, 1, 5],
    &[0, 4, 5],
    &[0, 3, 4],
    &[1, 2, 4],
    &[1, 3, 4],
    &[1, 3, 5],
    &[2, 3, 5],
    &[2, 4, 5],
];

const DUNCE_HAT: &[&[i64]] = &[
    &[1, 3, 5],
    &[2, 3, 5],
    &[2, 4, 5],
    &[1, 2, 4],
    &[1, 3, 4],
    &[3, 4, 8],
    &[1, 2, 8],
    &[1, 7, 8],
    &[1, 2, 7],
    &[2, 3, 7],
    &[3, 6, 7],
    &[1, 3, 6],
    &[1, 5, 6],
    &[4, 5, 6],
    &[4, 6, 8],
    &[6, 7, 8],
    &[2, 3, 8],
];

/// File name and SHA-256 of each external entry.
pub const EXTERNAL: &[(&str, &str, &str)] = &[
    ("poincare-16", "poincare-16.txt", "c8eebbdc5fb6d47ac9fb356f9f659453d31e9d7ceaaf5657ba1c5eefb238595d"),
    ("torus3-27", "torus3-27.txt", "6c1c23c0d87c5b66c41fd4e7db810b6db4df134c76339deff03989348116904c"),
];

pub fn data_dir() -> PathBuf {
    match std::env::var_os("MORSECRAFT_DATA") {
        Some(p) => PathBuf::from(p),
        None => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data")),
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Names of the entries, with one representative per family.
pub fn list() -> Vec<String> {
    let mut names: Vec<String> = (1..=7).map(|n| format!("boundary-simplex-{n}")).collect();
    names.extend((0..=4).map(|d| format!("simplex-{d}")));
    names.extend((3..=6).map(|n| format!("cycle-{n}")));
    names.extend(["rp2-6", "dunce-hat-8"].map(String::from));
    names.extend(EXTERNAL.iter().map(|e| e.0.to_string()));
    names
}

/// Entries that need no external file.
pub fn builtin_names() -> Vec<String> {
    list().into_iter().filter(|n| !EXTERNAL.iter().any(|e| e.0 == n)).collect()
}

fn simplex_facets(n: i64) -> Vec<Vec<i64>> {
    vec![(1..=n).collect()]
}

pub fn load(name: &str) -> Result<SimplicialComplex> {
    let unknown = || Error::UnknownCorpus(name.to_string());
    let number = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<i64>().ok());
    if let Some(n) = number("boundary-simplex-") {
        if !(1..=7).contains(&n) {
            return Err(unknown());
        }
        let facets = (1..=n + 1).map(|skip| (1..=n + 1).filter(|&v| v != skip).collect::<Vec<_>>());
        return SimplicialComplex::from_facets(facets);
    }
    if let Some(d) = number("simplex-") {
        if !(0..=12).contains(&d) {
            return Err(unknown());
        }
        return SimplicialComplex::from_facets(simplex_facets(d + 1));
    }
    if let Some(n) = number("cycle-") {
        if n < 3 {
            return Err(unknown());
        }
        return SimplicialComplex::from_facets((1..=n).map(|i| vec![i, i % n + 1]));
    }
    match name {
        "rp2-6" => SimplicialComplex::from_int_facets(RP2),
        "dunce-hat-8" => SimplicialComplex::from_int_facets(DUNCE_HAT),
        _ => {
            let &(_, file, digest) = EXTERNAL.iter().find(|e| e.0 == name).ok_or_else(unknown)?;
            load_external(name, file, digest)
        }
    }
}

fn load_external(name: &str, file: &str, digest: &str) -> Result<SimplicialComplex> {
    let path = data_dir().join(file);
    let bytes = std::fs::read(&path)
        .map_err(|_| Error::ExternalDataMissing { name: name.to_string(), path: path.display().to_string() })?;
    let found = sha256_hex(&bytes);
    if found != digest {
        return Err(Error::DigestMismatch { path: path.display().to_string(), expected: digest.to_string(), found });
    }
    parse_facets(&String::from_utf8_lossy(&bytes))
}
