//! One-sided certificates built from gradient searches.
//!
//! A certificate carries its witness gradient as labelled pairs, so it can
//! be checked against the input alone with [`Certificate::verify`]. A search
//! that finds nothing returns kind [`CertificateKind::None`], which is never
//! a disproof (except where the note records a homology obstruction).

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{betti_mod2, is_homology_manifold_with};
use crate::morse::{critical_cells, morse_vector, verify_gradient, Gradient, MorseVector};
use crate::search::{collapse_depth, depth_of_interior_vector, random_discrete_morse_until, SearchConfig};
use crate::simplex::Simplex;
use crate::subdivision::sd_iter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Sphere,
    Lc,
    HeegaardUpperBound,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// Morse vector of the witness; the interior vector when
    /// `boundary_critical` is set.
    pub vector: Option<MorseVector>,
    pub seed: u64,
    /// Attempts run in total, over all subdivision levels.
    pub attempts: usize,
    /// Attempt index (within its level) of the witness.
    pub attempt: Option<usize>,
    /// Number of barycentric subdivisions applied before the witness run.
    pub subdivision_level: usize,
    pub genus: Option<usize>,
    pub depth: Option<usize>,
    pub boundary_critical: bool,
    /// Pairs of the witness gradient on `sd^level` of the input.
    pub witness: Option<Vec<(Simplex, Simplex)>>,
    /// Where a CLI run wrote the witness, if anywhere.
    pub witness_file: Option<String>,
    pub note: Option<String>,
}

impl Certificate {
    fn none(cfg: &SearchConfig, attempts: usize, note: Option<String>) -> Self {
        Certificate {
            kind: CertificateKind::None,
            vector: None,
            seed: cfg.seed,
            attempts,
            attempt: None,
            subdivision_level: 0,
            genus: None,
            depth: None,
            boundary_critical: false,
            witness: None,
            witness_file: None,
            note,
        }
    }

    fn found(kind: CertificateKind, c: &SimplicialComplex, v: &Gradient, vector: MorseVector, seed: u64) -> Self {
        Certificate {
            kind,
            vector: Some(vector),
            seed,
            attempts: 0,
            attempt: None,
            subdivision_level: 0,
            genus: None,
            depth: None,
            boundary_critical: false,
            witness: Some(v.labelled_pairs(c)),
            witness_file: None,
            note: None,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.kind != CertificateKind::None
    }

    /// Rechecks the witness against `c` from scratch: the gradient is
    /// acyclic, reproduces the stored vector, and that vector supports the
    /// claim. Certificates of kind `None` verify trivially.
    pub fn verify(&self, c: &SimplicialComplex) -> Result<bool> {
        if self.kind == CertificateKind::None {
            return Ok(true);
        }
        let (Some(witness), Some(claimed)) = (&self.witness, &self.vector) else { return Ok(false) };
        let k = sd_iter(c, self.subdivision_level)?;
        let v = Gradient::from_labelled_pairs(&k, witness)?;
        if !verify_gradient(&k, &v)?.is_valid() {
            return Ok(false);
        }
        let vector = if self.boundary_critical {
            let boundary = k.boundary_face_mask()?;
            let mut counts = vec![0; k.dim().map_or(0, |d| d + 1)];
            if v.pairs().iter().any(|&(a, b)| boundary[a] || boundary[b]) {
                return Ok(false);
            }
            for f in critical_cells(&k, &v)? {
                if !boundary[f] {
                    counts[k.dim_of(f)] += 1;
                }
            }
            MorseVector(counts)
        } else {
            morse_vector(&k, &v)?
        };
        if vector != *claimed {
            return Ok(false);
        }
        let d = k.dim().unwrap_or(0);
        Ok(match self.kind {
            CertificateKind::Sphere => {
                k.structure_report().is_closed_pseudomanifold() && vector == MorseVector::sphere(d)
            }
            CertificateKind::Lc if self.boundary_critical => {
                let depth = depth_of_interior_vector(&vector);
                depth >= 2 && self.depth == Some(depth)
            }
            CertificateKind::Lc => d >= 2 && vector.get(d - 1) == 0,
            CertificateKind::HeegaardUpperBound => {
                let g = vector.get(1);
                d == 3 && vector == MorseVector(vec![1, g, g, 1]) && self.genus == Some(g)
            }
            CertificateKind::None => unreachable!(),
        })
    }
}

fn require_closed_pseudomanifold(c: &SimplicialComplex) -> Result<()> {
    if c.is_empty() {
        return Err(Error::EmptyInput);
    }
    let r = c.structure_report();
    if !r.is_pure {
        return Err(Error::NotPure);
    }
    if !r.is_pseudomanifold {
        return Err(Error::NotPseudomanifold);
    }
    if r.boundary_facet_count > 0 {
        return Err(Error::HasBoundary);
    }
    Ok(())
}

/// Looks for a gradient with vector `(1,0,…,0,1)`. By Forman's sphere
/// theorem such a gradient on a closed manifold certifies a sphere. Inputs
/// whose mod-2 Betti numbers differ from a sphere's are answered without
/// searching.
pub fn sphere_certificate(c: &SimplicialComplex, cfg: &SearchConfig) -> Result<Certificate> {
    cfg.validate()?;
    require_closed_pseudomanifold(c)?;
    let d = c.dim().expect("non-empty");
    let target = MorseVector::sphere(d);
    let betti = betti_mod2(c);
    if MorseVector(betti.clone()) != target {
        return Ok(Certificate::none(cfg, 0, Some(format!("homology obstruction: mod-2 Betti numbers {betti:?}"))));
    }
    let s = random_discrete_morse_until(c, cfg, |v| *v == target)?;
    if s.best.vector != target {
        return Ok(Certificate::none(cfg, s.attempts_run, None));
    }
    let mut cert = Certificate::found(CertificateKind::Sphere, c, &s.best.gradient, s.best.vector, s.best.seed);
    cert.attempts = s.attempts_run;
    cert.attempt = Some(s.best.attempt);
    Ok(cert)
}

/// Local constructibility: a gradient without critical `(d-1)`-faces for
/// closed inputs, a boundary-critical witness of collapse depth at least 2
/// for inputs with boundary.
pub fn lc_status(m: &SimplicialComplex, cfg: &SearchConfig) -> Result<Certificate> {
    cfg.validate()?;
    if m.is_empty() {
        return Err(Error::EmptyInput);
    }
    let d = m.dim().expect("non-empty");
    if d < 2 {
        return Err(Error::WrongDimension { expected: "at least 2".into(), found: d });
    }
    let r = m.structure_report();
    if !r.is_pure {
        return Err(Error::NotPure);
    }
    if !r.is_pseudomanifold {
        return Err(Error::NotPseudomanifold);
    }
    if r.boundary_facet_count == 0 {
        let s = random_discrete_morse_until(m, cfg, |v| v.get(d - 1) == 0)?;
        let Some(i) = s.vectors.iter().position(|v| v.get(d - 1) == 0) else {
            return Ok(Certificate::none(cfg, s.attempts_run, None));
        };
        let run = crate::search::single_attempt(m, cfg.strategy, cfg.attempt_seed(i));
        let mut cert = Certificate::found(CertificateKind::Lc, m, &run.gradient, run.vector, run.seed);
        cert.attempts = s.attempts_run;
        cert.attempt = Some(i);
        return Ok(cert);
    }
    let run = collapse_depth(m, cfg)?;
    if run.depth < 2 {
        let mut none = Certificate::none(cfg, run.attempts_run, None);
        none.depth = Some(run.depth);
        return Ok(none);
    }
    let mut cert = Certificate::found(CertificateKind::Lc, m, &run.gradient, run.interior_vector, run.seed);
    cert.boundary_critical = true;
    cert.depth = Some(run.depth);
    cert.attempts = run.attempts_run;
    cert.attempt = Some(run.attempt);
    Ok(cert)
}

/// Upper bound on the Heegaard genus of a closed 3-manifold: the least `g`
/// such that some run on `sd^r M` (`r ≤ cfg.max_subdivisions`) yields
/// `(1, g, g, 1)`. Stops once `g` meets the mod-2 lower bound `β₁`.
pub fn heegaard_upper_bound(m: &SimplicialComplex, cfg: &SearchConfig) -> Result<Certificate> {
    cfg.validate()?;
    if m.is_empty() {
        return Err(Error::EmptyInput);
    }
    let d = m.dim().expect("non-empty");
    if d != 3 {
        return Err(Error::WrongDimension { expected: "3".into(), found: d });
    }
    if !m.is_connected() {
        return Err(Error::Disconnected);
    }
    require_closed_pseudomanifold(m)?;
    let check = is_homology_manifold_with(m, cfg.execution)?;
    if !check.is_homology_manifold {
        let w = check.witness.map(|s| s.to_string()).unwrap_or_default();
        return Err(Error::NotHomologyManifold(w));
    }
    let beta1 = betti_mod2(m)[1];
    let accepted = |v: &MorseVector| v.get(0) == 1 && v.get(3) == 1;
    let mut best: Option<Certificate> = None;
    let mut total = 0;
    for level in 0..=cfg.max_subdivisions {
        let k = if level == 0 { m.clone() } else { sd_iter(m, level)? };
        if level > 0 {
            log::info!("heegaard: trying sd^{level} with {} facets", k.facets().len());
        }
        let s = random_discrete_morse_until(&k, cfg, |v| accepted(v) && v.get(1) == beta1)?;
        total += s.attempts_run;
        let genus = s.vectors.iter().filter(|v| accepted(v)).map(|v| v.get(1)).min();
        if let Some(g) = genus {
            assert!(g >= beta1, "Morse inequality violated: g = {g} < β₁ = {beta1}");
            if best.as_ref().is_none_or(|b| b.genus.is_some_and(|bg| g < bg)) {
                let i = s.vectors.iter().position(|v| accepted(v) && v.get(1) == g).expect("present");
                let run = crate::search::single_attempt(&k, cfg.strategy, cfg.attempt_seed(i));
                let mut cert =
                    Certificate::found(CertificateKind::HeegaardUpperBound, &k, &run.gradient, run.vector, run.seed);
                cert.genus = Some(g);
                cert.attempt = Some(i);
                cert.subdivision_level = level;
                best = Some(cert);
            }
        }
        if best.as_ref().is_some_and(|b| b.genus == Some(beta1)) {
            break;
        }
    }
    Ok(match best {
        Some(mut cert) => {
            cert.attempts = total;
            cert
        }
        None => Certificate::none(cfg, total, None),
    })
}
