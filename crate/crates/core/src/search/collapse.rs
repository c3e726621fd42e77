//! Collapsibility, relative collapses and endocollapsibility.

use std::ops::ControlFlow;

use rand::seq::SliceRandom;

use super::brute::{optimal_morse_bruteforce, BruteForceConfig};
use super::engine::CollapseState;
use super::trace::{CollapseTrace, TraceEvent};
use super::{attempt_rng, drive, SearchConfig, Verdict};
use crate::complex::{FaceId, SimplicialComplex};
use crate::error::{Error, Result};
use crate::morse::MorseVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseCertificate {
    pub trace: CollapseTrace,
    /// Attempt that found the trace, `None` for the cone fallback.
    pub attempt: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoCertificate {
    /// The facet removed first.
    pub facet: FaceId,
    /// Collapses of `M - facet` onto the boundary.
    pub trace: CollapseTrace,
    pub attempt: usize,
    pub seed: u64,
}

/// Trace collapsing a cone onto its apex: `σ` with `σ ∪ apex`, larger faces
/// first.
fn cone_trace(c: &SimplicialComplex, apex: u32) -> Option<CollapseTrace> {
    if c.facets().iter().any(|&f| !c.vertices(f).contains(&apex)) {
        return None;
    }
    let mut events = Vec::new();
    let mut buf = Vec::new();
    for id in (0..c.num_faces()).rev() {
        let vs = c.vertices(id);
        if vs.contains(&apex) {
            continue;
        }
        buf.clear();
        buf.extend_from_slice(vs);
        buf.insert(buf.partition_point(|&x| x < apex), apex);
        let coface = c.face_id_of_vertices(&buf)?;
        events.push(TraceEvent::Collapse { face: id, coface });
    }
    Some(CollapseTrace { events })
}

/// Collapses `m` onto its subcomplex `d`, leaving every face of `d` in
/// place. Never returns [`Verdict::CertifiedNot`].
pub fn collapses_onto(
    m: &SimplicialComplex,
    d: &SimplicialComplex,
    cfg: &SearchConfig,
) -> Result<Verdict<CollapseCertificate>> {
    cfg.validate()?;
    if d.is_empty() {
        return Err(Error::NotSubcomplex);
    }
    let ids = d.embed_into(m)?;
    let mut frozen = vec![false; m.num_faces()];
    for id in ids {
        frozen[id] = true;
    }
    let mut found = None;
    drive(
        cfg,
        |i, seed| {
            let mut rng = attempt_rng(seed);
            let mut state = CollapseState::new(m, Some(&frozen));
            state.collapse_all(cfg.strategy, &mut rng);
            (state.remaining() == 0).then(|| CollapseCertificate {
                trace: std::mem::take(&mut state.trace),
                attempt: Some(i),
                seed: Some(seed),
            })
        },
        |_, r| match r {
            Some(cert) => {
                found = Some(cert);
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        },
    );
    if let Some(cert) = found {
        return Ok(Verdict::Certified(cert));
    }
    if d.num_faces() == 1 {
        let apex = m.vertex_position(&d.labels()[0]).expect("embedded");
        if let Some(trace) = cone_trace(m, apex) {
            log::debug!("random collapses stalled, using the cone on {}", d.labels()[0]);
            return Ok(Verdict::Certified(CollapseCertificate { trace, attempt: None, seed: None }));
        }
    }
    Ok(Verdict::Unknown)
}

/// Collapses `c` to a single vertex. The trace ends with the removal of that
/// vertex, so it replays to the empty complex.
pub fn is_collapsible(c: &SimplicialComplex, cfg: &SearchConfig) -> Result<Verdict<CollapseCertificate>> {
    cfg.validate()?;
    if c.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut found = None;
    drive(
        cfg,
        |i, seed| {
            let mut rng = attempt_rng(seed);
            let mut state = CollapseState::new(c, None);
            state.collapse_all(cfg.strategy, &mut rng);
            if state.remaining() != 1 {
                return None;
            }
            let last = state.alive().iter().position(|&a| a).expect("one face left");
            state.remove_critical(last);
            Some(CollapseCertificate { trace: std::mem::take(&mut state.trace), attempt: Some(i), seed: Some(seed) })
        },
        |_, r| match r {
            Some(cert) => {
                found = Some(cert);
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        },
    );
    if let Some(cert) = found {
        return Ok(Verdict::Certified(cert));
    }
    for apex in 0..c.faces_of_dim(0).len() as u32 {
        if let Some(mut trace) = cone_trace(c, apex) {
            trace.events.push(TraceEvent::Critical { face: apex as FaceId });
            return Ok(Verdict::Certified(CollapseCertificate { trace, attempt: None, seed: None }));
        }
    }
    Ok(Verdict::Unknown)
}

/// Settles collapsibility of a small complex exactly: collapsible iff its
/// optimal Morse vector is `(1,0,…,0)`. Returns that vector when certified.
pub fn decide_collapsibility_exhaustively(
    c: &SimplicialComplex,
    cfg: &BruteForceConfig,
) -> Result<Verdict<MorseVector>> {
    let opt = optimal_morse_bruteforce(c, cfg)?;
    if opt.vector.total() == 1 && opt.vector.get(0) == 1 {
        Ok(Verdict::Certified(opt.vector))
    } else {
        Ok(Verdict::CertifiedNot)
    }
}

/// Whether `m` minus some facet collapses onto its boundary. Facets are tried
/// in a seeded random order, one per attempt.
pub fn is_endocollapsible(m: &SimplicialComplex, cfg: &SearchConfig) -> Result<Verdict<EndoCertificate>> {
    cfg.validate()?;
    if m.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !m.is_pure() {
        return Err(Error::NotPure);
    }
    let frozen = m.boundary_face_mask()?;
    if !frozen.iter().any(|&b| b) {
        return Err(Error::Closed);
    }
    let mut order = m.facets().to_vec();
    order.shuffle(&mut attempt_rng(cfg.seed));
    let mut found = None;
    drive(
        cfg,
        |i, seed| {
            let facet = order[i % order.len()];
            let mut rng = attempt_rng(seed);
            let mut state = CollapseState::new(m, Some(&frozen));
            state.remove_critical(facet);
            state.trace.events.clear();
            state.collapse_all(cfg.strategy, &mut rng);
            (state.remaining() == 0).then(|| EndoCertificate {
                facet,
                trace: std::mem::take(&mut state.trace),
                attempt: i,
                seed,
            })
        },
        |_, r| match r {
            Some(cert) => {
                found = Some(cert);
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        },
    );
    Ok(found.map_or(Verdict::Unknown, Verdict::Certified))
}
