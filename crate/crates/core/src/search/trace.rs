//! Collapse traces and their independent replay.

use serde::{Deserialize, Serialize};

use crate::complex::{FaceId, SimplicialComplex};
use crate::error::{Error, Result};
use crate::simplex::Simplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceEvent {
    /// Elementary collapse of a free face with its unique coface.
    Collapse { face: FaceId, coface: FaceId },
    /// Removal of a maximal face, which becomes critical.
    Critical { face: FaceId },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CollapseTrace {
    pub events: Vec<TraceEvent>,
}

/// Serialized form of one event: labels instead of face ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum LabelledEvent {
    Collapse { face: Simplex, coface: Simplex },
    Critical { face: Simplex },
}

/// Why a replay failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplayError {
    /// Event index and a description.
    Illegal(usize, String),
}

impl CollapseTrace {
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn collapse_count(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, TraceEvent::Collapse { .. })).count()
    }

    pub fn critical_count(&self) -> usize {
        self.events.len() - self.collapse_count()
    }

    /// Replays the events on the alive set `alive` (indexed by face id),
    /// checking each step against the face poset from scratch.
    pub fn replay(&self, c: &SimplicialComplex, alive: &mut [bool]) -> std::result::Result<(), ReplayError> {
        let live_cofaces = |alive: &[bool], x: FaceId| -> Vec<FaceId> {
            c.cofaces_of(x).iter().copied().filter(|&y| alive[y]).collect()
        };
        for (i, e) in self.events.iter().enumerate() {
            match *e {
                TraceEvent::Collapse { face, coface } => {
                    if face >= alive.len() || coface >= alive.len() || !alive[face] || !alive[coface] {
                        return Err(ReplayError::Illegal(i, "collapse of a missing face".into()));
                    }
                    if live_cofaces(alive, face) != [coface] {
                        return Err(ReplayError::Illegal(i, "face is not free with that coface".into()));
                    }
                    alive[coface] = false;
                    alive[face] = false;
                }
                TraceEvent::Critical { face } => {
                    if face >= alive.len() || !alive[face] {
                        return Err(ReplayError::Illegal(i, "removal of a missing face".into()));
                    }
                    if !live_cofaces(alive, face).is_empty() {
                        return Err(ReplayError::Illegal(i, "critical face is not maximal".into()));
                    }
                    alive[face] = false;
                }
            }
        }
        Ok(())
    }

    /// Replays from the full complex and compares the result with `target`
    /// (a subcomplex, possibly empty).
    pub fn replays_to(&self, c: &SimplicialComplex, target: &SimplicialComplex) -> bool {
        let mut alive = vec![true; c.num_faces()];
        if self.replay(c, &mut alive).is_err() {
            return false;
        }
        let Ok(ids) = target.embed_into(c) else { return false };
        let mut expected = vec![false; c.num_faces()];
        for id in ids {
            expected[id] = true;
        }
        alive == expected
    }

    pub fn labelled(&self, c: &SimplicialComplex) -> Vec<LabelledEvent> {
        self.events
            .iter()
            .map(|e| match *e {
                TraceEvent::Collapse { face, coface } => {
                    LabelledEvent::Collapse { face: c.simplex(face), coface: c.simplex(coface) }
                }
                TraceEvent::Critical { face } => LabelledEvent::Critical { face: c.simplex(face) },
            })
            .collect()
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self, c: &SimplicialComplex) -> String {
        let mut out = String::new();
        for e in self.labelled(c) {
            out.push_str(&serde_json::to_string(&e).expect("events serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_json_lines(c: &SimplicialComplex, text: &str) -> Result<Self> {
        let mut events = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let e: LabelledEvent =
                serde_json::from_str(line).map_err(|err| Error::Parse { line: i + 1, message: err.to_string() })?;
            let id = |s: &Simplex| c.face_id(s).ok_or_else(|| Error::NotAFace(s.clone()));
            events.push(match e {
                LabelledEvent::Collapse { face, coface } => {
                    TraceEvent::Collapse { face: id(&face)?, coface: id(&coface)? }
                }
                LabelledEvent::Critical { face } => TraceEvent::Critical { face: id(&face)? },
            });
        }
        Ok(CollapseTrace { events })
    }
}
