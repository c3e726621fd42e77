//! Discrete Morse theory on finite simplicial complexes.
//!
//! The crate builds complexes from facet lists, subdivides them, computes
//! their homology exactly, and searches for discrete gradients (acyclic
//! matchings on the face poset). Gradients found by the searches back
//! one-sided certificates: sphere recognition, local constructibility and
//! upper bounds on the Heegaard genus of 3-manifolds.
//!
//! ```
//! use morsecraft::{corpus, search::{random_discrete_morse, SearchConfig}};
//!
//! let sphere = corpus::load("boundary-simplex-3").unwrap();
//! let result = random_discrete_morse(&sphere, &SearchConfig::new(1, 16)).unwrap();
//! assert_eq!(result.best.vector.to_string(), "(1,0,1)");
//! ```

pub mod cli;
pub mod complex;
pub mod construct;
pub mod corpus;
pub mod error;
pub mod exec;
pub mod homology;
pub mod io;
pub mod label;
pub mod morse;
pub mod poset;
pub mod recognition;
pub mod record;
pub mod search;
pub mod simplex;
pub mod subdivision;

pub use complex::{FaceId, SimplicialComplex, StructureReport};
pub use error::{Error, Result};
pub use exec::Execution;
pub use label::Label;
pub use simplex::Simplex;
