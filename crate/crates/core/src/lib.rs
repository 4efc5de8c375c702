//! Greedy fault-tolerant spanners and the tooling around them.
//!
//! * [`graph`]: weighted graphs, fault-masked distances, girth.
//! * [`protection`]: exact `(t, f)` protection decisions with certificates.
//! * [`spanner`]: the greedy construction and trace replay.
//! * [`verifier`]: exhaustive and per-edge fault-tolerance checks.
//! * [`lowerbound`]: high-girth base graphs, blow-ups and criticality witnesses.
//! * [`analyzer`]: walk counts, walk meets, blockades, regularization, density.

pub mod analyzer;
pub mod error;
pub mod graph;
pub mod lowerbound;
pub mod protection;
pub mod spanner;
pub mod verifier;

pub use error::{Error, Result};
pub use graph::{Distance, Edge, FaultMode, FaultSet, Graph, NodeId};
