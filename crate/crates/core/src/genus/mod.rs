//! Orientable genus: closed formulas, block decomposition, rotation systems,
//! embedding search, subdivision certificates and certified bounds.

use std::time::{Duration, Instant};

pub mod blocks;
pub mod bounds;
pub mod embed;
pub mod faces;
pub mod formula;
pub mod minor;
pub mod rotation;
pub mod subdivision;

pub use blocks::{blocks, euler_bound_from, euler_lower_bound, girth, Block};
pub use bounds::{genus_bounds, GenusBounds, LowerCertificate, UpperCertificate};
pub use embed::{embed_best, search_embedding, EmbedOutcome};
pub use formula::{kmn_genus, kn_genus, named_genus};
pub use rotation::{merge_rotations, rotation_genus, trace_faces, FaceTrace, RotationSystem};
pub use subdivision::{find_subdivision, pattern_graph, SubdivisionWitness};

pub const DEFAULT_TIME_MS: u64 = 60_000;
pub const DEFAULT_NODES: u64 = 10_000_000;

/// Search limits. The wall-clock limit applies per stage, counted from the
/// moment a stage asks for its deadline.
#[derive(Clone, Debug, PartialEq)]
pub struct Budget {
    pub time_ms: Option<u64>,
    pub nodes: u64,
    pub seed: u64,
    /// Graphs with at most this many rotation systems also get an exhaustive pass.
    pub exhaustive_limit: f64,
    /// Annealing moves per restart; derived from the edge count when unset.
    pub restart_moves: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            time_ms: Some(DEFAULT_TIME_MS),
            nodes: DEFAULT_NODES,
            seed: 0,
            exhaustive_limit: 1e8,
            restart_moves: None,
        }
    }
}

impl Budget {
    pub fn deadline(&self) -> Option<Instant> {
        self.time_ms.map(|ms| Instant::now() + Duration::from_millis(ms))
    }
}
