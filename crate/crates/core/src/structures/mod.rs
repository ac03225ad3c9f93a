//! Hypergraphs, split partitions, and (r,k) certification.

mod graph;
mod io;
mod property_b;
mod verify;

pub use graph::{LabeledHypergraph, SimpleGraph};
pub use io::{
    canonical_json, payload_digest, read_hypergraph, read_partition, write_hypergraph, write_partition, HypergraphFile,
    PartitionFile,
};
pub use property_b::{property_b_check, PropertyB};
pub use verify::{components, max_component_size, verify_rk, VerificationReport};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("uniformity must be at least 2, got {0}")]
    Uniformity(usize),
    #[error("edge {edge:?}: {reason}")]
    InvalidEdge { edge: Vec<u32>, reason: String },
    #[error("partition does not match graph: {0}")]
    PartitionMismatch(String),
    #[error("part {part} has {size} vertices, more than declared k = {k}")]
    PartTooLarge { part: usize, size: usize, k: usize },
    #[error("invalid composition {0:?}")]
    Composition(Vec<usize>),
    #[error("operation requires a graph (m = 2), got m = {0}")]
    NotAGraph(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Ordered vertex sets V_1..V_r with a declared bound k on their sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPartition {
    pub k: usize,
    pub parts: Vec<Vec<u32>>,
}

impl SplitPartition {
    /// Parts are kept in the given order; each part is sorted.
    pub fn new(k: usize, parts: Vec<Vec<u32>>) -> Result<Self, StructureError> {
        let mut parts = parts;
        for (i, part) in parts.iter_mut().enumerate() {
            part.sort_unstable();
            if part.windows(2).any(|w| w[0] == w[1]) {
                return Err(StructureError::PartitionMismatch(format!("part {i} repeats a vertex")));
            }
            if part.len() > k {
                return Err(StructureError::PartTooLarge { part: i, size: part.len(), k });
            }
        }
        Ok(SplitPartition { k, parts })
    }

    /// Like [`SplitPartition::new`] with `k` set to the largest part.
    pub fn tight(parts: Vec<Vec<u32>>) -> Result<Self, StructureError> {
        let k = parts.iter().map(Vec::len).max().unwrap_or(0);
        Self::new(k, parts)
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn max_part_size(&self) -> usize {
        self.parts.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Part index of every vertex (`None` when uncovered). Fails on overlap
    /// or out-of-range indices.
    pub fn assignment(&self, num_vertices: usize) -> Result<Vec<Option<u32>>, StructureError> {
        let mut owner = vec![None; num_vertices];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                let slot = owner.get_mut(v as usize).ok_or_else(|| {
                    StructureError::PartitionMismatch(format!("vertex {v} out of range (n = {num_vertices})"))
                })?;
                if let Some(j) = slot {
                    return Err(StructureError::PartitionMismatch(format!("vertex {v} lies in parts {j} and {i}")));
                }
                *slot = Some(i as u32);
            }
        }
        Ok(owner)
    }
}

/// An embedded copy of a forbidden configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub pattern: String,
    pub vertices: Vec<u32>,
    pub edges: Vec<Vec<u32>>,
}
