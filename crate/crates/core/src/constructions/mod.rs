//! Explicit (r,k)-constructions: each builder returns the hypergraph with its
//! certifying partition.

mod berge3;
mod designs;
mod norm_quotient;
mod property_b;
mod theta;
mod wenger;

pub use berge3::build_berge3;
pub use designs::{build_design_split, design_catalog, DesignInstance};
pub use norm_quotient::{build_norm_quotient, partition_norm_quotient, NormQuotientParams, PatchStats, PatchStrategy};
pub use property_b::build_property_b;
pub use theta::{build_theta, build_theta_graph};
pub use wenger::{build_wenger, partition_wenger, wenger_half_parts};

use crate::gf::{Field, FieldElement, GfError};
use crate::structures::{LabeledHypergraph, SplitPartition, StructureError};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("design: {0}")]
    Design(String),
}

fn params_err<T>(msg: impl Into<String>) -> Result<T, ConstructionError> {
    Err(ConstructionError::Params(msg.into()))
}

/// A hypergraph with its certifying partition.
#[derive(Debug, Clone)]
pub struct Construction {
    pub graph: LabeledHypergraph,
    pub partition: SplitPartition,
    /// Edges of the underlying algebraic graph dropped because both ends
    /// fell in one merged part.
    pub intra_part_edges_removed: usize,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ConstructionParams {
    NormQuotient(NormQuotientParams),
    Wenger { m: u32, q: u64, seed: Option<u64> },
    Theta { q: u64 },
    Berge3 { q: u64 },
    DesignSplit { id: String },
    PropertyB { m: usize, c: Vec<usize>, r: usize },
}

/// Builds the construction named by `params`.
pub fn construct(params: &ConstructionParams) -> Result<(Construction, Option<PatchStats>), ConstructionError> {
    Ok(match params {
        ConstructionParams::NormQuotient(p) => {
            let (c, stats) = partition_norm_quotient(p)?;
            (c, Some(stats))
        }
        ConstructionParams::Wenger { m, q, seed } => (partition_wenger(*m, *q, *seed)?, None),
        ConstructionParams::Theta { q } => (build_theta(*q)?, None),
        ConstructionParams::Berge3 { q } => (build_berge3(*q)?, None),
        ConstructionParams::DesignSplit { id } => (build_design_split(&design_catalog(id)?)?, None),
        ConstructionParams::PropertyB { m, c, r } => (build_property_b(*m, c, *r)?, None),
    })
}

/// Removes edges lying inside one part.
pub(crate) fn strip_intra_part_edges(
    g: &LabeledHypergraph,
    p: &SplitPartition,
) -> Result<(LabeledHypergraph, usize), ConstructionError> {
    let owner = p.assignment(g.num_vertices())?;
    let kept = g.filter_edges(|e| {
        let mut parts: Vec<Option<u32>> = e.iter().map(|&v| owner[v as usize]).collect();
        parts.sort_unstable();
        !parts.windows(2).any(|w| w[0].is_some() && w[0] == w[1])
    });
    let removed = g.num_edges() - kept.num_edges();
    Ok((kept, removed))
}

/// Applies a seeded shuffle when a seed is given; identity otherwise.
pub fn seeded_order(n: usize, seed: Option<u64>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    if let Some(s) = seed {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
    }
    order
}

/// Field of order `q` with a readable error.
pub(crate) fn field_of_order(q: u64) -> Result<Field, ConstructionError> {
    Ok(Field::with_order(q)?)
}

/// Comma-joined element encodings.
pub(crate) fn tuple_label(side: Option<&str>, xs: &[FieldElement]) -> String {
    let body: Vec<String> = xs.iter().map(|x| x.0.to_string()).collect();
    match side {
        Some(s) => format!("{s}:{}", body.join(",")),
        None => body.join(","),
    }
}

/// Mixed-radix index with the first coordinate most significant.
pub(crate) fn tuple_index(xs: &[FieldElement], q: u64) -> u64 {
    xs.iter().fold(0, |acc, x| acc * q + x.0 as u64)
}
