//! Adjacency spectra of regular graphs, expander-mixing checks, and the
//! greedy pseudorandom partitioner.

mod greedy;
mod lanczos;

pub use greedy::{greedy_split, GreedyIteration, GreedyOptions, GreedySplit, GreedySplitTrace};

use crate::forbidden::ForbiddenError;
use crate::structures::{LabeledHypergraph, SimpleGraph, StructureError};
use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use thiserror::Error;

/// Largest graph handled by the dense eigensolver.
pub const DENSE_LIMIT: usize = 5000;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Pattern(#[from] ForbiddenError),
    #[error("graph is not regular")]
    NotRegular,
    #[error("eigenvalue iteration did not converge after {steps} steps")]
    NoConvergence { steps: usize },
    #[error("mixing check: {0}")]
    Mode(String),
    #[error("greedy split: {0}")]
    Greedy(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    pub n: usize,
    pub d: usize,
    /// All eigenvalues in descending order when `dense`, otherwise
    /// [rho_1, rho_2, rho_n].
    pub eigenvalues: Vec<f64>,
    pub dense: bool,
    pub bipartite: bool,
    /// max(rho_2, -rho_n), or rho_2 for bipartite graphs.
    pub rho: f64,
}

impl SpectrumSummary {
    pub fn rho2(&self) -> f64 {
        self.eigenvalues.get(1).copied().unwrap_or(f64::NAN)
    }

    pub fn rho_n(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::NAN)
    }
}

pub fn spectrum(g: &LabeledHypergraph) -> Result<SpectrumSummary, SpectralError> {
    spectrum_with_limit(g, DENSE_LIMIT)
}

/// As [`spectrum`], using the dense solver only up to `dense_limit` vertices.
pub fn spectrum_with_limit(g: &LabeledHypergraph, dense_limit: usize) -> Result<SpectrumSummary, SpectralError> {
    let sg = g.to_graph()?;
    graph_spectrum(&sg, dense_limit)
}

pub(crate) fn graph_spectrum(sg: &SimpleGraph, dense_limit: usize) -> Result<SpectrumSummary, SpectralError> {
    let n = sg.n();
    let d = sg.regular_degree().ok_or(SpectralError::NotRegular)?;
    let colors = sg.bipartition();
    let bipartite = colors.is_some();
    let (eigenvalues, dense) = if n <= dense_limit {
        let mut a = DMatrix::<f64>::zeros(n, n);
        for (u, v) in sg.edges() {
            a[(u as usize, v as usize)] = 1.0;
            a[(v as usize, u as usize)] = 1.0;
        }
        let mut ev: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
        ev.sort_by(|x, y| y.total_cmp(x));
        (ev, true)
    } else {
        let (rho2, rho_n) = lanczos::extreme_pair(sg, d, colors.as_deref())?;
        (vec![d as f64, rho2, rho_n], false)
    };
    let rho2 = eigenvalues.get(1).copied().unwrap_or(0.0);
    let rho_n = eigenvalues.last().copied().unwrap_or(0.0);
    let rho = if bipartite { rho2 } else { rho2.max(-rho_n) };
    Ok(SpectrumSummary { n, d, eigenvalues, dense, bipartite, rho })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MixingMode {
    General,
    Bipartite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingResult {
    /// e(U, W), counted over ordered pairs.
    pub e_uw: u64,
    pub lhs: f64,
    pub bound: f64,
    pub ok: bool,
}

/// Compares e(U,W) with its expectation (d/n)|U||W| against
/// max(rho_2, -rho_n) sqrt(|U||W|); in bipartite mode, with U and W on
/// opposite sides, with (2d/n)|U||W| against rho_2 sqrt(|U||W|).
pub fn mixing_check(
    g: &LabeledHypergraph,
    summary: &SpectrumSummary,
    u: &[u32],
    w: &[u32],
    mode: MixingMode,
) -> Result<MixingResult, SpectralError> {
    let sg = g.to_graph()?;
    let n = sg.n();
    let u: HashSet<u32> = u.iter().copied().collect();
    let w: HashSet<u32> = w.iter().copied().collect();
    if u.iter().chain(&w).any(|&v| v as usize >= n) {
        return Err(SpectralError::Mode("vertex out of range".into()));
    }
    let d = sg.regular_degree().ok_or(SpectralError::NotRegular)? as f64;
    let (factor, rho) = match mode {
        MixingMode::General => (1.0, summary.rho2().max(-summary.rho_n())),
        MixingMode::Bipartite => {
            let colors = sg.bipartition().ok_or_else(|| SpectralError::Mode("graph is not bipartite".into()))?;
            let side = |s: &HashSet<u32>| -> Option<u8> {
                let mut it = s.iter().map(|&v| colors[v as usize]);
                let first = it.next()?;
                it.all(|c| c == first).then_some(first)
            };
            match (side(&u), side(&w)) {
                (Some(a), Some(b)) if a != b => {}
                _ if u.is_empty() || w.is_empty() => {}
                _ => return Err(SpectralError::Mode("U and W must lie on opposite sides".into())),
            }
            (2.0, summary.rho2())
        }
    };
    let e_uw = u.iter().map(|&x| sg.neighbors(x).iter().filter(|y| w.contains(y)).count() as u64).sum::<u64>();
    let (nu, nw) = (u.len() as f64, w.len() as f64);
    let lhs = (e_uw as f64 - factor * d * nu * nw / n as f64).abs();
    let bound = rho * (nu * nw).sqrt();
    Ok(MixingResult { e_uw, lhs, bound, ok: lhs <= bound + 1e-9 })
}
