//! Exact containment tests for the forbidden configurations.
//!
//! Every "free" verdict comes from an exhaustive search. Searches that run
//! over root vertices in parallel keep the witness of the least root, so
//! results do not depend on the thread count.

mod berge;
mod cycle;
mod embed;
mod kst;
mod theta;

pub use berge::contains_berge_cycle;
pub use cycle::{contains_cycle, girth};
pub use embed::embed_subgraph;
pub use kst::contains_kst;
pub use theta::contains_theta;

use crate::structures::{LabeledHypergraph, SimpleGraph, Witness};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Default cap on search nodes for the searches that can blow up.
pub const DEFAULT_NODE_BUDGET: u64 = 1 << 34;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForbiddenError {
    #[error("cannot parse pattern {0:?}; expected K_{{s,t}}, C_{{L}}, theta_{{K,l}}, bergeC_l or explicit:u-v,...")]
    Parse(String),
    #[error("invalid pattern: {0}")]
    Invalid(String),
    #[error("pattern {pattern} needs a graph, got a {m}-uniform hypergraph")]
    NeedsGraph { pattern: String, m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ForbiddenPattern {
    CompleteBipartite {
        s: usize,
        t: usize,
    },
    Cycle {
        len: usize,
    },
    Theta {
        k: usize,
        l: usize,
    },
    BergeCycle {
        l: usize,
    },
    /// A graph on vertices `0..n`.
    Explicit {
        n: usize,
        edges: Vec<(u32, u32)>,
    },
}

impl ForbiddenPattern {
    pub fn complete_bipartite(s: usize, t: usize) -> Result<Self, ForbiddenError> {
        if s == 0 || t == 0 {
            return Err(ForbiddenError::Invalid("K_{s,t} needs s, t >= 1".into()));
        }
        Ok(ForbiddenPattern::CompleteBipartite { s: s.min(t), t: s.max(t) })
    }

    pub fn cycle(len: usize) -> Result<Self, ForbiddenError> {
        if len < 3 {
            return Err(ForbiddenError::Invalid(format!("cycle length {len} < 3")));
        }
        Ok(ForbiddenPattern::Cycle { len })
    }

    pub fn theta(k: usize, l: usize) -> Result<Self, ForbiddenError> {
        if k < 2 || l < 2 {
            return Err(ForbiddenError::Invalid(format!("theta_{{{k},{l}}} needs K >= 2 and l >= 2")));
        }
        Ok(ForbiddenPattern::Theta { k, l })
    }

    pub fn berge_cycle(l: usize) -> Result<Self, ForbiddenError> {
        if l < 2 {
            return Err(ForbiddenError::Invalid(format!("Berge cycle length {l} < 2")));
        }
        Ok(ForbiddenPattern::BergeCycle { l })
    }

    pub fn explicit(n: usize, edges: Vec<(u32, u32)>) -> Result<Self, ForbiddenError> {
        if edges.iter().any(|&(a, b)| a == b || a as usize >= n || b as usize >= n) {
            return Err(ForbiddenError::Invalid("explicit pattern edge out of range or a loop".into()));
        }
        let mut edges: Vec<(u32, u32)> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        edges.dedup();
        Ok(ForbiddenPattern::Explicit { n, edges })
    }

    /// The pattern as a graph on `0..n`, for graph patterns. Witness vertex
    /// lists are images of these pattern vertices in order.
    ///
    /// K_{s,t}: left side `0..s`, right side `s..s+t`. Cycles: consecutive.
    /// Theta: terminals 0 and 1, then the internal vertices path by path.
    pub fn pattern_graph(&self) -> Option<(usize, Vec<(u32, u32)>)> {
        match *self {
            ForbiddenPattern::CompleteBipartite { s, t } => {
                let edges = (0..s as u32).flat_map(|a| (s as u32..(s + t) as u32).map(move |b| (a, b))).collect();
                Some((s + t, edges))
            }
            ForbiddenPattern::Cycle { len } => {
                Some((len, (0..len as u32).map(|i| (i, (i + 1) % len as u32)).collect()))
            }
            ForbiddenPattern::Theta { k, l } => {
                let mut edges = Vec::new();
                let mut next = 2u32;
                for _ in 0..k {
                    let mut prev = 0u32;
                    for _ in 0..l - 1 {
                        edges.push((prev, next));
                        prev = next;
                        next += 1;
                    }
                    edges.push((prev, 1));
                }
                Some((next as usize, edges))
            }
            ForbiddenPattern::BergeCycle { .. } => None,
            ForbiddenPattern::Explicit { n, ref edges } => Some((n, edges.clone())),
        }
    }
}

impl fmt::Display for ForbiddenPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForbiddenPattern::CompleteBipartite { s, t } => write!(f, "K_{{{s},{t}}}"),
            ForbiddenPattern::Cycle { len } => write!(f, "C_{{{len}}}"),
            ForbiddenPattern::Theta { k, l } => write!(f, "theta_{{{k},{l}}}"),
            ForbiddenPattern::BergeCycle { l } => write!(f, "bergeC_{l}"),
            ForbiddenPattern::Explicit { edges, .. } => {
                let parts: Vec<String> = edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                write!(f, "explicit:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for ForbiddenPattern {
    type Err = ForbiddenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || ForbiddenError::Parse(s.to_owned());
        let ints = |body: &str| -> Result<Vec<usize>, ForbiddenError> {
            let body = body.strip_prefix('{').and_then(|b| b.strip_suffix('}')).unwrap_or(body);
            body.split(',').map(|x| x.parse::<usize>().map_err(|_| err())).collect()
        };
        if let Some(body) = compact.strip_prefix("explicit:") {
            let mut edges = Vec::new();
            let mut n = 0;
            for item in body.split(',').filter(|x| !x.is_empty()) {
                let (a, b) = item.split_once('-').ok_or_else(err)?;
                let a: u32 = a.parse().map_err(|_| err())?;
                let b: u32 = b.parse().map_err(|_| err())?;
                n = n.max(a.max(b) as usize + 1);
                edges.push((a, b));
            }
            return ForbiddenPattern::explicit(n, edges);
        }
        if let Some(body) = compact.strip_prefix("bergeC_") {
            return match ints(body)?.as_slice() {
                [l] => ForbiddenPattern::berge_cycle(*l),
                _ => Err(err()),
            };
        }
        if let Some(body) = compact.strip_prefix("theta_") {
            return match ints(body)?.as_slice() {
                [k, l] => ForbiddenPattern::theta(*k, *l),
                _ => Err(err()),
            };
        }
        if let Some(body) = compact.strip_prefix("K_") {
            return match ints(body)?.as_slice() {
                [s, t] => ForbiddenPattern::complete_bipartite(*s, *t),
                _ => Err(err()),
            };
        }
        if let Some(body) = compact.strip_prefix("C_") {
            return match ints(body)?.as_slice() {
                [len] => ForbiddenPattern::cycle(*len),
                _ => Err(err()),
            };
        }
        Err(err())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Detection {
    Found { witness: Witness },
    Free,
    BudgetExceeded { reason: String },
}

impl Detection {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Detection::Found { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Detection::Free)
    }
}

/// Outcome of a budgeted search over one root or bucket.
pub(crate) enum Search<T> {
    Found(T),
    Budget,
}

/// Decides whether `g` contains `pattern`, with the default node budget.
pub fn detect(g: &LabeledHypergraph, pattern: &ForbiddenPattern) -> Result<Detection, ForbiddenError> {
    detect_with_budget(g, pattern, DEFAULT_NODE_BUDGET)
}

pub fn detect_with_budget(
    g: &LabeledHypergraph,
    pattern: &ForbiddenPattern,
    budget: u64,
) -> Result<Detection, ForbiddenError> {
    let name = pattern.to_string();
    let graph = || -> Result<SimpleGraph, ForbiddenError> {
        g.to_graph().map_err(|_| ForbiddenError::NeedsGraph { pattern: name.clone(), m: g.m() })
    };
    let found_graph = |vertices: Vec<u32>| -> Detection {
        let (_, pedges) = pattern.pattern_graph().expect("graph pattern");
        let edges = pedges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (vertices[a as usize], vertices[b as usize]);
                vec![x.min(y), x.max(y)]
            })
            .collect();
        Detection::Found { witness: Witness { pattern: name.clone(), vertices, edges } }
    };
    let detection = match *pattern {
        ForbiddenPattern::CompleteBipartite { s, t } => match contains_kst(&graph()?, s, t) {
            Some((left, right)) => found_graph(left.into_iter().chain(right).collect()),
            None => Detection::Free,
        },
        ForbiddenPattern::Cycle { len } => match contains_cycle(&graph()?, len) {
            Some(c) => found_graph(c),
            None => Detection::Free,
        },
        ForbiddenPattern::Theta { k, l } => match contains_theta(&graph()?, k, l, budget) {
            Ok(Some(v)) => found_graph(v),
            Ok(None) => Detection::Free,
            Err(reason) => Detection::BudgetExceeded { reason },
        },
        ForbiddenPattern::BergeCycle { l } => match contains_berge_cycle(g, l) {
            Some((core, edges)) => Detection::Found {
                witness: Witness {
                    pattern: name.clone(),
                    vertices: core,
                    edges: edges.into_iter().map(|e| g.edges()[e as usize].clone()).collect(),
                },
            },
            None => Detection::Free,
        },
        ForbiddenPattern::Explicit { n, ref edges } => match embed_subgraph(&graph()?, n, edges, budget) {
            Ok(Some(v)) => found_graph(v),
            Ok(None) => Detection::Free,
            Err(reason) => Detection::BudgetExceeded { reason },
        },
    };
    if let Some(w) = detection.witness() {
        assert!(check_witness(g, pattern, w), "internal error: invalid witness {w:?} for {pattern}");
    }
    Ok(detection)
}

/// Re-checks a witness edge by edge against `g`.
pub fn check_witness(g: &LabeledHypergraph, pattern: &ForbiddenPattern, w: &Witness) -> bool {
    let mut distinct = w.vertices.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != w.vertices.len() || w.vertices.iter().any(|&v| v as usize >= g.num_vertices()) {
        return false;
    }
    match pattern {
        ForbiddenPattern::BergeCycle { l } => {
            let l = *l;
            let mut es = w.edges.clone();
            es.sort();
            es.dedup();
            w.vertices.len() == l
                && w.edges.len() == l
                && es.len() == l
                && w.edges.iter().enumerate().all(|(i, e)| {
                    g.contains_edge(e) && e.contains(&w.vertices[i]) && e.contains(&w.vertices[(i + 1) % l])
                })
        }
        _ => {
            let Some((n, pedges)) = pattern.pattern_graph() else { return false };
            g.m() == 2
                && w.vertices.len() == n
                && pedges.iter().all(|&(a, b)| g.contains_edge(&[w.vertices[a as usize], w.vertices[b as usize]]))
        }
    }
}
