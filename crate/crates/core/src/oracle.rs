//! Exhaustive computation of f_m(r, H) for tiny r and k.
//!
//! Parts are r groups of k vertices (vertex part*k + j). Every m-set of parts
//! receives exactly one edge: extra edges never help, since deleting edges
//! keeps a graph H-free. Within a part, vertex j may be used only after
//! vertex j-1, which removes the within-part relabelings. Containment is
//! decided by brute-force embedding, independent of the fast deciders, and
//! certificates are re-checked by those deciders.

use crate::forbidden::{detect, embed_subgraph, ForbiddenError, ForbiddenPattern};
use crate::numtheory::combinations;
use crate::structures::{verify_rk, LabeledHypergraph, SimpleGraph, SplitPartition, StructureError};
use thiserror::Error;

pub const MAX_R: usize = 6;
pub const MAX_K: usize = 3;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("outside the oracle envelope: {0}")]
    Envelope(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Pattern(#[from] ForbiddenError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleQuery {
    pub r: usize,
    pub m: usize,
    pub k_max: usize,
    /// The forbidden family; graph patterns for m = 2, Berge cycles for m = 3.
    pub patterns: Vec<ForbiddenPattern>,
    /// Search-node limit per value of k.
    pub budget: u64,
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub graph: LabeledHypergraph,
    pub partition: SplitPartition,
}

#[derive(Debug, Clone)]
pub enum OracleOutcome {
    /// f = value; every smaller k was refuted exhaustively.
    Exact { value: usize, certificate: Certificate, nodes: u64 },
    /// No H-free (r,k)-hypergraph for any k <= k_max.
    AboveMax { k_max: usize, nodes: u64 },
    /// The search for `k` ran out of budget; smaller k were refuted.
    Unknown { k: usize, reason: String },
}

impl OracleOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            OracleOutcome::Exact { value, .. } => Some(*value),
            _ => None,
        }
    }
}

enum Verdict {
    Contains,
    Free,
    Budget(String),
}

const EMBED_BUDGET: u64 = 1 << 24;

/// Brute-force Berge cycle of length l: distinct core vertices v_0..v_{l-1}
/// and distinct edges e_i containing v_i and v_{i+1}.
fn has_berge_cycle(edges: &[Vec<u32>], n: usize, l: usize) -> bool {
    fn extend(edges: &[Vec<u32>], l: usize, core: &mut Vec<u32>, used: &mut Vec<bool>) -> bool {
        let last = *core.last().expect("nonempty");
        for (i, e) in edges.iter().enumerate() {
            if used[i] || !e.contains(&last) {
                continue;
            }
            if core.len() == l {
                if e.contains(&core[0]) {
                    return true;
                }
                continue;
            }
            used[i] = true;
            for &v in e {
                if !core.contains(&v) {
                    core.push(v);
                    if extend(edges, l, core, used) {
                        return true;
                    }
                    core.pop();
                }
            }
            used[i] = false;
        }
        false
    }
    (0..n as u32).any(|v0| extend(edges, l, &mut vec![v0], &mut vec![false; edges.len()]))
}

fn verdict(n: usize, m: usize, edges: &[Vec<u32>], patterns: &[ForbiddenPattern]) -> Verdict {
    for p in patterns {
        let hit = if m == 2 {
            let (hn, hedges) = p.pattern_graph().expect("checked graph pattern");
            let g = SimpleGraph::from_edges(n, edges.iter().map(|e| (e[0], e[1])));
            match embed_subgraph(&g, hn, &hedges, EMBED_BUDGET) {
                Ok(found) => found.is_some(),
                Err(reason) => return Verdict::Budget(reason),
            }
        } else {
            let ForbiddenPattern::BergeCycle { l } = *p else { unreachable!("checked Berge pattern") };
            has_berge_cycle(edges, n, l)
        };
        if hit {
            return Verdict::Contains;
        }
    }
    Verdict::Free
}

struct Search<'a> {
    k: usize,
    m: usize,
    n: usize,
    tuples: Vec<Vec<usize>>,
    patterns: &'a [ForbiddenPattern],
    /// Vertices of each part used so far.
    used: Vec<usize>,
    edges: Vec<Vec<u32>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<bool, String> {
        if depth == self.tuples.len() {
            return Ok(true);
        }
        let tuple = self.tuples[depth].clone();
        let mut pick = vec![0usize; self.m];
        loop {
            if pick.iter().zip(&tuple).all(|(&j, &part)| j <= self.used[part]) {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(format!("node budget {} exhausted", self.budget));
                }
                let saved: Vec<usize> = tuple.iter().map(|&p| self.used[p]).collect();
                let mut e: Vec<u32> = tuple.iter().zip(&pick).map(|(&p, &j)| (p * self.k + j) as u32).collect();
                e.sort_unstable();
                for (&p, &j) in tuple.iter().zip(&pick) {
                    self.used[p] = self.used[p].max(j + 1);
                }
                self.edges.push(e);
                let ok = match verdict(self.n, self.m, &self.edges, self.patterns) {
                    Verdict::Contains => false,
                    Verdict::Free => self.run(depth + 1)?,
                    Verdict::Budget(reason) => return Err(reason),
                };
                if ok {
                    return Ok(true);
                }
                self.edges.pop();
                for (&p, s) in tuple.iter().zip(saved) {
                    self.used[p] = s;
                }
            }
            // Next pick in lexicographic order.
            let mut i = self.m;
            loop {
                if i == 0 {
                    return Ok(false);
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < self.k {
                    break;
                }
                pick[i] = 0;
            }
        }
    }
}

fn check_query(q: &OracleQuery) -> Result<(), OracleError> {
    let bad = |msg: String| Err(OracleError::Envelope(msg));
    if !(2..=3).contains(&q.m) {
        return bad(format!("m = {} not in {{2, 3}}", q.m));
    }
    if q.r > MAX_R || q.r < q.m {
        return bad(format!("r = {} not in [{}, {MAX_R}]", q.r, q.m));
    }
    if q.k_max == 0 || q.k_max > MAX_K {
        return bad(format!("k_max = {} not in [1, {MAX_K}]", q.k_max));
    }
    if q.patterns.is_empty() {
        return bad("no forbidden pattern".into());
    }
    for p in &q.patterns {
        let ok = if q.m == 2 { p.pattern_graph().is_some() } else { matches!(p, ForbiddenPattern::BergeCycle { .. }) };
        if !ok {
            return bad(format!("pattern {p} is not supported for m = {}", q.m));
        }
    }
    Ok(())
}

/// Least k <= k_max admitting an H-free m-uniform (r,k)-hypergraph.
pub fn exact_f(q: &OracleQuery) -> Result<OracleOutcome, OracleError> {
    check_query(q)?;
    let mut nodes = 0;
    for k in 1..=q.k_max {
        let mut s = Search {
            k,
            m: q.m,
            n: q.r * k,
            tuples: combinations(q.r, q.m).collect(),
            patterns: &q.patterns,
            used: vec![0; q.r],
            edges: Vec::new(),
            nodes: 0,
            budget: q.budget,
        };
        let found = s.run(0);
        nodes += s.nodes;
        match found {
            Err(reason) => return Ok(OracleOutcome::Unknown { k, reason }),
            Ok(false) => continue,
            Ok(true) => {
                let labels = (0..q.r).flat_map(|i| (0..k).map(move |j| format!("{i},{j}"))).collect();
                let graph = LabeledHypergraph::new(q.m, labels, s.edges)?;
                let parts = (0..q.r).map(|i| (0..k).map(|j| (i * k + j) as u32).collect()).collect();
                let partition = SplitPartition::new(k, parts)?;
                let rep = verify_rk(&graph, &partition)?;
                assert!(rep.completeness_ok && rep.independence_ok, "oracle certificate failed verification");
                for p in &q.patterns {
                    assert!(detect(&graph, p)?.is_free(), "oracle certificate contains {p}");
                }
                return Ok(OracleOutcome::Exact { value: k, certificate: Certificate { graph, partition }, nodes });
            }
        }
    }
    Ok(OracleOutcome::AboveMax { k_max: q.k_max, nodes })
}
