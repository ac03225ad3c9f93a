//! Certification that a partitioned hypergraph is an (r,k)-hypergraph.

use super::{LabeledHypergraph, SplitPartition, StructureError, Witness};
use crate::numtheory::combinations;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::time::Instant;

/// At most this many missing tuples are listed; `missing_count` is exact.
pub const MISSING_LIST_LIMIT: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub m: usize,
    pub r: usize,
    pub k_declared: usize,
    pub k_effective: usize,
    pub completeness_ok: bool,
    pub missing_count: u64,
    pub missing_tuples: Vec<Vec<u32>>,
    pub independence_ok: bool,
    pub intra_part_edges: u64,
    pub uncovered_vertices: usize,
    pub forbidden_witness: Option<Witness>,
    pub wall_time_ms: u64,
}

pub fn verify_rk(g: &LabeledHypergraph, p: &SplitPartition) -> Result<VerificationReport, StructureError> {
    let start = Instant::now();
    let n = g.num_vertices();
    let m = g.m();
    let r = p.r();
    if let Some((i, part)) = p.parts.iter().enumerate().find(|(_, part)| part.len() > p.k) {
        return Err(StructureError::PartTooLarge { part: i, size: part.len(), k: p.k });
    }
    let owner = p.assignment(n)?;
    let uncovered_vertices = owner.iter().filter(|o| o.is_none()).count();

    let mut intra_part_edges = 0u64;
    let mut missing = Vec::new();
    let mut missing_count = 0u64;
    let mut tuple = Vec::with_capacity(m);
    let mut classify = |e: &[u32], tuple: &mut Vec<u32>| -> Option<()> {
        tuple.clear();
        for &v in e {
            tuple.push(owner[v as usize]?);
        }
        tuple.sort_unstable();
        if tuple.windows(2).any(|w| w[0] == w[1]) {
            intra_part_edges += 1;
            return None;
        }
        Some(())
    };

    if m == 2 {
        let mut hit = vec![false; r * r];
        for e in g.edges() {
            if classify(e, &mut tuple).is_some() {
                hit[tuple[0] as usize * r + tuple[1] as usize] = true;
            }
        }
        for i in 0..r {
            for j in i + 1..r {
                if !hit[i * r + j] {
                    missing_count += 1;
                    if missing.len() < MISSING_LIST_LIMIT {
                        missing.push(vec![i as u32, j as u32]);
                    }
                }
            }
        }
    } else {
        let mut hit: HashSet<Vec<u32>> = HashSet::new();
        for e in g.edges() {
            if classify(e, &mut tuple).is_some() {
                hit.insert(tuple.clone());
            }
        }
        for t in combinations(r, m) {
            let key: Vec<u32> = t.iter().map(|&x| x as u32).collect();
            if !hit.contains(&key) {
                missing_count += 1;
                if missing.len() < MISSING_LIST_LIMIT {
                    missing.push(key);
                }
            }
        }
    }

    Ok(VerificationReport {
        m,
        r,
        k_declared: p.k,
        k_effective: p.max_part_size(),
        completeness_ok: missing_count == 0,
        missing_count,
        missing_tuples: missing,
        independence_ok: intra_part_edges == 0,
        intra_part_edges,
        uncovered_vertices,
        forbidden_witness: None,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

/// Connected components (vertices sharing an edge are connected), each
/// sorted, ordered by least vertex.
pub fn components(g: &LabeledHypergraph) -> Vec<Vec<u32>> {
    let n = g.num_vertices();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for e in g.edges() {
        for &v in &e[1..] {
            let a = find(&mut parent, e[0]);
            let b = find(&mut parent, v);
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut out: Vec<Vec<u32>> = Vec::new();
    for v in 0..n as u32 {
        let root = find(&mut parent, v) as usize;
        if index[root] == usize::MAX {
            index[root] = out.len();
            out.push(Vec::new());
        }
        out[index[root]].push(v);
    }
    out
}

pub fn max_component_size(g: &LabeledHypergraph) -> usize {
    components(g).iter().map(Vec::len).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_3_1() {
        let g = LabeledHypergraph::from_pairs(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let p = SplitPartition::new(1, vec![vec![0], vec![1], vec![2]]).unwrap();
        let rep = verify_rk(&g, &p).unwrap();
        assert!(rep.completeness_ok && rep.independence_ok);
        assert_eq!((rep.r, rep.k_effective), (3, 1));
    }

    #[test]
    fn missing_pair_reported() {
        let g = LabeledHypergraph::from_pairs(2, []).unwrap();
        let p = SplitPartition::new(1, vec![vec![0], vec![1]]).unwrap();
        let rep = verify_rk(&g, &p).unwrap();
        assert!(!rep.completeness_ok);
        assert_eq!(rep.missing_tuples, vec![vec![0, 1]]);
    }

    #[test]
    fn intra_part_edges_break_independence() {
        let g = LabeledHypergraph::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
        let p = SplitPartition::new(2, vec![vec![0, 1], vec![2]]).unwrap();
        let rep = verify_rk(&g, &p).unwrap();
        assert!(rep.completeness_ok);
        assert!(!rep.independence_ok);
        assert_eq!(rep.intra_part_edges, 1);
    }

    #[test]
    fn three_uniform_completeness() {
        let labels: Vec<String> = (0..4).map(|i| i.to_string()).collect();
        let g = LabeledHypergraph::new(3, labels, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3]]).unwrap();
        let p = SplitPartition::tight(vec![vec![0], vec![1], vec![2], vec![3]]).unwrap();
        let rep = verify_rk(&g, &p).unwrap();
        assert_eq!(rep.missing_tuples, vec![vec![1, 2, 3]]);
    }

    #[test]
    fn overlapping_parts_rejected() {
        let g = LabeledHypergraph::from_pairs(2, [(0, 1)]).unwrap();
        let p = SplitPartition::new(2, vec![vec![0, 1], vec![1]]).unwrap();
        assert!(verify_rk(&g, &p).is_err());
    }

    #[test]
    fn component_sizes() {
        let pairs = (0..7u32).flat_map(|i| [(3 * i, 3 * i + 1), (3 * i + 1, 3 * i + 2), (3 * i, 3 * i + 2)]);
        let g = LabeledHypergraph::from_pairs(21, pairs).unwrap();
        assert_eq!(components(&g).len(), 7);
        assert_eq!(max_component_size(&g), 3);
        let empty = LabeledHypergraph::from_pairs(4, []).unwrap();
        assert_eq!(components(&empty), vec![vec![0], vec![1], vec![2], vec![3]]);
        let chain = LabeledHypergraph::from_pairs(5, [(3, 4), (0, 4), (1, 2)]).unwrap();
        assert_eq!(components(&chain), vec![vec![0, 3, 4], vec![1, 2]]);
    }
}
