//! θ_{K,l} detection by bucketing length-l paths on their endpoint pair.
//!
//! For each root u, every path of exactly l edges from u to a later vertex v
//! is collected and grouped by v. A group of at least K paths is checked for
//! K pairwise internally disjoint members by exact backtracking, after a
//! max-flow upper bound on disjoint u–v paths in the union of large groups.

use super::cycle::contains_cycle;
use super::Search;
use crate::structures::SimpleGraph;
use rayon::prelude::*;
use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

const FLOW_PREFILTER_ABOVE: usize = 64;

/// Witness vertices in pattern order: u, v, then the internal vertices path
/// by path. `Err` when the node budget runs out.
pub fn contains_theta(g: &SimpleGraph, k: usize, l: usize, budget: u64) -> Result<Option<Vec<u32>>, String> {
    if k < 2 || l < 2 {
        return Ok(None);
    }
    if k == 2 {
        // θ_{2,l} is the cycle of length 2l: terminals c_0 and c_l.
        return Ok(contains_cycle(g, 2 * l).map(|c| {
            let mut out = vec![c[0], c[l]];
            out.extend(&c[1..l]);
            out.extend(c[l + 1..].iter().rev());
            out
        }));
    }
    let nodes = AtomicU64::new(0);
    let result =
        (0..g.n() as u32).into_par_iter().find_map_first(|u| match theta_at_root(g, u, k, l, &nodes, budget) {
            Ok(Some(w)) => Some(Search::Found(w)),
            Ok(None) => None,
            Err(()) => Some(Search::Budget),
        });
    match result {
        Some(Search::Found(w)) => Ok(Some(w)),
        Some(Search::Budget) => Err(format!("theta search exceeded {budget} nodes")),
        None => Ok(None),
    }
}

fn theta_at_root(
    g: &SimpleGraph,
    u: u32,
    k: usize,
    l: usize,
    nodes: &AtomicU64,
    budget: u64,
) -> Result<Option<Vec<u32>>, ()> {
    let inner = l - 1;
    // Flat records: endpoint followed by the internal vertices.
    let mut records: Vec<u32> = Vec::new();
    let mut path = vec![u];
    collect_paths(g, l, &mut path, &mut records);
    let stride = inner + 1;
    let count = records.len() / stride;
    if count < k {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by_key(|&i| (records[i * stride], i));

    let mut start = 0;
    while start < order.len() {
        let v = records[order[start] * stride];
        let mut end = start;
        while end < order.len() && records[order[end] * stride] == v {
            end += 1;
        }
        if end - start >= k {
            let bucket: Vec<&[u32]> =
                order[start..end].iter().map(|&i| &records[i * stride + 1..(i + 1) * stride]).collect();
            if bucket.len() <= FLOW_PREFILTER_ABOVE || disjoint_path_bound(&bucket, u, v, k) >= k {
                let mut chosen = Vec::with_capacity(k);
                if pack(&bucket, 0, k, &mut chosen, nodes, budget)? {
                    let mut out = vec![u, v];
                    for &i in &chosen {
                        out.extend_from_slice(bucket[i]);
                    }
                    return Ok(Some(out));
                }
            }
        }
        start = end;
    }
    Ok(None)
}

/// Appends every simple path of `l` edges from `path[0]` to a vertex greater
/// than it, as (endpoint, internal vertices...).
fn collect_paths(g: &SimpleGraph, l: usize, path: &mut Vec<u32>, out: &mut Vec<u32>) {
    let last = *path.last().unwrap();
    let root = path[0];
    if path.len() == l {
        for &v in g.neighbors(last) {
            if v > root && !path.contains(&v) {
                out.push(v);
                out.extend_from_slice(&path[1..]);
            }
        }
        return;
    }
    for &w in g.neighbors(last) {
        if !path.contains(&w) {
            path.push(w);
            collect_paths(g, l, path, out);
            path.pop();
        }
    }
}

/// Chooses `k` paths with pairwise disjoint interiors by backtracking.
fn pack(
    bucket: &[&[u32]],
    from: usize,
    k: usize,
    chosen: &mut Vec<usize>,
    nodes: &AtomicU64,
    budget: u64,
) -> Result<bool, ()> {
    if chosen.len() == k {
        return Ok(true);
    }
    if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
        return Err(());
    }
    for i in from..bucket.len() {
        if bucket.len() - i < k - chosen.len() {
            break;
        }
        let p = bucket[i];
        if chosen.iter().any(|&j| bucket[j].iter().any(|x| p.contains(x))) {
            continue;
        }
        chosen.push(i);
        if pack(bucket, i + 1, k, chosen, nodes, budget)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// Number of internally vertex-disjoint u–v paths in the union of the
/// bucket's paths (of any length), capped at `cap`. An upper bound on how
/// many bucket paths can be packed.
fn disjoint_path_bound(bucket: &[&[u32]], u: u32, v: u32, cap: usize) -> usize {
    let mut index: HashMap<u32, usize> = HashMap::new();
    let id = |x: u32, index: &mut HashMap<u32, usize>| {
        let next = index.len();
        *index.entry(x).or_insert(next)
    };
    let su = id(u, &mut index);
    let sv = id(v, &mut index);
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for p in bucket {
        let mut prev = su;
        for &x in p.iter() {
            let xi = id(x, &mut index);
            arcs.push((prev, xi));
            prev = xi;
        }
        arcs.push((prev, sv));
    }
    // Split every vertex x into x_in = 2x, x_out = 2x + 1 with capacity 1;
    // path edges are undirected with ample capacity.
    let nv = index.len();
    let mut flow = Flow::new(2 * nv);
    for x in 0..nv {
        let c = if x == su || x == sv { cap as i32 } else { 1 };
        flow.add(2 * x, 2 * x + 1, c);
    }
    arcs.sort_unstable();
    arcs.dedup();
    for &(a, b) in &arcs {
        flow.add(2 * a + 1, 2 * b, cap as i32);
        flow.add(2 * b + 1, 2 * a, cap as i32);
    }
    flow.max_flow(2 * su + 1, 2 * sv, cap)
}

struct Flow {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i32>,
}

impl Flow {
    fn new(n: usize) -> Self {
        Flow { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn add(&mut self, a: usize, b: usize, c: i32) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut total = 0;
        while total < limit {
            let mut prev = vec![usize::MAX; self.head.len()];
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; self.head.len()];
            seen[s] = true;
            while let Some(x) = queue.pop_front() {
                for &e in &self.head[x] {
                    let y = self.to[e];
                    if self.cap[e] > 0 && !seen[y] {
                        seen[y] = true;
                        prev[y] = e;
                        queue.push_back(y);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut y = t;
            while y != s {
                let e = prev[y];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                y = self.to[e ^ 1];
            }
            total += 1;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta_graph(k: u32, l: u32) -> SimpleGraph {
        let mut edges = Vec::new();
        let mut next = 2;
        for _ in 0..k {
            let mut prev = 0;
            for _ in 0..l - 1 {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, 1));
        }
        SimpleGraph::from_edges(next as usize, edges)
    }

    #[test]
    fn theta_contains_itself_only() {
        let t = theta_graph(3, 4);
        let w = contains_theta(&t, 3, 4, u64::MAX).unwrap().unwrap();
        assert_eq!(w.len(), 11);
        assert_eq!(contains_theta(&t, 4, 4, u64::MAX).unwrap(), None);
        assert_eq!(contains_theta(&t, 3, 3, u64::MAX).unwrap(), None);
    }

    #[test]
    fn c8_is_theta_2_4_not_3_4() {
        let c8 = SimpleGraph::from_edges(8, (0..8).map(|i| (i, (i + 1) % 8)));
        let w = contains_theta(&c8, 2, 4, u64::MAX).unwrap().unwrap();
        assert_eq!(w[..2], [0, 4]);
        assert_eq!(contains_theta(&c8, 3, 4, u64::MAX).unwrap(), None);
    }

    #[test]
    fn flow_bound_counts_disjoint_routes() {
        // Two routes share vertex 7; a third is separate.
        let bucket: Vec<&[u32]> = vec![&[7, 2], &[7, 3], &[4, 5]];
        assert_eq!(disjoint_path_bound(&bucket, 0, 1, 5), 2);
    }

    #[test]
    fn budget_is_reported() {
        let t = theta_graph(3, 4);
        assert!(contains_theta(&t, 3, 4, 0).is_err());
    }
}
