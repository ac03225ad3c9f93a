use super::StructureError;
use std::collections::{HashSet, VecDeque};

/// An m-uniform hypergraph over string-labelled vertices.
///
/// Edges are sorted vertex-index lists, kept in lexicographic order without
/// duplicates, so equality and serialization are canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledHypergraph {
    m: usize,
    labels: Vec<String>,
    edges: Vec<Vec<u32>>,
}

impl LabeledHypergraph {
    pub fn new(m: usize, labels: Vec<String>, edges: Vec<Vec<u32>>) -> Result<Self, StructureError> {
        if m < 2 {
            return Err(StructureError::Uniformity(m));
        }
        let n = labels.len();
        {
            let mut seen = HashSet::with_capacity(n);
            for l in &labels {
                if !seen.insert(l.as_str()) {
                    return Err(StructureError::InvalidEdge {
                        edge: vec![],
                        reason: format!("duplicate vertex label {l:?}"),
                    });
                }
            }
        }
        let mut edges = edges;
        for e in edges.iter_mut() {
            e.sort_unstable();
            if e.len() != m {
                return Err(StructureError::InvalidEdge { edge: e.clone(), reason: format!("expected {m} vertices") });
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(StructureError::InvalidEdge { edge: e.clone(), reason: "repeated vertex".into() });
            }
            if e.last().is_some_and(|&v| v as usize >= n) {
                return Err(StructureError::InvalidEdge {
                    edge: e.clone(),
                    reason: format!("vertex out of range (n = {n})"),
                });
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(LabeledHypergraph { m, labels, edges })
    }

    /// Graph (m = 2) from labelled vertices and vertex pairs.
    pub fn graph(labels: Vec<String>, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, StructureError> {
        Self::new(2, labels, pairs.into_iter().map(|(u, v)| vec![u, v]).collect())
    }

    /// Graph on vertices labelled `0..n`.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, StructureError> {
        Self::graph((0..n).map(|i| i.to_string()).collect(), pairs)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    /// `e` need not be sorted.
    pub fn contains_edge(&self, e: &[u32]) -> bool {
        let mut key = e.to_vec();
        key.sort_unstable();
        self.edges.binary_search(&key).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.labels.len()];
        for e in &self.edges {
            for &v in e {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<u32>> {
        let mut inc = vec![Vec::new(); self.labels.len()];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v as usize].push(i as u32);
            }
        }
        inc
    }

    /// A copy with extra vertices (appended, in order) and extra edges.
    pub fn extended(&self, new_labels: Vec<String>, new_edges: Vec<Vec<u32>>) -> Result<Self, StructureError> {
        let mut labels = self.labels.clone();
        labels.extend(new_labels);
        let mut edges = self.edges.clone();
        edges.extend(new_edges);
        Self::new(self.m, labels, edges)
    }

    /// A copy keeping only the edges for which `keep` holds.
    pub fn filter_edges(&self, mut keep: impl FnMut(&[u32]) -> bool) -> Self {
        LabeledHypergraph {
            m: self.m,
            labels: self.labels.clone(),
            edges: self.edges.iter().filter(|e| keep(e)).cloned().collect(),
        }
    }

    /// Sub-hypergraph induced on `keep` (listed in the desired new order).
    /// Returns the new graph and the old-to-new index map.
    pub fn induced(&self, keep: &[u32]) -> (Self, Vec<Option<u32>>) {
        let mut map = vec![None; self.labels.len()];
        for (i, &v) in keep.iter().enumerate() {
            map[v as usize] = Some(i as u32);
        }
        let labels = keep.iter().map(|&v| self.labels[v as usize].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|e| e.iter().map(|&v| map[v as usize]).collect::<Option<Vec<u32>>>())
            .collect();
        let g = Self::new(self.m, labels, edges).expect("induced subgraph of a valid hypergraph");
        (g, map)
    }

    pub fn to_graph(&self) -> Result<SimpleGraph, StructureError> {
        if self.m != 2 {
            return Err(StructureError::NotAGraph(self.m));
        }
        Ok(SimpleGraph::from_edges(self.labels.len(), self.edges.iter().map(|e| (e[0], e[1]))))
    }
}

/// Compressed adjacency of a simple graph with sorted neighbour lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    offsets: Vec<usize>,
    nbrs: Vec<u32>,
}

impl SimpleGraph {
    /// Loops are dropped and parallel edges merged.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (u, v) in edges {
            if u != v {
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut nbrs = Vec::new();
        offsets.push(0);
        for mut list in adj {
            list.sort_unstable();
            list.dedup();
            nbrs.extend(list);
            offsets.push(nbrs.len());
        }
        SimpleGraph { offsets, nbrs }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.nbrs.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.nbrs[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n() as u32).flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.n() == 0 { 0 } else { self.degree(0) };
        (0..self.n() as u32).all(|v| self.degree(v) == d).then_some(d)
    }

    /// A proper 2-colouring (colour 0 on the least vertex of each component),
    /// or `None` if the graph has an odd cycle.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.n();
        let mut color = vec![u8::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            queue.push_back(s as u32);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if color[v as usize] == u8::MAX {
                        color[v as usize] = 1 - color[u as usize];
                        queue.push_back(v);
                    } else if color[v as usize] == color[u as usize] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// Vertices at distance 1 or 2 from any vertex of `set`, excluding `set`.
    pub fn second_neighborhood(&self, set: &[u32]) -> HashSet<u32> {
        let mut out = HashSet::new();
        for &u in set {
            for &v in self.neighbors(u) {
                out.insert(v);
                for &w in self.neighbors(v) {
                    out.insert(w);
                }
            }
        }
        for u in set {
            out.remove(u);
        }
        out
    }

    /// BFS distances from `s`, `u32::MAX` when unreachable.
    pub fn distances_from(&self, s: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n()];
        dist[s as usize] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = dist[u as usize] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}
