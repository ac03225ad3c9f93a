//! Brute-force subgraph embedding for small patterns.

use crate::structures::SimpleGraph;

/// An injective map from pattern vertices `0..n` into `g` carrying every
/// pattern edge to an edge (not necessarily induced). `Err` when the node
/// budget runs out.
pub fn embed_subgraph(
    g: &SimpleGraph,
    n: usize,
    edges: &[(u32, u32)],
    budget: u64,
) -> Result<Option<Vec<u32>>, String> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a as usize].push(b as usize);
        adj[b as usize].push(a as usize);
    }
    // Order: repeatedly take the unplaced vertex with most placed neighbours,
    // then highest degree, then least index.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = adj[v].iter().filter(|&&w| placed[w]).count();
                (back, adj[v].len(), usize::MAX - v)
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let mut image = vec![u32::MAX; n];
    let mut nodes = 0u64;
    let mut state = State { g, adj: &adj, order: &order, image: &mut image, nodes: &mut nodes, budget };
    match state.place(0) {
        Some(true) => Ok(Some(image)),
        Some(false) => Ok(None),
        None => Err(format!("embedding search exceeded {budget} nodes")),
    }
}

struct State<'a> {
    g: &'a SimpleGraph,
    adj: &'a [Vec<usize>],
    order: &'a [usize],
    image: &'a mut Vec<u32>,
    nodes: &'a mut u64,
    budget: u64,
}

impl State<'_> {
    fn place(&mut self, depth: usize) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        *self.nodes += 1;
        if *self.nodes > self.budget {
            return None;
        }
        let v = self.order[depth];
        let anchor = self.adj[v].iter().copied().find(|&w| self.image[w] != u32::MAX);
        let candidates: Vec<u32> = match anchor {
            Some(w) => self.g.neighbors(self.image[w]).to_vec(),
            None => (0..self.g.n() as u32).collect(),
        };
        for x in candidates {
            if self.g.degree(x) < self.adj[v].len() || self.image.contains(&x) {
                continue;
            }
            let consistent =
                self.adj[v].iter().all(|&w| self.image[w] == u32::MAX || self.g.has_edge(x, self.image[w]));
            if !consistent {
                continue;
            }
            self.image[v] = x;
            match self.place(depth + 1) {
                Some(false) => {}
                other => return other,
            }
            self.image[v] = u32::MAX;
        }
        Some(false)
    }
}
