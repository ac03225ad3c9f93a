use crate::structures::SimpleGraph;
use rayon::prelude::*;
use std::collections::VecDeque;

/// A cycle with exactly `len` vertices, listed from its least vertex, or
/// `None` if the graph has none.
pub fn contains_cycle(g: &SimpleGraph, len: usize) -> Option<Vec<u32>> {
    if len < 3 {
        return None;
    }
    (0..g.n() as u32).into_par_iter().find_map_first(|root| {
        let mut found = None;
        rooted_cycles(g, root, len, |c| {
            found = Some(c.to_vec());
            false
        });
        found
    })
}

/// Calls `f` on every cycle of length `len` whose least vertex is `root`,
/// each listed once as `root, c1, ..., c_{len-1}` with `c1 < c_{len-1}`.
/// Stops early, returning `false`, when `f` returns `false`.
pub(crate) fn rooted_cycles(g: &SimpleGraph, root: u32, len: usize, mut f: impl FnMut(&[u32]) -> bool) -> bool {
    // Distances back to the root inside the subgraph on vertices >= root.
    let reach = len / 2;
    let mut dist = vec![u32::MAX; g.n()];
    dist[root as usize] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[x as usize];
        if dx as usize == reach {
            continue;
        }
        for &y in g.neighbors(x) {
            if y > root && dist[y as usize] == u32::MAX {
                dist[y as usize] = dx + 1;
                queue.push_back(y);
            }
        }
    }
    let mut path = Vec::with_capacity(len);
    path.push(root);
    walk(g, &dist, len, &mut path, &mut f)
}

fn walk(g: &SimpleGraph, dist: &[u32], len: usize, path: &mut Vec<u32>, f: &mut impl FnMut(&[u32]) -> bool) -> bool {
    let root = path[0];
    let last = *path.last().unwrap();
    if path.len() == len {
        if path[1] < path[len - 1] && g.has_edge(last, root) {
            return f(path);
        }
        return true;
    }
    // After stepping to w the path has path.len() edges; len - path.len()
    // edges remain to close the cycle.
    let remaining = (len - path.len()) as u32;
    for &w in g.neighbors(last) {
        if w <= root || dist[w as usize] > remaining || path.contains(&w) {
            continue;
        }
        if path.len() == len - 1 && w < path[1] {
            continue;
        }
        path.push(w);
        let go_on = walk(g, dist, len, path, f);
        path.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &SimpleGraph) -> Option<usize> {
    let n = g.n();
    (0..n as u32)
        .into_par_iter()
        .filter_map(|s| {
            let mut dist = vec![u32::MAX; n];
            let mut parent = vec![u32::MAX; n];
            dist[s as usize] = 0;
            let mut queue = VecDeque::from([s]);
            let mut best: Option<usize> = None;
            while let Some(x) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[x as usize] as usize + 1 >= b {
                        break;
                    }
                }
                for &y in g.neighbors(x) {
                    if dist[y as usize] == u32::MAX {
                        dist[y as usize] = dist[x as usize] + 1;
                        parent[y as usize] = x;
                        queue.push_back(y);
                    } else if parent[x as usize] != y {
                        let c = (dist[x as usize] + dist[y as usize] + 1) as usize;
                        best = Some(best.map_or(c, |b| b.min(c)));
                    }
                }
            }
            best
        })
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_graph(n: u32) -> SimpleGraph {
        SimpleGraph::from_edges(n as usize, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn cycles_found_only_at_their_length() {
        let c6 = cycle_graph(6);
        assert_eq!(contains_cycle(&c6, 6), Some(vec![0, 1, 2, 3, 4, 5]));
        for l in [3, 4, 5, 7] {
            assert_eq!(contains_cycle(&c6, l), None);
        }
        assert_eq!(girth(&c6), Some(6));
    }

    #[test]
    fn trees_have_no_cycles() {
        let tree = SimpleGraph::from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]);
        for l in 3..8 {
            assert_eq!(contains_cycle(&tree, l), None);
        }
        assert_eq!(girth(&tree), None);
    }

    #[test]
    fn counts_each_cycle_once() {
        // K_4 has 4 triangles and 3 four-cycles.
        let k4 = SimpleGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        for (len, expected) in [(3, 4), (4, 3)] {
            let mut count = 0;
            for root in 0..4 {
                rooted_cycles(&k4, root, len, |_| {
                    count += 1;
                    true
                });
            }
            assert_eq!(count, expected);
        }
        assert_eq!(girth(&k4), Some(3));
    }
}
