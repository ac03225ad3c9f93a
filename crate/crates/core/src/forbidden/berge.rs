//! Berge cycles: core vertices v_1..v_l with distinct hyperedges
//! e_i ⊇ {v_i, v_{i+1}} (indices mod l).

use super::cycle::rooted_cycles;
use crate::structures::{LabeledHypergraph, SimpleGraph};
use rayon::prelude::*;
use std::collections::HashMap;

/// Core vertices and the indices of the covering edges (edge i covers core
/// vertices i and i+1).
pub fn contains_berge_cycle(h: &LabeledHypergraph, l: usize) -> Option<(Vec<u32>, Vec<u32>)> {
    if l < 2 {
        return None;
    }
    let mut cover: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
    for (i, e) in h.edges().iter().enumerate() {
        for a in 0..e.len() {
            for b in a + 1..e.len() {
                cover.entry((e[a], e[b])).or_default().push(i as u32);
            }
        }
    }
    if l == 2 {
        return cover
            .iter()
            .filter(|(_, es)| es.len() >= 2)
            .min_by_key(|(&pair, _)| pair)
            .map(|(&(a, b), es)| (vec![a, b], vec![es[0], es[1]]));
    }
    let shadow = SimpleGraph::from_edges(h.num_vertices(), cover.keys().copied());
    (0..shadow.n() as u32).into_par_iter().find_map_first(|root| {
        let mut found = None;
        rooted_cycles(&shadow, root, l, |core| {
            let options: Vec<&[u32]> = (0..l)
                .map(|i| {
                    let (a, b) = (core[i], core[(i + 1) % l]);
                    cover[&(a.min(b), a.max(b))].as_slice()
                })
                .collect();
            match distinct_representatives(&options) {
                Some(edges) => {
                    found = Some((core.to_vec(), edges));
                    false
                }
                None => true,
            }
        });
        found
    })
}

/// A system of distinct representatives by augmenting paths.
fn distinct_representatives(options: &[&[u32]]) -> Option<Vec<u32>> {
    let mut owner: HashMap<u32, usize> = HashMap::new();
    let mut pick = vec![u32::MAX; options.len()];
    for i in 0..options.len() {
        let mut seen = Vec::new();
        if !augment(i, options, &mut owner, &mut pick, &mut seen) {
            return None;
        }
    }
    Some(pick)
}

fn augment(
    i: usize,
    options: &[&[u32]],
    owner: &mut HashMap<u32, usize>,
    pick: &mut [u32],
    seen: &mut Vec<u32>,
) -> bool {
    for &e in options[i] {
        if seen.contains(&e) {
            continue;
        }
        seen.push(e);
        let free = match owner.get(&e) {
            None => true,
            Some(&j) => augment(j, options, owner, pick, seen),
        };
        if free {
            owner.insert(e, i);
            pick[i] = e;
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyper(n: usize, edges: Vec<Vec<u32>>) -> LabeledHypergraph {
        LabeledHypergraph::new(3, (0..n).map(|i| i.to_string()).collect(), edges).unwrap()
    }

    #[test]
    fn berge_two_cycle_is_a_shared_pair() {
        let h = hyper(5, vec![vec![1, 2, 3], vec![1, 2, 4]]);
        assert_eq!(contains_berge_cycle(&h, 2), Some((vec![1, 2], vec![0, 1])));
        let single = hyper(3, vec![vec![0, 1, 2]]);
        assert_eq!(contains_berge_cycle(&single, 2), None);
    }

    #[test]
    fn one_edge_is_not_a_triangle() {
        let single = hyper(3, vec![vec![0, 1, 2]]);
        assert_eq!(contains_berge_cycle(&single, 3), None);
        // Two edges still cannot cover three pairs distinctly.
        let two = hyper(4, vec![vec![0, 1, 2], vec![0, 2, 3]]);
        assert_eq!(contains_berge_cycle(&two, 3), None);
        let three = hyper(6, vec![vec![0, 1, 3], vec![1, 2, 4], vec![2, 0, 5]]);
        let (core, edges) = contains_berge_cycle(&three, 3).unwrap();
        assert_eq!(core, vec![0, 1, 2]);
        assert_eq!(edges.len(), 3);
    }

    #[test]
    fn loose_four_cycle() {
        let h = hyper(8, vec![vec![0, 1, 4], vec![1, 2, 5], vec![2, 3, 6], vec![3, 0, 7]]);
        assert!(contains_berge_cycle(&h, 4).is_some());
        assert_eq!(contains_berge_cycle(&h, 3), None);
    }
}
