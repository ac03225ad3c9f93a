use crate::structures::SimpleGraph;
use rayon::prelude::*;

/// Finds `s` vertices (returned first, sorted) with `t` common neighbours
/// (the least `t` of them), or `None`. Requires `s <= t` only for the usual
/// meaning; any positive pair is searched as given.
pub fn contains_kst(g: &SimpleGraph, s: usize, t: usize) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = g.n();
    if s == 0 || t == 0 {
        return None;
    }
    if s == 1 {
        return (0..n as u32).find(|&v| g.degree(v) >= t).map(|v| (vec![v], g.neighbors(v)[..t].to_vec()));
    }
    (0..n as u32).into_par_iter().find_map_first(|u| {
        if g.degree(u) < t {
            return None;
        }
        // Codegree of u with every later vertex.
        let mut count = vec![0u32; n];
        let mut partners = Vec::new();
        for &w in g.neighbors(u) {
            for &v in g.neighbors(w) {
                if v > u {
                    count[v as usize] += 1;
                    if count[v as usize] as usize == t {
                        partners.push(v);
                    }
                }
            }
        }
        partners.sort_unstable();
        if partners.len() < s - 1 {
            return None;
        }
        let mut chosen = vec![u];
        extend(g, &partners, 0, g.neighbors(u).to_vec(), &mut chosen, s, t)
    })
}

/// Depth-first choice of the remaining hubs among `partners[from..]`,
/// keeping the running common neighbourhood.
fn extend(
    g: &SimpleGraph,
    partners: &[u32],
    from: usize,
    common: Vec<u32>,
    chosen: &mut Vec<u32>,
    s: usize,
    t: usize,
) -> Option<(Vec<u32>, Vec<u32>)> {
    if chosen.len() == s {
        return Some((chosen.clone(), common[..t].to_vec()));
    }
    let need = s - chosen.len();
    for i in from..partners.len() {
        if partners.len() - i < need {
            break;
        }
        let v = partners[i];
        let next: Vec<u32> = common.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        if next.len() < t {
            continue;
        }
        chosen.push(v);
        if let Some(found) = extend(g, partners, i + 1, next, chosen, s, t) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_bipartite(a: u32, b: u32) -> SimpleGraph {
        SimpleGraph::from_edges((a + b) as usize, (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))))
    }

    #[test]
    fn finds_and_rejects() {
        let k22 = complete_bipartite(2, 2);
        assert_eq!(contains_kst(&k22, 2, 2), Some((vec![0, 1], vec![2, 3])));
        let star = complete_bipartite(1, 5);
        assert_eq!(contains_kst(&star, 2, 2), None);
        assert!(contains_kst(&star, 1, 5).is_some());
        let k33 = complete_bipartite(3, 3);
        assert_eq!(contains_kst(&k33, 3, 3), Some((vec![0, 1, 2], vec![3, 4, 5])));
        assert_eq!(contains_kst(&k33, 3, 4), None);
        assert_eq!(contains_kst(&k33, 2, 4), None);
    }
}
