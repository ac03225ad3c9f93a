//! Property B_c: a colouring in which every edge carries exactly `c[i]`
//! vertices of colour `i`.

use super::{LabeledHypergraph, StructureError};
use serde::Serialize;

/// Largest vertex count searched exhaustively.
pub const PROPERTY_B_MAX_VERTICES: usize = 24;
const NODE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PropertyB {
    Holds { coloring: Vec<u32> },
    Fails,
    Undecided { reason: String },
}

impl PropertyB {
    pub fn holds(&self) -> Option<bool> {
        match self {
            PropertyB::Holds { .. } => Some(true),
            PropertyB::Fails => Some(false),
            PropertyB::Undecided { .. } => None,
        }
    }
}

pub fn property_b_check(h: &LabeledHypergraph, c: &[usize]) -> Result<PropertyB, StructureError> {
    if c.is_empty() || c.contains(&0) || c.iter().sum::<usize>() != h.m() {
        return Err(StructureError::Composition(c.to_vec()));
    }
    let n = h.num_vertices();
    if n > PROPERTY_B_MAX_VERTICES {
        return Ok(PropertyB::Undecided {
            reason: format!("{n} vertices exceed the exhaustive limit of {PROPERTY_B_MAX_VERTICES}"),
        });
    }
    let mut search = Search {
        c,
        incidence: h.incidence(),
        counts: vec![vec![0; c.len()]; h.num_edges()],
        color: vec![u32::MAX; n],
        nodes: 0,
    };
    Ok(match search.run(0) {
        Some(true) => PropertyB::Holds { coloring: search.color },
        Some(false) => PropertyB::Fails,
        None => PropertyB::Undecided { reason: format!("node budget {NODE_BUDGET} exhausted") },
    })
}

struct Search<'a> {
    c: &'a [usize],
    incidence: Vec<Vec<u32>>,
    counts: Vec<Vec<usize>>,
    color: Vec<u32>,
    nodes: u64,
}

impl Search<'_> {
    /// `None` when the budget runs out.
    fn run(&mut self, v: usize) -> Option<bool> {
        if v == self.color.len() {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return None;
        }
        // Every edge has m vertices and colour counts capped by c, so once all
        // vertices are placed each edge's profile equals c exactly.
        for col in 0..self.c.len() {
            let fits = self.incidence[v].iter().all(|&e| self.counts[e as usize][col] < self.c[col]);
            if !fits {
                continue;
            }
            for &e in &self.incidence[v] {
                self.counts[e as usize][col] += 1;
            }
            self.color[v] = col as u32;
            let r = self.run(v + 1);
            for &e in &self.incidence[v] {
                self.counts[e as usize][col] -= 1;
            }
            match r {
                Some(false) => {}
                other => return other,
            }
            if self.incidence[v].is_empty() {
                break;
            }
        }
        self.color[v] = u32::MAX;
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let c4 = LabeledHypergraph::from_pairs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(property_b_check(&c4, &[1, 1]).unwrap().holds(), Some(true));
        let c3 = LabeledHypergraph::from_pairs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(property_b_check(&c3, &[1, 1]).unwrap(), PropertyB::Fails);
        let e = LabeledHypergraph::new(3, vec!["a".into(), "b".into(), "c".into()], vec![vec![0, 1, 2]]).unwrap();
        match property_b_check(&e, &[2, 1]).unwrap() {
            PropertyB::Holds { coloring } => {
                assert_eq!(coloring.iter().filter(|&&x| x == 0).count(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(property_b_check(&e, &[1, 1]).is_err());
    }

    #[test]
    fn too_large_is_undecided() {
        let g = LabeledHypergraph::from_pairs(30, [(0, 1)]).unwrap();
        assert!(matches!(property_b_check(&g, &[1, 1]).unwrap(), PropertyB::Undecided { .. }));
    }
}
