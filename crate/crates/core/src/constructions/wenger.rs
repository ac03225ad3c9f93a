//! Wenger graphs W_M(q): (p_1..p_{M+1}) ~ (l_1..l_{M+1}) iff
//! l_{j+1} + p_{j+1} = l_j p_1 for 1 <= j <= M.

use super::{
    field_of_order, params_err, seeded_order, strip_intra_part_edges, tuple_index, tuple_label, Construction,
    ConstructionError,
};
use crate::gf::{Field, FieldElement};
use crate::structures::{LabeledHypergraph, SplitPartition};

/// Coordinate tuples of length `len` in mixed-radix order.
fn tuples(f: &Field, len: usize) -> Vec<Vec<FieldElement>> {
    let q = f.order() as u64;
    (0..q.pow(len as u32))
        .map(|mut code| {
            let mut t = vec![FieldElement::ZERO; len];
            for slot in t.iter_mut().rev() {
                *slot = FieldElement((code % q) as u32);
                code /= q;
            }
            t
        })
        .collect()
}

/// Vertices `0..q^{M+1}` are points (P side), the rest lines (L side), both
/// in mixed-radix order of their coordinates.
pub fn build_wenger(m: u32, q: u64) -> Result<LabeledHypergraph, ConstructionError> {
    if m == 0 {
        return params_err("Wenger graphs need M >= 1");
    }
    let f = field_of_order(q)?;
    let len = m as usize + 1;
    let side = q.checked_pow(len as u32).filter(|&s| s <= 1 << 24);
    let Some(side) = side else {
        return params_err(format!("W_{m}({q}) is too large"));
    };
    let all = tuples(&f, len);
    let mut labels: Vec<String> = all.iter().map(|t| tuple_label(Some("P"), t)).collect();
    labels.extend(all.iter().map(|t| tuple_label(Some("L"), t)));
    let mut edges = Vec::with_capacity((side * q) as usize);
    let mut l = vec![FieldElement::ZERO; len];
    for (pi, p) in all.iter().enumerate() {
        for l1 in f.elements() {
            l[0] = l1;
            for j in 0..m as usize {
                l[j + 1] = f.sub(f.mul(l[j], p[0]), p[j + 1]);
            }
            let li = side + tuple_index(&l, q);
            edges.push(vec![pi as u32, li as u32]);
        }
    }
    Ok(LabeledHypergraph::new(2, labels, edges)?)
}

type Parts = Vec<Vec<u32>>;

/// The point parts and line parts of the partition for even `M`, each in
/// lexicographic order of its fixed coordinates. Points fix the odd
/// coordinates p_1, p_3, ..; lines fix l_1 and the even coordinates l_2, l_4, ...
pub fn wenger_half_parts(m: u32, q: u64) -> Result<(Parts, Parts), ConstructionError> {
    if m == 0 || !m.is_multiple_of(2) {
        return params_err(format!("the Wenger partition needs even M, got {m}"));
    }
    let len = m as usize + 1;
    let side = q.pow(len as u32);
    // 0-based coordinate positions that index a part.
    let p_fixed: Vec<usize> = (0..len).step_by(2).collect();
    let l_fixed: Vec<usize> = std::iter::once(0).chain((1..len).step_by(2)).collect();
    let group = |fixed: &[usize], offset: u64| -> Vec<Vec<u32>> {
        let nparts = q.pow(fixed.len() as u32) as usize;
        let mut parts = vec![Vec::new(); nparts];
        for code in 0..side {
            let mut digits = vec![0u64; len];
            let mut c = code;
            for d in digits.iter_mut().rev() {
                *d = c % q;
                c /= q;
            }
            let key = fixed.iter().fold(0u64, |acc, &i| acc * q + digits[i]);
            parts[key as usize].push((offset + code) as u32);
        }
        parts
    };
    Ok((group(&p_fixed, 0), group(&l_fixed, side)))
}

/// W_M(q) for M in {2, 4} split into q^{M/2+1} merged parts of size
/// 2q^{M/2}: the i-th point part is joined with a line part (lexicographic
/// pairing, or a seeded permutation of the line parts). Exactly one edge
/// joins each point part to each line part.
pub fn partition_wenger(m: u32, q: u64, seed: Option<u64>) -> Result<Construction, ConstructionError> {
    if m != 2 && m != 4 {
        return params_err(format!("the Wenger partition is defined for M in {{2, 4}}, got {m}"));
    }
    let raw = build_wenger(m, q)?;
    let (p_parts, l_parts) = wenger_half_parts(m, q)?;
    let order = seeded_order(l_parts.len(), seed);
    let parts: Vec<Vec<u32>> = p_parts
        .into_iter()
        .zip(order)
        .map(|(mut part, j)| {
            part.extend(&l_parts[j]);
            part
        })
        .collect();
    let partition = SplitPartition::tight(parts)?;
    let (graph, removed) = strip_intra_part_edges(&raw, &partition)?;
    Ok(Construction {
        graph,
        partition,
        intra_part_edges_removed: removed,
        notes: vec![format!("W_{m}({q}) with {removed} edges inside merged parts removed")],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::verify_rk;

    #[test]
    fn sizes_and_regularity() {
        let g = build_wenger(2, 3).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (54, 81));
        assert_eq!(g.to_graph().unwrap().regular_degree(), Some(3));
        assert_eq!(g.label(0), "P:0,0,0");
        assert_eq!(g.label(27), "L:0,0,0");
        let g = build_wenger(2, 2).unwrap();
        assert_eq!(g.num_vertices(), 16);
        assert_eq!(g.to_graph().unwrap().regular_degree(), Some(2));
    }

    #[test]
    fn adjacency_equations_hold() {
        let f = Field::with_order(4).unwrap();
        let g = build_wenger(2, 4).unwrap();
        let coords = |label: &str| -> Vec<FieldElement> {
            label[2..].split(',').map(|x| FieldElement(x.parse().unwrap())).collect()
        };
        for e in g.edges() {
            let p = coords(g.label(e[0]));
            let l = coords(g.label(e[1]));
            for j in 0..2 {
                assert_eq!(f.add(l[j + 1], p[j + 1]), f.mul(l[j], p[0]));
            }
        }
    }

    #[test]
    fn one_edge_between_half_parts() {
        for (m, q) in [(2, 3), (2, 4), (2, 5), (4, 3)] {
            let g = build_wenger(m, q).unwrap();
            let (pp, lp) = wenger_half_parts(m, q).unwrap();
            let side = q.pow(m + 1) as usize;
            let mut p_of = vec![0usize; side];
            for (i, part) in pp.iter().enumerate() {
                for &v in part {
                    p_of[v as usize] = i;
                }
            }
            let mut l_of = vec![0usize; side];
            for (j, part) in lp.iter().enumerate() {
                for &v in part {
                    l_of[v as usize - side] = j;
                }
            }
            let mut count = vec![0u32; pp.len() * lp.len()];
            for e in g.edges() {
                count[p_of[e[0] as usize] * lp.len() + l_of[e[1] as usize - side]] += 1;
            }
            assert!(count.iter().all(|&c| c == 1), "M={m} q={q}");
        }
    }

    #[test]
    fn partitions_certify() {
        let c = partition_wenger(2, 3, None).unwrap();
        let rep = verify_rk(&c.graph, &c.partition).unwrap();
        assert!(rep.completeness_ok && rep.independence_ok);
        assert_eq!((rep.r, rep.k_effective), (9, 6));
        assert_eq!(c.intra_part_edges_removed, 9);
        let c = partition_wenger(2, 2, Some(3)).unwrap();
        let rep = verify_rk(&c.graph, &c.partition).unwrap();
        assert!(rep.completeness_ok && rep.independence_ok);
        assert_eq!((rep.r, rep.k_effective), (4, 4));
        assert!(partition_wenger(3, 3, None).is_err());
    }
}
