use super::{params_err, Construction, ConstructionError};
use crate::numtheory::combinations;
use crate::structures::{LabeledHypergraph, SplitPartition};

/// r parts of size k = c.len(); vertex i*k + j is the color-j vertex of part
/// i, labeled "i,j". For each m-set of parts the edge takes colors in
/// nondecreasing order, so the lowest colors go to the lowest parts and
/// color j appears exactly c[j] times.
pub fn build_property_b(m: usize, c: &[usize], r: usize) -> Result<Construction, ConstructionError> {
    if c.is_empty() || c.contains(&0) || c.iter().sum::<usize>() != m {
        return params_err(format!("{c:?} is not a composition of {m}"));
    }
    if m < 2 || r < m {
        return params_err(format!("need r >= m >= 2, got r = {r}, m = {m}"));
    }
    let k = c.len();
    let colors: Vec<usize> = c.iter().enumerate().flat_map(|(j, &n)| std::iter::repeat_n(j, n)).collect();
    let labels = (0..r).flat_map(|i| (0..k).map(move |j| format!("{i},{j}"))).collect();
    let edges =
        combinations(r, m).map(|set| set.iter().zip(&colors).map(|(&i, &j)| (i * k + j) as u32).collect()).collect();
    let graph = LabeledHypergraph::new(m, labels, edges)?;
    let parts = (0..r).map(|i| (0..k).map(|j| (i * k + j) as u32).collect()).collect();
    let partition = SplitPartition::tight(parts)?;
    Ok(Construction {
        graph,
        partition,
        intra_part_edges_removed: 0,
        notes: vec![format!("every edge has color profile {c:?}")],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{property_b_check, verify_rk, PropertyB};

    #[test]
    fn profiles_are_exact() {
        for (m, c, r) in [(2, vec![1, 1], 4), (3, vec![2, 1], 4), (3, vec![1, 1, 1], 3), (3, vec![1, 1, 1], 6)] {
            let con = build_property_b(m, &c, r).unwrap();
            let rep = verify_rk(&con.graph, &con.partition).unwrap();
            assert!(rep.completeness_ok && rep.independence_ok);
            assert_eq!((rep.r, rep.k_effective), (r, c.len()));
            for e in con.graph.edges() {
                let mut profile = vec![0; c.len()];
                for &v in e {
                    profile[v as usize % c.len()] += 1;
                }
                assert_eq!(profile, c);
            }
        }
    }

    #[test]
    fn color_classes_witness_property_b() {
        let con = build_property_b(3, &[2, 1], 5).unwrap();
        assert!(matches!(property_b_check(&con.graph, &[2, 1]).unwrap(), PropertyB::Holds { .. }));
        let g = build_property_b(2, &[1, 1], 4).unwrap().graph;
        assert!(g.to_graph().unwrap().bipartition().is_some());
    }

    #[test]
    fn rejects_bad_compositions() {
        assert!(build_property_b(3, &[1, 1], 4).is_err());
        assert!(build_property_b(3, &[3, 0], 4).is_err());
        assert!(build_property_b(3, &[2, 1], 2).is_err());
    }
}
