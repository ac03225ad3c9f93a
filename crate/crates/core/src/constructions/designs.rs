//! Small explicit designs and the split built from an m-(r,t,1) design:
//! one complete m-graph K_t^{(m)} per block, with part V_i collecting the
//! copies of point i.

use super::{field_of_order, Construction, ConstructionError};
use crate::gf::FieldElement;
use crate::numtheory::{binomial, combinations};
use crate::structures::{LabeledHypergraph, SplitPartition};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// An m-(points, block_size, 1) design with `strength` = m.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignInstance {
    pub name: String,
    pub points: usize,
    pub block_size: usize,
    pub strength: usize,
    pub blocks: Vec<Vec<u32>>,
}

fn design_err<T>(msg: impl Into<String>) -> Result<T, ConstructionError> {
    Err(ConstructionError::Design(msg.into()))
}

impl DesignInstance {
    /// Sorts blocks and checks that every `strength`-set of points lies in
    /// exactly one block.
    pub fn new(
        name: impl Into<String>,
        points: usize,
        strength: usize,
        blocks: Vec<Vec<u32>>,
    ) -> Result<Self, ConstructionError> {
        let name = name.into();
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        let block_size = blocks.first().map_or(0, Vec::len);
        if strength == 0 || block_size < strength {
            return design_err(format!("{name}: blocks of size {block_size} cannot have strength {strength}"));
        }
        let mut seen: HashMap<Vec<u32>, u32> = HashMap::new();
        for b in &blocks {
            if b.len() != block_size {
                return design_err(format!("{name}: blocks have unequal sizes"));
            }
            if b.windows(2).any(|w| w[0] == w[1]) || b.iter().any(|&p| p as usize >= points) {
                return design_err(format!("{name}: invalid block {b:?}"));
            }
            for idx in combinations(block_size, strength) {
                let key: Vec<u32> = idx.iter().map(|&i| b[i]).collect();
                let n = seen.entry(key).or_insert(0);
                *n += 1;
                if *n > 1 {
                    return design_err(format!("{name}: some {strength}-set lies in two blocks"));
                }
            }
        }
        let expected = binomial(points as u64, strength as u64).unwrap_or(u128::MAX);
        if seen.len() as u128 != expected {
            return design_err(format!("{name}: {} of {expected} {strength}-sets covered", seen.len()));
        }
        Ok(Self { name, points, block_size, strength, blocks })
    }

    /// Blocks through each point, C(r-1, m-1) / C(t-1, m-1).
    pub fn replication(&self) -> usize {
        let m = self.strength as u64;
        let num = binomial(self.points as u64 - 1, m - 1).unwrap_or(0);
        let den = binomial(self.block_size as u64 - 1, m - 1).unwrap_or(1);
        (num / den) as usize
    }
}

fn fano() -> Result<DesignInstance, ConstructionError> {
    let blocks = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
    DesignInstance::new("fano", 7, 2, blocks.iter().map(|b| b.to_vec()).collect())
}

fn check_q(q: u64) -> Result<(), ConstructionError> {
    if q > 32 {
        return design_err(format!("q = {q} exceeds the catalog limit 32"));
    }
    Ok(())
}

fn projective_plane(q: u64) -> Result<DesignInstance, ConstructionError> {
    check_q(q)?;
    let f = field_of_order(q)?;
    let els: Vec<FieldElement> = f.elements().collect();
    // Normalized vectors: first nonzero coordinate is one.
    let mut pts: Vec<[FieldElement; 3]> = Vec::new();
    for &a in &els {
        for &b in &els {
            pts.push([FieldElement::ONE, a, b]);
        }
    }
    for &b in &els {
        pts.push([FieldElement::ZERO, FieldElement::ONE, b]);
    }
    pts.push([FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE]);
    let dot = |u: &[FieldElement; 3], v: &[FieldElement; 3]| {
        f.add(f.add(f.mul(u[0], v[0]), f.mul(u[1], v[1])), f.mul(u[2], v[2]))
    };
    let blocks = pts
        .iter()
        .map(|line| (0..pts.len() as u32).filter(|&i| dot(line, &pts[i as usize]) == FieldElement::ZERO).collect())
        .collect();
    DesignInstance::new(format!("PG(2,{q})"), pts.len(), 2, blocks)
}

fn affine_plane(q: u64) -> Result<DesignInstance, ConstructionError> {
    check_q(q)?;
    let f = field_of_order(q)?;
    let qn = f.order();
    let pt = |x: FieldElement, y: FieldElement| x.0 * qn + y.0;
    let mut blocks = Vec::new();
    for m in f.elements() {
        for b in f.elements() {
            blocks.push(f.elements().map(|x| pt(x, f.add(f.mul(m, x), b))).collect());
        }
    }
    for c in f.elements() {
        blocks.push(f.elements().map(|y| pt(c, y)).collect());
    }
    DesignInstance::new(format!("AG(2,{q})"), (qn * qn) as usize, 2, blocks)
}

fn all_subsets(r: usize, m: usize) -> Result<DesignInstance, ConstructionError> {
    if m == 0 || m > r || binomial(r as u64, m as u64).is_none_or(|b| b > 1 << 20) {
        return design_err(format!("all-{m}-subsets of {r} points is not available"));
    }
    let blocks = combinations(r, m).map(|c| c.into_iter().map(|i| i as u32).collect()).collect();
    DesignInstance::new(format!("all-{m}-subsets({r},{m})"), r, m, blocks)
}

/// Parses "a,b" inside the parentheses of `id` after `prefix`.
fn args(id: &str, prefix: &str) -> Option<Vec<usize>> {
    let inner = id.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|s| s.trim().parse().ok()).collect()
}

/// Looks up `fano`, `PG(2,q)`, `AG(2,q)`, `STS(9)` or `all-m-subsets(r,m)`
/// (ids are case-insensitive).
pub fn design_catalog(id: &str) -> Result<DesignInstance, ConstructionError> {
    let key: String = id.trim().to_ascii_lowercase().chars().filter(|c| !c.is_whitespace()).collect();
    if key == "fano" {
        return fano();
    }
    if key == "sts(9)" {
        let mut d = affine_plane(3)?;
        d.name = "STS(9)".into();
        return Ok(d);
    }
    if let Some(a) = args(&key, "pg") {
        if let [2, q] = a[..] {
            return projective_plane(q as u64);
        }
    }
    if let Some(a) = args(&key, "ag") {
        if let [2, q] = a[..] {
            return affine_plane(q as u64);
        }
    }
    if let Some(rest) = key.strip_prefix("all-") {
        if let Some((m0, tail)) = rest.split_once("-subsets") {
            if let (Ok(m0), Some(a)) = (m0.parse::<usize>(), args(tail, "")) {
                if let [r, m] = a[..] {
                    if m == m0 {
                        return all_subsets(r, m);
                    }
                }
            }
        }
    }
    design_err(format!("unknown design id {id:?}"))
}

/// Vertices (p, j) for p in block B_j, labeled "p,j"; each block spans a
/// complete m-graph, and part i is {(i, j) : i in B_j}.
pub fn build_design_split(design: &DesignInstance) -> Result<Construction, ConstructionError> {
    let m = design.strength;
    let mut labels = Vec::new();
    let mut parts = vec![Vec::new(); design.points];
    let mut edges = Vec::new();
    for (j, block) in design.blocks.iter().enumerate() {
        let base = labels.len() as u32;
        for &p in block {
            parts[p as usize].push(labels.len() as u32);
            labels.push(format!("{p},{j}"));
        }
        for c in combinations(block.len(), m) {
            edges.push(c.into_iter().map(|i| base + i as u32).collect());
        }
    }
    let graph = LabeledHypergraph::new(m, labels, edges)?;
    let partition = SplitPartition::tight(parts)?;
    let notes = vec![format!(
        "{}: {} disjoint copies of K_{}^({m}), replication number {}",
        design.name,
        design.blocks.len(),
        design.block_size,
        design.replication()
    )];
    Ok(Construction { graph, partition, intra_part_edges_removed: 0, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{max_component_size, verify_rk};

    #[test]
    fn catalog_parameters() {
        let d = design_catalog("fano").unwrap();
        assert_eq!((d.points, d.blocks.len(), d.block_size), (7, 7, 3));
        let d = design_catalog("AG(2,3)").unwrap();
        assert_eq!((d.points, d.blocks.len(), d.block_size), (9, 12, 3));
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let d = design_catalog(&format!("PG(2,{q})")).unwrap();
            let n = (q * q + q + 1) as usize;
            assert_eq!((d.points, d.blocks.len(), d.block_size), (n, n, q as usize + 1));
            let d = design_catalog(&format!("ag(2, {q})")).unwrap();
            assert_eq!((d.points, d.block_size, d.replication()), ((q * q) as usize, q as usize, q as usize + 1));
        }
        let d = design_catalog("all-3-subsets(5,3)").unwrap();
        assert_eq!((d.blocks.len(), d.strength), (10, 3));
        assert_eq!(design_catalog("STS(9)").unwrap().blocks.len(), 12);
        for bad in ["PG(2,6)", "PG(2,37)", "all-3-subsets(5,2)", "nope"] {
            assert!(design_catalog(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn validation_rejects_non_designs() {
        assert!(DesignInstance::new("x", 4, 2, vec![vec![0, 1, 2], vec![1, 2, 3]]).is_err());
        assert!(DesignInstance::new("x", 4, 2, vec![vec![0, 1, 2]]).is_err());
        assert!(DesignInstance::new("x", 3, 2, vec![vec![0, 1, 2]]).is_ok());
    }

    #[test]
    fn splits_certify() {
        for (id, r, k, n) in [("fano", 7, 3, 21), ("AG(2,3)", 9, 4, 36), ("all-3-subsets(5,3)", 5, 6, 30)] {
            let d = design_catalog(id).unwrap();
            let c = build_design_split(&d).unwrap();
            assert_eq!(c.graph.num_vertices(), n);
            let rep = verify_rk(&c.graph, &c.partition).unwrap();
            assert!(rep.completeness_ok && rep.independence_ok, "{id}");
            assert_eq!((rep.r, rep.k_effective), (r, k));
            assert_eq!(max_component_size(&c.graph), d.block_size);
        }
    }
}
