//! Quotients of the projective norm graph.
//!
//! B_d(q,t) has sides F_{q^{t-1}} x (F_q^*/K_d); (x, a)_P ~ (y, b)_L iff
//! N(x + y) lies in the coset ab K_d. Coset labels are additive (discrete
//! logs mod (q-1)/d), so the condition reads label(N(x+y)) = a + b.

use super::{params_err, seeded_order, strip_intra_part_edges, Construction, ConstructionError};
use crate::forbidden::contains_kst;
use crate::gf::{coset_reps, FieldElement, FieldTower, SubgroupHandle};
use crate::numtheory::prime_power;
use crate::structures::{LabeledHypergraph, SimpleGraph, SplitPartition};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// Local patch graphs above this many vertices are not checked exactly.
const GREEDY_CHECK_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatchStrategy {
    /// One fresh edge on two fresh vertices per deficient pair.
    Matching,
    /// Reuse patch vertices while an exact check keeps the patch free.
    GreedyReuse,
}

impl FromStr for PatchStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "matching" => Ok(PatchStrategy::Matching),
            "greedy-reuse" | "greedy_reuse" => Ok(PatchStrategy::GreedyReuse),
            other => Err(format!("unknown patch strategy {other:?} (matching | greedy-reuse)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormQuotientParams {
    pub q: u64,
    pub t: u32,
    pub d: u32,
    pub h: u32,
    pub a: u32,
    pub patch: PatchStrategy,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PatchStats {
    pub requested: PatchStrategy,
    pub used: PatchStrategy,
    pub fallback_warning: Option<String>,
    /// The forbidden K_{s,t} the patch keeps out.
    pub forbidden: String,
    pub deficient_pairs: usize,
    pub patch_vertices: usize,
    pub patch_edges: usize,
    pub max_part_overhead: usize,
    pub k_base: usize,
    pub k_effective: usize,
    pub r: usize,
    pub intra_part_edges_removed: usize,
    /// False when q is not an even power of an odd prime, the case in which
    /// freeness is proved.
    pub freeness_claimed: bool,
}

struct Quotient {
    tower: FieldTower,
    k: SubgroupHandle,
    /// |F_{q^{t-1}}|.
    e: u32,
    /// Number of coset labels, (q-1)/d.
    labels: u32,
    graph: LabeledHypergraph,
}

impl Quotient {
    fn p_vertex(&self, x: u32, c: u32) -> u32 {
        x * self.labels + c
    }

    fn l_vertex(&self, y: u32, c: u32) -> u32 {
        self.e * self.labels + y * self.labels + c
    }
}

fn quotient(q: u64, t: u32, d: u32) -> Result<Quotient, ConstructionError> {
    let Some((p, n)) = prime_power(q) else {
        return params_err(format!("q = {q} is not a prime power"));
    };
    if p == 2 {
        return params_err(format!("q = {q} must be odd"));
    }
    if t < 2 {
        return params_err(format!("t = {t} must be at least 2"));
    }
    let tower = FieldTower::new(p, n, t - 1)?;
    let k = tower.base().subgroup(d)?;
    let e = tower.ext().order();
    let labels = k.index;
    let mut vertex_labels = Vec::with_capacity(2 * (e * labels) as usize);
    for side in ["P", "L"] {
        for x in 0..e {
            for c in 0..labels {
                vertex_labels.push(format!("{side}:{x},c{c}"));
            }
        }
    }
    let base = tower.base();
    let ext = tower.ext();
    let p_vertex = |x: u32, c: u32| x * labels + c;
    let l_vertex = |y: u32, c: u32| e * labels + y * labels + c;
    let mut edges = Vec::new();
    for x in ext.elements() {
        for y in ext.elements() {
            let s = ext.add(x, y);
            if s.is_zero() {
                continue;
            }
            let c = base.coset_of(tower.norm(s), &k)?.0;
            for a in 0..labels {
                let b = (c + labels - a) % labels;
                edges.push(vec![p_vertex(x.0, a), l_vertex(y.0, b)]);
            }
        }
    }
    let graph = LabeledHypergraph::new(2, vertex_labels, edges)?;
    Ok(Quotient { tower, k, e, labels, graph })
}

/// The graph B_d(q,t). Vertices `(x, c)` on the P side come first, indexed
/// `x * (q-1)/d + c` with `x` the element encoding; the L side follows.
pub fn build_norm_quotient(q: u64, t: u32, d: u32) -> Result<LabeledHypergraph, ConstructionError> {
    Ok(quotient(q, t, d)?.graph)
}

fn is_even_power_of_odd_prime(q: u64) -> bool {
    matches!(prime_power(q), Some((p, n)) if p != 2 && n % 2 == 0)
}

/// The patched, merged partition of B_d(q,t) with r = q^{t-1} a parts.
pub fn partition_norm_quotient(params: &NormQuotientParams) -> Result<(Construction, PatchStats), ConstructionError> {
    let &NormQuotientParams { q, t, d, h, a, patch, seed } = params;
    let qs = quotient(q, t, d)?;
    if h == 0 || a == 0 || (h as u64) * (a as u64) != qs.labels as u64 {
        return params_err(format!("need h * a = (q-1)/d = {}, got h = {h}, a = {a}", qs.labels));
    }
    if a > h {
        return params_err(format!("need a <= h, got a = {a}, h = {h}"));
    }
    let (hs, as_) = coset_reps(&qs.k, h)?;
    let ext = qs.tower.ext();
    let e = qs.e;

    // Half parts, in lexicographic order of their indices.
    let p_parts: Vec<(u32, Vec<u32>)> = (0..e)
        .flat_map(|x| hs.iter().map(move |&h1| (x, h1)))
        .map(|(x, h1)| (x, as_.iter().map(|&al| qs.p_vertex(x, qs.k.combine(al, h1).0)).collect()))
        .collect();
    let l_parts: Vec<(u32, Vec<u32>)> = (0..e)
        .flat_map(|y| as_.iter().map(move |&a2| (y, a2)))
        .map(|(y, a2)| (y, hs.iter().map(|&eta| qs.l_vertex(y, qs.k.combine(a2, eta).0)).collect()))
        .collect();
    // psi: L part j -> P part psi[j].
    let psi: Vec<usize> = seeded_order(p_parts.len(), seed).into_iter().take(l_parts.len()).collect();

    // Merged part of each used P part, and of each L part (the same index).
    let mut merged_of_p = vec![usize::MAX; p_parts.len()];
    for (j, &i) in psi.iter().enumerate() {
        merged_of_p[i] = j;
    }
    // Deficient pairs (P part i, L part j): L_j lies over -x_i. Pairs inside
    // one merged part need no edge.
    let mut l_by_y: Vec<Vec<usize>> = vec![Vec::new(); e as usize];
    for (j, (y, _)) in l_parts.iter().enumerate() {
        l_by_y[*y as usize].push(j);
    }
    let mut deficient: Vec<(usize, usize)> = Vec::new();
    for &i in &psi {
        let x = FieldElement(p_parts[i].0);
        let minus_x = ext.neg(x).0 as usize;
        for &j in &l_by_y[minus_x] {
            if merged_of_p[i] != j {
                deficient.push((i, j));
            }
        }
    }

    // Keep used P vertices and all L vertices.
    let mut keep: Vec<u32> = Vec::new();
    let mut used = vec![false; p_parts.len()];
    for &i in &psi {
        used[i] = true;
    }
    for (i, (_, part)) in p_parts.iter().enumerate() {
        if used[i] {
            keep.extend(part);
        }
    }
    for (_, part) in &l_parts {
        keep.extend(part);
    }
    keep.sort_unstable();
    let (base_graph, map) = qs.graph.induced(&keep);
    let remap = |v: u32| map[v as usize].expect("kept vertex");

    let forbidden_s = t as usize;
    let forbidden_t = kst_t_parameter(t, d).ok_or_else(|| {
        ConstructionError::Params(format!("forbidden K_{{t,(t-1)! d^(t-1) + 1}} overflows for t = {t}, d = {d}"))
    })?;

    let plan = match patch {
        PatchStrategy::Matching => Ok(matching_patch(&deficient)),
        PatchStrategy::GreedyReuse => greedy_patch(&deficient, forbidden_s, forbidden_t),
    };
    let (patch_plan, used_strategy, warning) = match plan {
        Ok(p) => (p, patch, None),
        Err(reason) => (
            matching_patch(&deficient),
            PatchStrategy::Matching,
            Some(format!("greedy reuse fell back to matching: {reason}")),
        ),
    };

    // Assemble: patch vertex v gets index n0 + v.
    let n0 = base_graph.num_vertices() as u32;
    let mut parts: Vec<Vec<u32>> = (0..l_parts.len())
        .map(|j| {
            let mut part: Vec<u32> = p_parts[psi[j]].1.iter().map(|&v| remap(v)).collect();
            part.extend(l_parts[j].1.iter().map(|&v| remap(v)));
            part
        })
        .collect();
    let mut patch_labels = Vec::with_capacity(patch_plan.vertices.len());
    let mut overhead = vec![0usize; parts.len()];
    for (serial, owner) in patch_plan.vertices.iter().enumerate() {
        let merged = match *owner {
            HalfPart::P(i) => merged_of_p[i],
            HalfPart::L(j) => j,
        };
        parts[merged].push(n0 + serial as u32);
        overhead[merged] += 1;
        patch_labels.push(format!("patch:{merged}:{serial}"));
    }
    let patch_edges: Vec<Vec<u32>> = patch_plan.edges.iter().map(|&(u, v)| vec![n0 + u, n0 + v]).collect();
    let patched = base_graph.extended(patch_labels, patch_edges)?;
    let partition = SplitPartition::tight(parts)?;
    let (graph, removed) = strip_intra_part_edges(&patched, &partition)?;

    let freeness_claimed = is_even_power_of_odd_prime(q);
    let mut notes = vec![format!(
        "B_{d}({q},{t}) with h = {h}, a = {a}; {} deficient pairs patched by {:?}",
        deficient.len(),
        used_strategy
    )];
    if !freeness_claimed {
        notes.push(format!("q = {q} is not an even power of an odd prime; freeness is not claimed for this case"));
    }
    if let Some(w) = &warning {
        notes.push(w.clone());
    }
    let stats = PatchStats {
        requested: patch,
        used: used_strategy,
        fallback_warning: warning,
        forbidden: format!("K_{{{forbidden_s},{forbidden_t}}}"),
        deficient_pairs: deficient.len(),
        patch_vertices: patch_plan.vertices.len(),
        patch_edges: patch_plan.edges.len(),
        max_part_overhead: overhead.iter().copied().max().unwrap_or(0),
        k_base: (a + h) as usize,
        k_effective: partition.max_part_size(),
        r: partition.r(),
        intra_part_edges_removed: removed,
        freeness_claimed,
    };
    Ok((Construction { graph, partition, intra_part_edges_removed: removed, notes }, stats))
}

/// (t-1)! d^{t-1} + 1.
fn kst_t_parameter(t: u32, d: u32) -> Option<usize> {
    let mut v: usize = 1;
    for i in 1..t as usize {
        v = v.checked_mul(i)?.checked_mul(d as usize)?;
    }
    v.checked_add(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum HalfPart {
    P(usize),
    L(usize),
}

/// New vertices (with the half part each joins) and edges between them,
/// indexed locally.
struct PatchPlan {
    vertices: Vec<HalfPart>,
    edges: Vec<(u32, u32)>,
}

fn matching_patch(deficient: &[(usize, usize)]) -> PatchPlan {
    let mut plan = PatchPlan { vertices: Vec::new(), edges: Vec::new() };
    for &(i, j) in deficient {
        let u = plan.vertices.len() as u32;
        plan.vertices.push(HalfPart::P(i));
        plan.vertices.push(HalfPart::L(j));
        plan.edges.push((u, u + 1));
    }
    plan
}

/// Covers each deficient pair, preferring to reuse existing patch vertices.
/// Every tentative edge is kept only if the patch graph stays
/// K_{s,t}-free, decided exactly. The patch graph is disjoint from the
/// original graph, so its freeness is all that matters.
fn greedy_patch(deficient: &[(usize, usize)], s: usize, t: usize) -> Result<PatchPlan, String> {
    use std::collections::BTreeMap;
    let mut plan = PatchPlan { vertices: Vec::new(), edges: Vec::new() };
    let mut pool: BTreeMap<HalfPart, Vec<u32>> = BTreeMap::new();
    let mut adj: Vec<Vec<u32>> = Vec::new();

    let free_with = |plan: &PatchPlan, extra: (u32, u32), nverts: usize| -> bool {
        let g = SimpleGraph::from_edges(nverts, plan.edges.iter().copied().chain([extra]));
        contains_kst(&g, s, t).is_none()
    };

    for &(i, j) in deficient {
        let pu = pool.get(&HalfPart::P(i)).cloned().unwrap_or_default();
        let pv = pool.get(&HalfPart::L(j)).cloned().unwrap_or_default();
        if pu.iter().any(|&u| pv.iter().any(|v| adj[u as usize].contains(v))) {
            continue;
        }
        if plan.vertices.len() + 2 > GREEDY_CHECK_LIMIT {
            return Err(format!("patch graph exceeds {GREEDY_CHECK_LIMIT} vertices"));
        }
        let mut chosen = None;
        'outer: for &u in &pu {
            for &v in &pv {
                if free_with(&plan, (u, v), plan.vertices.len()) {
                    chosen = Some((Some(u), Some(v)));
                    break 'outer;
                }
            }
        }
        // A fresh endpoint has degree one, which no K_{s,t} with s, t >= 2
        // uses, so these options are always safe. Grow the smaller pool.
        let chosen = chosen.unwrap_or_else(|| match (pu.first(), pv.first()) {
            (Some(&u), Some(&v)) => {
                if pv.len() <= pu.len() {
                    (Some(u), None)
                } else {
                    (None, Some(v))
                }
            }
            (Some(&u), None) => (Some(u), None),
            (None, Some(&v)) => (None, Some(v)),
            (None, None) => (None, None),
        });
        let mut fresh = |owner: HalfPart, plan: &mut PatchPlan, adj: &mut Vec<Vec<u32>>| -> u32 {
            let id = plan.vertices.len() as u32;
            plan.vertices.push(owner);
            adj.push(Vec::new());
            pool.entry(owner).or_default().push(id);
            id
        };
        let u = chosen.0.unwrap_or_else(|| fresh(HalfPart::P(i), &mut plan, &mut adj));
        let v = chosen.1.unwrap_or_else(|| fresh(HalfPart::L(j), &mut plan, &mut adj));
        plan.edges.push((u, v));
        adj[u as usize].push(v);
        adj[v as usize].push(u);
    }
    let g = SimpleGraph::from_edges(plan.vertices.len(), plan.edges.iter().copied());
    if contains_kst(&g, s, t).is_some() {
        return Err("final patch graph check failed".into());
    }
    Ok(plan)
}

impl PartialOrd for HalfPart {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfPart {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |h: &HalfPart| match *h {
            HalfPart::P(i) => (0, i),
            HalfPart::L(j) => (1, j),
        };
        key(self).cmp(&key(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::verify_rk;

    #[test]
    fn small_quotient_matches_definition() {
        // q = 3, t = 2, d = 1: N is the identity and labels are discrete logs.
        let qs = quotient(3, 2, 1).unwrap();
        let f = qs.tower.base();
        let g = &qs.graph;
        assert_eq!(g.num_vertices(), 12);
        for x in f.elements() {
            for y in f.elements() {
                for a in 0..2 {
                    for b in 0..2 {
                        let s = f.add(x, y);
                        let expect = !s.is_zero() && s == f.mul(f.exp(a as u64), f.exp(b as u64));
                        let edge = g.contains_edge(&[qs.p_vertex(x.0, a), qs.l_vertex(y.0, b)]);
                        assert_eq!(edge, expect);
                    }
                }
            }
        }
    }

    #[test]
    fn sizes() {
        let g = build_norm_quotient(9, 2, 1).unwrap();
        assert_eq!(g.num_vertices(), 144);
        let g = build_norm_quotient(9, 2, 2).unwrap();
        assert_eq!(g.num_vertices(), 72);
        // Every vertex misses only y = -x.
        let g = build_norm_quotient(5, 3, 2).unwrap();
        let deg = g.to_graph().unwrap().regular_degree();
        assert_eq!(deg, Some(24));
        assert!(build_norm_quotient(8, 2, 1).is_err());
        assert!(build_norm_quotient(9, 2, 3).is_err());
    }

    #[test]
    fn kst_parameter() {
        assert_eq!(kst_t_parameter(2, 1), Some(2));
        assert_eq!(kst_t_parameter(3, 2), Some(9));
        assert_eq!(kst_t_parameter(4, 1), Some(7));
    }

    #[test]
    fn partition_certifies_for_both_patches() {
        for patch in [PatchStrategy::Matching, PatchStrategy::GreedyReuse] {
            let params = NormQuotientParams { q: 9, t: 2, d: 1, h: 4, a: 2, patch, seed: None };
            let (c, stats) = partition_norm_quotient(&params).unwrap();
            let rep = verify_rk(&c.graph, &c.partition).unwrap();
            assert!(rep.completeness_ok, "{patch:?}");
            assert!(rep.independence_ok);
            assert_eq!(rep.r, 18);
            assert_eq!(stats.k_effective, rep.k_effective);
            assert!(stats.k_effective <= 6 + stats.max_part_overhead);
            assert!(stats.fallback_warning.is_none());
            let g = c.graph.to_graph().unwrap();
            assert!(contains_kst(&g, 2, 2).is_none(), "{patch:?}");
        }
    }

    #[test]
    fn parameter_checks() {
        let mut p = NormQuotientParams { q: 9, t: 2, d: 1, h: 2, a: 4, patch: PatchStrategy::Matching, seed: None };
        assert!(partition_norm_quotient(&p).is_err());
        p.h = 3;
        p.a = 3;
        assert!(partition_norm_quotient(&p).is_err());
    }
}
