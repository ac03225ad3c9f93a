//! The θ_{3,4}-free graph over F_q, q a square: (v_1..v_4)_P ~ (w_1..w_4)_L iff
//! v_2 + w_2 = v_1 w_1, v_4 + w_3 = v_1^2 w_1, v_3 + w_4 = v_1 w_1^2.
//!
//! Coordinates split as x = x' + x'' μ over the subfield of order √q, with μ
//! the least element outside the subfield.

use super::{params_err, strip_intra_part_edges, tuple_label, Construction, ConstructionError};
use crate::gf::{Field, FieldElement, FieldTower};
use crate::numtheory::prime_power;
use crate::structures::{LabeledHypergraph, SplitPartition};

struct Coords {
    tower: FieldTower,
    /// Order of the subfield.
    s: u32,
    /// decomp[x] = (x', x'') with x = x' + x'' μ, subfield encodings.
    decomp: Vec<(u32, u32)>,
}

fn coords(q: u64) -> Result<Coords, ConstructionError> {
    let Some((p, n)) = prime_power(q) else {
        return params_err(format!("q = {q} is not a prime power"));
    };
    if p == 2 || n % 2 != 0 {
        return params_err(format!("q = {q} must be an even power of an odd prime"));
    }
    let tower = FieldTower::new(p, n / 2, 2)?;
    let (base, ext) = (tower.base(), tower.ext());
    let mu = ext.elements().find(|&x| tower.restrict(x).is_none()).expect("proper extension");
    let s = base.order();
    let mut decomp = vec![(0, 0); ext.order() as usize];
    for a in base.elements() {
        for b in base.elements() {
            let x = ext.add(tower.embed(a), ext.mul(tower.embed(b), mu));
            decomp[x.index()] = (a.0, b.0);
        }
    }
    Ok(Coords { tower, s, decomp })
}

fn index4(v: [u32; 4], q: u32) -> u32 {
    ((v[0] * q + v[1]) * q + v[2]) * q + v[3]
}

fn raw_graph(c: &Coords) -> Result<LabeledHypergraph, ConstructionError> {
    let f: &Field = c.tower.ext();
    let q = f.order();
    let side = q.checked_pow(4).filter(|&n| n <= 1 << 22);
    let Some(side) = side else {
        return params_err(format!("the theta graph over F_{q} is too large"));
    };
    let el = |i: u32| FieldElement(i);
    let mut labels = Vec::with_capacity(2 * side as usize);
    for tag in ["P", "L"] {
        for code in 0..side {
            let v = [code / (q * q * q), code / (q * q) % q, code / q % q, code % q];
            labels.push(tuple_label(Some(tag), &v.map(el)));
        }
    }
    let mut edges = Vec::with_capacity((side * q) as usize);
    for code in 0..side {
        let [v1, v2, v3, v4] = [code / (q * q * q), code / (q * q) % q, code / q % q, code % q].map(el);
        let v1sq = f.mul(v1, v1);
        for w1 in f.elements() {
            let w2 = f.sub(f.mul(v1, w1), v2);
            let w3 = f.sub(f.mul(v1sq, w1), v4);
            let w4 = f.sub(f.mul(v1, f.mul(w1, w1)), v3);
            edges.push(vec![code, side + index4([w1.0, w2.0, w3.0, w4.0], q)]);
        }
    }
    Ok(LabeledHypergraph::new(2, labels, edges)?)
}

/// The full q-regular graph on 2q^4 vertices, P side first.
pub fn build_theta_graph(q: u64) -> Result<LabeledHypergraph, ConstructionError> {
    raw_graph(&coords(q)?)
}

/// The graph with q^{5/2} merged parts of size 2q^{3/2}: P parts fix
/// (v_1, v_3'', v_4), L parts fix (w_1, w_2, w_4'), paired in lexicographic
/// order.
pub fn build_theta(q: u64) -> Result<Construction, ConstructionError> {
    let c = coords(q)?;
    let raw = raw_graph(&c)?;
    let qq = c.tower.ext().order();
    let s = c.s;
    let side = qq.pow(4);
    let nparts = (qq * qq * s) as usize;
    let mut parts = vec![Vec::with_capacity(2 * (qq * s) as usize); nparts];
    for code in 0..side {
        let v = [code / (qq * qq * qq), code / (qq * qq) % qq, code / qq % qq, code % qq];
        let v3b = c.decomp[v[2] as usize].1;
        parts[((v[0] * s + v3b) * qq + v[3]) as usize].push(code);
    }
    for code in 0..side {
        let w = [code / (qq * qq * qq), code / (qq * qq) % qq, code / qq % qq, code % qq];
        let w4a = c.decomp[w[3] as usize].0;
        parts[((w[0] * qq + w[1]) * s + w4a) as usize].push(side + code);
    }
    let partition = SplitPartition::tight(parts)?;
    let (graph, removed) = strip_intra_part_edges(&raw, &partition)?;
    Ok(Construction {
        graph,
        partition,
        intra_part_edges_removed: removed,
        notes: vec![format!("theta graph over F_{qq}; {removed} edges inside merged parts removed")],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::verify_rk;

    #[test]
    fn decomposition_is_a_bijection() {
        let c = coords(9).unwrap();
        let mut seen: Vec<(u32, u32)> = c.decomp.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 9);
        assert!(seen.iter().all(|&(a, b)| a < c.s && b < c.s));
        assert!(coords(27).is_err());
        assert!(coords(4).is_err());
    }

    #[test]
    fn q9_shape() {
        let con = build_theta(9).unwrap();
        assert_eq!(con.graph.num_vertices(), 13122);
        assert_eq!(con.partition.r(), 243);
        assert!(con.partition.parts.iter().all(|p| p.len() == 54));
        let rep = verify_rk(&con.graph, &con.partition).unwrap();
        assert!(rep.completeness_ok && rep.independence_ok);
        assert_eq!(con.intra_part_edges_removed, 243);
        let raw = build_theta_graph(9).unwrap();
        assert_eq!(raw.to_graph().unwrap().regular_degree(), Some(9));
    }
}
