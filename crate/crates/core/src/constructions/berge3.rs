//! The 3-uniform hypergraph G_q on F_q^2 minus the parabola y = x^2/2:
//! {(a1,a2),(b1,b2),(c1,c2)} is an edge iff a2 + b2 = a1 b1,
//! b2 + c2 = b1 c1, c2 + a2 = c1 a1.

use super::{field_of_order, params_err, tuple_label, Construction, ConstructionError};
use crate::gf::{FieldElement, GfError};
use crate::numtheory::prime_power;
use crate::structures::{LabeledHypergraph, SplitPartition};

/// G_q with parts P_x (fixed first coordinate), q parts of size q - 1.
///
/// A vertex pair with equal first coordinates solving the system would lie
/// on the parabola, so every edge meets three distinct parts, and each
/// triple of parts has exactly one edge.
pub fn build_berge3(q: u64) -> Result<Construction, ConstructionError> {
    let f = field_of_order(q)?;
    let half = match f.half() {
        Ok(h) => h,
        Err(GfError::DivisionByZero) => {
            return params_err(format!("q = {q} has characteristic 2, so 1/2 does not exist"));
        }
        Err(e) => return Err(e.into()),
    };
    let parabola = |x: FieldElement| f.mul(half, f.mul(x, x));
    let qn = f.order();
    // index[x * q + y] for vertices off the parabola.
    let mut index = vec![u32::MAX; (qn * qn) as usize];
    let mut labels = Vec::with_capacity((qn * (qn - 1)) as usize);
    let mut parts = vec![Vec::with_capacity(qn as usize - 1); qn as usize];
    for x in f.elements() {
        for y in f.elements() {
            if y == parabola(x) {
                continue;
            }
            let id = labels.len() as u32;
            index[(x.0 * qn + y.0) as usize] = id;
            labels.push(tuple_label(None, &[x, y]));
            parts[x.index()].push(id);
        }
    }
    let mut edges = Vec::new();
    let els: Vec<FieldElement> = f.elements().collect();
    for (i, &a1) in els.iter().enumerate() {
        for (j, &b1) in els.iter().enumerate().skip(i + 1) {
            for &c1 in &els[j + 1..] {
                let (ab, bc, ca) = (f.mul(a1, b1), f.mul(b1, c1), f.mul(c1, a1));
                let a2 = f.mul(half, f.add(f.sub(ab, bc), ca));
                let b2 = f.mul(half, f.add(f.sub(bc, ca), ab));
                let c2 = f.mul(half, f.add(f.sub(ca, ab), bc));
                let e: Vec<u32> =
                    [(a1, a2), (b1, b2), (c1, c2)].iter().map(|&(x, y)| index[(x.0 * qn + y.0) as usize]).collect();
                debug_assert!(e.iter().all(|&v| v != u32::MAX), "solution on the parabola");
                edges.push(e);
            }
        }
    }
    let graph = LabeledHypergraph::new(3, labels, edges)?;
    let partition = SplitPartition::tight(parts)?;
    let mut notes = Vec::new();
    if !matches!(prime_power(q), Some((_, n)) if n % 2 == 0) {
        notes.push(format!(
            "q = {q} is not an even power of an odd prime; Berge-cycle freeness is checked, not claimed"
        ));
    }
    Ok(Construction { graph, partition, intra_part_edges_removed: 0, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::structures::verify_rk;

    #[test]
    fn shape_and_completeness() {
        for q in [5u64, 7, 9] {
            let c = build_berge3(q).unwrap();
            let qn = q as usize;
            assert_eq!(c.graph.num_vertices(), qn * qn - qn);
            assert_eq!(c.partition.r(), qn);
            assert!(c.partition.parts.iter().all(|p| p.len() == qn - 1));
            let rep = verify_rk(&c.graph, &c.partition).unwrap();
            assert!(rep.completeness_ok && rep.independence_ok);
            assert_eq!(c.graph.num_edges(), qn * (qn - 1) * (qn - 2) / 6);
        }
        assert!(build_berge3(4).is_err());
    }

    #[test]
    fn edges_solve_the_system() {
        let f = Field::with_order(9).unwrap();
        let c = build_berge3(9).unwrap();
        let pt = |v: u32| -> (FieldElement, FieldElement) {
            let (x, y) = c.graph.label(v).split_once(',').unwrap();
            (FieldElement(x.parse().unwrap()), FieldElement(y.parse().unwrap()))
        };
        for e in c.graph.edges() {
            let [(a1, a2), (b1, b2), (c1, c2)] = [pt(e[0]), pt(e[1]), pt(e[2])];
            assert_eq!(f.add(a2, b2), f.mul(a1, b1));
            assert_eq!(f.add(b2, c2), f.mul(b1, c1));
            assert_eq!(f.add(c2, a2), f.mul(c1, a1));
        }
    }
}
