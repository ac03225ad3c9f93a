//! Multiplicative subgroups K_d of GF(q)^* and labels for the cyclic quotient
//! GF(q)^* / K_d.
//!
//! Coset `θ^i K_d` is labelled by `i mod (q-1)/d`, so the quotient becomes
//! the additive group Z/((q-1)/d) on labels.

use super::{Field, FieldElement, GfError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupHandle {
    /// Order of the subgroup.
    pub d: u32,
    /// θ^((q-1)/d).
    pub generator: FieldElement,
    /// Primitive element of the whole group.
    pub theta: FieldElement,
    /// Number of cosets, (q-1)/d.
    pub index: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CosetLabel(pub u32);

impl SubgroupHandle {
    /// Group operation in the quotient.
    pub fn combine(&self, a: CosetLabel, b: CosetLabel) -> CosetLabel {
        CosetLabel((a.0 + b.0) % self.index)
    }

    pub fn inverse(&self, a: CosetLabel) -> CosetLabel {
        CosetLabel((self.index - a.0 % self.index) % self.index)
    }

    pub fn labels(&self) -> impl Iterator<Item = CosetLabel> {
        (0..self.index).map(CosetLabel)
    }

    /// Elements of K_d in generation order.
    pub fn elements(&self, field: &Field) -> Vec<FieldElement> {
        let step = self.index as u64;
        (0..self.d as u64).map(|i| field.exp(i * step)).collect()
    }
}

impl Field {
    /// The subgroup K_d of order `d`.
    pub fn subgroup(&self, d: u32) -> Result<SubgroupHandle, GfError> {
        let group = self.order() - 1;
        if d == 0 || !group.is_multiple_of(d) {
            return Err(GfError::Divisibility { d: d as u64, modulus: group as u64 });
        }
        let index = group / d;
        Ok(SubgroupHandle { d, generator: self.exp(index as u64), theta: self.primitive(), index })
    }

    /// Label of the coset `x K_d`; zero has no coset.
    pub fn coset_of(&self, x: FieldElement, k: &SubgroupHandle) -> Result<CosetLabel, GfError> {
        let l = self.log(x).ok_or(GfError::DivisionByZero)?;
        Ok(CosetLabel(l % k.index))
    }

    /// Any element of the coset with the given label.
    pub fn coset_representative(&self, label: CosetLabel) -> FieldElement {
        self.exp(label.0 as u64)
    }
}

/// The order-`h` subgroup H of the quotient and a transversal A of H, with
/// `|A| = (q-1)/(d h)`. The products `a + η` (a in A, η in H) enumerate
/// every label exactly once.
pub fn coset_reps(k: &SubgroupHandle, h: u32) -> Result<(Vec<CosetLabel>, Vec<CosetLabel>), GfError> {
    if h == 0 || !k.index.is_multiple_of(h) {
        return Err(GfError::Divisibility { d: h as u64, modulus: k.index as u64 });
    }
    let a = k.index / h;
    let subgroup = (0..h).map(|j| CosetLabel(j * a)).collect();
    let transversal = (0..a).map(CosetLabel).collect();
    Ok((subgroup, transversal))
}
