//! A field GF(q) embedded in an extension GF(q^e), with the norm map.
//!
//! The extension is built directly as GF(p^{n e}) with its own defining
//! polynomial. The subfield is embedded by sending θ (the base field's
//! primitive element) to θ'^{j (Q-1)/(q-1)}, θ' primitive in the extension,
//! with the least `j` coprime to `q-1` that makes the map a ring
//! homomorphism (the base polynomial must vanish at the image of α).

use super::{Field, FieldElement, GfError};
use crate::numtheory::gcd;

#[derive(Debug, Clone)]
pub struct FieldTower {
    base: Field,
    ext: Field,
    degree: u32,
    image: Vec<u32>,
    pullback: Vec<u32>,
    /// (Q-1)/(q-1), the norm exponent 1 + q + ... + q^{e-1}.
    norm_exp: u64,
}

const NONE: u32 = u32::MAX;

impl FieldTower {
    /// GF(p^n) inside GF(p^{n degree}).
    pub fn new(p: u64, n: u32, degree: u32) -> Result<Self, GfError> {
        if degree == 0 {
            return Err(GfError::ZeroDegree);
        }
        let base = Field::new(p, n)?;
        let ext = if degree == 1 { base.clone() } else { Field::new(p, n * degree)? };
        Self::from_fields(base, ext, degree)
    }

    pub fn from_fields(base: Field, ext: Field, degree: u32) -> Result<Self, GfError> {
        if base.characteristic() != ext.characteristic() || base.degree() * degree != ext.degree() {
            return Err(GfError::IncompatibleTower(format!(
                "GF({}) is not a degree-{degree} subfield of GF({})",
                base.order(),
                ext.order()
            )));
        }
        let q = base.order() as u64;
        let big_q = ext.order() as u64;
        let norm_exp = (big_q - 1) / (q - 1);

        let image: Vec<u32> = if degree == 1 {
            (0..base.order()).collect()
        } else if base.degree() == 1 {
            // Prime subfield: constants encode identically.
            (0..base.order()).collect()
        } else {
            let alpha = base.element(&{
                let mut c = vec![0u32; base.degree() as usize];
                c[1] = 1;
                c
            })?;
            let log_alpha = base.log(alpha).expect("root of an irreducible of degree >= 2 is nonzero") as u64;
            let poly = base.spec().poly.clone();
            let j = (1..q - 1)
                .filter(|&j| gcd(j, q - 1) == 1)
                .find(|&j| {
                    let beta = ext.exp((norm_exp * j % (big_q - 1)) * log_alpha % (big_q - 1));
                    let mut acc = FieldElement::ZERO;
                    for &c in poly.iter().rev() {
                        acc = ext.add(ext.mul(acc, beta), FieldElement(c));
                    }
                    acc.is_zero()
                })
                .ok_or_else(|| GfError::IncompatibleTower("no root of the base polynomial in the extension".into()))?;
            let mut image = vec![0u32; q as usize];
            for i in 0..q - 1 {
                let b = base.exp(i);
                image[b.index()] = ext.exp(norm_exp * j % (big_q - 1) * i % (big_q - 1)).0;
            }
            image
        };

        let mut pullback = vec![NONE; big_q as usize];
        for (b, &e) in image.iter().enumerate() {
            pullback[e as usize] = b as u32;
        }
        Ok(FieldTower { base, ext, degree, image, pullback, norm_exp })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Image of a base element in the extension.
    #[inline]
    pub fn embed(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.image[x.index()])
    }

    /// Preimage of an extension element lying in the subfield.
    #[inline]
    pub fn restrict(&self, y: FieldElement) -> Option<FieldElement> {
        let b = self.pullback[y.index()];
        (b != NONE).then_some(FieldElement(b))
    }

    /// The norm `x^(1 + q + ... + q^{e-1})`, returned in the base field.
    pub fn norm(&self, x: FieldElement) -> FieldElement {
        match self.ext.log(x) {
            None => FieldElement::ZERO,
            Some(l) => {
                let y = self.ext.exp(l as u64 * self.norm_exp % (self.ext.order() as u64 - 1));
                self.restrict(y).expect("norm lands in the subfield")
            }
        }
    }
}

/// N(x) for x in GF(q^{t-1}) over GF(q); the tower must have degree `t - 1`.
pub fn norm_map(tower: &FieldTower, x: FieldElement, t: u32) -> Result<FieldElement, GfError> {
    if t < 2 || tower.degree() != t - 1 {
        return Err(GfError::IncompatibleTower(format!(
            "norm for t = {t} needs a degree-{} tower, got degree {}",
            t.saturating_sub(1),
            tower.degree()
        )));
    }
    Ok(tower.norm(x))
}
