//! Exact arithmetic in GF(p^n).
//!
//! Elements are stored as their base-`p` encoding: the element
//! `c_0 + c_1 α + ... + c_{n-1} α^{n-1}` is the integer `Σ c_i p^i`, where `α`
//! is a root of the field's defining polynomial. Multiplication goes through
//! full exp/log tables built once per field, so every construction gets
//! discrete logs (and hence coset membership) in O(1).

mod poly;
mod subgroup;
mod tower;

pub use subgroup::{coset_reps, CosetLabel, SubgroupHandle};
pub use tower::{norm_map, FieldTower};

use crate::numtheory;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Largest field order for which tables are built.
pub const MAX_ORDER: u64 = 1 << 22;

/// Fields up to this order also get a full addition table.
const ADD_TABLE_LIMIT: u32 = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{n} exceeds the supported maximum {MAX_ORDER}")]
    Overflow { p: u64, n: u32 },
    #[error("no monic irreducible polynomial of degree {n} over GF({p}) found")]
    NoIrreducible { p: u64, n: u32 },
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("{d} does not divide {modulus}")]
    Divisibility { d: u64, modulus: u64 },
    #[error("incompatible field tower: {0}")]
    IncompatibleTower(String),
}

/// Characteristic, degree and defining polynomial of a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    /// Monic, little-endian, length `n + 1`.
    pub poly: Vec<u32>,
}

impl FieldSpec {
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }
}

/// Builds the spec for GF(p^n) with the lexicographically least monic
/// irreducible polynomial (coefficients compared from `x^{n-1}` down).
pub fn make_field(p: u64, n: u32) -> Result<FieldSpec, GfError> {
    if !numtheory::is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if n == 0 {
        return Err(GfError::ZeroDegree);
    }
    let q = (p as u128).checked_pow(n).unwrap_or(u128::MAX);
    if q > MAX_ORDER as u128 {
        return Err(GfError::Overflow { p, n });
    }
    let q = q as u64;
    for code in 0..q {
        let mut f: Vec<u64> = (0..n).map(|i| (code / p.pow(i)) % p).collect();
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return Ok(FieldSpec { p: p as u32, n, poly: f.into_iter().map(|c| c as u32).collect() });
        }
    }
    Err(GfError::NoIrreducible { p, n })
}

/// An element of a specific [`Field`], by base-`p` encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(p^n) with precomputed tables.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    p_pows: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
    primitive: FieldElement,
}

impl Field {
    pub fn new(p: u64, n: u32) -> Result<Self, GfError> {
        Self::from_spec(make_field(p, n)?)
    }

    /// GF(q) for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Self, GfError> {
        let (p, n) =
            numtheory::prime_power(q).ok_or_else(|| GfError::InvalidElement(format!("{q} is not a prime power")))?;
        Self::new(p, n)
    }

    pub fn from_spec(spec: FieldSpec) -> Result<Self, GfError> {
        let p = spec.p as u64;
        let n = spec.n;
        if spec.poly.len() != n as usize + 1 || spec.poly[n as usize] != 1 {
            return Err(GfError::InvalidElement("defining polynomial must be monic of degree n".into()));
        }
        let modulus: poly::Poly = spec.poly.iter().map(|&c| c as u64).collect();
        if !poly::is_irreducible(&modulus, p) {
            return Err(GfError::NoIrreducible { p, n });
        }
        let q = spec.order();
        if q > MAX_ORDER {
            return Err(GfError::Overflow { p, n });
        }
        let q32 = q as u32;
        let p_pows: Vec<u32> = (0..n).map(|i| p.pow(i) as u32).collect();

        let decode = |code: u64| -> poly::Poly { (0..n).map(|i| (code / p.pow(i)) % p).collect() };
        let encode = |v: &poly::Poly| -> u32 {
            v.iter().enumerate().map(|(i, &c)| c as u32 * p_pows.get(i).copied().unwrap_or(0)).sum()
        };

        // Least element (by encoding) whose order is exactly q - 1.
        let group = q - 1;
        let factors = numtheory::factorize(group);
        let primitive = if q == 2 {
            1
        } else {
            (1..q)
                .find(|&code| {
                    let g = decode(code);
                    factors.iter().all(|&(r, _)| {
                        let t = poly::pow_mod(&g, group / r, &modulus, p);
                        encode(&t) != 1
                    })
                })
                .ok_or(GfError::NoIrreducible { p, n })? as u32
        };

        let g = decode(primitive as u64);
        let mut exp = Vec::with_capacity(group as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur: poly::Poly = vec![1];
        for i in 0..group {
            let code = encode(&cur);
            exp.push(code);
            log[code as usize] = i as u32;
            cur = poly::mul_mod(&cur, &g, &modulus, p);
        }

        let neg: Vec<u32> = (0..q)
            .map(|code| {
                let v: poly::Poly = decode(code).into_iter().map(|c| (p - c) % p).collect();
                encode(&v)
            })
            .collect();

        let mut field = Field { spec, q: q32, p_pows, exp, log, neg, add: None, primitive: FieldElement(primitive) };
        if q32 <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q32 {
                for b in 0..q32 {
                    table[(a * q32 + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add = Some(table);
        }
        Ok(field)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.n
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    /// The element with the given coefficient vector (little-endian in α).
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement, GfError> {
        if coeffs.len() != self.spec.n as usize {
            return Err(GfError::InvalidElement(format!(
                "expected {} coefficients, got {}",
                self.spec.n,
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.spec.p) {
            return Err(GfError::InvalidElement(format!("coefficient {c} not reduced mod {}", self.spec.p)));
        }
        Ok(FieldElement(coeffs.iter().zip(&self.p_pows).map(|(c, pp)| c * pp).sum()))
    }

    /// Checked conversion of a raw encoding.
    pub fn from_index(&self, code: u32) -> Result<FieldElement, GfError> {
        if code >= self.q {
            return Err(GfError::InvalidElement(format!("{code} is not an element of GF({})", self.q)));
        }
        Ok(FieldElement(code))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.spec.p as i64) as u32)
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let p = self.spec.p;
        let mut code = a.0;
        (0..self.spec.n)
            .map(|_| {
                let c = code % p;
                code /= p;
                c
            })
            .collect()
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for &pp in &self.p_pows {
            let s = (a % p + b % p) % p;
            out += s * pp;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.add {
            Some(t) => FieldElement(t[(a.0 * self.q + b.0) as usize]),
            None => FieldElement(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let s = self.log[a.index()] as u64 + self.log[b.index()] as u64;
        FieldElement(self.exp[(s % (self.q as u64 - 1)) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        if a.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        let group = self.q as u64 - 1;
        let l = self.log[a.index()] as u64;
        Ok(FieldElement(self.exp[((group - l) % group) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer `e`; negative exponents require `a != 0`.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement, GfError> {
        if a.0 == 0 {
            return match e.signum() {
                0 => Ok(FieldElement::ONE),
                1 => Ok(FieldElement::ZERO),
                _ => Err(GfError::DivisionByZero),
            };
        }
        let group = self.q as i128 - 1;
        let l = self.log[a.index()] as i128;
        let idx = (l * e as i128).rem_euclid(group);
        Ok(FieldElement(self.exp[idx as usize]))
    }

    /// The fixed generator θ of the multiplicative group.
    pub fn primitive(&self) -> FieldElement {
        self.primitive
    }

    /// Discrete log base θ; `None` for zero.
    #[inline]
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.index()])
    }

    /// θ^i.
    #[inline]
    pub fn exp(&self, i: u64) -> FieldElement {
        FieldElement(self.exp[(i % (self.q as u64 - 1)) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u64> {
        let l = self.log(a)? as u64;
        let group = self.q as u64 - 1;
        Some(group / numtheory::gcd(group, l))
    }

    /// Halving, defined in odd characteristic.
    pub fn half(&self) -> Result<FieldElement, GfError> {
        self.inv(self.from_int(2))
    }
}

/// Least generator of GF(q)^*, by encoding order.
pub fn find_primitive(field: &Field) -> FieldElement {
    field.primitive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographically_least_polynomials() {
        assert_eq!(make_field(3, 1).unwrap().poly, vec![0, 1]);
        assert_eq!(make_field(3, 2).unwrap().poly, vec![1, 0, 1]);
        assert_eq!(make_field(2, 1).unwrap().poly, vec![0, 1]);
        // The only monic quadratic preceding x^2+1 is x^2, which is reducible.
        assert_eq!(make_field(5, 2).unwrap().poly, vec![2, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(4, 1), Err(GfError::NotPrime(4)));
        assert_eq!(make_field(3, 0), Err(GfError::ZeroDegree));
        assert!(matches!(make_field(2, 40), Err(GfError::Overflow { .. })));
    }

    #[test]
    fn small_examples() {
        let gf7 = Field::new(7, 1).unwrap();
        assert_eq!(gf7.inv(FieldElement(3)).unwrap(), FieldElement(5));
        assert_eq!(gf7.inv(FieldElement(1)).unwrap(), FieldElement(1));
        assert_eq!(gf7.inv(FieldElement(0)), Err(GfError::DivisionByZero));
        assert_eq!(gf7.primitive(), FieldElement(3));

        let gf9 = Field::new(3, 2).unwrap();
        let mu = gf9.element(&[0, 1]).unwrap();
        assert_eq!(gf9.mul(mu, mu), gf9.element(&[2, 0]).unwrap());

        assert_eq!(Field::new(3, 1).unwrap().primitive(), FieldElement(2));
        assert_eq!(Field::new(2, 1).unwrap().primitive(), FieldElement(1));
    }

    #[test]
    fn element_validation() {
        let gf9 = Field::new(3, 2).unwrap();
        assert!(gf9.element(&[3, 0]).is_err());
        assert!(gf9.element(&[1]).is_err());
        assert!(gf9.from_index(9).is_err());
        assert_eq!(gf9.coeffs(FieldElement(7)), vec![1, 2]);
    }

    fn check_axioms(field: &Field) {
        let els: Vec<_> = field.elements().collect();
        for &a in &els {
            assert_eq!(field.add(a, field.neg(a)), FieldElement::ZERO);
            if !a.is_zero() {
                assert_eq!(field.mul(a, field.inv(a).unwrap()), FieldElement::ONE);
            }
            for &b in &els {
                assert_eq!(field.add(a, b), field.add(b, a));
                assert_eq!(field.mul(a, b), field.mul(b, a));
                for &c in &els {
                    assert_eq!(field.add(field.add(a, b), c), field.add(a, field.add(b, c)));
                    assert_eq!(field.mul(field.mul(a, b), c), field.mul(a, field.mul(b, c)));
                    assert_eq!(field.mul(a, field.add(b, c)), field.add(field.mul(a, b), field.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49] {
            check_axioms(&Field::with_order(q).unwrap());
        }
    }

    #[test]
    fn multiplication_agrees_with_polynomial_reduction() {
        // Independent check: multiply coefficient vectors and reduce by hand.
        let field = Field::new(5, 3).unwrap();
        let p = 5u64;
        let f: Vec<u64> = field.spec().poly.iter().map(|&c| c as u64).collect();
        for a in (0..125).step_by(7) {
            for b in (0..125).step_by(11) {
                let ca: Vec<u64> = field.coeffs(FieldElement(a)).iter().map(|&c| c as u64).collect();
                let cb: Vec<u64> = field.coeffs(FieldElement(b)).iter().map(|&c| c as u64).collect();
                let mut prod = [0u64; 5];
                for i in 0..3 {
                    for j in 0..3 {
                        prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
                    }
                }
                for d in (3..5).rev() {
                    let c = prod[d];
                    for k in 0..3 {
                        prod[d - 3 + k] = (prod[d - 3 + k] + p * p - c * f[k]) % p;
                    }
                    prod[d] = 0;
                }
                let expected = field.element(&prod[..3].iter().map(|&c| c as u32).collect::<Vec<_>>()).unwrap();
                assert_eq!(field.mul(FieldElement(a), FieldElement(b)), expected);
            }
        }
    }

    #[test]
    fn primitive_has_full_order() {
        for q in [3u64, 7, 9, 16, 25, 81, 125] {
            let field = Field::with_order(q).unwrap();
            let g = field.primitive();
            let mut x = FieldElement::ONE;
            for i in 1..q {
                x = field.mul(x, g);
                assert_eq!(x == FieldElement::ONE, i == q - 1, "q={q} i={i}");
            }
            assert_eq!(field.multiplicative_order(g), Some(q - 1));
        }
    }

    #[test]
    fn pow_handles_signs() {
        let field = Field::new(7, 1).unwrap();
        let three = FieldElement(3);
        assert_eq!(field.pow(three, -1).unwrap(), FieldElement(5));
        assert_eq!(field.pow(three, 6).unwrap(), FieldElement::ONE);
        assert_eq!(field.pow(FieldElement::ZERO, 0).unwrap(), FieldElement::ONE);
        assert!(field.pow(FieldElement::ZERO, -2).is_err());
        assert_eq!(field.half().unwrap(), FieldElement(4));
    }
}
