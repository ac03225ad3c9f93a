//! Dense polynomials over a prime field, little-endian coefficient vectors.
//!
//! Only what field construction needs: reduction, modular multiplication and
//! powering, gcd, and Rabin's irreducibility test.

pub(crate) type Poly = Vec<u64>;

fn trim(a: &mut Poly) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn degree(a: &Poly) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    crate::numtheory::pow_mod(a, p - 2, p)
}

/// Remainder of `a` modulo `m` (m must be nonzero).
pub(crate) fn rem(a: &Poly, m: &Poly, p: u64) -> Poly {
    let dm = degree(m).expect("division by zero polynomial");
    let lead_inv = inv_mod(m[dm], p);
    let mut r = a.clone();
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = r[dr] * lead_inv % p;
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate().take(dm + 1) {
            let sub = factor * c % p;
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
    }
    r.truncate(dm.max(1));
    if r.is_empty() {
        r.push(0);
    }
    trim(&mut r);
    r
}

pub(crate) fn mul_mod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, m, p)
}

pub(crate) fn pow_mod(base: &Poly, mut exp: u64, m: &Poly, p: u64) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    rem(&acc, m, p)
}

fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut a = a.clone();
    let mut b = b.clone();
    trim(&mut a);
    trim(&mut b);
    while degree(&b).is_some() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// x^(p^k) mod f, by k successive p-th powers.
fn frobenius_power_of_x(k: u32, f: &Poly, p: u64) -> Poly {
    let mut acc: Poly = rem(&vec![0, 1], f, p);
    for _ in 0..k {
        acc = pow_mod(&acc, p, f, p);
    }
    acc
}

/// Rabin's test for a monic polynomial of degree n >= 1 over GF(p).
pub(crate) fn is_irreducible(f: &Poly, p: u64) -> bool {
    let n = match degree(f) {
        Some(d) if d >= 1 => d as u32,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let full = frobenius_power_of_x(n, f, p);
    if degree(&sub(&full, &rem(&x, f, p), p)).is_some() {
        return false;
    }
    for (r, _) in crate::numtheory::factorize(n as u64) {
        let partial = frobenius_power_of_x(n / r as u32, f, p);
        let diff = sub(&partial, &x, p);
        let g = gcd(f, &diff, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}
