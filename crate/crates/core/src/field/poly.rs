//! Dense univariate polynomials over a [`Field`], coefficients low to high.
//!
//! The zero polynomial is the empty vector; every function returns trimmed
//! polynomials.

use super::Field;

pub fn trim<F: Field>(f: &F, mut p: Vec<F::Elem>) -> Vec<F::Elem> {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
    p
}

pub fn degree<E>(p: &[E]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, out)
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], s: &F::Elem) -> Vec<F::Elem> {
    trim(f, a.iter().map(|c| f.mul(c, s)).collect())
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

/// Quotient and remainder. Panics if `b` is zero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let b = trim(f, b.to_vec());
    let db = degree(&b).expect("division by the zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
    let mut rem = trim(f, a.to_vec());
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![f.zero(); rem.len() - db];
    while rem.len() > db {
        let shift = rem.len() - 1 - db;
        let c = f.mul(rem.last().unwrap(), &lead_inv);
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] = f.sub(&rem[shift + j], &f.mul(&c, bj));
        }
        quot[shift] = c;
        rem.pop();
        rem = trim(f, rem);
    }
    (trim(f, quot), rem)
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(f, a, b).1
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let li = f.inv(lead).expect("trimmed polynomial");
            scale(f, a, &li)
        }
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = trim(f, a.to_vec());
    let mut y = trim(f, b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
        .collect();
    trim(f, out)
}

pub fn mulmod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod<F: Field>(f: &F, base: &[F::Elem], mut exp: u64, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = rem(f, &[f.one()], m);
    let mut b = rem(f, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(f, &acc, &b, m);
        }
        b = mulmod(f, &b, &b, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inverse_mod<F: Field>(f: &F, a: &[F::Elem], m: &[F::Elem]) -> Option<Vec<F::Elem>> {
    // extended Euclid tracking only the coefficient of `a`
    let mut r0 = trim(f, m.to_vec());
    let mut r1 = rem(f, a, m);
    let mut t0: Vec<F::Elem> = Vec::new();
    let mut t1 = vec![f.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let t = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = f.inv(&r0[0])?;
    Some(rem(f, &scale(f, &t0, &c), m))
}

/// Irreducibility over a finite field with `q` elements: `f` of degree `m` is
/// irreducible iff `gcd(f, x^(q^i) - x) = 1` for every `1 <= i <= m/2`.
pub fn is_irreducible_finite<F: Field>(f: &F, poly: &[F::Elem]) -> bool {
    let poly = trim(f, poly.to_vec());
    let Some(m) = degree(&poly) else { return false };
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let q = f.size().expect("finite field");
    let x = vec![f.zero(), f.one()];
    let mut h = rem(f, &x, &poly);
    for _ in 1..=m / 2 {
        h = powmod(f, &h, q, &poly);
        let g = gcd(f, &poly, &sub(f, &h, &x));
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;

    #[test]
    fn divrem_reassembles() {
        let f = GaloisField::prime(5).unwrap();
        let a = vec![1, 2, 3, 4, 1];
        let b = vec![2, 0, 1];
        let (q, r) = divrem(&f, &a, &b);
        assert!(r.len() < b.len());
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
    }

    #[test]
    fn small_irreducibles_over_gf2() {
        let f = GaloisField::prime(2).unwrap();
        assert!(is_irreducible_finite(&f, &[1, 1, 1]));
        assert!(!is_irreducible_finite(&f, &[1, 0, 1]));
        assert!(is_irreducible_finite(&f, &[1, 1, 0, 1]));
        assert!(!is_irreducible_finite(&f, &[1, 1, 1, 1]));
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 has no roots but is reducible
        assert!(!is_irreducible_finite(&f, &[1, 0, 1, 0, 1]));
        assert!(is_irreducible_finite(&f, &[1, 1, 0, 0, 1]));
    }

    #[test]
    fn inverse_mod_works() {
        let f = GaloisField::prime(3).unwrap();
        let m = vec![1, 0, 1]; // x^2 + 1 over GF(3)
        let a = vec![1, 1];
        let inv = inverse_mod(&f, &a, &m).unwrap();
        assert_eq!(mulmod(&f, &a, &inv, &m), vec![1]);
    }
}
