//! Finite fields GF(p) and GF(p^a).
//!
//! An element of GF(p^a) is stored as the integer `sum_i c_i p^i` where
//! `c_0 + c_1 u + ... + c_{a-1} u^{a-1}` is its representative modulo the
//! base modulus. For `a = 1` this is just the residue. Integer order on the
//! codes is the lexicographic order on coefficient vectors with the lowest
//! index varying fastest.

use rand::Rng;

use super::{poly, BaseField, BaseFieldDescriptor, Field};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    p: u64,
    degree: u32,
    /// Monic, low to high, length `degree + 1`. `[0, 1]` for prime fields.
    modulus: Vec<u64>,
    q: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl GaloisField {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::BadBase(p));
        }
        Ok(GaloisField {
            p,
            degree: 1,
            modulus: vec![0, 1],
            q: p,
        })
    }

    /// GF(p^a) defined by a monic irreducible `modulus` of degree `a` over GF(p).
    pub fn new(p: u64, modulus: &[u64]) -> Result<Self> {
        let prime = Self::prime(p)?;
        let reduced: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        let reduced = poly::trim(&prime, reduced);
        let a = match poly::degree(&reduced) {
            None | Some(0) => return Err(Error::BadModulus("base modulus has degree 0".into())),
            Some(d) => d,
        };
        if reduced[a] != 1 || reduced.len() != modulus.len() {
            return Err(Error::BadModulus("base modulus must be monic".into()));
        }
        if a == 1 {
            return Ok(prime);
        }
        if !poly::is_irreducible_finite(&prime, &reduced) {
            return Err(Error::NotIrreducible);
        }
        let q = p
            .checked_pow(a as u32)
            .ok_or_else(|| Error::Unsupported(format!("field of size {p}^{a} is too large")))?;
        Ok(GaloisField {
            p,
            degree: a as u32,
            modulus: reduced,
            q,
        })
    }

    pub fn from_descriptor(desc: &BaseFieldDescriptor) -> Result<Self> {
        match (desc.base_degree, &desc.base_modulus) {
            (1, None) => Self::prime(desc.characteristic),
            (a, Some(m)) if m.len() == a as usize + 1 => Self::new(desc.characteristic, m),
            (a, Some(_)) => Err(Error::BadModulus(format!(
                "base modulus must have degree {a}"
            ))),
            (_, None) => Err(Error::BadModulus(
                "base_degree > 1 requires a base_modulus".into(),
            )),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    fn digits(&self, mut x: u64) -> Vec<u64> {
        (0..self.degree)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn undigits(&self, ds: &[u64]) -> u64 {
        ds.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn mulmod_p(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn pow(&self, x: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }
}

impl Field for GaloisField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        if self.degree == 1 {
            return ((*a as u128 + *b as u128) % self.p as u128) as u64;
        }
        let (da, db) = (self.digits(*a), self.digits(*b));
        let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&s)
    }

    fn neg(&self, a: &u64) -> u64 {
        if self.degree == 1 {
            return if *a == 0 { 0 } else { self.p - a };
        }
        let s: Vec<u64> = self
            .digits(*a)
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect();
        self.undigits(&s)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if self.degree == 1 {
            return self.mulmod_p(*a, *b);
        }
        let a_len = self.degree as usize;
        let (da, db) = (self.digits(*a), self.digits(*b));
        let mut prod = vec![0u64; 2 * a_len - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + self.mulmod_p(x, y)) % self.p;
            }
        }
        // reduce with the monic modulus, highest degree first
        for top in (a_len..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for j in 0..a_len {
                let t = self.mulmod_p(c, self.modulus[j]);
                let idx = top - a_len + j;
                prod[idx] = (prod[idx] + self.p - t) % self.p;
            }
        }
        self.undigits(&prod[..a_len])
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.q - 2))
        }
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn size(&self) -> Option<u64> {
        Some(self.q)
    }

    fn element_at(&self, index: u64) -> u64 {
        index
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R, _height: u64) -> u64 {
        rng.random_range(0..self.q)
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        let v: i64 = s
            .parse()
            .map_err(|_| Error::parse(s, "expected an integer element code"))?;
        if self.degree == 1 {
            Ok(self.from_i64(v))
        } else if v >= 0 && (v as u64) < self.q {
            Ok(v as u64)
        } else {
            Err(Error::parse(
                s,
                format!("element code must lie in 0..{}", self.q),
            ))
        }
    }
}

impl BaseField for GaloisField {
    fn descriptor(&self) -> BaseFieldDescriptor {
        BaseFieldDescriptor {
            characteristic: self.p,
            base_degree: self.degree,
            base_modulus: (self.degree > 1).then(|| self.modulus.clone()),
        }
    }

    fn is_irreducible(&self, poly: &[u64]) -> Result<bool> {
        Ok(poly::is_irreducible_finite(self, poly))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(GaloisField::prime(4), Err(Error::BadBase(4)));
        assert_eq!(GaloisField::prime(1), Err(Error::BadBase(1)));
    }

    #[test]
    fn gf4_tables() {
        // u^2 = u + 1; codes: 0, 1, u = 2, u + 1 = 3
        let f = GaloisField::new(2, &[1, 1, 1]).unwrap();
        assert_eq!(f.order(), 4);
        assert_eq!(f.mul(&2, &2), 3);
        assert_eq!(f.mul(&2, &3), 1);
        assert_eq!(f.add(&2, &3), 1);
        assert_eq!(f.inv(&2), Some(3));
    }

    #[test]
    fn gf9_inverses() {
        let f = GaloisField::new(3, &[1, 0, 1]).unwrap();
        for x in 1..9 {
            let xi = f.inv(&x).unwrap();
            assert_eq!(f.mul(&x, &xi), 1, "x = {x}");
        }
    }

    #[test]
    fn reducible_base_modulus() {
        assert_eq!(GaloisField::new(2, &[1, 0, 1]), Err(Error::NotIrreducible));
        assert!(matches!(
            GaloisField::new(2, &[1, 1, 0]),
            Err(Error::BadModulus(_))
        ));
    }

    #[test]
    fn negative_codes_reduce_mod_p() {
        let f = GaloisField::prime(7).unwrap();
        assert_eq!(f.parse_elem("-1").unwrap(), 6);
        let f9 = GaloisField::new(3, &[1, 0, 1]).unwrap();
        assert!(f9.parse_elem("9").is_err());
    }
}
