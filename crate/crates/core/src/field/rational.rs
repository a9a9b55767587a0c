//! Characteristic-zero fields backed by exact `num-traits` scalar types.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::marker::PhantomData;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::{poly, BaseField, BaseFieldDescriptor, Field};
use crate::error::{Error, Result};

/// Field context for an exact scalar type `T` (e.g. `BigRational`).
pub struct NumField<T>(PhantomData<fn() -> T>);

impl<T> NumField<T> {
    pub const fn new() -> Self {
        NumField(PhantomData)
    }
}

impl<T> Default for NumField<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for NumField<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for NumField<T> {}

impl<T> PartialEq for NumField<T> {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl<T> Debug for NumField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumField<{}>", std::any::type_name::<T>())
    }
}

impl<T> Field for NumField<T>
where
    T: Num + Signed + FromPrimitive + Display + FromStr + Clone + Debug + Eq + Hash + Send + Sync,
{
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }

    fn one(&self) -> T {
        T::one()
    }

    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }

    fn neg(&self, a: &T) -> T {
        -a.clone()
    }

    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }

    fn inv(&self, a: &T) -> Option<T> {
        (!a.is_zero()).then(|| T::one() / a.clone())
    }

    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }

    fn from_i64(&self, v: i64) -> T {
        T::from_i64(v).expect("integer embeds into the scalar type")
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn size(&self) -> Option<u64> {
        None
    }

    fn element_at(&self, _index: u64) -> T {
        panic!("characteristic-zero fields cannot be enumerated")
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R, height: u64) -> T {
        let h = height.max(1) as i64;
        let num = rng.random_range(-h..=h);
        let den = rng.random_range(1..=h);
        self.from_i64(num) / self.from_i64(den)
    }

    fn format_elem(&self, a: &T) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<T> {
        let s = s.trim();
        let v = T::from_str(s).map_err(|_| Error::parse(s, "expected an integer or a/b"))?;
        Ok(v)
    }

    fn is_negative(&self, a: &T) -> bool {
        a.is_negative()
    }
}

/// The rationals with arbitrary-precision numerators and denominators.
pub type Rationals = NumField<BigRational>;

fn divisors(n: i64) -> Vec<i64> {
    let n = n.unsigned_abs();
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as i64);
            if d * d != n {
                out.push((n / d) as i64);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// Primitive integer multiple of a rational polynomial.
fn integer_multiple(f: &[BigRational]) -> Result<Vec<i64>> {
    let lcm = f.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.iter().map(|c| (c * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.iter()
        .map(|c| {
            (c / &g)
                .to_i64()
                .ok_or_else(|| Error::Unsupported("modulus coefficients too large".into()))
        })
        .collect()
}

/// Does the primitive integer polynomial `g` have a factor of degree `d`?
fn has_factor_of_degree(q: &Rationals, g: &[i64], d: usize) -> Result<bool> {
    let m = g.len() - 1;
    let lead = g[m];
    let constant = g[0];
    let to_q = |v: &[i64]| -> Vec<BigRational> { v.iter().map(|&c| q.from_i64(c)).collect() };
    let target = to_q(g);
    let lead_divs = divisors(lead);
    let const_divs: Vec<i64> = divisors(constant)
        .into_iter()
        .flat_map(|c| [c, -c])
        .collect();
    if d == 1 {
        for &s in &lead_divs {
            for &r in &const_divs {
                let root = BigRational::new(r.into(), s.into());
                let val = target
                    .iter()
                    .rev()
                    .fold(BigRational::zero(), |acc, c| acc * &root + c);
                if val.is_zero() {
                    return Ok(true);
                }
            }
        }
        return Ok(false);
    }
    // Mignotte-style bound on the interior coefficients of an integer factor
    let norm2 = g
        .iter()
        .map(|&c| (c as f64) * (c as f64))
        .sum::<f64>()
        .sqrt();
    let bounds: Vec<i64> = (0..=d)
        .map(|j| (binomial(d, j) as f64 * norm2).ceil() as i64)
        .collect();
    let interior: u128 = (1..d).map(|j| 2 * bounds[j] as u128 + 1).product();
    let space = interior * lead_divs.len() as u128 * const_divs.len() as u128;
    if space > 20_000_000 {
        return Err(Error::Unsupported(format!(
            "irreducibility search over degree {m} modulus is too large"
        )));
    }
    let mut cand = vec![0i64; d + 1];
    for &s in &lead_divs {
        for &r in &const_divs {
            cand[d] = s;
            cand[0] = r;
            let mut counters: Vec<i64> = (1..d).map(|j| -bounds[j]).collect();
            loop {
                cand[1..d].copy_from_slice(&counters);
                if poly::rem(q, &target, &to_q(&cand)).is_empty() {
                    return Ok(true);
                }
                // odometer over the interior coefficients
                let mut i = 0;
                loop {
                    if i == counters.len() {
                        break;
                    }
                    if counters[i] < bounds[i + 1] {
                        counters[i] += 1;
                        break;
                    }
                    counters[i] = -bounds[i + 1];
                    i += 1;
                }
                if i == counters.len() {
                    break;
                }
            }
        }
    }
    Ok(false)
}

impl BaseField for Rationals {
    fn descriptor(&self) -> BaseFieldDescriptor {
        BaseFieldDescriptor::rationals()
    }

    fn is_irreducible(&self, f: &[BigRational]) -> Result<bool> {
        let f = poly::trim(self, f.to_vec());
        let m = match poly::degree(&f) {
            None | Some(0) => return Ok(false),
            Some(m) => m,
        };
        if m == 1 {
            return Ok(true);
        }
        let g = integer_multiple(&f)?;
        if g[0] == 0 {
            return Ok(false);
        }
        for d in 1..=m / 2 {
            if has_factor_of_degree(self, &g, d)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
