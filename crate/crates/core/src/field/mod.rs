//! Field backends.
//!
//! Fields are runtime values (a prime, a modulus, a tower) so arithmetic goes
//! through a context object implementing [`Field`] rather than through
//! operator overloading on the elements themselves. Every algorithm in the
//! crate is written once against this trait.

use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;

pub mod galois;
pub mod poly;
pub mod rational;
pub mod tower;

pub use galois::GaloisField;
pub use rational::{NumField, Rationals};
pub use tower::{ExtElem, ExtensionTower};

/// Arithmetic context for a commutative field.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite (or too large for a `u64`).
    fn size(&self) -> Option<u64>;
    /// The `index`-th element in enumeration order. Only meaningful for
    /// finite fields and `index < size()`.
    fn element_at(&self, index: u64) -> Self::Elem;
    /// A random element. `height` bounds numerators and denominators for
    /// infinite fields and is ignored by finite ones.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, height: u64) -> Self::Elem;

    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    /// Used only for sign-aware pretty printing.
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// All elements in enumeration order.
    fn elements(&self) -> Result<Box<dyn Iterator<Item = Self::Elem> + '_>> {
        let q = self.size().ok_or(crate::Error::InfiniteField)?;
        Ok(Box::new((0..q).map(move |i| self.element_at(i))))
    }
}

/// Serializable description of a base field `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BaseFieldDescriptor {
    /// 0 for the rationals, otherwise a prime.
    pub characteristic: u64,
    pub base_degree: u32,
    /// Low-to-high coefficients over the prime field; present iff `base_degree > 1`.
    pub base_modulus: Option<Vec<u64>>,
}

impl BaseFieldDescriptor {
    pub fn rationals() -> Self {
        BaseFieldDescriptor {
            characteristic: 0,
            base_degree: 1,
            base_modulus: None,
        }
    }

    pub fn prime(p: u64) -> Self {
        BaseFieldDescriptor {
            characteristic: p,
            base_degree: 1,
            base_modulus: None,
        }
    }
}

/// A field that can sit at the bottom of an [`ExtensionTower`].
pub trait BaseField: Field {
    fn descriptor(&self) -> BaseFieldDescriptor;
    /// Decide irreducibility of a monic polynomial (low-to-high coefficients)
    /// of degree at least 1.
    fn is_irreducible(&self, poly: &[Self::Elem]) -> Result<bool>;
}
