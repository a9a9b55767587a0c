//! Rank supports, generalized closures and generalized rank weights of
//! linear codes `C ⊆ L^n` over a finite extension `L/k`.
//!
//! All arithmetic is exact. The base field is either a finite field
//! ([`GaloisField`]) or an exact characteristic-zero scalar type wrapped in
//! [`NumField`]; every algorithm is generic over the [`Field`] trait.

pub mod document;
pub mod error;
pub mod field;
pub mod linalg;
pub mod report;
pub mod support;
pub mod verify;
pub mod weights;
pub mod witness;

pub use document::{parse_code_file, AnyCode, AnyTower, CodeDocument};
pub use error::{Error, Result};
pub use field::{
    BaseField, BaseFieldDescriptor, ExtElem, ExtensionTower, Field, GaloisField, NumField,
};
pub use support::{KBasis, KSubspace, LVector, LinearCode};

pub use field::rational::Rationals;

/// `L/k` with `k` finite.
pub type FiniteTower = ExtensionTower<GaloisField>;
/// `L/Q`.
pub type RationalTower = ExtensionTower<Rationals>;
pub type FiniteCode = LinearCode<GaloisField>;
pub type RationalCode = LinearCode<Rationals>;
