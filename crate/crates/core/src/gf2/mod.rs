//! Linear algebra over GF(2) on packed bit words.
//!
//! Vectors live in a finite truncation `GF(2)^n` with `n <= 64`; coordinate
//! `i` is bit `i` of a `u64`. Subspaces are stored as reduced row-echelon
//! bases where the pivot of a row is its lowest set coordinate, so two
//! subspaces are equal exactly when their stored bases are equal.

mod enumerate;
mod flat;
pub mod linalg;
mod order;
mod subspace;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use enumerate::{
    gaussian_binomial, gaussian_binomial_big, subspace_chunks, FlatIter, SubspaceChunk,
    SubspaceIter,
};
pub use flat::AffineFlat;
pub use order::{alex_compare, tuple_alex_compare, BasisOrder};
pub use subspace::Subspace;

/// Largest supported ambient dimension (one machine word).
pub const MAX_DIM: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("ambient dimension {0} exceeds the supported maximum of {MAX_DIM}")]
    AmbientTooLarge(usize),
    #[error("subspace dimension {d} out of range for ambient dimension {n}")]
    DimensionOutOfRange { n: usize, d: usize },
    #[error("count overflows a 128-bit integer")]
    Overflow,
    #[error("enumeration too large: {0} free coordinates in one echelon pattern")]
    EnumerationTooLarge(usize),
    #[error("tuple length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("cannot parse bit string {0:?}")]
    Parse(String),
}

/// Mask with the low `n` bits set.
#[inline]
pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

/// A vector of `GF(2)^n`.
///
/// The derived `Ord` compares the packed words numerically, which is the
/// anti-lexicographic order for the identity coordinate order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    bits: u64,
    dim: u8,
}

impl BitVector {
    pub fn new(bits: u64, ambient_dim: usize) -> Result<Self, Gf2Error> {
        if ambient_dim > MAX_DIM {
            return Err(Gf2Error::AmbientTooLarge(ambient_dim));
        }
        if bits & !low_mask(ambient_dim) != 0 {
            return Err(Gf2Error::Parse(format!(
                "{bits:#x} has bits above dimension {ambient_dim}"
            )));
        }
        Ok(Self {
            bits,
            dim: ambient_dim as u8,
        })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::new(0, ambient_dim).expect("dimension within range")
    }

    /// Standard basis vector `e_i` (coordinate `i`).
    pub fn unit(ambient_dim: usize, i: usize) -> Self {
        assert!(
            i < ambient_dim,
            "coordinate {i} outside dimension {ambient_dim}"
        );
        Self::new(1 << i, ambient_dim).expect("dimension within range")
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn ambient_dim(self) -> usize {
        self.dim as usize
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn get(self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn add(self, other: Self) -> Result<Self, Gf2Error> {
        if self.dim != other.dim {
            return Err(Gf2Error::DimensionMismatch {
                left: self.ambient_dim(),
                right: other.ambient_dim(),
            });
        }
        Ok(Self {
            bits: self.bits ^ other.bits,
            dim: self.dim,
        })
    }

    pub fn dot(self, other: Self) -> bool {
        parity(self.bits & other.bits)
    }
}

impl fmt::Display for BitVector {
    /// Little-endian bit string: character `i` is coordinate `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.ambient_dim())
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.len() > MAX_DIM {
            return Err(Gf2Error::AmbientTooLarge(s.len()));
        }
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Gf2Error::Parse(s.to_string())),
            }
        }
        BitVector::new(bits, s.len())
    }
}

impl Serialize for BitVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_string_is_little_endian() {
        let v: BitVector = "110".parse().unwrap();
        assert_eq!(v.bits(), 0b011);
        assert_eq!(v.ambient_dim(), 3);
        assert_eq!(v.to_string(), "110");
    }

    #[test]
    fn rejects_bits_above_dimension() {
        assert!(BitVector::new(0b1000, 3).is_err());
        assert!("10x".parse::<BitVector>().is_err());
    }

    #[test]
    fn add_checks_dimension() {
        let a = BitVector::unit(3, 0);
        let b = BitVector::unit(4, 0);
        assert!(matches!(a.add(b), Err(Gf2Error::DimensionMismatch { .. })));
        assert!(a.add(a).unwrap().is_zero());
    }
}
