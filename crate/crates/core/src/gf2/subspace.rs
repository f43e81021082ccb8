use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::linalg::{nullspace, reduce, rref_in_place};
use super::{low_mask, BitVector, Gf2Error, MAX_DIM};

/// A linear subspace of `GF(2)^n`, held as its canonical echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: u8,
    rows: Vec<u64>,
}

impl Subspace {
    /// Span of raw row words. Bits above `ambient_dim` are rejected.
    pub fn from_rows(
        ambient_dim: usize,
        rows: impl IntoIterator<Item = u64>,
    ) -> Result<Self, Gf2Error> {
        if ambient_dim > MAX_DIM {
            return Err(Gf2Error::AmbientTooLarge(ambient_dim));
        }
        let mask = !low_mask(ambient_dim);
        let mut rows: Vec<u64> = rows.into_iter().collect();
        if let Some(bad) = rows.iter().find(|&&r| r & mask != 0) {
            return Err(Gf2Error::Parse(format!(
                "row {bad:#x} exceeds dimension {ambient_dim}"
            )));
        }
        rref_in_place(&mut rows);
        Ok(Self {
            ambient: ambient_dim as u8,
            rows,
        })
    }

    /// Canonical span of a list of vectors sharing one ambient dimension.
    pub fn span(ambient_dim: usize, vectors: &[BitVector]) -> Result<Self, Gf2Error> {
        if let Some(v) = vectors.iter().find(|v| v.ambient_dim() != ambient_dim) {
            return Err(Gf2Error::DimensionMismatch {
                left: ambient_dim,
                right: v.ambient_dim(),
            });
        }
        Self::from_rows(ambient_dim, vectors.iter().map(|v| v.bits()))
    }

    /// Trusted constructor for rows already known to be in range.
    pub(crate) fn from_rows_unchecked(ambient_dim: usize, mut rows: Vec<u64>) -> Self {
        rref_in_place(&mut rows);
        Self {
            ambient: ambient_dim as u8,
            rows,
        }
    }

    /// Rows already in canonical form (enumeration fast path).
    pub(crate) fn from_canonical(ambient_dim: usize, rows: Vec<u64>) -> Self {
        debug_assert!({
            let mut check = rows.clone();
            rref_in_place(&mut check);
            check == rows
        });
        Self {
            ambient: ambient_dim as u8,
            rows,
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_rows_unchecked(ambient_dim, Vec::new())
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_canonical(ambient_dim, (0..ambient_dim).map(|i| 1u64 << i).collect())
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient as usize
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical basis rows as raw words.
    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<BitVector> {
        self.rows
            .iter()
            .map(|&r| BitVector::new(r, self.ambient_dim()).expect("row within dimension"))
            .collect()
    }

    /// Bitmask of pivot coordinates.
    pub fn pivot_mask(&self) -> u64 {
        self.rows
            .iter()
            .fold(0, |acc, r| acc | (r & r.wrapping_neg()))
    }

    #[inline]
    pub fn contains_bits(&self, v: u64) -> bool {
        reduce(&self.rows, v) == 0
    }

    pub fn contains(&self, v: BitVector) -> bool {
        v.ambient_dim() == self.ambient_dim() && self.contains_bits(v.bits())
    }

    /// Canonical coset representative of `v` modulo this subspace.
    #[inline]
    pub fn reduce_bits(&self, v: u64) -> u64 {
        reduce(&self.rows, v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|&r| other.contains_bits(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let rows = self.rows.iter().chain(other.rows.iter()).copied().collect();
        Self::from_rows_unchecked(self.ambient_dim(), rows)
    }

    pub fn with_vector(&self, v: u64) -> Subspace {
        let mut rows = self.rows.clone();
        rows.push(v);
        Self::from_rows_unchecked(self.ambient_dim(), rows)
    }

    /// Orthogonal complement under the standard dot product.
    pub fn dot_annihilator(&self) -> Subspace {
        Self::from_canonical(
            self.ambient_dim(),
            nullspace(&self.rows, self.ambient_dim()),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // (A ∩ B) = ann(ann A + ann B)
        self.dot_annihilator()
            .sum(&other.dot_annihilator())
            .dot_annihilator()
    }

    /// Coordinates of a member `v` in the canonical basis (bit `i` = row `i`).
    pub fn coordinates(&self, v: u64) -> u64 {
        let mut c = 0u64;
        for (i, r) in self.rows.iter().enumerate() {
            if v & (r & r.wrapping_neg()) != 0 {
                c |= 1 << i;
            }
        }
        c
    }

    /// The member with coordinate word `coords` in the canonical basis.
    #[inline]
    pub fn combine(&self, mut coords: u64) -> u64 {
        let mut v = 0u64;
        while coords != 0 {
            let i = coords.trailing_zeros() as usize;
            v ^= self.rows[i];
            coords &= coords - 1;
        }
        v
    }

    /// Image of a subspace of `GF(2)^dim` expressed in this subspace's basis.
    pub fn embed(&self, inner: &Subspace) -> Subspace {
        assert_eq!(inner.ambient_dim(), self.dim());
        let rows = inner.rows.iter().map(|&c| self.combine(c)).collect();
        Self::from_rows_unchecked(self.ambient_dim(), rows)
    }

    /// All `2^dim` members, in Gray-code order starting at zero.
    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        let n = 1u64 << self.dim();
        let mut acc = 0u64;
        (0..n).map(move |i| {
            if i > 0 {
                acc ^= self.rows[i.trailing_zeros() as usize];
            }
            acc
        })
    }

    /// Members sorted by numeric value (the identity-order anti-lexicographic order).
    pub fn sorted_elements(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.elements().collect();
        v.sort_unstable();
        v
    }

    /// Some complement of `inner` inside `self`: canonical rows of `self` whose
    /// pivots are not hit by `inner` after reduction.
    pub fn complement_of(&self, inner: &Subspace) -> Subspace {
        debug_assert!(inner.is_subspace_of(self));
        let mut acc = inner.rows.clone();
        let mut extra = Vec::new();
        for &r in &self.rows {
            if reduce(&acc, r) != 0 {
                extra.push(r);
                acc.push(r);
                rref_in_place(&mut acc);
            }
        }
        Self::from_rows_unchecked(self.ambient_dim(), extra)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis: Vec<String> = self.basis().iter().map(|v| v.to_string()).collect();
        write!(f, "Subspace<{}>[{}]", self.ambient, basis.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient_dim: usize,
    basis: Vec<String>,
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SubspaceRepr {
            ambient_dim: self.ambient_dim(),
            basis: self.basis().iter().map(|v| v.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SubspaceRepr::deserialize(deserializer)?;
        let vectors = repr
            .basis
            .iter()
            .map(|s| s.parse::<BitVector>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Subspace::span(repr.ambient_dim, &vectors).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn rref_example_and_brute_force_span() {
        let s = Subspace::span(3, &[bv("110"), bv("011")]).unwrap();
        let basis: Vec<String> = s.basis().iter().map(|v| v.to_string()).collect();
        assert_eq!(basis, ["101", "011"]);
        assert_eq!(s.dim(), 2);
        // the span of {110, 011} is {000, 110, 011, 101}
        let mut span: Vec<u64> = s.elements().collect();
        span.sort();
        let mut expected = vec![0, 0b011, 0b110, 0b101];
        expected.sort();
        assert_eq!(span, expected);
    }

    #[test]
    fn empty_and_repeated_spans() {
        assert_eq!(Subspace::span(4, &[]).unwrap().dim(), 0);
        let v = bv("0110");
        let s = Subspace::span(4, &[v, v]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(v));
    }

    #[test]
    fn mismatched_dimensions_rejected() {
        let err = Subspace::span(3, &[bv("10"), bv("011")]).unwrap_err();
        assert!(matches!(err, Gf2Error::DimensionMismatch { .. }));
    }

    #[test]
    fn intersection_and_complement() {
        let a = Subspace::span(4, &[bv("1000"), bv("0100")]).unwrap();
        let b = Subspace::span(4, &[bv("1100"), bv("0010")]).unwrap();
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::span(4, &[bv("1100")]).unwrap());
        let c = a.complement_of(&i);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.sum(&i), a);
    }

    #[test]
    fn json_form() {
        let s = Subspace::span(3, &[bv("110"), bv("011")]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"ambient_dim":3,"basis":["101","011"]}"#);
        let back: Subspace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
