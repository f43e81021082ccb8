use serde::{Deserialize, Serialize};

use super::{BitVector, Gf2Error, Subspace};

/// A coset `direction + offset` with the offset reduced modulo the direction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct AffineFlat {
    direction: Subspace,
    offset: BitVector,
}

impl AffineFlat {
    pub fn new(direction: Subspace, offset: BitVector) -> Result<Self, Gf2Error> {
        if offset.ambient_dim() != direction.ambient_dim() {
            return Err(Gf2Error::DimensionMismatch {
                left: direction.ambient_dim(),
                right: offset.ambient_dim(),
            });
        }
        let reduced = direction.reduce_bits(offset.bits());
        Ok(Self {
            offset: BitVector::new(reduced, direction.ambient_dim())?,
            direction,
        })
    }

    pub(crate) fn from_raw(direction: Subspace, offset: u64) -> Self {
        let reduced = direction.reduce_bits(offset);
        let dim = direction.ambient_dim();
        Self {
            direction,
            offset: BitVector::new(reduced, dim).expect("offset within dimension"),
        }
    }

    pub fn direction(&self) -> &Subspace {
        &self.direction
    }

    pub fn offset(&self) -> BitVector {
        self.offset
    }

    pub fn dim(&self) -> usize {
        self.direction.dim()
    }

    /// True for flats not passing through the origin.
    pub fn is_proper(&self) -> bool {
        !self.offset.is_zero()
    }

    pub fn contains_bits(&self, v: u64) -> bool {
        self.direction.reduce_bits(v) == self.offset.bits()
    }

    pub fn is_subflat_of(&self, other: &AffineFlat) -> bool {
        self.direction.is_subspace_of(&other.direction) && other.contains_bits(self.offset.bits())
    }

    pub fn points(&self) -> impl Iterator<Item = u64> + '_ {
        let o = self.offset.bits();
        self.direction.elements().map(move |x| x ^ o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_offset_reduces_to_itself() {
        let dir = Subspace::from_rows(3, [0b011]).unwrap();
        let f = AffineFlat::new(dir.clone(), BitVector::new(0b111, 3).unwrap()).unwrap();
        assert_eq!(f.offset().bits(), 0b100);
        let g = AffineFlat::new(dir, f.offset()).unwrap();
        assert_eq!(f, g);
        assert!(f.is_proper());
    }

    #[test]
    fn coset_equality_matches_point_sets() {
        // brute force over n = 4: flats equal iff point sets equal
        let n = 4;
        let mut flats = Vec::new();
        for d in 0..=n {
            for dir in crate::gf2::SubspaceIter::new(n, d).unwrap() {
                for off in 0..(1u64 << n) {
                    flats.push(AffineFlat::from_raw(dir.clone(), off));
                }
            }
        }
        for a in flats.iter().step_by(7) {
            for b in flats.iter().step_by(5) {
                let mut pa: Vec<u64> = a.points().collect();
                let mut pb: Vec<u64> = b.points().collect();
                pa.sort();
                pb.sort();
                assert_eq!(a == b, pa == pb);
            }
        }
    }
}
