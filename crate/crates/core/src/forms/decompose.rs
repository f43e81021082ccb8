use serde::{Deserialize, Serialize};

use super::{BilinearSpace, FormError};
use crate::gf2::{BitVector, Subspace};

/// `U = U0 ⊕ U1` relative to a coordinate split `V = V1 ⊕ K`, where `π`
/// projects onto `V1` along `K`.
///
/// `u0 = U ∩ K`, `a1 = π(U)`, and `u1` is the complement whose basis is
/// `a_i + v_i` for the canonical basis `a_i` of `a1`, with every offset `v_i`
/// in `K` reduced modulo `u0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub u0: Subspace,
    pub u1: Subspace,
    pub a1: Subspace,
    pub offsets: Vec<BitVector>,
}

impl Decomposition {
    /// The coset `u0 + v1` for a one-dimensional projection.
    pub fn single_offset_coset(&self) -> Option<crate::gf2::AffineFlat> {
        (self.a1.dim() == 1).then(|| {
            crate::gf2::AffineFlat::new(self.u0.clone(), self.offsets[0]).expect("same dimension")
        })
    }
}

/// Decomposes `u` along the kernel coordinates `kernel_mask`.
pub fn decompose_with(u: &Subspace, kernel_mask: u64) -> Decomposition {
    let n = u.ambient_dim();
    let keep = !kernel_mask;
    // rows (π(b) | b << 64), reduced on the projected half
    let mut rows: Vec<u128> = u
        .rows()
        .iter()
        .map(|&b| (b & keep) as u128 | (b as u128) << 64)
        .collect();
    let mut rank = 0;
    for col in 0..64 {
        let bit = 1u128 << col;
        let Some(found) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let p = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && *r & bit != 0 {
                *r ^= p;
            }
        }
        rank += 1;
    }
    let u0 =
        Subspace::from_rows_unchecked(n, rows[rank..].iter().map(|&r| (r >> 64) as u64).collect());
    let lifts: Vec<u64> = rows[..rank]
        .iter()
        .map(|&r| u0.reduce_bits((r >> 64) as u64))
        .collect();
    let a1_rows: Vec<u64> = rows[..rank].iter().map(|&r| r as u64).collect();
    let a1 = Subspace::from_canonical(n, a1_rows);
    let offsets = lifts
        .iter()
        .map(|&l| BitVector::new(l & kernel_mask, n).expect("in range"))
        .collect();
    let u1 = Subspace::from_rows_unchecked(n, lifts);
    Decomposition {
        u0,
        u1,
        a1,
        offsets,
    }
}

/// Decomposition relative to `V = V1 ⊕ Rad(V)` of a structured space.
pub fn decompose(space: &BilinearSpace, u: &Subspace) -> Result<Decomposition, FormError> {
    if !space.has_split() {
        return Err(FormError::NoSplit);
    }
    Ok(decompose_with(u, space.radical_mask()))
}
