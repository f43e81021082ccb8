//! Alternating bilinear forms over GF(2).
//!
//! Over GF(2) the only field automorphism is the identity, so sesquilinear
//! forms are bilinear and skew-symmetric means symmetric. We additionally
//! require a zero diagonal (`beta(v, v) = 0`), which makes every form here
//! alternating. Radicals, hyperbolic decompositions, isometries and Witt
//! extension all work on the packed representation from [`crate::gf2`].

mod decompose;
mod group;
mod isometry;
mod space;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::linalg::nullspace;
use crate::gf2::{BitVector, Gf2Error, Subspace};

pub use decompose::{decompose, decompose_with, Decomposition};
pub use group::{
    ambient_isometry_generators, generated_group_order, orbit_of_subspace, transvection,
};
pub use isometry::{are_isometric, witt_extend, Isometry};
pub use space::{
    make_bounded, make_symplectic, BilinearSpace, CoordTag, GramForm, NamedSpace, SpaceSpec,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(
        "Gram matrix has a nonzero diagonal entry at {0}; only alternating forms are supported"
    )]
    NotAlternating(usize),
    #[error("Gram matrix is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("invalid Gram matrix: {0}")]
    InvalidGram(String),
    #[error("a symplectic space needs at least one hyperbolic pair")]
    NoPairs,
    #[error("ambient space would be zero-dimensional")]
    EmptySpace,
    #[error("unknown basis vector name {0:?}")]
    UnknownBasisName(String),
    #[error("ambient space is degenerate (radical dimension {0})")]
    Degenerate(usize),
    #[error("not an isometry: {0}")]
    NotAnIsometry(String),
    #[error("operation needs a space with a hyperbolic/radical coordinate split")]
    NoSplit,
    #[error("budget exceeded: more than {0} elements")]
    BudgetExceeded(usize),
}

/// Complete isometry invariant of a subspace under an alternating form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsometryType {
    pub dim: usize,
    pub rad_dim: usize,
}

/// Vectors of `s` orthogonal to every vector in `against` (all within `s`'s
/// ambient space).
pub fn orthogonal_within(space: &BilinearSpace, s: &Subspace, against: &[u64]) -> Subspace {
    // functional on coordinate vectors c: sum_i c_i beta(b_i, x)
    let functionals: Vec<u64> = against
        .iter()
        .map(|&x| {
            let gx = space.gram_apply(x);
            s.rows().iter().enumerate().fold(0u64, |acc, (i, &b)| {
                acc | ((crate::gf2::parity(b & gx) as u64) << i)
            })
        })
        .collect();
    let coords = nullspace(&functionals, s.dim());
    Subspace::from_rows_unchecked(
        s.ambient_dim(),
        coords.iter().map(|&c| s.combine(c)).collect(),
    )
}

/// `Rad(S) = {u in S : beta(u, s) = 0 for all s in S}`.
pub fn radical(space: &BilinearSpace, s: &Subspace) -> Subspace {
    orthogonal_within(space, s, s.rows())
}

/// Dimension of `Rad(S)` without materialising it.
pub fn radical_dim(space: &BilinearSpace, s: &Subspace) -> usize {
    let rows = s.rows();
    let gram: Vec<u64> = rows
        .iter()
        .map(|&x| {
            let gx = space.gram_apply(x);
            rows.iter().enumerate().fold(0u64, |acc, (i, &b)| {
                acc | ((crate::gf2::parity(b & gx) as u64) << i)
            })
        })
        .collect();
    rows.len() - crate::gf2::linalg::rank(&gram)
}

pub fn isometry_type(space: &BilinearSpace, s: &Subspace) -> IsometryType {
    IsometryType {
        dim: s.dim(),
        rad_dim: radical_dim(space, s),
    }
}

/// Hyperbolic pairs plus a radical basis spanning a subspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicDecomposition {
    pub pairs: Vec<(BitVector, BitVector)>,
    pub radical: Vec<BitVector>,
}

/// Symplectic Gram–Schmidt. At each step `u` is the alex-least vector not in
/// the radical of what remains and `v` the alex-least partner with
/// `beta(u, v) = 1`; the remainder is then cut down to `<u, v>^perp`.
pub fn hyperbolic_decomposition(space: &BilinearSpace, s: &Subspace) -> HyperbolicDecomposition {
    let n = space.dim();
    let order = space.order();
    let mut rest = s.clone();
    let mut pairs = Vec::new();
    loop {
        let rad = radical(space, &rest);
        if rad.dim() == rest.dim() {
            let radical = rest.basis();
            return HyperbolicDecomposition { pairs, radical };
        }
        let mut elems: Vec<u64> = rest.elements().collect();
        elems.sort_unstable_by_key(|&x| order.key(x));
        let u = *elems
            .iter()
            .find(|&&x| !rad.contains_bits(x))
            .expect("a non-radical vector exists");
        let v = *elems
            .iter()
            .find(|&&x| space.beta(u, x))
            .expect("u is not in the radical");
        pairs.push((
            BitVector::new(u, n).expect("in range"),
            BitVector::new(v, n).expect("in range"),
        ));
        rest = orthogonal_within(space, &rest, &[u, v]);
    }
}
