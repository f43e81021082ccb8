//! Explicit colorings of subspace copies, and the indexed assignment type
//! consumed by the arrow engine.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forms::{decompose, isometry_type, radical, BilinearSpace, FormError, IsometryType};
use crate::gf2::linalg::rank;
use crate::gf2::{BasisOrder, BitVector, Subspace, SubspaceIter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("no triple of distinct pairwise orthogonal vectors satisfies the constraint")]
    NoSuchTriple,
    #[error("radical has dimension {0}, expected a line")]
    RadicalNotALine(usize),
    #[error("subspace of type (dim {}, rad {}) is not a copy of the pattern", .0.dim, .0.rad_dim)]
    InvalidCopy(IsometryType),
    #[error("projection of the copy is not in any family")]
    NotInAnyFamily,
    #[error("copy projects to zero")]
    ZeroProjection,
    #[error("table has {table} labels for {domain} copies")]
    LengthMismatch { table: usize, domain: usize },
    #[error("label {label} is not below the arity {r}")]
    LabelOutOfRange { label: u32, r: u32 },
}

/// A color. `RED`, `WHITE` and `BLUE` are the indices 0, 1 and 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorLabel(pub u32);

impl ColorLabel {
    pub const RED: ColorLabel = ColorLabel(0);
    pub const WHITE: ColorLabel = ColorLabel(1);
    pub const BLUE: ColorLabel = ColorLabel(2);

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for ColorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ColorLabel::RED => f.write_str("RED"),
            ColorLabel::WHITE => f.write_str("WHITE"),
            ColorLabel::BLUE => f.write_str("BLUE"),
            ColorLabel(i) => write!(f, "#{i}"),
        }
    }
}

/// Total map from copy indices `0..len` to labels below `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorAssignment {
    pub r: u32,
    pub labels: Vec<u32>,
}

impl ColorAssignment {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, copy: usize) -> ColorLabel {
        ColorLabel(self.labels[copy])
    }

    /// Labels each copy with `f`, checking arity.
    pub fn from_fn<E>(
        copies: &[Subspace],
        r: u32,
        mut f: impl FnMut(&Subspace) -> Result<ColorLabel, E>,
    ) -> Result<Self, E>
    where
        E: From<ColoringError>,
    {
        let mut labels = Vec::with_capacity(copies.len());
        for c in copies {
            let l = f(c)?.0;
            if l >= r {
                return Err(ColoringError::LabelOutOfRange { label: l, r }.into());
            }
            labels.push(l);
        }
        Ok(Self { r, labels })
    }
}

/// Wraps a label table as an assignment over `domain_len` copies.
pub fn table_coloring(
    domain_len: usize,
    table: Vec<u32>,
    r: u32,
) -> Result<ColorAssignment, ColoringError> {
    if table.len() != domain_len {
        return Err(ColoringError::LengthMismatch {
            table: table.len(),
            domain: domain_len,
        });
    }
    if let Some(&label) = table.iter().find(|&&l| l >= r) {
        return Err(ColoringError::LabelOutOfRange { label, r });
    }
    Ok(ColorAssignment { r, labels: table })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleConstraint {
    /// Some `f_i + f_j` must span the (one-dimensional) radical.
    RadicalSum,
    None,
}

/// Result of the minimal-triple search. `pair` holds 1-based positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalTriple {
    pub f: [BitVector; 3],
    pub pair: Option<(usize, usize)>,
}

/// Among sorted triples `f1 < f2 < f3` of distinct nonzero pairwise
/// orthogonal vectors of `s` (optionally with some `f_i + f_j` spanning
/// `Rad(s)`), returns the least one in tuple anti-lexicographic order, where
/// `f3` is most significant.
pub fn minimal_orthogonal_triple(
    space: &BilinearSpace,
    s: &Subspace,
    constraint: TripleConstraint,
    order: &BasisOrder,
) -> Result<OrthogonalTriple, ColoringError> {
    let rho = match constraint {
        TripleConstraint::RadicalSum => {
            let rad = radical(space, s);
            if rad.dim() != 1 {
                return Err(ColoringError::RadicalNotALine(rad.dim()));
            }
            Some(rad.rows()[0])
        }
        TripleConstraint::None => None,
    };
    let mut elems: Vec<u64> = s.elements().filter(|&x| x != 0).collect();
    elems.sort_unstable_by_key(|&x| order.key(x));
    let gram: Vec<u64> = elems.iter().map(|&x| space.gram_apply(x)).collect();
    let orth = |i: usize, j: usize| !crate::gf2::parity(gram[i] & elems[j]);

    for c in 0..elems.len() {
        for b in 0..c {
            if !orth(b, c) {
                continue;
            }
            for a in 0..b {
                if !(orth(a, b) && orth(a, c)) {
                    continue;
                }
                let (fa, fb, fc) = (elems[a], elems[b], elems[c]);
                let pair = match rho {
                    None => None,
                    Some(r) if fa ^ fb == r => Some((1, 2)),
                    Some(r) if fa ^ fc == r => Some((1, 3)),
                    Some(r) if fb ^ fc == r => Some((2, 3)),
                    Some(_) => continue,
                };
                let n = s.ambient_dim();
                let bv = |x| BitVector::new(x, n).expect("in range");
                return Ok(OrthogonalTriple {
                    f: [bv(fa), bv(fb), bv(fc)],
                    pair,
                });
            }
        }
    }
    Err(ColoringError::NoSuchTriple)
}

/// Pattern type of the copies colored by [`color_rwb`].
pub const RWB_PATTERN: IsometryType = IsometryType { dim: 5, rad_dim: 1 };

/// RED if the radical is spanned by `f1 + f2` of the minimal constrained
/// triple, WHITE for `f1 + f3`, BLUE for `f2 + f3`.
pub fn color_rwb(
    space: &BilinearSpace,
    s: &Subspace,
    order: &BasisOrder,
) -> Result<ColorLabel, ColoringError> {
    let t = isometry_type(space, s);
    if t != RWB_PATTERN {
        return Err(ColoringError::InvalidCopy(t));
    }
    let triple = minimal_orthogonal_triple(space, s, TripleConstraint::RadicalSum, order)?;
    Ok(match triple.pair {
        Some((1, 2)) => ColorLabel::RED,
        Some((1, 3)) => ColorLabel::WHITE,
        _ => ColorLabel::BLUE,
    })
}

/// All subspaces of the hyperbolic block `V1` isometric to `a1`, in
/// enumeration order.
pub fn projection_family(
    space: &BilinearSpace,
    a1: &Subspace,
) -> Result<Vec<Subspace>, ColoringError> {
    if !space.has_split() {
        return Err(FormError::NoSplit.into());
    }
    let hyp = space.hyperbolic_mask();
    if a1.rows().iter().any(|&r| r & !hyp != 0) {
        return Err(ColoringError::NotInAnyFamily);
    }
    let v1 = Subspace::from_rows(
        space.dim(),
        (0..space.dim())
            .filter(|&i| hyp >> i & 1 == 1)
            .map(|i| 1u64 << i),
    )
    .map_err(FormError::from)?;
    let target = isometry_type(space, a1);
    let mut out = Vec::new();
    for inner in SubspaceIter::new(v1.dim(), a1.dim()).map_err(FormError::from)? {
        let cand = v1.embed(&inner);
        if isometry_type(space, &cand) == target {
            out.push(cand);
        }
    }
    Ok(out)
}

/// Index of the family member equal to the projection of `s`.
pub fn color_by_projection_family(
    space: &BilinearSpace,
    s: &Subspace,
    family: &[Subspace],
) -> Result<ColorLabel, ColoringError> {
    let d = decompose(space, s)?;
    family
        .iter()
        .position(|f| *f == d.a1)
        .map(|i| ColorLabel(i as u32))
        .ok_or(ColoringError::NotInAnyFamily)
}

/// WHITE iff the radical offsets of the decomposition are linearly
/// independent modulo `U0`, RED otherwise.
pub fn color_independence(
    space: &BilinearSpace,
    s: &Subspace,
) -> Result<ColorLabel, ColoringError> {
    let d = decompose(space, s)?;
    if d.a1.dim() == 0 {
        return Err(ColoringError::ZeroProjection);
    }
    let mut rows: Vec<u64> = d.u0.rows().to_vec();
    rows.extend(d.offsets.iter().map(|v| v.bits()));
    Ok(if rank(&rows) == d.u0.dim() + d.offsets.len() {
        ColorLabel::WHITE
    } else {
        ColorLabel::RED
    })
}
