use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{Budget, Hypergraph, RamseyError};
use crate::colorings::{ColorLabel, ColoringError};
use crate::forms::{decompose, isometry_type, BilinearSpace, FormError, IsometryType};
use crate::gf2::linalg::rank;
use crate::gf2::{gaussian_binomial, subspace_chunks, Subspace, SubspaceIter};
use crate::par::{map_collect, map_reduce, Parallelism};

/// Shape of a copy: its isometry type and, for split spaces, the
/// dimension of its meet with `Rad(V)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pattern {
    pub dim: usize,
    pub rad_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rad_meet: Option<usize>,
}

impl Pattern {
    pub fn of_type(t: IsometryType) -> Self {
        Self {
            dim: t.dim,
            rad_dim: t.rad_dim,
            rad_meet: None,
        }
    }

    /// Full pattern of `s`, including the radical meet when the space splits.
    pub fn of(space: &BilinearSpace, s: &Subspace) -> Self {
        let t = isometry_type(space, s);
        Self {
            dim: t.dim,
            rad_dim: t.rad_dim,
            rad_meet: space.has_split().then(|| rad_meet(space, s)),
        }
    }

    pub fn isometry_type(&self) -> IsometryType {
        IsometryType {
            dim: self.dim,
            rad_dim: self.rad_dim,
        }
    }
}

/// `dim(S ∩ Rad(V))` for a split space.
pub(crate) fn rad_meet(space: &BilinearSpace, s: &Subspace) -> usize {
    let hyp = space.hyperbolic_mask();
    let projected: Vec<u64> = s.rows().iter().map(|&r| r & hyp).collect();
    s.dim() - rank(&projected)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CopyNotion {
    /// Same isometry type.
    Isometric,
    /// Same orbit under the isometries of the ambient space. For
    /// `V = V1 ⊕ Rad(V)` the orbit of `S` is fixed by its isometry type
    /// together with `dim(S ∩ Rad(V))`.
    AmbientOrbit,
    /// Same type, with projection onto the hyperbolic block exactly `C1`.
    Family(Subspace),
}

/// A pattern, a notion, and an optional extra predicate.
#[derive(Clone, Copy)]
pub struct CopySpec<'a> {
    pub pattern: Pattern,
    pub notion: &'a CopyNotion,
    pub filter: Option<&'a (dyn Fn(&Subspace) -> bool + Sync)>,
}

impl<'a> CopySpec<'a> {
    pub fn new(pattern: Pattern, notion: &'a CopyNotion) -> Self {
        Self {
            pattern,
            notion,
            filter: None,
        }
    }

    pub fn with_filter(mut self, filter: &'a (dyn Fn(&Subspace) -> bool + Sync)) -> Self {
        self.filter = Some(filter);
        self
    }

    fn validate(&self, space: &BilinearSpace) -> Result<(), RamseyError> {
        match self.notion {
            CopyNotion::Isometric => Ok(()),
            CopyNotion::AmbientOrbit if self.pattern.rad_meet.is_none() => {
                Err(RamseyError::Precondition(
                    "orbit notion needs the radical meet of the pattern".into(),
                ))
            }
            CopyNotion::AmbientOrbit | CopyNotion::Family(_) if !space.has_split() => {
                Err(FormError::NoSplit.into())
            }
            _ => Ok(()),
        }
    }

    pub fn matches(&self, space: &BilinearSpace, s: &Subspace) -> bool {
        if s.dim() != self.pattern.dim || isometry_type(space, s) != self.pattern.isometry_type() {
            return false;
        }
        let notion_ok = match self.notion {
            CopyNotion::Isometric => true,
            CopyNotion::AmbientOrbit => Some(rad_meet(space, s)) == self.pattern.rad_meet,
            CopyNotion::Family(c1) => decompose(space, s).map(|d| d.a1 == *c1).unwrap_or(false),
        };
        notion_ok && self.filter.is_none_or(|f| f(s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopySet {
    pub pattern: Pattern,
    pub notion: CopyNotion,
    /// Sorted by canonical basis.
    pub copies: Vec<Subspace>,
}

fn check_scan_budget(n: usize, d: usize, budget: &Budget) -> Result<(), RamseyError> {
    let count = gaussian_binomial(n, d)?;
    if count > budget.max_copies as u128 {
        return Err(RamseyError::Budget {
            what: "candidate subspaces",
            needed: count.to_string(),
            limit: budget.max_copies,
        });
    }
    Ok(())
}

/// All subspaces of `c` that are copies under `spec`, sorted.
pub fn enumerate_copies(
    space: &BilinearSpace,
    c: &Subspace,
    spec: CopySpec<'_>,
    budget: &Budget,
    mode: Parallelism,
) -> Result<CopySet, RamseyError> {
    spec.validate(space)?;
    let d = spec.pattern.dim;
    if d > c.dim() {
        return Ok(CopySet {
            pattern: spec.pattern,
            notion: spec.notion.clone(),
            copies: Vec::new(),
        });
    }
    check_scan_budget(c.dim(), d, budget)?;
    let chunks = subspace_chunks(c.dim(), d, 12)?;
    let found = map_collect(mode, &chunks, |chunk| {
        chunk
            .iter()
            .map(|inner| c.embed(&inner))
            .filter(|s| spec.matches(space, s))
            .collect::<Vec<_>>()
    });
    let mut copies: Vec<Subspace> = found.into_iter().flatten().collect();
    copies.sort_unstable();
    Ok(CopySet {
        pattern: spec.pattern,
        notion: spec.notion.clone(),
        copies,
    })
}

/// Vertices are A-copies, edges list the A-copies inside each B-copy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowInstance {
    pub r: u32,
    pub a_copies: Vec<Subspace>,
    pub b_copies: Vec<Subspace>,
    pub graph: Hypergraph,
}

impl ArrowInstance {
    /// Links each B-copy to the listed A-copies it contains. Every B-copy
    /// must contain at least one.
    pub fn from_copies(
        a_copies: Vec<Subspace>,
        b_copies: Vec<Subspace>,
        r: u32,
        mode: Parallelism,
    ) -> Result<Self, RamseyError> {
        let Some(a_dim) = a_copies.first().map(Subspace::dim) else {
            if b_copies.is_empty() {
                let graph = Hypergraph::new(0, Vec::<Vec<u32>>::new())?;
                return Ok(Self {
                    r,
                    a_copies,
                    b_copies,
                    graph,
                });
            }
            return Err(RamseyError::NotEmbedded(0));
        };
        if a_copies.iter().any(|a| a.dim() != a_dim) {
            return Err(RamseyError::Precondition(
                "A-copies differ in dimension".into(),
            ));
        }
        let index: HashMap<&Subspace, u32> = a_copies
            .iter()
            .enumerate()
            .map(|(i, a)| (a, i as u32))
            .collect();
        let edges = map_collect(mode, &b_copies, |b| -> Result<Vec<u32>, RamseyError> {
            if b.dim() < a_dim {
                return Ok(Vec::new());
            }
            Ok(SubspaceIter::new(b.dim(), a_dim)?
                .filter_map(|inner| index.get(&b.embed(&inner)).copied())
                .collect())
        });
        let edges: Vec<Vec<u32>> = edges.into_iter().collect::<Result<_, _>>()?;
        if let Some(i) = edges.iter().position(Vec::is_empty) {
            return Err(RamseyError::NotEmbedded(i));
        }
        let graph = Hypergraph::new(a_copies.len(), edges)?;
        Ok(Self {
            r,
            a_copies,
            b_copies,
            graph,
        })
    }

    /// Enumerates both copy sets inside `c` and links them.
    pub fn build(
        space: &BilinearSpace,
        c: &Subspace,
        a: CopySpec<'_>,
        b: CopySpec<'_>,
        r: u32,
        budget: &Budget,
        mode: Parallelism,
    ) -> Result<Self, RamseyError> {
        let a_set = enumerate_copies(space, c, a, budget, mode)?;
        let b_set = enumerate_copies(space, c, b, budget, mode)?;
        Self::from_copies(a_set.copies, b_set.copies, r, mode)
    }

    /// Labels every A-copy with `f`.
    pub fn color_with(
        &self,
        mut f: impl FnMut(&Subspace) -> Result<ColorLabel, ColoringError>,
    ) -> Result<crate::colorings::ColorAssignment, ColoringError> {
        crate::colorings::ColorAssignment::from_fn(&self.a_copies, self.r, &mut f)
    }
}

/// Aggregate of a streaming scan over B-copies.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub candidates: u64,
    pub b_copies: u64,
    /// B-copies containing no A-copy; these are skipped.
    pub without_a_copies: u64,
    pub a_incidences: u64,
    /// B-copies whose A-copies all share one label.
    pub monochromatic: u64,
    /// Least monochromatic B-copy, if any.
    pub first_monochromatic: Option<Subspace>,
    /// Count of B-copies by the bit set of labels seen on their A-copies.
    pub label_sets: BTreeMap<u64, u64>,
}

impl ScanSummary {
    fn merge(mut self, other: ScanSummary) -> ScanSummary {
        self.candidates += other.candidates;
        self.b_copies += other.b_copies;
        self.without_a_copies += other.without_a_copies;
        self.a_incidences += other.a_incidences;
        self.monochromatic += other.monochromatic;
        self.first_monochromatic = match (self.first_monochromatic, other.first_monochromatic) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        for (k, v) in other.label_sets {
            *self.label_sets.entry(k).or_default() += v;
        }
        self
    }

    /// B-copies whose label set contains all of `labels`.
    pub fn count_containing(&self, labels: &[ColorLabel]) -> u64 {
        let want = labels.iter().fold(0u64, |m, l| m | 1 << l.0);
        self.label_sets
            .iter()
            .filter(|(&k, _)| k & want == want)
            .map(|(_, &v)| v)
            .sum()
    }
}

/// Colors the A-copies inside every B-copy of `c` on the fly, without
/// materializing the hypergraph. Labels must be below 64. B-copies that
/// contain no A-copy are counted but not classified.
pub fn scan_b_copies<F>(
    space: &BilinearSpace,
    c: &Subspace,
    a: CopySpec<'_>,
    b: CopySpec<'_>,
    color: F,
    budget: &Budget,
    mode: Parallelism,
) -> Result<ScanSummary, RamseyError>
where
    F: Fn(&Subspace) -> Result<ColorLabel, ColoringError> + Sync,
{
    a.validate(space)?;
    b.validate(space)?;
    let (ad, bd) = (a.pattern.dim, b.pattern.dim);
    if bd > c.dim() || ad > bd {
        return Ok(ScanSummary::default());
    }
    check_scan_budget(c.dim(), bd, budget)?;
    let chunks = subspace_chunks(c.dim(), bd, 10)?;
    let per_chunk = |chunk: &crate::gf2::SubspaceChunk| -> Result<ScanSummary, RamseyError> {
        let mut s = ScanSummary::default();
        for inner in chunk.iter() {
            s.candidates += 1;
            let bcopy = c.embed(&inner);
            if !b.matches(space, &bcopy) {
                continue;
            }
            s.b_copies += 1;
            let mut mask = 0u64;
            let mut seen = 0;
            for sub in SubspaceIter::new(bd, ad)? {
                let acopy = bcopy.embed(&sub);
                if !a.matches(space, &acopy) {
                    continue;
                }
                let l = color(&acopy)?.0;
                if l >= 64 {
                    return Err(ColoringError::LabelOutOfRange { label: l, r: 64 }.into());
                }
                mask |= 1 << l;
                seen += 1;
            }
            if seen == 0 {
                s.without_a_copies += 1;
                continue;
            }
            s.a_incidences += seen;
            if mask.count_ones() == 1 {
                s.monochromatic += 1;
                if s.first_monochromatic.as_ref().is_none_or(|m| bcopy < *m) {
                    s.first_monochromatic = Some(bcopy.clone());
                }
            }
            *s.label_sets.entry(mask).or_default() += 1;
        }
        Ok(s)
    };
    map_reduce(
        mode,
        &chunks,
        Ok(ScanSummary::default()),
        per_chunk,
        |x, y| Ok(x?.merge(y?)),
    )
}
