use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{arrow_decide, ArrowResult, Budget, Hypergraph, Method, RamseyError};
use crate::gf2::linalg::rank;
use crate::gf2::{low_mask, BitVector, Gf2Error, Subspace, SubspaceIter};
use crate::par::{map_collect, Parallelism};

/// `(U + v_1, ..., U + v_n)` with offsets reduced modulo `U` and linearly
/// independent over `U`. Positions are ordered.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpaceTuple {
    pub base: Subspace,
    pub offsets: Vec<BitVector>,
}

impl SpaceTuple {
    fn from_raw(base: &Subspace, offsets: impl IntoIterator<Item = u64>) -> Self {
        let m = base.ambient_dim();
        Self {
            base: base.clone(),
            offsets: offsets
                .into_iter()
                .map(|v| BitVector::new(base.reduce_bits(v), m).expect("in range"))
                .collect(),
        }
    }
}

/// Ordered independent n-tuples drawn from `reps`, in lexicographic order
/// of positions in `reps`.
fn independent_tuples(reps: &[u64], n: usize, out: &mut Vec<Vec<u64>>) {
    fn rec(reps: &[u64], n: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for &v in reps {
            cur.push(v);
            if rank(cur) == cur.len() {
                rec(reps, n, cur, out);
            }
            cur.pop();
        }
    }
    rec(reps, n, &mut Vec::with_capacity(n), out);
}

/// All n-space-tuples based on t-subspaces of `GF(2)^m`, sorted. Empty
/// when `t + n > m`.
pub fn enumerate_space_tuples(
    m: usize,
    t: usize,
    n: usize,
) -> Result<Vec<SpaceTuple>, RamseyError> {
    if t > m {
        return Err(Gf2Error::DimensionOutOfRange { n: m, d: t }.into());
    }
    if t + n > m {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for u in SubspaceIter::new(m, t)? {
        // canonical representatives vanish on the pivot coordinates of U
        let free = low_mask(m) & !u.pivot_mask();
        let reps: Vec<u64> = (1..1u64 << m).filter(|&x| x & !free == 0).collect();
        let mut tuples = Vec::new();
        independent_tuples(&reps, n, &mut tuples);
        out.extend(
            tuples
                .into_iter()
                .map(|offs| SpaceTuple::from_raw(&u, offs)),
        );
    }
    out.sort_unstable();
    Ok(out)
}

/// Subtuples of `b` based on t-subspaces `U ≤ W`: for each position a
/// coset of `U` inside `W + v'_i`.
fn subtuples(b: &SpaceTuple, t: usize) -> Result<Vec<SpaceTuple>, RamseyError> {
    let w = &b.base;
    let n = b.offsets.len();
    let mut out = Vec::new();
    for inner in SubspaceIter::new(w.dim(), t)? {
        let u = w.embed(&inner);
        let shifts: Vec<u64> = w.complement_of(&u).elements().collect();
        let s = shifts.len();
        let total = s.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let offs = b.offsets.iter().map(|v| {
                let x = v.bits() ^ shifts[c % s];
                c /= s;
                x
            });
            out.push(SpaceTuple::from_raw(&u, offs.collect::<Vec<_>>()));
        }
    }
    Ok(out)
}

/// Copy hypergraph of n-space-tuples of dimension `t` inside those of
/// dimension `k` in `GF(2)^m`.
pub fn tuple_instance(
    m: usize,
    t: usize,
    k: usize,
    n: usize,
    mode: Parallelism,
) -> Result<Hypergraph, RamseyError> {
    let a = enumerate_space_tuples(m, t, n)?;
    let b = if k <= m {
        enumerate_space_tuples(m, k, n)?
    } else {
        Vec::new()
    };
    let index: HashMap<&SpaceTuple, u32> =
        a.iter().enumerate().map(|(i, x)| (x, i as u32)).collect();
    let edges = map_collect(mode, &b, |bt| -> Result<Vec<u32>, RamseyError> {
        Ok(subtuples(bt, t)?
            .iter()
            .filter_map(|s| index.get(s).copied())
            .collect())
    });
    Hypergraph::new(a.len(), edges.into_iter().collect::<Result<Vec<_>, _>>()?)
}

/// Decides whether every r-coloring of t-dimensional n-space-tuples of
/// `GF(2)^m` is constant on the subtuples of some k-dimensional tuple.
#[allow(clippy::too_many_arguments)]
pub fn tuple_arrow_check(
    m: usize,
    t: usize,
    k: usize,
    r: u32,
    n: usize,
    method: Method,
    budget: &Budget,
    mode: Parallelism,
) -> Result<ArrowResult, RamseyError> {
    if t >= k {
        return Err(RamseyError::Precondition(format!(
            "need t < k, got t = {t}, k = {k}"
        )));
    }
    if n == 0 {
        return Err(RamseyError::Precondition("tuples need n >= 1".into()));
    }
    let g = tuple_instance(m, t, k, n, mode)?;
    if g.vertices() as u64 > budget.max_copies {
        return Err(RamseyError::Budget {
            what: "tuples",
            needed: g.vertices().to_string(),
            limit: budget.max_copies,
        });
    }
    arrow_decide(&g, r, method, &[], budget, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramsey::{flat_instance, FlatVariant, Verdict};

    #[test]
    fn tuple_counts() {
        assert_eq!(enumerate_space_tuples(2, 0, 1).unwrap().len(), 3);
        assert_eq!(enumerate_space_tuples(2, 0, 2).unwrap().len(), 6);
        assert!(enumerate_space_tuples(1, 1, 1).unwrap().is_empty());
        // per U: (2^{m-t} - 1)(2^{m-t} - 2), times [4 1] = 15 lines
        assert_eq!(enumerate_space_tuples(4, 1, 2).unwrap().len(), 15 * 7 * 6);
        assert!(enumerate_space_tuples(1, 2, 1).is_err());
    }

    #[test]
    fn offsets_are_canonical_and_independent() {
        for tup in enumerate_space_tuples(4, 1, 2).unwrap() {
            let mut rows = tup.base.rows().to_vec();
            for v in &tup.offsets {
                assert_eq!(tup.base.reduce_bits(v.bits()), v.bits());
                rows.push(v.bits());
            }
            assert_eq!(rank(&rows), 3);
        }
    }

    #[test]
    fn one_tuples_match_proper_flats() {
        for m in 1..=4 {
            for k in 1..=m {
                for t in 0..k {
                    let g = tuple_instance(m, t, k, 1, Parallelism::Sequential).unwrap();
                    let h =
                        flat_instance(m, t, k, FlatVariant::ProperAffine, Parallelism::Sequential)
                            .unwrap();
                    assert_eq!((g.vertices(), g.num_edges()), (h.vertices(), h.num_edges()));
                    assert_eq!(g.incidences(), h.incidences());
                }
            }
        }
    }

    #[test]
    fn small_checks() {
        let b = Budget::default();
        let res = tuple_arrow_check(
            2,
            0,
            1,
            2,
            1,
            Method::Exhaustive,
            &b,
            Parallelism::Sequential,
        )
        .unwrap();
        assert_eq!(res.verdict, Verdict::Holds);
        assert!(tuple_arrow_check(
            2,
            1,
            1,
            2,
            1,
            Method::Exhaustive,
            &b,
            Parallelism::Sequential
        )
        .is_err());
    }
}
