use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::{
    arrow_decide, ArrowInstance, ArrowResult, Budget, Hypergraph, Method, RamseyError, Verdict,
};
use crate::forms::{decompose_with, BilinearSpace, FormError};
use crate::gf2::{low_mask, AffineFlat, BitVector, FlatIter, Subspace, SubspaceIter};
use crate::par::{map_collect, Parallelism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlatVariant {
    /// t-subspaces inside k-subspaces.
    Linear,
    /// Proper t-flats inside proper k-flats.
    ProperAffine,
    /// All t-flats inside all k-flats.
    AnyAffine,
}

fn containment_graph<A, B, F>(
    a: &[A],
    b: &[B],
    subs: F,
    mode: Parallelism,
) -> Result<Hypergraph, RamseyError>
where
    A: Hash + Eq + Sync,
    B: Sync,
    F: Fn(&B) -> Result<Vec<A>, RamseyError> + Sync + Send,
{
    let index: HashMap<&A, u32> = a.iter().enumerate().map(|(i, x)| (x, i as u32)).collect();
    let edges = map_collect(mode, b, |x| -> Result<Vec<u32>, RamseyError> {
        Ok(subs(x)?
            .iter()
            .filter_map(|s| index.get(s).copied())
            .collect())
    });
    Hypergraph::new(a.len(), edges.into_iter().collect::<Result<Vec<_>, _>>()?)
}

fn flats(n: usize, d: usize, proper: bool) -> Result<Vec<AffineFlat>, RamseyError> {
    if d > n {
        return Ok(Vec::new());
    }
    let mut v: Vec<AffineFlat> = FlatIter::new(n, d, proper)?.collect();
    v.sort_unstable();
    Ok(v)
}

/// t-subflats of a flat, each once.
pub(crate) fn subflats(f: &AffineFlat, t: usize) -> Result<Vec<AffineFlat>, RamseyError> {
    let dir = f.direction();
    let n = dir.ambient_dim();
    let mut out = Vec::new();
    for inner in SubspaceIter::new(dir.dim(), t)? {
        let u = dir.embed(&inner);
        let comp = dir.complement_of(&u);
        for x in comp.elements() {
            out.push(AffineFlat::new(
                u.clone(),
                BitVector::new(f.offset().bits() ^ x, n)?,
            )?);
        }
    }
    Ok(out)
}

/// Copy hypergraph of t-dimensional objects inside k-dimensional ones in
/// `GF(2)^n`.
pub fn flat_instance(
    n: usize,
    t: usize,
    k: usize,
    variant: FlatVariant,
    mode: Parallelism,
) -> Result<Hypergraph, RamseyError> {
    match variant {
        FlatVariant::Linear => {
            let subs = |d: usize| -> Result<Vec<Subspace>, RamseyError> {
                if d > n {
                    return Ok(Vec::new());
                }
                let mut v: Vec<Subspace> = SubspaceIter::new(n, d)?.collect();
                v.sort_unstable();
                Ok(v)
            };
            let (a, b) = (subs(t)?, subs(k)?);
            containment_graph(
                &a,
                &b,
                |w| {
                    Ok(SubspaceIter::new(k, t)?
                        .map(|inner| w.embed(&inner))
                        .collect())
                },
                mode,
            )
        }
        FlatVariant::ProperAffine | FlatVariant::AnyAffine => {
            let proper = variant == FlatVariant::ProperAffine;
            let (a, b) = (flats(n, t, proper)?, flats(n, k, proper)?);
            containment_graph(&a, &b, |w| subflats(w, t), mode)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    /// Least `n` for which the relation holds, if one was reached.
    pub least: Option<usize>,
    /// Result for each tested `n`, in increasing order.
    pub trace: Vec<(usize, ArrowResult)>,
    /// No `Holds` is followed by a `Fails` in the trace.
    pub monotone: bool,
}

/// Tests `GF(2)^n -> (k)^t_r` for `n = 0..=max_n`. Stops at the first
/// `Unknown`; otherwise continues past the least `n` to check monotonicity.
#[allow(clippy::too_many_arguments)]
pub fn vector_ramsey_search(
    t: usize,
    k: usize,
    r: u32,
    max_n: usize,
    variant: FlatVariant,
    method: Method,
    budget: &Budget,
    mode: Parallelism,
) -> Result<SearchOutcome, RamseyError> {
    if t >= k {
        return Err(RamseyError::Precondition(format!(
            "need t < k, got t = {t}, k = {k}"
        )));
    }
    let mut trace = Vec::new();
    for n in 0..=max_n {
        let g = flat_instance(n, t, k, variant, mode)?;
        let res = arrow_decide(&g, r, method, &[], budget, mode)?;
        let unknown = matches!(res.verdict, Verdict::Unknown(_));
        trace.push((n, res));
        if unknown {
            break;
        }
    }
    let least = trace
        .iter()
        .find(|(_, res)| res.verdict == Verdict::Holds)
        .map(|(n, _)| *n);
    let monotone = match least {
        Some(l) => trace
            .iter()
            .all(|(n, res)| *n < l || res.verdict != Verdict::Fails),
        None => true,
    };
    let unknown = trace
        .last()
        .is_some_and(|(_, res)| matches!(res.verdict, Verdict::Unknown(_)));
    if least.is_none() && !unknown {
        return Err(RamseyError::NotFound(max_n));
    }
    Ok(SearchOutcome {
        least,
        trace,
        monotone,
    })
}

fn least_holding(
    t: usize,
    k: usize,
    r: u32,
    max_n: usize,
    variant: FlatVariant,
    budget: &Budget,
    mode: Parallelism,
) -> Result<usize, RamseyError> {
    let out = vector_ramsey_search(t, k, r, max_n, variant, Method::Auto, budget, mode)?;
    out.least.ok_or_else(|| RamseyError::Budget {
        what: "oracle search",
        needed: format!("n <= {max_n}"),
        limit: budget.max_colorings,
    })
}

/// `C = C0 ⊕ A1` with `C0` spanned by the first radical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PramConstruction {
    pub a1: Subspace,
    pub c0: Subspace,
    pub c: Subspace,
    /// `dim A0`
    pub t: usize,
    /// `dim(B ∩ Rad(V))`
    pub k: usize,
    pub oracle_n: usize,
}

/// Builds `C` for `A = A0 ⊕ A1 < B ≤ A1 ⊕ Rad(V)` from the least `n` with
/// `GF(2)^n -> (dim Rad(B))^{dim A0}_r`.
#[allow(clippy::too_many_arguments)]
pub fn pram_construct(
    space: &BilinearSpace,
    a0: &Subspace,
    a1: &Subspace,
    b: &Subspace,
    r: u32,
    oracle_max_n: usize,
    budget: &Budget,
    mode: Parallelism,
) -> Result<PramConstruction, RamseyError> {
    if !space.has_split() {
        return Err(FormError::NoSplit.into());
    }
    let n = space.dim();
    let rad_mask = space.radical_mask();
    let rad_coords: Vec<usize> = (0..n).filter(|&i| rad_mask >> i & 1 == 1).collect();
    let rad = Subspace::from_rows(n, rad_coords.iter().map(|&i| 1u64 << i))?;
    if !a0.is_subspace_of(&rad) {
        return Err(RamseyError::Precondition("A0 must lie in Rad(V)".into()));
    }
    if a1.rows().iter().any(|&x| x & rad_mask != 0) {
        return Err(RamseyError::Precondition(
            "A1 must lie in the hyperbolic block".into(),
        ));
    }
    let a = a0.sum(a1);
    if !a.is_subspace_of(b) || !b.is_subspace_of(&a1.sum(&rad)) {
        return Err(RamseyError::Precondition(
            "need A0 ⊕ A1 ≤ B ≤ A1 ⊕ Rad(V)".into(),
        ));
    }
    let t = a0.dim();
    let k = b.intersection(&rad).dim();
    let oracle_n = if t == k {
        t
    } else {
        least_holding(t, k, r, oracle_max_n, FlatVariant::Linear, budget, mode)?
    };
    if oracle_n > rad_coords.len() {
        return Err(RamseyError::Truncation {
            needed: oracle_n,
            available: rad_coords.len(),
        });
    }
    let c0 = Subspace::from_rows(n, rad_coords[..oracle_n].iter().map(|&i| 1u64 << i))?;
    Ok(PramConstruction {
        a1: a1.clone(),
        c: c0.sum(a1),
        c0,
        t,
        k,
        oracle_n,
    })
}

/// Copies `A0' ⊕ A1` and `B2 ⊕ A1` with `A0' ≤ B2 ≤ C0`.
pub fn pram_instance(
    p: &PramConstruction,
    r: u32,
    mode: Parallelism,
) -> Result<ArrowInstance, RamseyError> {
    let lift = |d: usize| -> Result<Vec<Subspace>, RamseyError> {
        let mut v: Vec<Subspace> = SubspaceIter::new(p.c0.dim(), d)?
            .map(|inner| p.c0.embed(&inner).sum(&p.a1))
            .collect();
        v.sort_unstable();
        Ok(v)
    };
    ArrowInstance::from_copies(lift(p.t)?, lift(p.k)?, r, mode)
}

/// `C = C0 ⊕ <a1>` in a plain vector space `V0 ⊕ <a1>`, with `C0` the
/// whole of `V0`, and the copies lying in the family of subspaces that
/// project onto `<a1>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dim1Construction {
    pub oracle_n: usize,
    pub a1: Subspace,
    pub c: Subspace,
    pub instance: ArrowInstance,
}

/// Builds the instance for `A = A0 ⊕ <a1 + v>` inside
/// `B = B0 ⊕ <a1 + v>` with `dim A0 = t`, `dim B0 = k`, using the least
/// `n` with `GF(2)^n -> (k)^t_r` over all affine flats.
pub fn dim1_construct(
    t: usize,
    k: usize,
    r: u32,
    oracle_max_n: usize,
    budget: &Budget,
    mode: Parallelism,
) -> Result<Dim1Construction, RamseyError> {
    let oracle_n = least_holding(t, k, r, oracle_max_n, FlatVariant::AnyAffine, budget, mode)?;
    let dim = oracle_n + 1;
    let a1 = Subspace::from_rows(dim, [1u64 << oracle_n])?;
    let kernel = low_mask(oracle_n);
    let c = Subspace::full(dim);
    let family = |d: usize| -> Result<Vec<Subspace>, RamseyError> {
        let mut v: Vec<Subspace> = SubspaceIter::new(dim, d)?
            .filter(|u| decompose_with(u, kernel).a1 == a1)
            .collect();
        v.sort_unstable();
        Ok(v)
    };
    let instance = ArrowInstance::from_copies(family(t + 1)?, family(k + 1)?, r, mode)?;
    Ok(Dim1Construction {
        oracle_n,
        a1,
        c,
        instance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::make_bounded;

    #[test]
    fn flat_instance_counts() {
        let g = flat_instance(3, 1, 2, FlatVariant::Linear, Parallelism::Sequential).unwrap();
        assert_eq!((g.vertices(), g.num_edges()), (7, 7));
        let g = flat_instance(2, 0, 1, FlatVariant::AnyAffine, Parallelism::Sequential).unwrap();
        assert_eq!((g.vertices(), g.num_edges()), (4, 6));
        assert!(g.edges().all(|e| e.len() == 2));
        let g = flat_instance(2, 0, 1, FlatVariant::ProperAffine, Parallelism::Sequential).unwrap();
        assert_eq!((g.vertices(), g.num_edges()), (3, 3));
        let g = flat_instance(1, 0, 2, FlatVariant::AnyAffine, Parallelism::Sequential).unwrap();
        assert_eq!(g.num_edges(), 0);
    }

    #[test]
    fn small_vector_ramsey_numbers() {
        let b = Budget::default();
        let p = Parallelism::Parallel;
        let lin = vector_ramsey_search(1, 2, 2, 4, FlatVariant::Linear, Method::Exhaustive, &b, p)
            .unwrap();
        assert_eq!(lin.least, Some(3));
        assert_eq!(lin.trace[2].1.verdict, Verdict::Fails);
        assert!(lin.monotone);
        let aff = vector_ramsey_search(
            0,
            1,
            2,
            4,
            FlatVariant::AnyAffine,
            Method::Exhaustive,
            &b,
            p,
        )
        .unwrap();
        assert_eq!(aff.least, Some(2));
        let prop = vector_ramsey_search(
            0,
            1,
            2,
            4,
            FlatVariant::ProperAffine,
            Method::Exhaustive,
            &b,
            p,
        )
        .unwrap();
        assert_eq!(prop.least, Some(2));
        assert!(matches!(
            vector_ramsey_search(2, 2, 2, 4, FlatVariant::Linear, Method::Exhaustive, &b, p),
            Err(RamseyError::Precondition(_))
        ));
        assert!(matches!(
            vector_ramsey_search(1, 2, 2, 2, FlatVariant::Linear, Method::Exhaustive, &b, p),
            Err(RamseyError::NotFound(2))
        ));
    }

    #[test]
    fn pram_fano_case() {
        let space = make_bounded(1, 3).unwrap();
        let v = |s: &str| space.parse_named(s).unwrap();
        let a0 = Subspace::from_rows(5, [v("e2")]).unwrap();
        let a1 = Subspace::from_rows(5, [v("e1")]).unwrap();
        let b = Subspace::from_rows(5, [v("e1"), v("e2"), v("e3")]).unwrap();
        let budget = Budget::default();
        let p = pram_construct(&space, &a0, &a1, &b, 2, 4, &budget, Parallelism::Parallel).unwrap();
        assert_eq!(p.oracle_n, 3);
        assert_eq!(p.c.dim(), 4);
        let inst = pram_instance(&p, 2, Parallelism::Parallel).unwrap();
        assert_eq!((inst.graph.vertices(), inst.graph.num_edges()), (7, 7));
        let res = arrow_decide(
            &inst.graph,
            2,
            Method::Exhaustive,
            &[],
            &budget,
            Parallelism::Parallel,
        )
        .unwrap();
        assert_eq!(res.verdict, Verdict::Holds);

        let small = make_bounded(1, 2).unwrap();
        let a0 = Subspace::from_rows(4, [v("e2")]).unwrap();
        let a1 = Subspace::from_rows(4, [v("e1")]).unwrap();
        let b = Subspace::from_rows(4, [v("e1"), v("e2"), v("e3")]).unwrap();
        assert_eq!(
            pram_construct(&small, &a0, &a1, &b, 2, 4, &budget, Parallelism::Parallel),
            Err(RamseyError::Truncation {
                needed: 3,
                available: 2
            })
        );
        // A0 = Rad(B): C is B itself
        let b = a0.sum(&a1);
        let p = pram_construct(&small, &a0, &a1, &b, 2, 4, &budget, Parallelism::Parallel).unwrap();
        assert_eq!(p.c, b);
    }

    #[test]
    fn dim1_affine_case() {
        let d = dim1_construct(0, 1, 2, 4, &Budget::default(), Parallelism::Parallel).unwrap();
        assert_eq!(d.oracle_n, 2);
        assert_eq!(
            (d.instance.graph.vertices(), d.instance.graph.num_edges()),
            (4, 6)
        );
        let res = arrow_decide(
            &d.instance.graph,
            2,
            Method::Exhaustive,
            &[],
            &Budget::default(),
            Parallelism::Sequential,
        )
        .unwrap();
        assert_eq!(res.verdict, Verdict::Holds);
    }
}
