use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{hyperbolic_decomposition, isometry_type, radical, BilinearSpace, FormError};
use crate::gf2::linalg::{nullspace, solve};
use crate::gf2::{BitVector, Subspace};

/// A linear map defined on `domain`, given by the image of each canonical
/// basis row of the domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isometry {
    domain: Subspace,
    images: Vec<u64>,
}

impl Isometry {
    /// Linear map determined by `(source, image)` pairs. The sources may be
    /// dependent as long as the images satisfy the same relations.
    pub fn from_pairs(ambient_dim: usize, pairs: &[(u64, u64)]) -> Result<Self, FormError> {
        // rows (source | image << 64), reduced on the source half
        let mut rows: Vec<u128> = pairs
            .iter()
            .map(|&(s, i)| s as u128 | (i as u128) << 64)
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
        if rows[rank..].iter().any(|&r| r != 0) {
            return Err(FormError::NotAnIsometry(
                "source relations are not respected by the images".into(),
            ));
        }
        rows.truncate(rank);
        let domain_rows: Vec<u64> = rows.iter().map(|&r| r as u64).collect();
        let images = rows.iter().map(|&r| (r >> 64) as u64).collect();
        let domain = Subspace::from_rows(ambient_dim, domain_rows)?;
        Ok(Self { domain, images })
    }

    pub fn identity_on(s: &Subspace) -> Self {
        Self {
            domain: s.clone(),
            images: s.rows().to_vec(),
        }
    }

    pub fn domain(&self) -> &Subspace {
        &self.domain
    }

    pub fn ambient_dim(&self) -> usize {
        self.domain.ambient_dim()
    }

    /// Image of a domain member. Panics in debug builds if `v` is outside
    /// the domain.
    #[inline]
    pub fn apply(&self, v: u64) -> u64 {
        debug_assert!(self.domain.contains_bits(v));
        let coords = self.domain.coordinates(v);
        let mut acc = 0u64;
        let mut c = coords;
        while c != 0 {
            let i = c.trailing_zeros() as usize;
            acc ^= self.images[i];
            c &= c - 1;
        }
        acc
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_rows_unchecked(self.ambient_dim(), self.images.clone())
    }

    pub fn map_subspace(&self, s: &Subspace) -> Subspace {
        Subspace::from_rows_unchecked(
            self.ambient_dim(),
            s.rows().iter().map(|&r| self.apply(r)).collect(),
        )
    }

    pub fn is_full(&self) -> bool {
        self.domain.dim() == self.ambient_dim()
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let images = other.images.iter().map(|&x| self.apply(x)).collect();
        Isometry {
            domain: other.domain.clone(),
            images,
        }
    }

    /// Checks injectivity and `beta(g u, g v) = beta(u, v)` on basis pairs.
    pub fn validate(&self, space: &BilinearSpace) -> Result<(), FormError> {
        if self.image().dim() != self.domain.dim() {
            return Err(FormError::NotAnIsometry("map is not injective".into()));
        }
        let rows = self.domain.rows();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if space.beta(rows[i], rows[j]) != space.beta(self.images[i], self.images[j]) {
                    return Err(FormError::NotAnIsometry(format!(
                        "form not preserved on basis pair ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Full matrix as images of the standard basis vectors (full maps only).
    pub fn unit_images(&self) -> Option<Vec<u64>> {
        self.is_full().then(|| {
            (0..self.ambient_dim())
                .map(|i| self.apply(1 << i))
                .collect()
        })
    }
}

#[derive(Serialize, Deserialize)]
struct Pair(BitVector, BitVector);

impl Serialize for Isometry {
    /// A list of `[domain basis vector, image]` bit-string pairs.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n = self.ambient_dim();
        let pairs: Vec<Pair> = self
            .domain
            .rows()
            .iter()
            .zip(&self.images)
            .map(|(&d, &i)| {
                Pair(
                    BitVector::new(d, n).expect("in range"),
                    BitVector::new(i, n).expect("in range"),
                )
            })
            .collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Isometry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = Vec::<Pair>::deserialize(deserializer)?;
        let Some(first) = pairs.first() else {
            return Err(serde::de::Error::custom(
                "empty isometry: ambient dimension unknown",
            ));
        };
        let n = first.0.ambient_dim();
        if pairs
            .iter()
            .any(|p| p.0.ambient_dim() != n || p.1.ambient_dim() != n)
        {
            return Err(serde::de::Error::custom("mixed ambient dimensions"));
        }
        let raw: Vec<(u64, u64)> = pairs.iter().map(|p| (p.0.bits(), p.1.bits())).collect();
        Isometry::from_pairs(n, &raw).map_err(serde::de::Error::custom)
    }
}

fn pair_list(space: &BilinearSpace, s: &Subspace) -> (Vec<u64>, Vec<u64>) {
    let d = hyperbolic_decomposition(space, s);
    let mut hyp = Vec::with_capacity(2 * d.pairs.len());
    for (u, v) in &d.pairs {
        hyp.push(u.bits());
        hyp.push(v.bits());
    }
    (hyp, d.radical.iter().map(|r| r.bits()).collect())
}

/// A concrete isometry `S -> T` when the two subspaces have the same
/// isometry type, built by matching hyperbolic decompositions.
pub fn are_isometric(space: &BilinearSpace, s: &Subspace, t: &Subspace) -> Option<Isometry> {
    if isometry_type(space, s) != isometry_type(space, t) {
        return None;
    }
    if s == t {
        return Some(Isometry::identity_on(s));
    }
    let (hs, rs) = pair_list(space, s);
    let (ht, rt) = pair_list(space, t);
    let pairs: Vec<(u64, u64)> = hs
        .into_iter()
        .zip(ht)
        .chain(rs.into_iter().zip(rt))
        .collect();
    let g = Isometry::from_pairs(space.dim(), &pairs).expect("bases are independent");
    debug_assert!(g.validate(space).is_ok());
    Some(g)
}

/// Finds `x` with `beta(x, c) = b` for each constraint.
fn solve_form(space: &BilinearSpace, constraints: &[(u64, bool)]) -> Option<u64> {
    let lin: Vec<(u64, bool)> = constraints
        .iter()
        .map(|&(c, b)| (space.gram_apply(c), b))
        .collect();
    solve(&lin, space.dim())
}

/// Completes the radical vectors to hyperbolic pairs: returns the list
/// `hyperbolic ++ [r1, s1, r2, s2, ...]` spanning a nondegenerate subspace.
fn complete_to_nondegenerate(
    space: &BilinearSpace,
    hyperbolic: &[u64],
    rad: &[u64],
) -> Result<Vec<u64>, FormError> {
    let mut basis = hyperbolic.to_vec();
    for (j, &r) in rad.iter().enumerate() {
        let mut cons: Vec<(u64, bool)> = basis.iter().map(|&x| (x, false)).collect();
        cons.push((r, true));
        cons.extend(rad[j + 1..].iter().map(|&x| (x, false)));
        let partner = solve_form(space, &cons)
            .ok_or_else(|| FormError::NotAnIsometry("no hyperbolic partner exists".into()))?;
        basis.push(r);
        basis.push(partner);
    }
    Ok(basis)
}

/// Extends an isometry between subspaces of a nondegenerate space to an
/// isometry of the whole space.
///
/// The domain is first completed to a nondegenerate subspace by giving each
/// radical vector a hyperbolic partner; the same is done on the image side.
/// The orthogonal complements of the two completions are nondegenerate of
/// equal dimension, so their hyperbolic bases are matched pair by pair.
pub fn witt_extend(space: &BilinearSpace, g: &Isometry) -> Result<Isometry, FormError> {
    let n = space.dim();
    let rad_v = radical(space, &space.whole());
    if rad_v.dim() != 0 {
        return Err(FormError::Degenerate(rad_v.dim()));
    }
    g.validate(space)?;
    let d = hyperbolic_decomposition(space, g.domain());
    let mut hyp = Vec::new();
    let mut hyp_img = Vec::new();
    for (u, v) in &d.pairs {
        hyp.push(u.bits());
        hyp.push(v.bits());
        hyp_img.push(g.apply(u.bits()));
        hyp_img.push(g.apply(v.bits()));
    }
    let rad: Vec<u64> = d.radical.iter().map(|r| r.bits()).collect();
    let rad_img: Vec<u64> = rad.iter().map(|&r| g.apply(r)).collect();

    let src = complete_to_nondegenerate(space, &hyp, &rad)?;
    let dst = complete_to_nondegenerate(space, &hyp_img, &rad_img)?;

    let complement = |basis: &[u64]| -> Subspace {
        let funcs: Vec<u64> = basis.iter().map(|&x| space.gram_apply(x)).collect();
        Subspace::from_rows_unchecked(n, nullspace(&funcs, n))
    };
    let (src_c, _) = pair_list(space, &complement(&src));
    let (dst_c, _) = pair_list(space, &complement(&dst));
    debug_assert_eq!(src_c.len(), dst_c.len());

    let pairs: Vec<(u64, u64)> = src
        .iter()
        .chain(&src_c)
        .copied()
        .zip(dst.iter().chain(&dst_c).copied())
        .collect();
    let full = Isometry::from_pairs(n, &pairs)?;
    if !full.is_full() {
        return Err(FormError::NotAnIsometry(
            "extension is not surjective".into(),
        ));
    }
    full.validate(space)?;
    debug_assert!(g
        .domain()
        .rows()
        .iter()
        .all(|&r| full.apply(r) == g.apply(r)));
    Ok(full)
}
