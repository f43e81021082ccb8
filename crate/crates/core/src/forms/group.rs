use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{radical, BilinearSpace, FormError, Isometry};
use crate::gf2::{low_mask, Subspace};

/// Symplectic transvection `x -> x + beta(x, w) w`.
pub fn transvection(space: &BilinearSpace, w: u64) -> Isometry {
    let n = space.dim();
    let pairs: Vec<(u64, u64)> = (0..n)
        .map(|i| {
            let x = 1u64 << i;
            (x, if space.beta(x, w) { x ^ w } else { x })
        })
        .collect();
    Isometry::from_pairs(n, &pairs).expect("unit vectors are independent")
}

fn elementary(n: usize, from: usize, add: u64) -> Isometry {
    let pairs: Vec<(u64, u64)> = (0..n)
        .map(|i| {
            let x = 1u64 << i;
            (x, if i == from { x ^ add } else { x })
        })
        .collect();
    Isometry::from_pairs(n, &pairs).expect("unit vectors are independent")
}

/// Generators of the isometry group of `V1 ⊕ Rad(V)`:
/// transvections by every nonzero vector of `V1` (generating `Sp(V1)`),
/// elementary maps `r_i -> r_i + r_j` (generating `GL(Rad)`), and shears
/// `e -> e + r` moving a hyperbolic coordinate by a radical coordinate.
pub fn ambient_isometry_generators(space: &BilinearSpace) -> Result<Vec<Isometry>, FormError> {
    if !space.has_split() {
        return Err(FormError::NoSplit);
    }
    let n = space.dim();
    let hyp = space.hyperbolic_mask();
    let rad = space.radical_mask();
    let mut gens = Vec::new();
    // nonzero vectors supported on V1
    let hyp_coords: Vec<usize> = (0..n).filter(|&i| hyp >> i & 1 == 1).collect();
    for sel in 1u64..(1 << hyp_coords.len()) {
        let w = hyp_coords
            .iter()
            .enumerate()
            .filter(|(b, _)| sel >> b & 1 == 1)
            .fold(0u64, |acc, (_, &c)| acc | 1 << c);
        gens.push(transvection(space, w));
    }
    let rad_coords: Vec<usize> = (0..n).filter(|&i| rad >> i & 1 == 1).collect();
    for &i in &rad_coords {
        for &j in &rad_coords {
            if i != j {
                gens.push(elementary(n, i, 1 << j));
            }
        }
    }
    for &h in &hyp_coords {
        for &r in &rad_coords {
            gens.push(elementary(n, h, 1 << r));
        }
    }
    debug_assert!(gens.iter().all(|g| g.validate(space).is_ok()));
    Ok(gens)
}

/// Order of the group generated by full-space maps, by breadth-first
/// closure. Fails once more than `budget` elements are found.
pub fn generated_group_order(gens: &[Isometry], budget: usize) -> Result<usize, FormError> {
    let Some(first) = gens.first() else {
        return Ok(1);
    };
    let n = first.ambient_dim();
    let identity: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    let gen_mats: Vec<Vec<u64>> = gens
        .iter()
        .map(|g| g.unit_images().expect("generators are full-space maps"))
        .collect();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(m) = queue.pop_front() {
        for g in &gen_mats {
            // (g ∘ m)(e_i) = g(m(e_i))
            let prod: Vec<u64> = m.iter().map(|&col| apply_matrix(g, col)).collect();
            if seen.insert(prod.clone()) {
                if seen.len() > budget {
                    return Err(FormError::BudgetExceeded(budget));
                }
                queue.push_back(prod);
            }
        }
    }
    Ok(seen.len())
}

#[inline]
fn apply_matrix(images: &[u64], mut v: u64) -> u64 {
    let mut acc = 0;
    while v != 0 {
        acc ^= images[v.trailing_zeros() as usize];
        v &= v - 1;
    }
    acc
}

/// Orbit of `s` under the group generated by `gens`, by breadth-first
/// search over canonical subspaces.
pub fn orbit_of_subspace(
    space: &BilinearSpace,
    s: &Subspace,
    gens: &[Isometry],
    budget: usize,
) -> Result<BTreeSet<Subspace>, FormError> {
    let n = space.dim();
    let mats: Vec<Vec<u64>> = gens
        .iter()
        .map(|g| {
            g.unit_images()
                .ok_or_else(|| FormError::NotAnIsometry("partial generator".into()))
        })
        .collect::<Result<_, _>>()?;
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(s.clone());
    queue.push_back(s.clone());
    while let Some(cur) = queue.pop_front() {
        for m in &mats {
            let img = Subspace::from_rows_unchecked(
                n,
                cur.rows()
                    .iter()
                    .map(|&r| apply_matrix(m, r) & low_mask(n))
                    .collect(),
            );
            if !seen.contains(&img) {
                if seen.len() >= budget {
                    return Err(FormError::BudgetExceeded(budget));
                }
                seen.insert(img.clone());
                queue.push_back(img);
            }
        }
    }
    debug_assert!({
        let rad_dim = radical(space, s).dim();
        seen.iter().all(|t| radical(space, t).dim() == rad_dim)
    });
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{make_bounded, make_symplectic};

    #[test]
    fn group_orders_by_closure() {
        let sp2 = make_symplectic(1).unwrap();
        let g = ambient_isometry_generators(&sp2).unwrap();
        assert_eq!(generated_group_order(&g, 1000).unwrap(), 6);

        let gl2 = make_bounded(0, 2).unwrap();
        let g = ambient_isometry_generators(&gl2).unwrap();
        assert_eq!(generated_group_order(&g, 1000).unwrap(), 6);

        let b11 = make_bounded(1, 1).unwrap();
        let g = ambient_isometry_generators(&b11).unwrap();
        assert_eq!(generated_group_order(&g, 1000).unwrap(), 6 * 4);

        // |Sp(4,2)| = 720
        let sp4 = make_symplectic(2).unwrap();
        let g = ambient_isometry_generators(&sp4).unwrap();
        assert_eq!(generated_group_order(&g, 10_000).unwrap(), 720);
    }

    #[test]
    fn orbit_examples() {
        let sp2 = make_symplectic(1).unwrap();
        let gens = ambient_isometry_generators(&sp2).unwrap();
        let line = Subspace::from_rows(2, [0b01]).unwrap();
        let orbit = orbit_of_subspace(&sp2, &line, &gens, 100).unwrap();
        assert_eq!(orbit.len(), 3);

        let b = make_bounded(1, 1).unwrap();
        let gens = ambient_isometry_generators(&b).unwrap();
        let rad = radical(&b, &b.whole());
        assert_eq!(orbit_of_subspace(&b, &rad, &gens, 100).unwrap().len(), 1);

        let e1 = b.parse_named("e1").unwrap();
        let r = b.parse_named("e2").unwrap();
        let orbit =
            orbit_of_subspace(&b, &Subspace::from_rows(3, [e1]).unwrap(), &gens, 100).unwrap();
        assert!(orbit.contains(&Subspace::from_rows(3, [e1 | r]).unwrap()));
    }

    #[test]
    fn orbit_budget_is_reported() {
        let sp = make_symplectic(2).unwrap();
        let gens = ambient_isometry_generators(&sp).unwrap();
        let line = Subspace::from_rows(4, [1]).unwrap();
        assert_eq!(
            orbit_of_subspace(&sp, &line, &gens, 5),
            Err(FormError::BudgetExceeded(5))
        );
    }
}
