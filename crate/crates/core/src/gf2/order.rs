use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{BitVector, Gf2Error};

/// A total order on coordinates, with a display name per coordinate.
///
/// `rank[i]` is the position of coordinate `i` in the order (0 = lowest).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisOrder {
    names: Vec<String>,
    rank: Vec<u8>,
    identity: bool,
}

impl BasisOrder {
    /// Coordinates ordered by index, named `x0, x1, ...`.
    pub fn identity(n: usize) -> Self {
        Self {
            names: (0..n).map(|i| format!("x{i}")).collect(),
            rank: (0..n as u8).collect(),
            identity: true,
        }
    }

    /// `e1 < e*1 < ... < ek < e*k < e(k+1) < ... < e(k+m)`: hyperbolic pairs on
    /// adjacent coordinates followed by radical generators.
    pub fn standard(k: usize, m: usize) -> Self {
        let mut names = Vec::with_capacity(2 * k + m);
        for i in 1..=k {
            names.push(format!("e{i}"));
            names.push(format!("e*{i}"));
        }
        for i in (k + 1)..=(k + m) {
            names.push(format!("e{i}"));
        }
        let n = names.len();
        Self {
            names,
            rank: (0..n as u8).collect(),
            identity: true,
        }
    }

    /// Order given by a list of coordinates from lowest to highest.
    pub fn from_sequence(names: Vec<String>, lowest_first: &[usize]) -> Result<Self, Gf2Error> {
        let n = names.len();
        let mut rank = vec![u8::MAX; n];
        if lowest_first.len() != n {
            return Err(Gf2Error::LengthMismatch(lowest_first.len(), n));
        }
        for (pos, &coord) in lowest_first.iter().enumerate() {
            if coord >= n || rank[coord] != u8::MAX {
                return Err(Gf2Error::Parse(format!(
                    "not a permutation: {lowest_first:?}"
                )));
            }
            rank[coord] = pos as u8;
        }
        let identity = rank.iter().enumerate().all(|(i, &r)| r as usize == i);
        Ok(Self {
            names,
            rank,
            identity,
        })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn name(&self, coord: usize) -> &str {
        &self.names[coord]
    }

    pub fn coordinate_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    /// Integer key whose numeric order is the anti-lexicographic order.
    #[inline]
    pub fn key(&self, v: u64) -> u64 {
        if self.identity {
            return v;
        }
        let mut k = 0u64;
        let mut rest = v;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            k |= 1 << self.rank[i];
            rest &= rest - 1;
        }
        k
    }

    /// Human-readable sum of basis names, e.g. `e1+e*2`.
    pub fn describe(&self, v: u64) -> String {
        if v == 0 {
            return "0".into();
        }
        let mut parts = Vec::new();
        let mut rest = v;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            parts.push(self.names[i].as_str());
            rest &= rest - 1;
        }
        parts.join("+")
    }
}

/// `v <_alex w` iff the highest coordinate (under `order`) where they differ
/// is set in `w`.
pub fn alex_compare(v: BitVector, w: BitVector, order: &BasisOrder) -> Ordering {
    order.key(v.bits()).cmp(&order.key(w.bits()))
}

/// Anti-lexicographic order on tuples: the last coordinate is most
/// significant, ties fall through toward earlier coordinates.
pub fn tuple_alex_compare(
    s: &[BitVector],
    t: &[BitVector],
    order: &BasisOrder,
) -> Result<Ordering, Gf2Error> {
    if s.len() != t.len() {
        return Err(Gf2Error::LengthMismatch(s.len(), t.len()));
    }
    for (a, b) in s.iter().zip(t.iter()).rev() {
        match alex_compare(*a, *b, order) {
            Ordering::Equal => continue,
            other => return Ok(other),
        }
    }
    Ok(Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn standard3() -> (BasisOrder, impl Fn(&str) -> BitVector) {
        let order = BasisOrder::standard(3, 0);
        let o2 = order.clone();
        (order, move |name: &str| {
            BitVector::unit(6, o2.coordinate_of(name).unwrap())
        })
    }

    #[test]
    fn unit_vector_comparisons() {
        let (order, e) = standard3();
        assert_eq!(alex_compare(e("e1"), e("e*1"), &order), Ordering::Less);
        let sum = e("e1").add(e("e*1")).unwrap();
        assert_eq!(alex_compare(sum, e("e2"), &order), Ordering::Less);
        assert_eq!(alex_compare(sum, sum, &order), Ordering::Equal);
    }

    #[test]
    fn tuple_examples() {
        let (order, e) = standard3();
        assert_eq!(
            tuple_alex_compare(&[e("e1"), e("e2")], &[e("e2"), e("e1")], &order).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            tuple_alex_compare(
                &[e("e*1"), e("e1"), e("e2")],
                &[e("e1"), e("e*1"), e("e2")],
                &order
            )
            .unwrap(),
            Ordering::Less
        );
        assert!(tuple_alex_compare(&[e("e1")], &[], &order).is_err());
    }

    #[test]
    fn tuple_order_matches_brute_force_sort() {
        // all ordered pairs drawn from {e1, e2}: sorting by (last, first) as
        // integers must agree with tuple_alex_compare
        let (order, e) = standard3();
        let pts = [e("e1"), e("e2")];
        let mut pairs = Vec::new();
        for a in pts {
            for b in pts {
                pairs.push([a, b]);
            }
        }
        let mut by_cmp = pairs.clone();
        by_cmp.sort_by(|x, y| tuple_alex_compare(x, y, &order).unwrap());
        let mut by_key = pairs;
        by_key.sort_by_key(|p| (p[1].bits(), p[0].bits()));
        assert_eq!(by_cmp, by_key);
    }

    fn permuted_order() -> BasisOrder {
        let names = (0..6).map(|i| format!("c{i}")).collect();
        BasisOrder::from_sequence(names, &[3, 0, 5, 1, 4, 2]).unwrap()
    }

    proptest! {
        #[test]
        fn alex_is_strict_total_order(a in 0u64..64, b in 0u64..64, c in 0u64..64) {
            let order = permuted_order();
            let [a, b, c] = [a, b, c].map(|x| BitVector::new(x, 6).unwrap());
            let ab = alex_compare(a, b, &order);
            prop_assert_eq!(ab, alex_compare(b, a, &order).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab == Ordering::Less && alex_compare(b, c, &order) == Ordering::Less {
                prop_assert_eq!(alex_compare(a, c, &order), Ordering::Less);
            }
        }

        #[test]
        fn alex_matches_highest_differing_coordinate(a in 0u64..64, b in 0u64..64) {
            let order = permuted_order();
            let diff = a ^ b;
            prop_assume!(diff != 0);
            // highest-ranked differing coordinate decides
            let top = (0..6).filter(|i| diff >> i & 1 == 1).max_by_key(|&i| order.key(1 << i)).unwrap();
            let expected = if b >> top & 1 == 1 { Ordering::Less } else { Ordering::Greater };
            let got = alex_compare(BitVector::new(a, 6).unwrap(), BitVector::new(b, 6).unwrap(), &order);
            prop_assert_eq!(got, expected);
        }
    }
}
