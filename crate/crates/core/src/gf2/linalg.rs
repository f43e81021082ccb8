//! Row reduction kernels on raw `u64` rows.
//!
//! The pivot of a row is its lowest set bit. After [`rref_in_place`] the rows
//! are nonzero, sorted by strictly increasing pivot, and every pivot column
//! has exactly one set bit among the rows.

use super::parity;

/// Reduces `rows` to canonical reduced row-echelon form, dropping zero rows.
pub fn rref_in_place(rows: &mut Vec<u64>) {
    let mut rank = 0;
    for col in 0..64 {
        let bit = 1u64 << col;
        let Some(found) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot_row = rows[rank];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
}

/// Rank of the given rows.
pub fn rank(rows: &[u64]) -> usize {
    let mut basis: [u64; 64] = [0; 64];
    let mut r = 0;
    for &row in rows {
        let mut v = row;
        while v != 0 {
            let p = v.trailing_zeros() as usize;
            if basis[p] == 0 {
                basis[p] = v;
                r += 1;
                break;
            }
            v ^= basis[p];
        }
    }
    r
}

/// Reduces `v` against rows already in reduced echelon form.
#[inline]
pub fn reduce(rows: &[u64], mut v: u64) -> u64 {
    for &row in rows {
        if v & (row & row.wrapping_neg()) != 0 {
            v ^= row;
        }
    }
    v
}

/// Basis (in echelon form) of `{x in GF(2)^n : parity(x & c) = 0 for all c}`.
pub fn nullspace(constraints: &[u64], n: usize) -> Vec<u64> {
    let mut rows = constraints.to_vec();
    rref_in_place(&mut rows);
    let pivots: u64 = rows.iter().fold(0, |acc, r| acc | (r & r.wrapping_neg()));
    let mut out = Vec::with_capacity(n - rows.len());
    for free in 0..n {
        let bit = 1u64 << free;
        if pivots & bit != 0 {
            continue;
        }
        let mut x = bit;
        for row in &rows {
            if row & bit != 0 {
                x |= row & row.wrapping_neg();
            }
        }
        out.push(x);
    }
    rref_in_place(&mut out);
    out
}

/// Finds `x` with `parity(x & c_i) = b_i` for all constraints, free
/// coordinates set to zero; `None` when inconsistent.
pub fn solve(constraints: &[(u64, bool)], n: usize) -> Option<u64> {
    let mut rows: Vec<u128> = constraints
        .iter()
        .map(|&(c, b)| c as u128 | ((b as u128) << 64))
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let bit = 1u128 << col;
        let Some(found) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot_row = rows[rank];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
        rank += 1;
    }
    let mut x = 0u64;
    for row in &rows {
        let low = *row as u64;
        let rhs = (row >> 64) & 1 == 1;
        if low == 0 {
            if rhs {
                return None;
            }
            continue;
        }
        if rhs {
            x |= low & low.wrapping_neg();
        }
    }
    debug_assert!(constraints.iter().all(|&(c, b)| parity(x & c) == b));
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_matches_hand_example() {
        // {110, 011} -> {101, 011}
        let mut rows = vec![0b011, 0b110];
        rref_in_place(&mut rows);
        assert_eq!(rows, vec![0b101, 0b110]);
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let cons = [0b1011u64, 0b0110];
        let ns = nullspace(&cons, 4);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for c in &cons {
                assert!(!parity(x & c));
            }
        }
    }

    #[test]
    fn solve_detects_inconsistency() {
        assert_eq!(solve(&[(0b1, true), (0b1, false)], 2), None);
        let x = solve(&[(0b11, true), (0b10, true)], 2).unwrap();
        assert!(parity(x & 0b11) && parity(x & 0b10));
    }

    #[test]
    fn rank_counts_independent_rows() {
        assert_eq!(rank(&[0b1, 0b10, 0b11]), 2);
        assert_eq!(rank(&[]), 0);
    }
}
