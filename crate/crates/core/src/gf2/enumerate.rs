//! Streaming enumeration of subspaces and affine flats.
//!
//! Subspaces of dimension `d` are produced by walking echelon patterns: the
//! pivot sets in lexicographic order, and within a pivot set every filling of
//! the free (non-pivot, right-of-pivot) entries by a binary counter. Each
//! subspace appears exactly once because the echelon basis is canonical.

use num_bigint::BigUint;

use super::{low_mask, AffineFlat, Gf2Error, Subspace, MAX_DIM};

/// Number of `d`-dimensional subspaces of `GF(2)^n`.
pub fn gaussian_binomial(n: usize, d: usize) -> Result<u128, Gf2Error> {
    if d > n {
        return Err(Gf2Error::DimensionOutOfRange { n, d });
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        let top = pow2_minus_one(n - i)?;
        let bottom = pow2_minus_one(d - i)?;
        num = num.checked_mul(top).ok_or(Gf2Error::Overflow)?;
        den = den.checked_mul(bottom).ok_or(Gf2Error::Overflow)?;
        // keep the running quotient small; it is always integral
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    debug_assert_eq!(den, 1);
    Ok(num / den)
}

/// Arbitrary-precision variant of [`gaussian_binomial`].
pub fn gaussian_binomial_big(n: usize, d: usize) -> Result<BigUint, Gf2Error> {
    if d > n {
        return Err(Gf2Error::DimensionOutOfRange { n, d });
    }
    let one = BigUint::from(1u32);
    let mut num = one.clone();
    let mut den = one.clone();
    for i in 0..d {
        num *= (&one << (n - i)) - &one;
        den *= (&one << (d - i)) - &one;
    }
    Ok(num / den)
}

fn pow2_minus_one(e: usize) -> Result<u128, Gf2Error> {
    if e >= 128 {
        return Err(Gf2Error::Overflow);
    }
    Ok((1u128 << e) - 1)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Next `d`-combination of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let d = c.len();
    let mut i = d;
    while i > 0 {
        i -= 1;
        if c[i] < n - d + i {
            c[i] += 1;
            for j in i + 1..d {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// One echelon pattern together with a range of its fillings.
#[derive(Clone, Debug)]
pub struct SubspaceChunk {
    n: usize,
    pivots: Vec<usize>,
    /// (row, column) of every free entry, in counter bit order.
    free: Vec<(usize, usize)>,
    start: u64,
    end: u64,
}

impl SubspaceChunk {
    fn for_pivots(n: usize, pivots: Vec<usize>) -> Result<Self, Gf2Error> {
        let pivot_mask: u64 = pivots.iter().fold(0, |m, &p| m | 1 << p);
        let mut free = Vec::new();
        for (row, &p) in pivots.iter().enumerate() {
            for col in p + 1..n {
                if pivot_mask >> col & 1 == 0 {
                    free.push((row, col));
                }
            }
        }
        if free.len() >= 64 {
            return Err(Gf2Error::EnumerationTooLarge(free.len()));
        }
        let end = 1u64 << free.len();
        Ok(Self {
            n,
            pivots,
            free,
            start: 0,
            end,
        })
    }

    pub fn len(&self) -> u64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    fn build(&self, counter: u64) -> Subspace {
        let mut rows: Vec<u64> = self.pivots.iter().map(|&p| 1u64 << p).collect();
        let mut c = counter;
        while c != 0 {
            let b = c.trailing_zeros() as usize;
            let (row, col) = self.free[b];
            rows[row] |= 1 << col;
            c &= c - 1;
        }
        Subspace::from_canonical(self.n, rows)
    }

    pub fn iter(&self) -> impl Iterator<Item = Subspace> + '_ {
        (self.start..self.end).map(move |c| self.build(c))
    }

    pub fn into_iter_owned(self) -> impl Iterator<Item = Subspace> {
        (self.start..self.end).map(move |c| self.build(c))
    }
}

/// Splits the `d`-subspaces of `GF(2)^n` into chunks of at most `2^max_bits`
/// subspaces, in enumeration order. Concatenating the chunks reproduces
/// [`SubspaceIter`] exactly.
pub fn subspace_chunks(n: usize, d: usize, max_bits: u32) -> Result<Vec<SubspaceChunk>, Gf2Error> {
    check_dims(n, d)?;
    let step = 1u64 << max_bits.min(63);
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..d).collect();
    loop {
        let base = SubspaceChunk::for_pivots(n, pivots.clone())?;
        let mut s = 0;
        while s < base.end {
            let e = base.end.min(s.saturating_add(step));
            out.push(SubspaceChunk {
                start: s,
                end: e,
                ..base.clone()
            });
            s = e;
        }
        if !next_combination(&mut pivots, n) {
            break;
        }
    }
    Ok(out)
}

fn check_dims(n: usize, d: usize) -> Result<(), Gf2Error> {
    if n > MAX_DIM {
        return Err(Gf2Error::AmbientTooLarge(n));
    }
    if d > n {
        return Err(Gf2Error::DimensionOutOfRange { n, d });
    }
    Ok(())
}

/// Every `d`-dimensional subspace of `GF(2)^n`, each exactly once.
pub struct SubspaceIter {
    n: usize,
    pivots: Option<Vec<usize>>,
    current: Option<SubspaceChunk>,
    counter: u64,
}

impl SubspaceIter {
    pub fn new(n: usize, d: usize) -> Result<Self, Gf2Error> {
        check_dims(n, d)?;
        let pivots: Vec<usize> = (0..d).collect();
        let current = SubspaceChunk::for_pivots(n, pivots.clone())?;
        Ok(Self {
            n,
            pivots: Some(pivots),
            current: Some(current),
            counter: 0,
        })
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            let chunk = self.current.as_ref()?;
            if self.counter < chunk.end {
                let s = chunk.build(self.counter);
                self.counter += 1;
                return Some(s);
            }
            let pivots = self.pivots.as_mut()?;
            if !next_combination(pivots, self.n) {
                self.current = None;
                return None;
            }
            // patterns with too many free entries cannot be enumerated anyway
            self.current = SubspaceChunk::for_pivots(self.n, pivots.clone()).ok();
            self.counter = 0;
        }
    }
}

/// Every `d`-dimensional affine flat of `GF(2)^n` in canonical form.
pub struct FlatIter {
    subspaces: SubspaceIter,
    proper_only: bool,
    current: Option<(Subspace, Vec<usize>)>,
    offset_index: u64,
}

impl FlatIter {
    pub fn new(n: usize, d: usize, proper_only: bool) -> Result<Self, Gf2Error> {
        Ok(Self {
            subspaces: SubspaceIter::new(n, d)?,
            proper_only,
            current: None,
            offset_index: 0,
        })
    }
}

impl Iterator for FlatIter {
    type Item = AffineFlat;

    fn next(&mut self) -> Option<AffineFlat> {
        loop {
            if let Some((dir, free)) = &self.current {
                if self.offset_index < 1u64 << free.len() {
                    let mut off = 0u64;
                    for (b, &col) in free.iter().enumerate() {
                        if self.offset_index >> b & 1 == 1 {
                            off |= 1 << col;
                        }
                    }
                    self.offset_index += 1;
                    if self.proper_only && off == 0 {
                        continue;
                    }
                    return Some(AffineFlat::from_raw(dir.clone(), off));
                }
            }
            let dir = self.subspaces.next()?;
            let n = dir.ambient_dim();
            let pm = dir.pivot_mask();
            let free: Vec<usize> = (0..n).filter(|&c| pm >> c & 1 == 0).collect();
            debug_assert_eq!(low_mask(n) & !pm, free.iter().fold(0, |m, &c| m | 1 << c));
            self.current = Some((dir, free));
            self.offset_index = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn gaussian_examples() {
        assert_eq!(gaussian_binomial(3, 1).unwrap(), 7);
        assert_eq!(gaussian_binomial(5, 0).unwrap(), 1);
        assert_eq!(gaussian_binomial(4, 2).unwrap(), 35);
        assert_eq!(gaussian_binomial(8, 6).unwrap(), 255 * 127 / 3);
        assert!(gaussian_binomial(2, 3).is_err());
        assert_eq!(gaussian_binomial(200, 100), Err(Gf2Error::Overflow));
        assert_eq!(
            gaussian_binomial_big(8, 6).unwrap(),
            BigUint::from(10795u32)
        );
    }

    #[test]
    fn big_and_native_agree() {
        for n in 0..=20 {
            for d in 0..=n {
                assert_eq!(
                    BigUint::from(gaussian_binomial(n, d).unwrap()),
                    gaussian_binomial_big(n, d).unwrap()
                );
            }
        }
    }

    #[test]
    fn enumeration_counts_match_gaussian_binomial() {
        for n in 0..=8 {
            for d in 0..=n {
                let subs: Vec<Subspace> = SubspaceIter::new(n, d).unwrap().collect();
                assert_eq!(
                    subs.len() as u128,
                    gaussian_binomial(n, d).unwrap(),
                    "n={n} d={d}"
                );
                if n <= 5 {
                    let set: HashSet<_> = subs.iter().cloned().collect();
                    assert_eq!(set.len(), subs.len());
                }
            }
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(SubspaceIter::new(3, 1).unwrap().count(), 7);
        let all: Vec<_> = SubspaceIter::new(3, 3).unwrap().collect();
        assert_eq!(all, vec![Subspace::full(3)]);
        assert_eq!(SubspaceIter::new(8, 6).unwrap().count(), 10795);
        assert!(SubspaceIter::new(3, 4).is_err());
    }

    #[test]
    fn chunks_reproduce_stream() {
        let chunks = subspace_chunks(6, 3, 4).unwrap();
        assert!(chunks.iter().all(|c| c.len() <= 16));
        let from_chunks: Vec<Subspace> = chunks.iter().flat_map(|c| c.iter()).collect();
        let direct: Vec<Subspace> = SubspaceIter::new(6, 3).unwrap().collect();
        assert_eq!(from_chunks, direct);
    }

    #[test]
    fn flat_counts() {
        assert_eq!(FlatIter::new(3, 1, false).unwrap().count(), 28);
        assert_eq!(FlatIter::new(3, 1, true).unwrap().count(), 21);
        assert_eq!(FlatIter::new(2, 0, false).unwrap().count(), 4);
        for n in 0..=5 {
            for d in 0..=n {
                let expected = gaussian_binomial(n, d).unwrap() << (n - d);
                let flats: HashSet<_> = FlatIter::new(n, d, false).unwrap().collect();
                assert_eq!(flats.len() as u128, expected);
                assert!(flats
                    .iter()
                    .all(|f| f.direction().reduce_bits(f.offset().bits()) == f.offset().bits()));
            }
        }
    }
}
