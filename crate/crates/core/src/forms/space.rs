use serde::{Deserialize, Serialize};

use super::FormError;
use crate::gf2::linalg::nullspace;
use crate::gf2::{low_mask, parity, BasisOrder, BitVector, Subspace, MAX_DIM};

/// Symmetric zero-diagonal Gram matrix over GF(2).
///
/// `rows[i]` holds row `i` as a bit word, so `beta(x, y)` is the parity of
/// `y & G x` where `G x` is the xor of the rows selected by `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm {
    n: usize,
    rows: Vec<u64>,
}

impl GramForm {
    pub fn new(rows: Vec<u64>) -> Result<Self, FormError> {
        let n = rows.len();
        if n > MAX_DIM {
            return Err(crate::gf2::Gf2Error::AmbientTooLarge(n).into());
        }
        for (i, &row) in rows.iter().enumerate() {
            if row & !low_mask(n) != 0 {
                return Err(FormError::InvalidGram(format!(
                    "row {i} has entries beyond column {n}"
                )));
            }
            if row >> i & 1 == 1 {
                return Err(FormError::NotAlternating(i));
            }
            for j in 0..n {
                if (row >> j & 1) != (rows[j] >> i & 1) {
                    return Err(FormError::NotSymmetric(i, j));
                }
            }
        }
        Ok(Self { n, rows })
    }

    /// From a 0/1 matrix as nested lists.
    pub fn from_matrix(matrix: &[Vec<u8>]) -> Result<Self, FormError> {
        let n = matrix.len();
        let mut rows = Vec::with_capacity(n);
        for (i, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(FormError::InvalidGram(format!(
                    "row {i} has length {}, expected {n}",
                    r.len()
                )));
            }
            let mut word = 0u64;
            for (j, &x) in r.iter().enumerate() {
                match x {
                    0 => {}
                    1 => word |= 1 << j,
                    _ => return Err(FormError::InvalidGram(format!("entry ({i},{j}) = {x}"))),
                }
            }
            rows.push(word);
        }
        Self::new(rows)
    }

    pub fn to_matrix(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|r| (0..self.n).map(|j| (r >> j & 1) as u8).collect())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// `G x`: the functional `y -> beta(x, y)` as a bit mask.
    #[inline]
    pub fn apply(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            acc ^= self.rows[i];
            rest &= rest - 1;
        }
        acc
    }
}

/// Coordinate role inside a structured ambient space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoordTag {
    /// Member of hyperbolic pair `pair`; `star` marks the `e*` half.
    Hyperbolic {
        pair: usize,
        star: bool,
    },
    Radical,
}

/// How a [`BilinearSpace`] was described; this is also its JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceSpec {
    Named(NamedSpace),
    Explicit { gram: Vec<Vec<u8>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum NamedSpace {
    Symplectic { k: usize },
    Bounded { k: usize, m: usize },
}

impl SpaceSpec {
    pub fn build(&self) -> Result<BilinearSpace, FormError> {
        match self {
            SpaceSpec::Named(NamedSpace::Symplectic { k }) => make_symplectic(*k),
            SpaceSpec::Named(NamedSpace::Bounded { k, m }) => make_bounded(*k, *m),
            SpaceSpec::Explicit { gram } => BilinearSpace::from_gram(GramForm::from_matrix(gram)?),
        }
    }
}

/// A finite ambient space `GF(2)^n` with an alternating form.
#[derive(Clone, Debug)]
pub struct BilinearSpace {
    spec: SpaceSpec,
    form: GramForm,
    order: BasisOrder,
    tags: Option<Vec<CoordTag>>,
    /// Set when the Gram matrix is the standard one: pairs on adjacent
    /// coordinates `(2i, 2i+1)` below `hyperbolic_mask`, zero elsewhere.
    standard: bool,
    hyperbolic_mask: u64,
    radical_mask: u64,
}

const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

impl BilinearSpace {
    fn standard_layout(k: usize, m: usize, spec: SpaceSpec) -> Self {
        let n = 2 * k + m;
        let mut rows = vec![0u64; n];
        let mut tags = Vec::with_capacity(n);
        for i in 0..k {
            rows[2 * i] = 1 << (2 * i + 1);
            rows[2 * i + 1] = 1 << (2 * i);
            tags.push(CoordTag::Hyperbolic {
                pair: i,
                star: false,
            });
            tags.push(CoordTag::Hyperbolic {
                pair: i,
                star: true,
            });
        }
        tags.extend(std::iter::repeat_n(CoordTag::Radical, m));
        let hyperbolic_mask = low_mask(2 * k);
        Self {
            spec,
            form: GramForm { n, rows },
            order: BasisOrder::standard(k, m),
            tags: Some(tags),
            standard: true,
            hyperbolic_mask,
            radical_mask: low_mask(n) & !hyperbolic_mask,
        }
    }

    /// An explicit alternating form. Nondegenerate forms are treated as a
    /// single hyperbolic block for the purposes of decomposition.
    pub fn from_gram(form: GramForm) -> Result<Self, FormError> {
        let n = form.dim();
        let spec = SpaceSpec::Explicit {
            gram: form.to_matrix(),
        };
        let rad = Subspace::from_canonical(n, nullspace(form.rows(), n));
        let (hyperbolic_mask, radical_mask) = if rad.dim() == 0 {
            (low_mask(n), 0)
        } else {
            (0, 0)
        };
        Ok(Self {
            spec,
            form,
            order: BasisOrder::identity(n),
            tags: None,
            standard: false,
            hyperbolic_mask,
            radical_mask,
        })
    }

    pub fn spec(&self) -> &SpaceSpec {
        &self.spec
    }

    pub fn form(&self) -> &GramForm {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn order(&self) -> &BasisOrder {
        &self.order
    }

    pub fn with_order(mut self, order: BasisOrder) -> Result<Self, FormError> {
        if order.len() != self.dim() {
            return Err(crate::gf2::Gf2Error::LengthMismatch(order.len(), self.dim()).into());
        }
        self.order = order;
        Ok(self)
    }

    pub fn tags(&self) -> Option<&[CoordTag]> {
        self.tags.as_deref()
    }

    /// Coordinates spanning the hyperbolic block `V1`.
    pub fn hyperbolic_mask(&self) -> u64 {
        self.hyperbolic_mask
    }

    /// Coordinates spanning `Rad(V)` for tagged spaces.
    pub fn radical_mask(&self) -> u64 {
        self.radical_mask
    }

    /// True for spaces whose coordinates split as `V1 ⊕ Rad(V)`.
    pub fn has_split(&self) -> bool {
        self.hyperbolic_mask | self.radical_mask == low_mask(self.dim())
    }

    /// Number of hyperbolic pairs in the tagged block.
    pub fn pair_count(&self) -> usize {
        self.hyperbolic_mask.count_ones() as usize / 2
    }

    #[inline]
    pub fn beta(&self, x: u64, y: u64) -> bool {
        if self.standard {
            let swapped = ((y & EVEN_BITS) << 1) | ((y >> 1) & EVEN_BITS);
            parity(x & swapped & self.hyperbolic_mask)
        } else {
            parity(self.form.apply(x) & y)
        }
    }

    /// `G x` as a mask: `beta(x, y) = parity(gram_apply(x) & y)`.
    #[inline]
    pub fn gram_apply(&self, x: u64) -> u64 {
        if self.standard {
            let x = x & self.hyperbolic_mask;
            ((x & EVEN_BITS) << 1) | ((x >> 1) & EVEN_BITS)
        } else {
            self.form.apply(x)
        }
    }

    pub fn beta_vec(&self, x: BitVector, y: BitVector) -> bool {
        self.beta(x.bits(), y.bits())
    }

    pub fn whole(&self) -> Subspace {
        Subspace::full(self.dim())
    }

    /// Named basis vector such as `e1`, `e*2`.
    pub fn basis_vector(&self, name: &str) -> Option<u64> {
        self.order.coordinate_of(name).map(|i| 1u64 << i)
    }

    /// Parses `e1+e*2` style sums of basis names.
    pub fn parse_named(&self, expr: &str) -> Result<u64, FormError> {
        let mut v = 0u64;
        for term in expr.split('+') {
            let term = term.trim();
            v ^= self
                .basis_vector(term)
                .ok_or_else(|| FormError::UnknownBasisName(term.to_string()))?;
        }
        Ok(v)
    }

    pub fn span_named(&self, exprs: &[&str]) -> Result<Subspace, FormError> {
        let rows = exprs
            .iter()
            .map(|e| self.parse_named(e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Subspace::from_rows(self.dim(), rows)?)
    }
}

/// Nondegenerate space of `k` hyperbolic pairs, coordinates ordered
/// `e1, e*1, e2, e*2, ...`.
pub fn make_symplectic(k: usize) -> Result<BilinearSpace, FormError> {
    if k == 0 {
        return Err(FormError::NoPairs);
    }
    if 2 * k > MAX_DIM {
        return Err(crate::gf2::Gf2Error::AmbientTooLarge(2 * k).into());
    }
    Ok(BilinearSpace::standard_layout(
        k,
        0,
        SpaceSpec::Named(NamedSpace::Symplectic { k }),
    ))
}

/// `k` hyperbolic pairs followed by an `m`-dimensional radical.
pub fn make_bounded(k: usize, m: usize) -> Result<BilinearSpace, FormError> {
    if k + m == 0 {
        return Err(FormError::EmptySpace);
    }
    if 2 * k + m > MAX_DIM {
        return Err(crate::gf2::Gf2Error::AmbientTooLarge(2 * k + m).into());
    }
    Ok(BilinearSpace::standard_layout(
        k,
        m,
        SpaceSpec::Named(NamedSpace::Bounded { k, m }),
    ))
}
