//! Linear algebra and module theory over GF(2).
//!
//! Vectors are row vectors and matrices act on the right: `v·A` is the XOR of
//! the rows of `A` selected by `v`. Coordinate `i` is bit `i` of the word.
//! Every space handled here has at most 64 coordinates.

mod module;
mod quad;
mod subspace;

pub use module::{hom_space, module_diagnostics, spin, submodule_scan, Diagnostics, GroupTag, ModuleAction};
pub use quad::{n_form, n_from_sum_zero, n_to_sum_zero, polar, u_form, QuadForm};
pub use subspace::{linsolve, nullspace_of_rows, rank, SolutionSet, Subspace};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};
use crate::word::GroupElement;

pub const MAX_DIM: usize = 64;

#[inline]
fn mask(dim: usize) -> u64 {
    if dim == 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// A vector in `GF(2)^dim`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct F2Vec {
    dim: u8,
    bits: u64,
}

impl F2Vec {
    pub fn zero(dim: usize) -> F2Vec {
        assert!(dim <= MAX_DIM, "dimension {dim} too large");
        F2Vec {
            dim: dim as u8,
            bits: 0,
        }
    }

    pub fn new(dim: usize, bits: u64) -> Result<F2Vec> {
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        if bits & !mask(dim) != 0 {
            return Err(Error::Parse(format!("bits {bits:#x} exceed dimension {dim}")));
        }
        Ok(F2Vec { dim: dim as u8, bits })
    }

    /// Like [`F2Vec::new`] but masks stray high bits instead of failing.
    pub fn from_bits(dim: usize, bits: u64) -> F2Vec {
        assert!(dim <= MAX_DIM, "dimension {dim} too large");
        F2Vec {
            dim: dim as u8,
            bits: bits & mask(dim),
        }
    }

    pub fn unit(dim: usize, i: usize) -> F2Vec {
        assert!(i < dim);
        F2Vec::from_bits(dim, 1 << i)
    }

    pub fn from_coords(coords: &[u8]) -> F2Vec {
        let bits = coords
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (((c & 1) as u64) << i));
        F2Vec::from_bits(coords.len(), bits)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.dim());
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Standard dot product.
    pub fn dot(&self, other: &F2Vec) -> bool {
        (self.bits & other.bits).count_ones() % 2 == 1
    }

    /// Index of the first nonzero coordinate.
    pub fn leading(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    /// `self ⊕ other` with `self` in the low coordinates.
    pub fn concat(&self, other: &F2Vec) -> F2Vec {
        let dim = self.dim() + other.dim();
        assert!(dim <= MAX_DIM, "dimension {dim} too large");
        F2Vec {
            dim: dim as u8,
            bits: self.bits | other.bits << self.dim(),
        }
    }

    /// Coordinates `start..start+len`.
    pub fn slice(&self, start: usize, len: usize) -> F2Vec {
        assert!(start + len <= self.dim());
        F2Vec::from_bits(len, self.bits >> start)
    }

    /// Key whose numeric order is the lexicographic order on coordinates.
    #[inline]
    fn lex_key(&self) -> u64 {
        self.bits.reverse_bits()
    }
}

impl Ord for F2Vec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.lex_key().cmp(&other.lex_key()))
    }
}

impl PartialOrd for F2Vec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for F2Vec {
    type Output = F2Vec;
    fn add(self, rhs: F2Vec) -> F2Vec {
        debug_assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        F2Vec {
            dim: self.dim,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl AddAssign for F2Vec {
    fn add_assign(&mut self, rhs: F2Vec) {
        debug_assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        self.bits ^= rhs.bits;
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// All `2^dim` vectors in increasing bit-pattern order.
pub fn all_vectors(dim: usize) -> impl Iterator<Item = F2Vec> {
    assert!(dim < 32, "refusing to enumerate 2^{dim} vectors");
    (0..1u64 << dim).map(move |b| F2Vec::from_bits(dim, b))
}

/// A dense matrix over GF(2), stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Mat {
    nrows: usize,
    ncols: usize,
    rows: Vec<F2Vec>,
}

impl F2Mat {
    pub fn zero(nrows: usize, ncols: usize) -> F2Mat {
        F2Mat {
            nrows,
            ncols,
            rows: vec![F2Vec::zero(ncols); nrows],
        }
    }

    pub fn identity(n: usize) -> F2Mat {
        F2Mat {
            nrows: n,
            ncols: n,
            rows: (0..n).map(|i| F2Vec::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<F2Vec>) -> Result<F2Mat> {
        if ncols > MAX_DIM {
            return Err(Error::DimensionTooLarge(ncols));
        }
        if let Some(r) = rows.iter().find(|r| r.dim() != ncols) {
            return Err(Error::DimensionMismatch(r.dim(), ncols));
        }
        Ok(F2Mat {
            nrows: rows.len(),
            ncols,
            rows,
        })
    }

    /// Matrix of the linear map sending unit vector `i` to `f(i)`.
    pub fn from_fn(nrows: usize, ncols: usize, f: impl Fn(usize) -> F2Vec) -> F2Mat {
        let rows = (0..nrows).map(f).collect::<Vec<_>>();
        F2Mat::from_rows(ncols, rows).expect("consistent dimensions")
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[F2Vec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> F2Vec {
        self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    /// `v·A`.
    #[inline]
    pub fn apply(&self, v: F2Vec) -> F2Vec {
        debug_assert_eq!(v.dim(), self.nrows, "dimension mismatch");
        let mut out = 0u64;
        let mut b = v.bits;
        while b != 0 {
            let i = b.trailing_zeros() as usize;
            out ^= self.rows[i].bits;
            b &= b - 1;
        }
        F2Vec {
            dim: self.ncols as u8,
            bits: out,
        }
    }

    /// `A·B`.
    pub fn mul(&self, other: &F2Mat) -> F2Mat {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        F2Mat {
            nrows: self.nrows,
            ncols: other.ncols,
            rows: self.rows.iter().map(|&r| other.apply(r)).collect(),
        }
    }

    pub fn try_mul(&self, other: &F2Mat) -> Result<F2Mat> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch(self.ncols, other.nrows));
        }
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &F2Mat) -> F2Mat {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "shape mismatch");
        F2Mat {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().zip(&other.rows).map(|(&a, &b)| a + b).collect(),
        }
    }

    /// `A + I`.
    pub fn plus_identity(&self) -> F2Mat {
        assert!(self.is_square());
        self.add(&F2Mat::identity(self.nrows))
    }

    pub fn transpose(&self) -> F2Mat {
        F2Mat::from_fn(self.ncols, self.nrows, |j| {
            F2Vec::from_bits(
                self.nrows,
                (0..self.nrows).fold(0, |acc, i| acc | (u64::from(self.get(i, j)) << i)),
            )
        })
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.nrows
    }

    pub fn inverse(&self) -> Result<F2Mat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(self.nrows, self.ncols));
        }
        let n = self.nrows;
        // Gauss–Jordan on [A | I], kept as pairs of words.
        let mut work: Vec<(u64, u64)> = self.rows.iter().enumerate().map(|(i, r)| (r.bits, 1u64 << i)).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| work[r].0 >> col & 1 == 1).ok_or(Error::Singular)?;
            work.swap(col, pivot);
            let (pa, pb) = work[col];
            for (r, row) in work.iter_mut().enumerate() {
                if r != col && row.0 >> col & 1 == 1 {
                    row.0 ^= pa;
                    row.1 ^= pb;
                }
            }
        }
        Ok(F2Mat {
            nrows: n,
            ncols: n,
            rows: work.into_iter().map(|(_, b)| F2Vec::from_bits(n, b)).collect(),
        })
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[&F2Mat]) -> F2Mat {
        let nrows: usize = blocks.iter().map(|b| b.nrows).sum();
        let ncols: usize = blocks.iter().map(|b| b.ncols).sum();
        let mut rows = Vec::with_capacity(nrows);
        let mut offset = 0;
        for b in blocks {
            for r in &b.rows {
                rows.push(F2Vec::from_bits(ncols, r.bits << offset));
            }
            offset += b.ncols;
        }
        F2Mat::from_rows(ncols, rows).expect("block sizes")
    }

    /// Matrix swapping the two halves of a `2m`-dimensional space.
    pub fn block_swap(m: usize) -> F2Mat {
        F2Mat::from_fn(2 * m, 2 * m, |i| F2Vec::unit(2 * m, (i + m) % (2 * m)))
    }

    pub fn pow(&self, e: i64) -> F2Mat {
        crate::word::power(self, e)
    }

    /// Least `n ≥ 1` with `Aⁿ = I`, searched up to `limit`.
    pub fn order(&self, limit: usize) -> Option<usize> {
        crate::word::element_order(self, limit)
    }
}

impl GroupElement for F2Mat {
    fn op(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inverse(&self) -> Self {
        F2Mat::inverse(self).expect("invertible matrix")
    }
    fn is_identity(&self) -> bool {
        self.is_square() && self.rows.iter().enumerate().all(|(i, r)| r.bits == 1 << i)
    }
    fn identity_like(&self) -> Self {
        F2Mat::identity(self.nrows)
    }
}

impl fmt::Debug for F2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "[{}]", rows.join(" "))
    }
}
