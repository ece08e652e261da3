use std::cmp::Ordering;
use std::fmt;

use super::{F2Mat, F2Vec};
use crate::error::{Error, Result};

/// A subspace of `GF(2)^ambient` held by its reduced row echelon basis.
///
/// Pivots are leading (lowest-index) coordinates, rows are sorted by pivot,
/// and every pivot column is zero outside its own row. The basis is
/// therefore canonical, so equal subspaces compare equal field by field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<F2Vec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| F2Vec::unit(ambient, i)).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = F2Vec>) -> Subspace {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[F2Vec] {
        &self.basis
    }

    pub fn size(&self) -> u64 {
        1u64 << self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Residue of `v` after clearing every pivot coordinate.
    #[inline]
    pub fn reduce(&self, mut v: F2Vec) -> F2Vec {
        for b in &self.basis {
            if v.get(b.leading().expect("nonzero basis row")) {
                v += *b;
            }
        }
        v
    }

    #[inline]
    pub fn contains(&self, v: F2Vec) -> bool {
        debug_assert_eq!(v.dim(), self.ambient, "dimension mismatch");
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: F2Vec) -> bool {
        assert_eq!(v.dim(), self.ambient, "dimension mismatch");
        let v = self.reduce(v);
        let Some(p) = v.leading() else {
            return false;
        };
        for b in &mut self.basis {
            if b.get(p) {
                *b += v;
            }
        }
        let pos = self
            .basis
            .iter()
            .position(|b| b.leading().expect("nonzero") > p)
            .unwrap_or(self.basis.len());
        self.basis.insert(pos, v);
        true
    }

    /// Coordinates of `v` with respect to the echelon basis.
    pub fn coords(&self, v: F2Vec) -> Option<F2Vec> {
        let c = F2Vec::from_bits(
            self.dim(),
            self.basis.iter().enumerate().fold(0, |acc, (i, b)| {
                acc | (u64::from(v.get(b.leading().expect("nonzero"))) << i)
            }),
        );
        (self.from_coords(c) == v).then_some(c)
    }

    /// Vector with the given coordinates.
    pub fn from_coords(&self, c: F2Vec) -> F2Vec {
        let mut v = F2Vec::zero(self.ambient);
        for (i, b) in self.basis.iter().enumerate() {
            if c.get(i) {
                v += *b;
            }
        }
        v
    }

    /// Every vector of the subspace, ordered by coordinate bit pattern.
    pub fn elements(&self) -> Vec<F2Vec> {
        assert!(self.dim() < 32, "subspace too large to list");
        (0..1u64 << self.dim())
            .map(|c| self.from_coords(F2Vec::from_bits(self.dim(), c)))
            .collect()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "dimension mismatch");
        let mut s = self.clone();
        for &v in &other.basis {
            s.insert(v);
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "dimension mismatch");
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // c ↦ reduce_other(c·basis) is linear; its kernel gives the meet.
        let residues: Vec<F2Vec> = self.basis.iter().map(|&b| other.reduce(b)).collect();
        let m = F2Mat::from_rows(self.ambient, residues).expect("shape");
        let kernel = linsolve(&m, None).kernel;
        Subspace::span(self.ambient, kernel.basis.iter().map(|&c| self.from_coords(c)))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|&b| other.contains(b))
    }

    /// `self ⊕ other = ambient`.
    pub fn is_complement_of(&self, other: &Subspace) -> bool {
        self.dim() + other.dim() == self.ambient && self.intersection(other).is_zero()
    }

    pub fn image(&self, m: &F2Mat) -> Subspace {
        Subspace::span(m.ncols(), self.basis.iter().map(|&b| m.apply(b)))
    }

    pub fn is_invariant(&self, m: &F2Mat) -> bool {
        self.basis.iter().all(|&b| self.contains(m.apply(b)))
    }

    /// `{x : x·A = 0}`.
    pub fn left_kernel(m: &F2Mat) -> Subspace {
        linsolve(m, None).kernel
    }

    /// Matrix of `m` restricted to this (invariant) subspace, in echelon coordinates.
    pub fn restrict(&self, m: &F2Mat) -> Result<F2Mat> {
        let rows = self
            .basis
            .iter()
            .map(|&b| {
                self.coords(m.apply(b))
                    .ok_or(Error::check("invariant subspace", format!("{b} leaves the subspace")))
            })
            .collect::<Result<Vec<_>>>()?;
        F2Mat::from_rows(self.dim(), rows)
    }
}

impl Ord for Subspace {
    /// By dimension, then lexicographically by echelon basis.
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis.iter().map(|r| r.to_string()).collect();
        write!(f, "<{}>", rows.join(","))
    }
}

/// Solutions of `x·A = b`: one particular solution (if consistent) plus the
/// left kernel of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub particular: Option<F2Vec>,
    pub kernel: Subspace,
}

impl SolutionSet {
    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }
}

/// Row reduction of `A` (at most 64 rows) tracking row combinations.
pub fn linsolve(a: &F2Mat, b: Option<F2Vec>) -> SolutionSet {
    let n = a.nrows();
    assert!(n <= super::MAX_DIM, "too many rows");
    let mut pivots: Vec<(u64, u64)> = Vec::new();
    let mut kernel = Subspace::zero(n);
    let reduce = |pivots: &[(u64, u64)], mut v: u64, mut comb: u64| {
        for &(pv, pc) in pivots {
            if v >> pv.trailing_zeros() & 1 == 1 {
                v ^= pv;
                comb ^= pc;
            }
        }
        (v, comb)
    };
    for (i, r) in a.rows().iter().enumerate() {
        let (v, comb) = reduce(&pivots, r.bits(), 1u64 << i);
        if v == 0 {
            kernel.insert(F2Vec::from_bits(n, comb));
        } else {
            let p = v.trailing_zeros();
            for piv in &mut pivots {
                if piv.0 >> p & 1 == 1 {
                    piv.0 ^= v;
                    piv.1 ^= comb;
                }
            }
            pivots.push((v, comb));
        }
    }
    let particular = b.and_then(|b| {
        let (v, comb) = reduce(&pivots, b.bits(), 0);
        (v == 0).then(|| F2Vec::from_bits(n, comb))
    });
    SolutionSet { particular, kernel }
}

/// Rank of a list of vectors.
pub fn rank(rows: &[F2Vec]) -> usize {
    let ambient = rows.first().map(F2Vec::dim).unwrap_or(0);
    Subspace::span(ambient, rows.iter().copied()).dim()
}

/// `{x ∈ GF(2)^nvars : r·x = 0 for every row r}`, rows given as bit masks.
pub fn nullspace_of_rows(rows: &[u64], nvars: usize) -> Subspace {
    let eqs = Subspace::span(nvars, rows.iter().map(|&r| F2Vec::from_bits(nvars, r)));
    let pivot_cols: Vec<usize> = eqs.basis().iter().map(|b| b.leading().expect("nonzero")).collect();
    let free = (0..nvars).filter(|c| !pivot_cols.contains(c));
    Subspace::span(
        nvars,
        free.map(|f| {
            let mut x = F2Vec::unit(nvars, f);
            for (row, &p) in eqs.basis().iter().zip(&pivot_cols) {
                if row.get(f) {
                    x.set(p, true);
                }
            }
            x
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::all_vectors;
    use proptest::prelude::*;

    fn v(c: &[u8]) -> F2Vec {
        F2Vec::from_coords(c)
    }

    #[test]
    fn identity_system_has_unique_solution() {
        let i = F2Mat::identity(4);
        let b = v(&[1, 0, 1, 1]);
        let sol = linsolve(&i, Some(b));
        assert_eq!(sol.particular, Some(b));
        assert!(sol.kernel.is_zero());
    }

    #[test]
    fn sum_zero_subspace_has_rank_four() {
        let rows: Vec<F2Vec> = (0..4).map(|i| F2Vec::unit(5, i) + F2Vec::unit(5, 4)).collect();
        assert_eq!(rank(&rows), 4);
    }

    #[test]
    fn inconsistent_system_is_empty() {
        let a = F2Mat::from_rows(2, vec![v(&[1, 1]), v(&[1, 1])]).unwrap();
        let sol = linsolve(&a, Some(v(&[1, 0])));
        assert!(sol.is_empty());
        assert_eq!(sol.kernel, Subspace::span(2, [v(&[1, 1])]));
    }

    #[test]
    fn echelon_basis_is_canonical() {
        let a = Subspace::span(4, [v(&[1, 1, 0, 0]), v(&[0, 1, 1, 0])]);
        let b = Subspace::span(4, [v(&[1, 0, 1, 0]), v(&[1, 1, 0, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[v(&[1, 0, 1, 0]), v(&[0, 1, 1, 0])]);
    }

    #[test]
    fn nullspace_matches_brute_force() {
        let rows = [0b1011u64, 0b0110];
        let ns = nullspace_of_rows(&rows, 4);
        let brute: Vec<F2Vec> = all_vectors(4)
            .filter(|x| rows.iter().all(|&r| (r & x.bits()).count_ones() % 2 == 0))
            .collect();
        assert_eq!(ns.size() as usize, brute.len());
        assert!(brute.iter().all(|&x| ns.contains(x)));
    }

    fn arb_space(n: usize) -> impl Strategy<Value = Subspace> {
        proptest::collection::vec(0u64..(1 << n), 0..5)
            .prop_map(move |vs| Subspace::span(n, vs.into_iter().map(|b| F2Vec::from_bits(n, b))))
    }

    proptest! {
        #[test]
        fn meet_and_join_are_consistent(a in arb_space(6), b in arb_space(6)) {
            let meet = a.intersection(&b);
            let join = a.sum(&b);
            prop_assert_eq!(meet.dim() + join.dim(), a.dim() + b.dim());
            for x in all_vectors(6) {
                prop_assert_eq!(meet.contains(x), a.contains(x) && b.contains(x));
            }
        }

        #[test]
        fn coords_round_trip(a in arb_space(7), c in 0u64..128) {
            let c = F2Vec::from_bits(a.dim(), c);
            let x = a.from_coords(c);
            prop_assert_eq!(a.coords(x), Some(c));
        }

        #[test]
        fn left_kernel_is_exact(rows in proptest::collection::vec(0u64..32, 1..7)) {
            let m = F2Mat::from_rows(5, rows.iter().map(|&r| F2Vec::from_bits(5, r)).collect()).unwrap();
            let k = Subspace::left_kernel(&m);
            prop_assert_eq!(k.dim() + m.rank(), m.nrows());
            for x in k.elements() {
                prop_assert!(m.apply(x).is_zero());
            }
        }
    }
}
