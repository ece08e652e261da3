//! The quadratic forms on `N` and `U = N ⊕ N`.
//!
//! `N` is the sum-zero part of the 5-point permutation module. A vector of
//! `N` is stored by its first four coordinates; the fifth is their parity.
//! `Q(v)` is half the weight of the sum-zero vector, mod 2.

use super::{all_vectors, F2Mat, F2Vec, Subspace};
use crate::error::{Error, Result};

/// Sum-zero vector in `GF(2)^5` with the given `N` coordinates.
pub fn n_to_sum_zero(v: F2Vec) -> F2Vec {
    assert_eq!(v.dim(), 4, "N has dimension 4");
    F2Vec::from_bits(5, v.bits() | u64::from(v.weight() % 2) << 4)
}

pub fn n_from_sum_zero(v: F2Vec) -> Result<F2Vec> {
    if v.dim() != 5 {
        return Err(Error::DimensionMismatch(v.dim(), 5));
    }
    if !v.weight().is_multiple_of(2) {
        return Err(Error::check("sum-zero", v.to_string()));
    }
    Ok(v.slice(0, 4))
}

pub fn n_form(v: F2Vec) -> bool {
    n_to_sum_zero(v).weight() / 2 % 2 == 1
}

/// `Q(u₁ ⊕ u₂) = Q(u₁) + Q(u₂)`.
pub fn u_form(v: F2Vec) -> bool {
    assert_eq!(v.dim(), 8, "U has dimension 8");
    n_form(v.slice(0, 4)) ^ n_form(v.slice(4, 4))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadForm {
    N,
    U,
}

impl QuadForm {
    pub fn dim(self) -> usize {
        match self {
            QuadForm::N => 4,
            QuadForm::U => 8,
        }
    }

    pub fn value(self, v: F2Vec) -> bool {
        match self {
            QuadForm::N => n_form(v),
            QuadForm::U => u_form(v),
        }
    }

    /// `(singular, nonsingular)` counts among nonzero vectors.
    pub fn census(self) -> (usize, usize) {
        let singular = all_vectors(self.dim()).skip(1).filter(|&v| !self.value(v)).count();
        (singular, (1 << self.dim()) - 1 - singular)
    }

    pub fn is_totally_singular(self, s: &Subspace) -> bool {
        s.elements().into_iter().all(|v| !self.value(v))
    }

    pub fn gram(self) -> F2Mat {
        let n = self.dim();
        F2Mat::from_fn(n, n, |i| {
            F2Vec::from_bits(
                n,
                (0..n).fold(0, |acc, j| {
                    acc | u64::from(polar(self, F2Vec::unit(n, i), F2Vec::unit(n, j))) << j
                }),
            )
        })
    }
}

/// `b(u,v) = Q(u+v) + Q(u) + Q(v)`.
pub fn polar(form: QuadForm, u: F2Vec, v: F2Vec) -> bool {
    form.value(u + v) ^ form.value(u) ^ form.value(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_census() {
        assert!(!n_form(F2Vec::zero(4)));
        assert_eq!(QuadForm::N.census(), (5, 10));
    }

    #[test]
    fn polar_form_is_alternating_and_nondegenerate() {
        for u in all_vectors(4) {
            assert!(!polar(QuadForm::N, u, u));
            for v in all_vectors(4) {
                assert_eq!(polar(QuadForm::N, u, v), polar(QuadForm::N, v, u));
            }
        }
        assert_eq!(QuadForm::N.gram().rank(), 4);
        assert_eq!(QuadForm::U.gram().rank(), 8);
    }

    #[test]
    fn witt_index_is_one() {
        // No totally singular plane among the 35 planes of N.
        let mut planes = std::collections::BTreeSet::new();
        for u in all_vectors(4).skip(1) {
            for v in all_vectors(4).skip(1) {
                let p = Subspace::span(4, [u, v]);
                if p.dim() == 2 {
                    planes.insert(p);
                }
            }
        }
        assert_eq!(planes.len(), 35);
        assert!(planes.iter().all(|p| !QuadForm::N.is_totally_singular(p)));
    }

    #[test]
    fn sum_zero_round_trip() {
        for v in all_vectors(4) {
            let s = n_to_sum_zero(v);
            assert_eq!(s.weight() % 2, 0);
            assert_eq!(n_from_sum_zero(s).unwrap(), v);
        }
        assert!(n_from_sum_zero(F2Vec::unit(5, 0)).is_err());
    }
}
