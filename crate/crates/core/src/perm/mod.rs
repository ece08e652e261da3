//! Permutations acting on the right, small-group enumeration, stabilizer
//! chains and block systems.
//!
//! Points are `0..degree`. `p.compose(&q)` applies `p` first and then `q`,
//! so `i^(pq) = (i^p)^q`.

mod blocks;
mod group;
mod schreier;

pub use blocks::{is_block, minimal_block, BlockFinder};
pub use group::{coset_action, CosetAction, GroupEnum, DEFAULT_BUDGET};
pub use schreier::{ss_order, StabChain};

use std::fmt;

use crate::error::{Error, Result};
use crate::word::GroupElement;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        assert!(degree <= u16::MAX as usize + 1, "degree too large");
        Perm {
            images: (0..degree).map(|i| i as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u16>) -> Perm {
        debug_assert!(Perm::from_images(images.iter().map(|&i| i as usize).collect()).is_ok());
        Perm { images }
    }

    /// Builds a permutation from disjoint cycles of 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= degree || b >= degree || touched[a] {
                    return Err(Error::NotAPermutation(format!("bad cycle {cycle:?}")));
                }
                touched[a] = true;
                images[a] = b;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `p` then `q`. Panics on a degree mismatch; see [`Perm::try_compose`].
    pub fn compose(&self, q: &Perm) -> Perm {
        assert_eq!(self.degree(), q.degree(), "degree mismatch");
        Perm {
            images: self.images.iter().map(|&i| q.images[i as usize]).collect(),
        }
    }

    pub fn try_compose(&self, q: &Perm) -> Result<Perm> {
        if self.degree() != q.degree() {
            return Err(Error::DegreeMismatch(self.degree(), q.degree()));
        }
        Ok(self.compose(q))
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Perm { images: inv }
    }

    /// `q⁻¹ p q`.
    pub fn conjugate(&self, q: &Perm) -> Perm {
        assert_eq!(self.degree(), q.degree(), "degree mismatch");
        // (q⁻¹pq) sends i^q to i^(pq).
        let mut images = vec![0u16; self.degree()];
        for i in 0..self.degree() {
            images[q.apply(i)] = q.images[self.apply(i)];
        }
        Perm { images }
    }

    pub fn try_conjugate(&self, q: &Perm) -> Result<Perm> {
        if self.degree() != q.degree() {
            return Err(Error::DegreeMismatch(self.degree(), q.degree()));
        }
        Ok(self.conjugate(q))
    }

    pub fn pow(&self, e: i64) -> Perm {
        crate::word::power(self, e)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                seen[j] = true;
                cyc.push(j);
                j = self.apply(j);
            }
            out.push(cyc);
        }
        out
    }

    /// Least `n ≥ 1` with `pⁿ = 1`.
    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, |acc, l| acc / gcd(acc, l) * l)
    }

    /// Sign as a boolean: `true` for odd permutations.
    pub fn is_odd(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1
    }

    /// Smallest point moved, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &j)| i != j as usize)
            .map(|(i, _)| i)
    }
}

impl GroupElement for Perm {
    fn op(&self, other: &Self) -> Self {
        self.compose(other)
    }
    fn inverse(&self) -> Self {
        Perm::inverse(self)
    }
    fn is_identity(&self) -> bool {
        Perm::is_identity(self)
    }
    fn identity_like(&self) -> Self {
        Perm::identity(self.degree())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    /// Cycle notation on 0-based points, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn compose_applies_left_factor_first() {
        let a = p(3, &[&[0, 1]]);
        let b = p(3, &[&[1, 2]]);
        let ab = a.compose(&b);
        // 0 -> 1 -> 2, 2 -> 2 -> 1, 1 -> 0 -> 0
        assert_eq!(ab.images(), &[2, 0, 1]);
        assert_eq!(ab, p(3, &[&[0, 2, 1]]));
    }

    #[test]
    fn identity_and_inverse() {
        let q = p(5, &[&[0, 3, 1], &[2, 4]]);
        assert_eq!(Perm::identity(5).compose(&q), q);
        assert!(q.compose(&q.inverse()).is_identity());
        assert_eq!(q.order(), 6);
        assert_eq!(q.pow(6), Perm::identity(5));
        assert_eq!(q.pow(-1), q.inverse());
    }

    #[test]
    fn conjugate_matches_definition() {
        let a = p(4, &[&[0, 1, 2]]);
        let q = p(4, &[&[0, 3]]);
        let direct = q.inverse().compose(&a).compose(&q);
        assert_eq!(a.conjugate(&q), direct);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Perm::identity(3);
        let b = Perm::identity(4);
        assert_eq!(a.try_compose(&b), Err(Error::DegreeMismatch(3, 4)));
        assert!(a.try_conjugate(&b).is_err());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn parity() {
        assert!(p(5, &[&[0, 1]]).is_odd());
        assert!(!p(5, &[&[0, 1, 2]]).is_odd());
        assert!(p(5, &[&[0, 1, 2, 3]]).is_odd());
    }
}
