//! The family group `𝒢 = G ⋉ Uᵏ`, its folders and the general folder criterion.
//!
//! An element is a pair `(g, v)` with `g` an index into `G` and `v ∈ Uᵏ`
//! packed as `k` bytes, copy `i` in bits `8i..8i+8`. The product is
//! `(g₁, v₁)(g₂, v₂) = (g₁g₂, v₁ρ(g₂) + v₂)` with `ρ = ρ_U ∘ φ₅` applied
//! to every copy. `𝒥 = J × Uᵏ` is addressed by `5 + 8k` bit coordinates:
//! the `J` coordinates over `u₁..u₅` in bits 0..5, then `v`.

mod counter;
mod family;
mod general;

pub use counter::{counterexample, Counterexample};
pub use family::{certify_family, family_folder, fiber_map, involution_census, Census, FamilyFolder, Variant};
pub use general::{check_general, GeneralContext, Involution};

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::baseg::GroupG;
use crate::error::{Error, Result};
use crate::f2::{spin, F2Mat, F2Vec, GroupTag, ModuleAction, Subspace};
use crate::loopcore::{Certificate, FolderGroup};
use crate::rng::SplitMix64;
use crate::s5mod::{rho_u, USpace};

/// Largest supported number of `U` copies.
pub const MAX_K: usize = 2;

/// `(g, v)` with `g` an index into `G`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BigElement {
    pub g: u16,
    pub v: u64,
}

impl BigElement {
    pub fn new(g: usize, v: u64) -> BigElement {
        BigElement { g: g as u16, v }
    }
}

impl Ord for BigElement {
    /// By `g`, then `v` read lexicographically from coordinate 0.
    fn cmp(&self, other: &Self) -> Ordering {
        self.g
            .cmp(&other.g)
            .then_with(|| self.v.reverse_bits().cmp(&other.v.reverse_bits()))
    }
}

impl PartialOrd for BigElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BigElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:#x})", self.g, self.v)
    }
}

/// `G ⋉ Uᵏ` with a multiplication table of `G` and byte tables for `ρ`.
pub struct BigGroup<'a> {
    pub g: &'a GroupG,
    pub u: &'a USpace,
    pub k: usize,
    n: usize,
    cayley: Vec<u16>,
    inverse: Vec<u16>,
    /// `rho[g][b]`: the byte `b` of one `U` copy times `ρ(g)`.
    rho: Vec<[u8; 256]>,
}

impl<'a> BigGroup<'a> {
    pub fn new(g: &'a GroupG, u: &'a USpace, k: usize) -> Result<BigGroup<'a>> {
        if k == 0 || k > MAX_K {
            return Err(Error::Unsupported(format!("k = {k} (supported: 1..={MAX_K})")));
        }
        let n = g.order();
        let cayley: Vec<u16> = (0..n * n)
            .into_par_iter()
            .map(|ij| g.group.mul_idx(ij / n, ij % n) as u16)
            .collect();
        let inverse = (0..n).map(|i| g.group.inv_idx(i) as u16).collect();
        let rho = (0..n)
            .map(|i| {
                let m = rho_u(g.phi5(i));
                let mut table = [0u8; 256];
                for (b, slot) in table.iter_mut().enumerate() {
                    *slot = m.apply(F2Vec::from_bits(8, b as u64)).bits() as u8;
                }
                table
            })
            .collect();
        Ok(BigGroup {
            g,
            u,
            k,
            n,
            cayley,
            inverse,
            rho,
        })
    }

    /// `|𝒢| = 3840 · 256ᵏ`.
    pub fn order(&self) -> u128 {
        self.n as u128 * (1u128 << (8 * self.k))
    }

    pub fn u_dim(&self) -> usize {
        8 * self.k
    }

    /// Dimension of `𝒥`.
    pub fn j_dim(&self) -> usize {
        5 + self.u_dim()
    }

    #[inline]
    pub fn g_mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.n + b] as usize
    }

    #[inline]
    pub fn g_inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `v·ρ(g)` on all copies.
    #[inline]
    pub fn act(&self, v: u64, g: usize) -> u64 {
        let t = &self.rho[g];
        (0..self.k).fold(0, |acc, i| {
            acc | u64::from(t[(v >> (8 * i) & 0xff) as usize]) << (8 * i)
        })
    }

    /// `ρ(g)` on all copies, as a matrix.
    pub fn rho_matrix(&self, g: usize) -> F2Mat {
        let m = rho_u(self.g.phi5(g));
        let blocks: Vec<&F2Mat> = std::iter::repeat_n(&m, self.k).collect();
        F2Mat::block_diag(&blocks)
    }

    /// Conjugation by `(g, ·)` on `𝒥` in its `5 + 8k` coordinates.
    pub fn conj_matrix(&self, g: usize) -> F2Mat {
        F2Mat::block_diag(&[&self.g.rho_j(g), &self.rho_matrix(g)])
    }

    pub fn c(&self) -> BigElement {
        BigElement::new(self.g.c_idx(), 0)
    }

    pub fn square(&self, x: BigElement) -> BigElement {
        self.mul(x, x)
    }

    /// `(g, v)` is an involution iff `g² = 1` and `v(ρ(g) + I) = 0`.
    pub fn is_involution_structured(&self, x: BigElement) -> bool {
        let g = x.g as usize;
        (x.g != 0 || x.v != 0) && self.g_mul(g, g) == 0 && self.act(x.v, g) == x.v
    }

    pub fn in_j(&self, x: BigElement) -> bool {
        self.g.in_j(x.g as usize)
    }

    /// `𝒥` coordinates of an element of `𝒥`.
    pub fn j_coords(&self, x: BigElement) -> Option<u64> {
        self.g.j_coords(x.g as usize).map(|j| j.bits() | x.v << 5)
    }

    pub fn from_j_coords(&self, x: u64) -> BigElement {
        let j = self.g.j_element(F2Vec::from_bits(5, x & 0x1f));
        BigElement::new(j, x >> 5)
    }

    /// Embeds a vector of `U` into copy `i`.
    pub fn in_copy(&self, v: F2Vec, i: usize) -> u64 {
        v.bits() << (8 * i)
    }

    /// `Xᵏ` for a subspace `X ≤ U`, in `Uᵏ` coordinates.
    pub fn power(&self, x: &Subspace) -> Subspace {
        Subspace::span(
            self.u_dim(),
            (0..self.k).flat_map(|i| {
                x.basis()
                    .iter()
                    .map(move |b| F2Vec::from_bits(8 * self.k, b.bits() << (8 * i)))
            }),
        )
    }

    /// `C_{Uᵏ}(ρ(g))`.
    pub fn u_fixed(&self, g: usize) -> Subspace {
        Subspace::left_kernel(&self.rho_matrix(g).plus_identity())
    }

    /// `𝒥` as an `S₅`-module under conjugation by `c` and `d`.
    pub fn j_module(&self) -> Result<ModuleAction> {
        ModuleAction::new(
            GroupTag::S5Pair,
            vec![self.conj_matrix(self.g.c_idx()), self.conj_matrix(self.g.d_idx())],
        )
    }
}

impl FolderGroup for BigGroup<'_> {
    type Elem = BigElement;

    fn identity(&self) -> BigElement {
        BigElement { g: 0, v: 0 }
    }

    #[inline]
    fn mul(&self, a: BigElement, b: BigElement) -> BigElement {
        BigElement {
            g: self.cayley[a.g as usize * self.n + b.g as usize],
            v: self.act(a.v, b.g as usize) ^ b.v,
        }
    }

    #[inline]
    fn inv(&self, a: BigElement) -> BigElement {
        let gi = self.g_inv(a.g as usize);
        BigElement::new(gi, self.act(a.v, gi))
    }

    fn generators(&self) -> Vec<BigElement> {
        let mut gens = vec![BigElement::new(self.g.c_idx(), 0), BigElement::new(self.g.d_idx(), 0)];
        gens.extend((0..self.u_dim()).map(|i| BigElement::new(0, 1 << i)));
        gens
    }

    fn order(&self) -> Option<u128> {
        Some(self.order())
    }

    fn dense_key(&self, a: BigElement) -> Option<usize> {
        (self.k == 1).then_some((a.g as usize) << 8 | a.v as usize)
    }

    fn dense_len(&self) -> Option<usize> {
        (self.k == 1).then_some(self.n << 8)
    }
}

/// Structure checks on `𝒢`: order, `ρ` trivial on `J`, `ρ` a homomorphism,
/// and (at `k = 1`) the minimal normal subgroups inside `𝒥`.
pub fn build_gg(bg: &BigGroup) -> Certificate {
    let g = bg.g;
    let mut cert = Certificate::new("family-group");
    cert.param("k", bg.k);
    cert.expect_eq("|G ⋉ U^k|", bg.order(), 3840u128 << (8 * bg.k));
    let nontrivial = (0..g.order()).find(|&i| g.in_j(i) && (0..256).any(|b| bg.rho[i][b] as usize != b));
    cert.record(
        "J acts trivially on U^k",
        nontrivial.is_none(),
        format!("{nontrivial:?}"),
    );
    let mut rng = SplitMix64::new(2);
    let bad = (0..1000)
        .map(|_| (rng.below(g.order()), rng.below(g.order())))
        .find(|&(a, b)| bg.rho_matrix(a).mul(&bg.rho_matrix(b)) != bg.rho_matrix(bg.g_mul(a, b)));
    cert.record(
        "rho is a homomorphism on 1000 random pairs",
        bad.is_none(),
        format!("{bad:?}"),
    );
    cert.expect_eq("|O2| = |J x U^k|", 1u128 << bg.j_dim(), 32u128 << (8 * bg.k));
    if bg.k == 1 {
        match socle_check(bg) {
            Ok((minimal, ok)) => {
                cert.record(
                    "minimal normal subgroups in J x U are J0 or lie in W^k",
                    ok,
                    format!("{minimal} minimal submodules"),
                );
            }
            Err(e) => {
                cert.record(
                    "minimal normal subgroups in J x U are J0 or lie in W^k",
                    false,
                    e.to_string(),
                );
            }
        }
    }
    cert
}

/// Spins every vector of `𝒥`; returns the number of minimal submodules and
/// whether each is `J₀` or inside `𝒲`, with their sum `J₀ + 𝒲`.
fn socle_check(bg: &BigGroup) -> Result<(usize, bool)> {
    let act = bg.j_module()?;
    let dim = bg.j_dim();
    let spins: std::collections::BTreeSet<Subspace> = (1u64..1 << dim)
        .into_par_iter()
        .map(|v| spin(&[F2Vec::from_bits(dim, v)], &act))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let minimal: Vec<&Subspace> = spins
        .iter()
        .filter(|s| !spins.iter().any(|t| t != *s && t.is_subspace_of(s)))
        .collect();
    let j0 = j0_in_j(bg);
    let w = shift_u(bg, &bg.power(&bg.u.w));
    let ok = minimal.iter().all(|m| **m == j0 || m.is_subspace_of(&w));
    let socle = minimal.iter().fold(Subspace::zero(dim), |acc, m| acc.sum(m));
    Ok((minimal.len(), ok && socle == j0.sum(&w)))
}

/// `J₀` inside `𝒥` coordinates.
pub fn j0_in_j(bg: &BigGroup) -> Subspace {
    let dim = bg.j_dim();
    Subspace::span(dim, (0..4).map(|r| F2Vec::from_bits(dim, 1 << r | 1 << 4)))
}

/// A subspace of `Uᵏ` moved into `𝒥` coordinates.
pub fn shift_u(bg: &BigGroup, s: &Subspace) -> Subspace {
    let dim = bg.j_dim();
    Subspace::span(dim, s.basis().iter().map(|b| F2Vec::from_bits(dim, b.bits() << 5)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::s5mod::build_u;

    #[test]
    fn arithmetic_laws() {
        let g = GroupG::build().unwrap();
        let u = build_u(&g, false).unwrap();
        let bg = BigGroup::new(&g, &u, 1).unwrap();
        let e = bg.identity();
        let c = bg.c();
        assert_eq!(bg.square(c), e);
        let mut rng = SplitMix64::new(9);
        let mut draw = || BigElement::new(rng.below(3840), rng.below(256) as u64);
        for _ in 0..2000 {
            let (x, y, z) = (draw(), draw(), draw());
            assert_eq!(bg.mul(e, x), x);
            assert_eq!(bg.mul(x, bg.inv(x)), e);
            assert_eq!(bg.mul(bg.mul(x, y), z), bg.mul(x, bg.mul(y, z)));
            assert_eq!(bg.is_involution(x), bg.is_involution_structured(x));
        }
    }

    #[test]
    fn conjugation_on_j_is_linear() {
        let g = GroupG::build().unwrap();
        let u = build_u(&g, false).unwrap();
        let bg = BigGroup::new(&g, &u, 1).unwrap();
        let mut rng = SplitMix64::new(4);
        for _ in 0..200 {
            let x = rng.next_u64() & ((1 << 13) - 1);
            let h = rng.below(3840);
            let conj = bg.conj(bg.from_j_coords(x), BigElement::new(h, rng.below(256) as u64));
            let m = bg.conj_matrix(h);
            assert_eq!(bg.j_coords(conj), Some(m.apply(F2Vec::from_bits(13, x)).bits()));
        }
    }

    #[test]
    fn rejects_unsupported_k() {
        let g = GroupG::build().unwrap();
        let u = build_u(&g, false).unwrap();
        assert!(BigGroup::new(&g, &u, 0).is_err());
        assert!(BigGroup::new(&g, &u, MAX_K + 1).is_err());
    }
}
