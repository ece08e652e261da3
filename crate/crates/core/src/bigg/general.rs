//! The general folder criterion for groups `𝒢 = B ⋉ Uᵏ` with `O₂ = J_B × Uᵏ`
//! and `𝒢/O₂ ≅ S₅`.
//!
//! Everything the criterion needs is read off the involutions of the base
//! group `B`: an involution `(g, v)` of `𝒢` has `g² = 1` and `v ∈ C_{Uᵏ}(g)`,
//! and conjugation on `O₂` only depends on `g`.

use std::collections::BTreeSet;

use crate::baseg::GroupG;
use crate::f2::{F2Mat, Subspace};
use crate::loopcore::{verify_folder, Certificate, F2Group, Folder};
use crate::perm::Perm;
use crate::s5mod::{fixed_space, rho_u};

/// An involution of the base group.
#[derive(Clone, Debug)]
pub struct Involution {
    /// Printable form of the element.
    pub label: String,
    /// Image in `S₅`.
    pub q: Perm,
    pub in_j: bool,
    /// Conjugation on `J_B` (5 coordinates).
    pub conj_j: F2Mat,
}

/// The data of the criterion.
#[derive(Clone, Debug)]
pub struct GeneralContext {
    pub name: String,
    /// Number of `U` copies (0 for a bare base group).
    pub k: usize,
    pub involutions: Vec<Involution>,
    /// Images of `H` in `S₅`.
    pub h_quotient: BTreeSet<Perm>,
    /// `H ∩ O₂` in `5 + 8k` coordinates.
    pub h_cap_j: Subspace,
    /// `K₀ ⊆ O₂` in the same coordinates.
    pub k0: Vec<u64>,
}

impl GeneralContext {
    /// Involutions of `G` with their images under `φ₅`.
    pub fn involutions_of(g: &GroupG) -> Vec<Involution> {
        g.involutions()
            .into_iter()
            .map(|i| Involution {
                label: g.element(i).to_string(),
                q: g.phi5(i).clone(),
                in_j: g.in_j(i),
                conj_j: g.rho_j(i),
            })
            .collect()
    }

    /// `(G, H, J₀ ∪ c^G)` itself.
    pub fn base(g: &GroupG) -> GeneralContext {
        let z = g.j_coords(g.index(&g.z)).expect("z lies in J");
        GeneralContext {
            name: "base".into(),
            k: 0,
            involutions: Self::involutions_of(g),
            h_quotient: g.h.elements().iter().map(|e| g.phi5(g.index(e)).clone()).collect(),
            h_cap_j: Subspace::span(5, [z]),
            k0: g
                .j0
                .elements()
                .iter()
                .map(|e| g.j_coords(g.index(e)).expect("J0 lies in J").bits())
                .collect(),
        }
    }

    fn j_dim(&self) -> usize {
        5 + 8 * self.k
    }

    /// Conjugation by an element with base part `a` on `O₂`.
    fn conj_matrix(&self, a: &Involution) -> F2Mat {
        let m = rho_u(&a.q);
        let mut blocks = vec![&a.conj_j];
        blocks.extend(std::iter::repeat_n(&m, self.k));
        F2Mat::block_diag(&blocks)
    }

    fn u_fixed_dim(&self, q: &Perm) -> usize {
        self.k * fixed_space(&[rho_u(q)]).dim()
    }

    /// `|K₁ ∩ aO₂|` for the involution `a` (with base part `a`).
    fn n1_at(&self, a: &Involution) -> u128 {
        let same = self.involutions.iter().filter(|b| b.q == a.q).count() as u128;
        same << self.u_fixed_dim(&a.q)
    }

    /// The base parts of `K₁`, i.e. involutions with odd image.
    fn k1_base(&self) -> impl Iterator<Item = &Involution> {
        self.involutions.iter().filter(|a| a.q.is_odd())
    }

    /// `|K₁|`.
    pub fn k1_size(&self) -> u128 {
        self.k1_base().map(|a| 1u128 << self.u_fixed_dim(&a.q)).sum()
    }

    /// `n₁` at the first two representatives with distinct images.
    pub fn n1_pair(&self) -> Option<(u128, u128)> {
        let mut reps = self.k1_base();
        let a = reps.next()?;
        let b = reps.find(|b| b.q != a.q)?;
        Some((self.n1_at(a), self.n1_at(b)))
    }
}

/// The five hypotheses and the size conclusion `|K| = 6n₀ = 12n₁`.
pub fn check_general(ctx: &GeneralContext) -> Certificate {
    let mut cert = Certificate::new("general-criterion");
    cert.param("setting", ctx.name.as_str());
    cert.param("k", ctx.k);

    let f2 = F2Group { dim: ctx.j_dim() };
    let folder = Folder::new(
        &f2,
        ctx.h_cap_j.elements().iter().map(|v| v.bits()).collect(),
        ctx.k0.clone(),
    );
    let sub = verify_folder(&folder);
    let failed: Vec<&str> = sub.failures().map(|c| c.name.as_str()).collect();
    cert.record(
        "(a) (J, H∩J, K0) is an exponent-2 folder",
        sub.passed(),
        if failed.is_empty() {
            format!("|H∩J| = {}, |K0| = {}", ctx.h_cap_j.size(), ctx.k0.len())
        } else {
            failed.join("; ")
        },
    );

    let n0 = ctx.k0.len() as u128;
    match ctx.n1_pair() {
        Some((n1, n1b)) => {
            cert.record(
                "(b) n0 = 2 n1",
                n1 == n1b && n0 == 2 * n1,
                format!("n0 = {n0}, n1 = {n1} (second representative: {n1b})"),
            );
            let k = n0 + ctx.k1_size();
            cert.record("|K| = 6 n0 = 12 n1", k == 6 * n0 && k == 12 * n1, format!("|K| = {k}"));
            cert.summary("n0", n0 as u64);
            cert.summary("n1", n1 as u64);
            cert.summary("k_size", k as u64);
        }
        None => {
            cert.record("(b) n0 = 2 n1", false, "fewer than two classes of odd involutions");
        }
    }

    let hq = ctx.h_quotient.len();
    cert.record("(c) |S5 : H+| = 6", hq * 6 == 120, format!("|H+| = {hq}"));

    let mut checked = 0u128;
    let bad = ctx.k1_base().find(|a| {
        checked += 1u128 << ctx.u_fixed_dim(&a.q);
        let fixed = fixed_space(&[ctx.conj_matrix(a)]);
        !fixed.intersection(&ctx.h_cap_j).is_zero()
    });
    cert.record(
        "(d) C_{H∩J}(a) = 1 for every a in K1",
        bad.is_none(),
        match bad {
            None => format!("{checked} elements"),
            Some(a) => format!("{} centralizes part of H∩J", a.label),
        },
    );

    let bad = ctx.involutions.iter().find(|a| !a.in_j && !a.q.is_odd());
    cert.record(
        "(e) every involution of L lies in J",
        bad.is_none(),
        bad.map_or(String::new(), |a| {
            format!("{} has image {} in A5 and lies outside J", a.label, a.q)
        }),
    );
    cert
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_group_meets_the_criterion() {
        let g = GroupG::build().unwrap();
        let ctx = GeneralContext::base(&g);
        assert_eq!(ctx.k1_size(), 80);
        assert_eq!(ctx.n1_pair(), Some((8, 8)));
        let cert = check_general(&ctx);
        assert!(cert.passed(), "{cert}");
    }

    #[test]
    fn criterion_reports_an_even_involution_outside_j() {
        let g = GroupG::build().unwrap();
        let mut ctx = GeneralContext::base(&g);
        let a = ctx.involutions.iter().find(|a| a.in_j).unwrap().clone();
        ctx.involutions.push(Involution {
            label: "planted".into(),
            in_j: false,
            ..a
        });
        let cert = check_general(&ctx);
        let e = cert.check("(e) every involution of L lies in J").unwrap();
        assert!(!e.pass && e.witness.starts_with("planted"));
    }
}
