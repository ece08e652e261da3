//! The split extension `B = J ⋊ S₅` as an affine group on `GF(2)⁵`.
//!
//! It has the same `S₅`-module `J` and the same sizes as `G`, but an
//! involution with even image lies outside `J`, and the analogous
//! `(B, N_B(P), J₀ ∪ K₁)` is not a folder.

use std::collections::BTreeMap;

use super::general::{check_general, GeneralContext, Involution};
use crate::baseg::GroupG;
use crate::error::{Error, Result};
use crate::f2::{F2Mat, F2Vec, Subspace};
use crate::loopcore::{verify_folder, Certificate, Folder, FolderGroup, IndexedGroup};
use crate::perm::{GroupEnum, Perm};

pub struct Counterexample {
    pub b: GroupEnum,
    /// Indices into `B`.
    pub h: Vec<u32>,
    pub k: Vec<u32>,
    pub ctx: GeneralContext,
}

fn affine(m: &F2Mat, t: u64) -> Perm {
    Perm::from_images(
        (0..32)
            .map(|x| (m.apply(F2Vec::from_bits(5, x)).bits() ^ t) as usize)
            .collect(),
    )
    .expect("affine maps are bijective")
}

/// `(A, b)` with `x ↦ xA + b`.
fn decompose(p: &Perm) -> (F2Mat, u64) {
    let b = p.apply(0) as u64;
    (
        F2Mat::from_fn(5, 5, |i| F2Vec::from_bits(5, p.apply(1 << i) as u64 ^ b)),
        b,
    )
}

pub fn counterexample(g: &GroupG) -> Result<Counterexample> {
    let linear_c = g.rho_j(g.c_idx());
    let mut gens = vec![affine(&linear_c, 0), affine(&g.rho_j(g.d_idx()), 0)];
    gens.extend((0..5).map(|i| affine(&F2Mat::identity(5), 1 << i)));
    let b = GroupEnum::generate(&gens)?;
    if b.order() != g.order() {
        return Err(Error::check("|B| = 3840", b.order().to_string()));
    }
    let image: BTreeMap<F2Mat, Perm> = (0..g.order()).map(|i| (g.rho_j(i), g.phi5(i).clone())).collect();
    let q_of = |p: &Perm| -> Result<(F2Mat, u64, Perm)> {
        let (a, t) = decompose(p);
        let q = image
            .get(&a)
            .cloned()
            .ok_or_else(|| Error::Inconsistent(format!("linear part of {p} not in the image")))?;
        Ok((a, t, q))
    };

    let p = affine(&g.rho_j(g.index(&g.c.compose(&g.d))), 0);
    let pgrp = b.subgroup(&[p])?;
    let hgrp = b.normalizer(&pgrp)?;
    let h: Vec<u32> = hgrp
        .elements()
        .iter()
        .map(|e| b.index_of(e).expect("H ≤ B") as u32)
        .collect();

    let mut involutions = Vec::new();
    let mut k: Vec<u32> = vec![0];
    let mut k0 = Vec::new();
    let j0 = Subspace::span(5, (0..4).map(|r| F2Vec::from_bits(5, 1 << r | 1 << 4)));
    for (i, e) in b.elements().iter().enumerate() {
        if e.order() != 2 {
            continue;
        }
        let (a, t, q) = q_of(e)?;
        let in_j = a == F2Mat::identity(5);
        let in_j0 = in_j && j0.contains(F2Vec::from_bits(5, t));
        if in_j0 {
            k0.push(t);
        }
        if in_j0 || q.is_odd() {
            k.push(i as u32);
        }
        involutions.push(Involution {
            label: e.to_string(),
            q,
            in_j,
            conj_j: a,
        });
    }
    k0.push(0);
    k0.sort_unstable();

    let mut h_quotient = std::collections::BTreeSet::new();
    let mut h_cap_j = Subspace::zero(5);
    for e in hgrp.elements() {
        let (a, t, q) = q_of(e)?;
        if a == F2Mat::identity(5) {
            h_cap_j.insert(F2Vec::from_bits(5, t));
        }
        h_quotient.insert(q);
    }
    Ok(Counterexample {
        b,
        h,
        k,
        ctx: GeneralContext {
            name: "split extension J ⋊ S5".into(),
            k: 0,
            involutions,
            h_quotient,
            h_cap_j,
            k0,
        },
    })
}

impl Counterexample {
    /// Runs the criterion and the folder check. The certificate records
    /// whether each fails as it should, with the witnesses.
    pub fn certify(&self) -> Certificate {
        let mut cert = Certificate::new("counterexample");
        cert.expect_eq("|B|", self.b.order(), 3840);
        cert.expect_eq("|N_B(P)|", self.h.len(), 40);
        cert.expect_eq("|J0 ∪ K1|", self.k.len(), 96);

        let general = check_general(&self.ctx);
        let e = general
            .check("(e) every involution of L lies in J")
            .expect("criterion (e) is recorded");
        cert.record("(e) fails", !e.pass, e.witness.clone());
        for name in ["(b) n0 = 2 n1", "(c) |S5 : H+| = 6"] {
            let c = general.check(name).expect("recorded");
            cert.record(format!("{name} holds"), c.pass, c.witness.clone());
        }

        let ig = IndexedGroup::new(&self.b);
        let folder = Folder::new(&ig, self.h.clone(), self.k.clone());
        let pairs = verify_folder(&folder);
        let fail = pairs
            .check("x*y not in H for distinct x, y in K")
            .expect("pairwise check is recorded");
        let witness = match folder.pairwise_violation() {
            Some((i, j)) => {
                let (x, y) = (folder.k()[i], folder.k()[j]);
                format!(
                    "{} * {} = {} in N_B(P)",
                    self.b.element(x as usize),
                    self.b.element(y as usize),
                    self.b.element(ig.mul(x, y) as usize)
                )
            }
            None => String::new(),
        };
        cert.record("J0 ∪ K1 is not a transversal to N_B(P)", !fail.pass, witness);
        cert
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_maps_decompose() {
        let m = F2Mat::from_fn(5, 5, |i| F2Vec::unit(5, (i + 1) % 5));
        let (a, t) = decompose(&affine(&m, 0b10110));
        assert_eq!((a, t), (m, 0b10110));
    }
}
