//! The group `G = ⟨c, d⟩` of order 3840 on 40 points and its structure.

mod certify;
mod folder;

pub use certify::{certify_24, certify_star, presentation_witness, presentation_witness_mod, s5_witness_search};
pub use folder::{base_folder, class_union_search, uniqueness_probe, BaseFolder};

use crate::error::{Error, Result};
use crate::f2::{F2Mat, F2Vec};
use crate::perm::{coset_action, GroupEnum, Perm};
use crate::word::Presentation;

/// The generators as printed, on points 1..40.
pub const C_CYCLES: &[&[usize]] = &[
    &[1, 4],
    &[2, 9],
    &[3, 10],
    &[6, 11],
    &[7, 12],
    &[13, 21],
    &[14, 22],
    &[15, 24],
    &[16, 23],
    &[17, 30],
    &[18, 29],
    &[19, 31],
    &[20, 32],
    &[33, 35],
    &[38, 40],
];

pub const D_CYCLES: &[&[usize]] = &[
    &[1, 2, 4, 6, 8, 7, 5, 3],
    &[9, 13, 25, 18, 10, 14, 26, 17],
    &[11, 15, 27, 20, 12, 16, 28, 19],
    &[21, 30, 38, 34, 23, 31, 40, 35],
    &[22, 32, 39, 36, 24, 29, 37, 33],
];

pub const DEGREE: usize = 40;
pub const ORDER: usize = 3840;

const NOT_IN_J: u8 = u8::MAX;

/// Permutation on `0..degree` from 1-based cycles.
pub fn perm_from_one_based(degree: usize, cycles: &[&[usize]]) -> Result<Perm> {
    let shifted: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|&p| p - 1).collect()).collect();
    let refs: Vec<&[usize]> = shifted.iter().map(Vec::as_slice).collect();
    Perm::from_cycles(degree, &refs)
}

/// `G` with its distinguished subgroups and quotient maps, all certified at build time.
#[derive(Clone, Debug)]
pub struct GroupG {
    pub group: GroupEnum,
    pub c: Perm,
    pub d: Perm,
    /// `u₁, …, u₆`.
    pub x: Vec<Perm>,
    pub j: GroupEnum,
    pub j0: GroupEnum,
    pub gprime: GroupEnum,
    /// `⟨cd⟩`.
    pub p: GroupEnum,
    /// `N_G(P)`, generated by `cd` and its least element of order 8.
    pub h: GroupEnum,
    pub h8: Perm,
    /// The involution of `H`.
    pub z: Perm,
    pub class_c: Vec<Perm>,
    /// The order-24 subgroup of `φ₆(G)` whose cosets define `φ₅`.
    pub s4: GroupEnum,
    phi6: Vec<Perm>,
    phi5: Vec<Perm>,
    j_coord: Vec<u8>,
    j_elem: Vec<usize>,
}

/// Least-sorted subgroup of the given order among all two-generator subgroups.
fn least_two_generated(group: &GroupEnum, order: usize) -> Option<Vec<usize>> {
    let n = group.order();
    let mut best: Option<Vec<usize>> = None;
    let mut seen = vec![false; n];
    for a in 0..n {
        for b in a..n {
            seen.iter_mut().for_each(|s| *s = false);
            let mut members = vec![0usize];
            seen[0] = true;
            let mut head = 0;
            while head < members.len() && members.len() <= order {
                let x = members[head];
                head += 1;
                for s in [a, b] {
                    let y = group.mul_idx(x, s);
                    if !seen[y] {
                        seen[y] = true;
                        members.push(y);
                    }
                }
            }
            if members.len() == order {
                members.sort_unstable();
                if best.as_ref().is_none_or(|cur| members < *cur) {
                    best = Some(members);
                }
            }
        }
    }
    best
}

fn expect(check: &str, ok: bool, witness: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::check(check, witness()))
    }
}

impl GroupG {
    /// Builds `G`, aborting on any failed relation or cardinality.
    pub fn build() -> Result<GroupG> {
        let c = perm_from_one_based(DEGREE, C_CYCLES)?;
        let d = perm_from_one_based(DEGREE, D_CYCLES)?;
        let failing = Presentation::Extension.failing(&[c.clone(), d.clone()], Perm::is_identity);
        if let Some(r) = failing.first() {
            return Err(Error::Relation {
                group: "G",
                relation: r.to_string(),
            });
        }
        let group = GroupEnum::generate(&[c.clone(), d.clone()])?;
        expect("|G| = 3840", group.order() == ORDER, || group.order().to_string())?;

        let u1 = d.pow(4);
        let cd = c.compose(&d);
        let conjugators = [
            Perm::identity(DEGREE),
            c.clone(),
            cd.clone(),
            cd.compose(&c),
            cd.compose(&cd),
            cd.compose(&cd).compose(&c),
        ];
        let x: Vec<Perm> = conjugators.iter().map(|g| u1.conjugate(g)).collect();
        let prod = x.iter().fold(Perm::identity(DEGREE), |acc, u| acc.compose(u));
        expect("u1u2u3u4u5u6 = 1", prod.is_identity(), || prod.to_string())?;
        let distinct: std::collections::BTreeSet<&Perm> = x.iter().collect();
        expect("u1..u6 distinct", distinct.len() == 6, || {
            format!("{} distinct", distinct.len())
        })?;

        let j = group.subgroup(&x)?;
        expect("|J| = 32", j.order() == 32, || j.order().to_string())?;

        // Coordinates over u1..u5.
        let mut j_coord = vec![NOT_IN_J; group.order()];
        let mut j_elem = vec![usize::MAX; 32];
        for bits in 0..32u8 {
            let e = (0..5)
                .filter(|i| bits >> i & 1 == 1)
                .fold(Perm::identity(DEGREE), |acc, i| acc.compose(&x[i]));
            let idx = group.index_of(&e).ok_or(Error::NotInGroup)?;
            expect("J coordinates are injective", j_coord[idx] == NOT_IN_J, || {
                e.to_string()
            })?;
            j_coord[idx] = bits;
            j_elem[bits as usize] = idx;
        }

        // φ₆: conjugation action on X.
        let position = |p: &Perm| x.iter().position(|u| u == p);
        let mut phi6 = Vec::with_capacity(group.order());
        for g in group.elements() {
            let images = x
                .iter()
                .map(|u| position(&u.conjugate(g)).ok_or_else(|| Error::check("X is a conjugacy class", g.to_string())))
                .collect::<Result<Vec<_>>>()?;
            phi6.push(Perm::from_images(images)?);
        }
        let image6 = GroupEnum::generate(&[
            phi6[group.index_of(&c).expect("member")].clone(),
            phi6[group.index_of(&d).expect("member")].clone(),
        ])?;
        expect("|phi6(G)| = 120", image6.order() == 120, || image6.order().to_string())?;

        // φ₅: action on the cosets of the least order-24 subgroup of the image.
        let s4_idx = least_two_generated(&image6, 24).ok_or_else(|| Error::check("order-24 subgroup", "none found"))?;
        let s4 = image6.subgroup_from_elements(s4_idx.iter().map(|&i| image6.element(i).clone()).collect())?;
        let action = coset_action(&image6, &s4)?;
        expect("phi5 has degree 5", action.index() == 5, || action.index().to_string())?;
        let phi5: Vec<Perm> = phi6
            .iter()
            .map(|p| action.perm_of(&image6, image6.index_of(p).expect("image member")))
            .collect();

        let commutators: Vec<Perm> = x
            .iter()
            .flat_map(|u| [c.clone(), d.clone()].map(|s| u.inverse().compose(&s.inverse()).compose(u).compose(&s)))
            .filter(|p| !p.is_identity())
            .collect();
        let j0 = group.normal_closure(commutators)?;
        expect("|J0| = 16", j0.order() == 16, || j0.order().to_string())?;

        let gprime = group.derived()?;

        let p = group.subgroup(std::slice::from_ref(&cd))?;
        expect("|P| = 5", p.order() == 5, || p.order().to_string())?;
        let normalizer = group.normalizer(&p)?;
        let h8 = normalizer
            .elements()
            .iter()
            .find(|e| e.order() == 8)
            .cloned()
            .ok_or_else(|| Error::check("N_G(P) has an element of order 8", "none"))?;
        let h = group.subgroup(&[cd.clone(), h8.clone()])?;
        expect("<cd, h8> = N_G(P)", h.elements() == normalizer.elements(), || {
            h.order().to_string()
        })?;
        let z = h8.pow(4);

        let class_c = group.conj_class(&c)?;

        let g = GroupG {
            group,
            c,
            d,
            x,
            j,
            j0,
            gprime,
            p,
            h,
            h8,
            z,
            class_c,
            s4,
            phi6,
            phi5,
            j_coord,
            j_elem,
        };
        g.check_invariants()?;
        Ok(g)
    }

    fn check_invariants(&self) -> Result<()> {
        let k6: Vec<usize> = (0..self.order()).filter(|&i| self.phi6[i].is_identity()).collect();
        let k5: Vec<usize> = (0..self.order()).filter(|&i| self.phi5[i].is_identity()).collect();
        let jj: Vec<usize> = (0..self.order()).filter(|&i| self.in_j(i)).collect();
        expect("ker phi6 = J", k6 == jj, || format!("|ker| = {}", k6.len()))?;
        expect("ker phi5 = J", k5 == jj, || format!("|ker| = {}", k5.len()))?;
        for (gen, images) in [(&self.c, [1, 0, 3, 2, 5, 4]), (&self.d, [0, 2, 3, 4, 1, 5])] {
            let got = self.phi6(self.index(gen));
            expect(
                "phi6 on generators",
                got.images().iter().map(|&v| v as usize).eq(images),
                || got.to_string(),
            )?;
        }
        expect(
            "J0 = even-weight coordinates",
            self.j0
                .elements()
                .iter()
                .all(|e| self.j_coords(self.index(e)).is_some_and(|v| v.weight() % 2 == 0)),
            String::new,
        )?;
        expect(
            "c-class avoids J",
            self.class_c.iter().all(|e| !self.in_j(self.index(e))),
            String::new,
        )?;
        expect("|c^G| = 80", self.class_c.len() == 80, || {
            self.class_c.len().to_string()
        })?;
        expect(
            "H meets J in {1, z}",
            {
                let meet: Vec<&Perm> = self.h.elements().iter().filter(|e| self.j.contains(e)).collect();
                meet.len() == 2 && meet.contains(&&self.z) && !self.z.is_identity()
            },
            || self.z.to_string(),
        )?;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn index(&self, g: &Perm) -> usize {
        self.group.index_of(g).expect("element of G")
    }

    pub fn element(&self, i: usize) -> &Perm {
        self.group.element(i)
    }

    pub fn c_idx(&self) -> usize {
        self.index(&self.c)
    }

    pub fn d_idx(&self) -> usize {
        self.index(&self.d)
    }

    pub fn phi6(&self, i: usize) -> &Perm {
        &self.phi6[i]
    }

    pub fn phi5(&self, i: usize) -> &Perm {
        &self.phi5[i]
    }

    pub fn in_j(&self, i: usize) -> bool {
        self.j_coord[i] != NOT_IN_J
    }

    /// Coordinates over `u₁..u₅`.
    pub fn j_coords(&self, i: usize) -> Option<F2Vec> {
        self.in_j(i).then(|| F2Vec::from_bits(5, self.j_coord[i] as u64))
    }

    pub fn j_element(&self, v: F2Vec) -> usize {
        self.j_elem[v.bits() as usize]
    }

    /// Conjugation by `G[i]` on `J`, in coordinates over `u₁..u₅`.
    pub fn rho_j(&self, i: usize) -> F2Mat {
        let p = &self.phi6[i];
        F2Mat::from_fn(5, 5, |r| {
            let img = p.apply(r);
            if img == 5 {
                F2Vec::from_bits(5, 0b11111)
            } else {
                F2Vec::unit(5, img)
            }
        })
    }

    /// Conjugation by `G[i]` on `J₀`, coordinates = first four `u`-coordinates.
    pub fn j0_matrix(&self, i: usize) -> F2Mat {
        let m = self.rho_j(i);
        F2Mat::from_fn(4, 4, |r| {
            let v = F2Vec::from_bits(5, 1 << r | 1 << 4);
            m.apply(v).slice(0, 4)
        })
    }

    /// The involutions of `G`, by index.
    pub fn involutions(&self) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.element(i).order() == 2).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_orders() {
        let c = perm_from_one_based(DEGREE, C_CYCLES).unwrap();
        let d = perm_from_one_based(DEGREE, D_CYCLES).unwrap();
        assert_eq!(c.order(), 2);
        assert_eq!(d.order(), 8);
        assert_eq!(c.compose(&d).order(), 5);
    }

    #[test]
    fn build_and_structure() {
        let g = GroupG::build().unwrap();
        assert_eq!(g.order(), 3840);
        assert_eq!(g.j.order(), 32);
        assert_eq!(g.j0.order(), 16);
        assert_eq!(g.gprime.order(), 1920);
        assert_eq!(g.h.order(), 40);
        assert_eq!(g.class_c.len(), 80);
        assert_eq!(g.phi5(g.c_idx()).order(), 2);
        assert!(g.phi5(g.c_idx()).is_odd());
        assert_eq!(g.phi5(g.d_idx()).order(), 4);
        // J-coordinates are linear and rho_J is a homomorphism.
        for a in 0..32u64 {
            for b in 0..32u64 {
                let pa = g.element(g.j_element(F2Vec::from_bits(5, a)));
                let pb = g.element(g.j_element(F2Vec::from_bits(5, b)));
                let ab = g.index(&pa.compose(pb));
                assert_eq!(g.j_coords(ab).unwrap().bits(), a ^ b);
            }
        }
        let (c, d) = (g.c_idx(), g.d_idx());
        let cd = g.group.mul_idx(c, d);
        assert_eq!(g.rho_j(c).mul(&g.rho_j(d)), g.rho_j(cd));
        assert_eq!(g.j0_matrix(c).mul(&g.j0_matrix(d)), g.j0_matrix(cd));
    }
}
