use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashSet;

use super::general::{check_general, GeneralContext};
use super::{build_gg, j0_in_j, shift_u, BigElement, BigGroup};
use crate::baseg::BaseFolder;
use crate::error::{Error, Result};
use crate::f2::{F2Vec, Subspace};
use crate::loopcore::{verify_folder, Certificate, Folder, FolderGroup};
use crate::s5mod::{build_psi, build_s, PsiMap};

/// Which subgroup `ℋ` and set `𝒦` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `ℋ = H ⋉ T₁ᵏ`, `𝒦 = c^𝒢 ∪ (J₀ ⊕ Wᵏ)`.
    Split,
    /// `ℋ = H ⋉ 𝒯_ψ`, `𝒦 = c^𝒢 ∪ (J₀ + 𝒲̃)`.
    Twisted,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Split => "split",
            Variant::Twisted => "twisted",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "split" => Ok(Variant::Split),
            "twisted" => Ok(Variant::Twisted),
            other => Err(Error::Parse(format!("unknown variant `{other}` (split|twisted)"))),
        }
    }
}

/// Involution counts of `𝒢`, all computed from the semidirect structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Census {
    /// `|C_{Uᵏ}(c)|`.
    pub c_u_fixed: u128,
    /// `|C_𝒢(c)|`.
    pub centralizer: u128,
    /// `|𝒢 : C_𝒢(c)|`.
    pub class_size: u128,
    /// Involutions of `𝒢` outside `𝒥`.
    pub outside_j: u128,
    /// Involutions in the coset `c𝒥`.
    pub in_c_coset: u128,
}

impl Census {
    /// `c^𝒢` is all involutions outside `𝒥`.
    pub fn single_class(&self) -> bool {
        self.class_size == self.outside_j
    }
}

pub fn involution_census(bg: &BigGroup) -> Census {
    let g = bg.g;
    let c = g.c_idx();
    let c_u_fixed = 1u128 << bg.u_fixed(c).dim();
    let cg = (0..g.order()).filter(|&x| bg.g_mul(x, c) == bg.g_mul(c, x)).count() as u128;
    let centralizer = cg * c_u_fixed;
    let mut outside_j = 0;
    let mut in_c_coset = 0;
    let qc = g.phi5(c);
    for i in g.involutions() {
        if g.in_j(i) {
            continue;
        }
        let n = 1u128 << bg.u_fixed(i).dim();
        outside_j += n;
        if g.phi5(i) == qc {
            in_c_coset += n;
        }
    }
    Census {
        c_u_fixed,
        centralizer,
        class_size: bg.order() / centralizer,
        outside_j,
        in_c_coset,
    }
}

/// A family folder with its distinguished pieces.
#[derive(Clone, Debug)]
pub struct FamilyFolder {
    pub variant: Variant,
    pub k: usize,
    /// `ℋ`, sorted.
    pub h: Vec<BigElement>,
    /// `𝒦`, unit first then increasing.
    pub k_elems: Vec<BigElement>,
    /// `𝒦 ∩ 𝒥` in `𝒥` coordinates, sorted.
    pub k0: Vec<u64>,
    /// `ℋ ∩ 𝒥` in `𝒥` coordinates.
    pub h_cap_j: Subspace,
    /// `T₁ᵏ` (split) or `𝒯_ψ` (twisted) in `𝒥` coordinates.
    pub t: Subspace,
    /// `W*`, `T₁*` in `Uᵏ` coordinates (first copy).
    pub w_star: Subspace,
    pub t1_star: Subspace,
    /// `S*` in `Uᵏ` coordinates.
    pub s_star: Vec<u64>,
}

impl FamilyFolder {
    pub fn folder<'a>(&self, bg: &'a BigGroup<'a>) -> Folder<'a, BigGroup<'a>> {
        Folder::new(bg, self.h.clone(), self.k_elems.clone())
    }
}

fn first_copy(bg: &BigGroup, s: &Subspace) -> Subspace {
    Subspace::span(
        bg.u_dim(),
        s.basis().iter().map(|b| F2Vec::from_bits(bg.u_dim(), b.bits())),
    )
}

/// Builds `(𝒢, ℋ, 𝒦)`; `psi` is required for the twisted variant.
pub fn family_folder(bg: &BigGroup, variant: Variant, psi: Option<&PsiMap>) -> Result<FamilyFolder> {
    let g = bg.g;
    let u = bg.u;
    let k = bg.k;
    let jd = bg.j_dim();
    let z = g.j_coords(g.index(&g.z)).expect("z lies in J");
    let t1k = bg.power(&u.t1);
    let wk = bg.power(&u.w);
    let w_star = first_copy(bg, &u.w);
    let t1_star = first_copy(bg, &u.t1);
    let s = build_s(u)?;
    let s_star: Vec<u64> = s.iter().map(|v| v.bits()).collect();
    let j0: Vec<u64> = j0_in_j(bg).elements().iter().map(F2Vec::bits).collect();

    let (t, w_tilde): (Subspace, Vec<u64>) = match variant {
        Variant::Split => (shift_u(bg, &t1k), wk.elements().iter().map(F2Vec::bits).collect()),
        Variant::Twisted => {
            let psi = psi.ok_or_else(|| Error::Unsupported("the twisted variant needs psi".into()))?;
            // v + ψ(v) + u with u ∈ T₁ in copies 2..k
            let mut basis: Vec<F2Vec> = (0..4)
                .map(|r| {
                    let v = F2Vec::unit(4, r);
                    let j = 1u64 << r | 1 << 4;
                    F2Vec::from_bits(jd, j | psi.apply(v).bits() << 5)
                })
                .collect();
            for copy in 1..k {
                basis.extend(
                    u.t1.basis()
                        .iter()
                        .map(|b| F2Vec::from_bits(jd, b.bits() << (5 + 8 * copy))),
                );
            }
            let mut w_tilde: BTreeSet<u64> = wk
                .elements()
                .iter()
                .map(F2Vec::bits)
                .filter(|&w| !w_star.contains(F2Vec::from_bits(bg.u_dim(), w)))
                .collect();
            w_tilde.extend(s_star.iter().copied());
            (Subspace::span(jd, basis), w_tilde.into_iter().collect())
        }
    };
    let mut h_cap_j = t.clone();
    h_cap_j.insert(F2Vec::from_bits(jd, z.bits()));

    let mut k0: Vec<u64> = j0
        .iter()
        .flat_map(|&j| w_tilde.iter().map(move |&w| j | w << 5))
        .collect();
    k0.sort_unstable();
    k0.dedup();

    let hs: Vec<usize> = g.h.elements().iter().map(|e| g.index(e)).collect();
    let mut h: Vec<BigElement> = hs
        .iter()
        .flat_map(|&hi| {
            t.elements().into_iter().map(move |x| {
                let e = bg.from_j_coords(x.bits());
                bg.mul(BigElement::new(hi, 0), e)
            })
        })
        .collect();
    h.sort_unstable();
    h.dedup();

    let mut k_elems: Vec<BigElement> = k0.iter().map(|&x| bg.from_j_coords(x)).collect();
    for e in &g.class_c {
        let ci = g.index(e);
        k_elems.extend(bg.u_fixed(ci).elements().iter().map(|v| BigElement::new(ci, v.bits())));
    }
    let unit = bg.identity();
    k_elems.sort_unstable_by_key(|&x| (x != unit, x));
    k_elems.dedup();

    let scale = 1usize << (4 * k);
    let sizes = (h.len(), k_elems.len(), k0.len());
    if sizes != (40 * scale, 96 * scale, 16 * scale) {
        return Err(Error::check(
            "(|H|, |K|, |K ∩ J|) = (40, 96, 16) * 16^k",
            format!("{sizes:?}"),
        ));
    }
    Ok(FamilyFolder {
        variant,
        k,
        h,
        k_elems,
        k0,
        h_cap_j,
        t,
        w_star,
        t1_star,
        s_star,
    })
}

impl GeneralContext {
    /// The criterion's data for a family folder.
    pub fn family(bg: &BigGroup, ff: &FamilyFolder) -> GeneralContext {
        let g = bg.g;
        GeneralContext {
            name: format!("{}, k = {}", ff.variant, ff.k),
            k: ff.k,
            involutions: Self::involutions_of(g),
            h_quotient: ff.h.iter().map(|e| g.phi5(e.g as usize).clone()).collect(),
            h_cap_j: ff.h_cap_j.clone(),
            k0: ff.k0.clone(),
        }
    }
}

/// Position in the base loop of the `G`-part of every element of `𝒦`.
pub fn fiber_map(ff: &FamilyFolder, base: &BaseFolder) -> Result<Vec<u32>> {
    let mut base_k = base.k.clone();
    base_k.sort_unstable();
    ff.k_elems
        .iter()
        .map(|e| {
            base_k
                .binary_search(&u32::from(e.g))
                .map(|i| i as u32)
                .map_err(|_| Error::Inconsistent(format!("{e:?} does not lie over the base K")))
        })
        .collect()
}

/// Census, folder data and the general criterion for one variant. The
/// pairwise transversal check of the folder itself runs when `pairwise`.
pub fn certify_family(bg: &BigGroup, variant: Variant, pairwise: bool) -> Certificate {
    let mut cert = Certificate::new(format!("family-{variant}"));
    cert.param("k", bg.k);
    cert.param("variant", variant.to_string());
    let k = bg.k as u32;
    let scale = 16u128.pow(k);
    cert.absorb("group", build_gg(bg));

    let census = involution_census(bg);
    cert.expect_eq("|C_U(c)|", census.c_u_fixed, scale);
    cert.expect_eq("involutions outside J x U^k", census.outside_j, 80 * scale);
    cert.record(
        "involutions outside J x U^k form one class",
        census.single_class(),
        format!("|G : C(c)| = {}", census.class_size),
    );
    cert.expect_eq("|c^G ∩ c(J x U^k)|", census.in_c_coset, 8 * scale);

    let psi = match variant {
        Variant::Split => None,
        Variant::Twisted => match build_psi(bg.g, bg.u) {
            Ok(p) => Some(p),
            Err(e) => {
                cert.record("psi", false, e.to_string());
                return cert;
            }
        },
    };
    let ff = match family_folder(bg, variant, psi.as_ref()) {
        Ok(ff) => ff,
        Err(e) => {
            cert.record("family folder", false, e.to_string());
            return cert;
        }
    };
    cert.expect_eq("|H|", ff.h.len() as u128, 40 * scale);
    cert.expect_eq("|K|", ff.k_elems.len() as u128, 96 * scale);
    cert.expect_eq("|K ∩ J|", ff.k0.len() as u128, 16 * scale);
    cert.expect_eq(
        "|K| * |H| = |G|",
        ff.k_elems.len() as u128 * ff.h.len() as u128,
        bg.order(),
    );
    cert.summary("loop_order", ff.k_elems.len() as u64);

    let h_set: FxHashSet<BigElement> = ff.h.iter().copied().collect();
    let mut h_gens: Vec<BigElement> =
        bg.g.h
            .generators()
            .iter()
            .map(|e| BigElement::new(bg.g.index(e), 0))
            .collect();
    h_gens.extend(ff.t.basis().iter().map(|b| bg.from_j_coords(b.bits())));
    let not_closed = ff.h.iter().find_map(|&x| {
        h_gens
            .iter()
            .find(|&&s| !h_set.contains(&bg.mul(x, s)))
            .map(|&s| (x, s))
    });
    cert.record("H is a subgroup", not_closed.is_none(), format!("{not_closed:?}"));
    let normalizes =
        bg.g.h
            .generators()
            .iter()
            .all(|e| ff.t.is_invariant(&bg.conj_matrix(bg.g.index(e))));
    cert.record("H normalizes the U-part of H", normalizes, "");

    let k_set: FxHashSet<BigElement> = ff.k_elems.iter().copied().collect();
    let not_inv = ff.k_elems.iter().skip(1).find(|&&x| !bg.is_involution_structured(x));
    cert.record(
        "K\\1 consists of involutions",
        not_inv.is_none(),
        format!("{not_inv:?}"),
    );
    let moved = bg.generators().into_iter().find_map(|s| {
        ff.k_elems
            .iter()
            .find(|&&x| !k_set.contains(&bg.conj(x, s)))
            .map(|&x| (x, s))
    });
    cert.record(
        "K is invariant under conjugation by generators",
        moved.is_none(),
        format!("{moved:?}"),
    );

    let k0_set: FxHashSet<u64> = ff.k0.iter().copied().collect();
    let nonlinear = ff
        .k0
        .iter()
        .find_map(|&x| ff.k0.iter().find(|&&y| !k0_set.contains(&(x ^ y))).map(|&y| (x, y)));
    match variant {
        Variant::Split => {
            cert.record("K ∩ J is a subgroup", nonlinear.is_none(), format!("{nonlinear:?}"));
        }
        Variant::Twisted => {
            if bg.k == 1 {
                let w_tilde: BTreeSet<u64> = ff.k0.iter().map(|x| x >> 5).collect();
                let s: BTreeSet<u64> = ff.s_star.iter().copied().collect();
                cert.record("W~ = S* at k = 1", w_tilde == s, "");
            }
            cert.record("K ∩ J is not a subgroup", nonlinear.is_some(), format!("{nonlinear:?}"));
        }
    }

    let general = check_general(&GeneralContext::family(bg, &ff));
    for (key, value) in &general.summary {
        cert.summary(key, value.clone());
    }
    cert.absorb("criterion", general);
    if pairwise {
        cert.absorb("folder", verify_folder(&ff.folder(bg)));
    }
    cert
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseg::GroupG;
    use crate::s5mod::build_u;

    #[test]
    fn variant_round_trip() {
        for v in [Variant::Split, Variant::Twisted] {
            assert_eq!(v.to_string().parse::<Variant>().unwrap(), v);
        }
    }

    #[test]
    fn split_kernel_is_a_subspace_and_twisted_is_not() {
        let g = GroupG::build().unwrap();
        let u = build_u(&g, false).unwrap();
        let bg = BigGroup::new(&g, &u, 1).unwrap();
        let psi = build_psi(&g, &u).unwrap();
        let closed = |k0: &[u64]| {
            let set: FxHashSet<u64> = k0.iter().copied().collect();
            k0.iter().all(|&x| k0.iter().all(|&y| set.contains(&(x ^ y))))
        };
        let split = family_folder(&bg, Variant::Split, None).unwrap();
        let twisted = family_folder(&bg, Variant::Twisted, Some(&psi)).unwrap();
        assert!(closed(&split.k0));
        assert!(!closed(&twisted.k0));
        assert_eq!(split.k_elems[0], bg.identity());
        assert_eq!(split.h_cap_j.size(), 32);
    }
}
