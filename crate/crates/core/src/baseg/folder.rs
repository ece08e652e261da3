use super::GroupG;
use crate::error::{Error, Result};
use crate::loopcore::{Certificate, Folder, IndexedGroup};
use crate::perm::GroupEnum;

/// Indices (into `G`) of `H = N_G(P)` and `K = J₀ ∪ c^G`.
#[derive(Clone, Debug)]
pub struct BaseFolder {
    pub h: Vec<u32>,
    pub k: Vec<u32>,
    /// `|K₀| = |J₀|`.
    pub n0: usize,
    /// `|c^G ∩ cJ|`.
    pub n1: usize,
}

impl BaseFolder {
    pub fn folder<'a>(&self, ig: &'a IndexedGroup<'a>) -> Folder<'a, IndexedGroup<'a>> {
        Folder::new(ig, self.h.clone(), self.k.clone())
    }
}

fn indices(g: &GroupG, group: &GroupEnum) -> Vec<u32> {
    group.elements().iter().map(|e| g.index(e) as u32).collect()
}

pub fn base_folder(g: &GroupG) -> Result<BaseFolder> {
    let h = indices(g, &g.h);
    let mut k = indices(g, &g.j0);
    k.extend(g.class_c.iter().map(|e| g.index(e) as u32));
    k.sort_unstable();
    k.dedup();
    if k.len() != 96 || g.order() / h.len() != 96 {
        return Err(Error::check(
            "|K| = |G:H| = 96",
            format!("|K| = {}, |H| = {}", k.len(), h.len()),
        ));
    }
    let cj: Vec<_> = g.j.elements().iter().map(|t| g.c.compose(t)).collect();
    let n1 = g.class_c.iter().filter(|e| cj.contains(e)).count();
    if n1 != 8 {
        return Err(Error::check("|c^G ∩ cJ| = 8", n1.to_string()));
    }
    if g.j0.contains(&g.z) {
        return Err(Error::check("H ∩ J not inside J0", g.z.to_string()));
    }
    Ok(BaseFolder {
        h,
        k,
        n0: g.j0.order(),
        n1,
    })
}

/// Every `{1} ∪ (union of involution classes)` of size `|G:U|` that is a
/// transversal to `U`, for `U` given by element indices.
pub fn class_union_search(g: &GroupG, u: &[u32]) -> Vec<Vec<u32>> {
    let index = g.order() / u.len();
    let classes: Vec<Vec<u32>> = g
        .group
        .classes()
        .into_iter()
        .filter(|c| c[0].order() == 2)
        .map(|c| c.iter().map(|e| g.index(e) as u32).collect())
        .collect();
    let ig = IndexedGroup::new(&g.group);
    let mut found = Vec::new();
    for mask in 0u32..1 << classes.len() {
        let size: usize = (0..classes.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| classes[i].len())
            .sum();
        if size + 1 != index {
            continue;
        }
        let mut k = vec![0u32];
        for (i, c) in classes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                k.extend(c);
            }
        }
        let f = Folder::new(&ig, u.to_vec(), k);
        if f.pairwise_violation().is_none() {
            found.push(f.k().to_vec());
        }
    }
    found
}

/// Exponent-2 transversals made of involution classes, for `N_G(P)J₀` and `N_G(P)`.
pub fn uniqueness_probe(g: &GroupG) -> Certificate {
    let mut cert = Certificate::new("uniqueness-probe");
    let hj0 = g.group.join(&g.h, &g.j0).expect("subgroups of G");
    cert.expect_eq("|G : N_G(P)J0|", g.order() / hj0.order(), 6);
    let mut sizes: Vec<usize> = g
        .group
        .classes()
        .iter()
        .filter(|c| c[0].order() == 2)
        .map(Vec::len)
        .collect();
    sizes.sort_unstable();
    cert.record("involution class sizes", true, format!("{sizes:?}"));
    let for_hj0 = class_union_search(g, &indices(g, &hj0));
    cert.expect_eq("admissible K* for N_G(P)J0", for_hj0.len(), 0);
    let for_h = class_union_search(g, &indices(g, &g.h));
    let expected = base_folder(g).map(|b| {
        let ig = IndexedGroup::new(&g.group);
        Folder::new(&ig, b.h, b.k).k().to_vec()
    });
    let unique = for_h.len() == 1 && expected.as_ref().is_ok_and(|k| *k == for_h[0]);
    cert.record(
        "K = J0 ∪ c^G is the only admissible K* for N_G(P)",
        unique,
        format!("{} admissible", for_h.len()),
    );
    cert
}
