//! Loop folders, loop tables, identity checks and simplicity.
//!
//! A folder `(G, H, K)` has `1 ∈ K`, `K` a conjugation-invariant set of
//! involutions and a right transversal to every conjugate of `H`. The loop
//! lives on `K` with `H(x∘y) = Hxy`.

mod cert;
mod simple;
mod table;

pub use cert::{Certificate, Check, CERTIFICATE_VERSION};
pub use simple::{
    is_simple, mult_groups, normal_closure_block, quotient_induce, translations, MultGroup, MultKind, QuotientReport,
    SimplicityReport,
};
pub use table::{check_bol, table_checks, BolMode, LoopTable};

use std::fmt::Debug;
use std::hash::Hash;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::perm::GroupEnum;

/// The group operations a folder needs.
pub trait FolderGroup: Sync {
    type Elem: Copy + Eq + Ord + Hash + Send + Sync + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Self::Elem;
    fn generators(&self) -> Vec<Self::Elem>;
    /// Group order, when known.
    fn order(&self) -> Option<u128>;

    /// `g⁻¹ a g`.
    fn conj(&self, a: Self::Elem, g: Self::Elem) -> Self::Elem {
        self.mul(self.mul(self.inv(g), a), g)
    }

    fn is_involution(&self, a: Self::Elem) -> bool {
        a != self.identity() && self.mul(a, a) == self.identity()
    }

    /// Injective key into `0..dense_len()` for array-backed lookups.
    fn dense_key(&self, _a: Self::Elem) -> Option<usize> {
        None
    }

    fn dense_len(&self) -> Option<usize> {
        None
    }
}

/// An enumerated permutation group addressed by element index.
pub struct IndexedGroup<'a> {
    group: &'a GroupEnum,
    inverse: Vec<u32>,
    gens: Vec<u32>,
}

impl<'a> IndexedGroup<'a> {
    pub fn new(group: &'a GroupEnum) -> IndexedGroup<'a> {
        let inverse = (0..group.order()).map(|i| group.inv_idx(i) as u32).collect();
        let gens = group
            .generators()
            .iter()
            .map(|g| group.index_of(g).expect("generator is a member") as u32)
            .collect();
        IndexedGroup { group, inverse, gens }
    }

    pub fn group(&self) -> &GroupEnum {
        self.group
    }
}

impl FolderGroup for IndexedGroup<'_> {
    type Elem = u32;

    fn identity(&self) -> u32 {
        0
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.group.mul_idx(a as usize, b as usize) as u32
    }
    fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }
    fn generators(&self) -> Vec<u32> {
        self.gens.clone()
    }
    fn order(&self) -> Option<u128> {
        Some(self.group.order() as u128)
    }
    fn dense_key(&self, a: u32) -> Option<usize> {
        Some(a as usize)
    }
    fn dense_len(&self) -> Option<usize> {
        Some(self.group.order())
    }
}

/// `GF(2)^dim` as an additive group; elements are bit masks.
#[derive(Clone, Copy, Debug)]
pub struct F2Group {
    pub dim: usize,
}

impl FolderGroup for F2Group {
    type Elem = u64;

    fn identity(&self) -> u64 {
        0
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }
    fn inv(&self, a: u64) -> u64 {
        a
    }
    fn generators(&self) -> Vec<u64> {
        (0..self.dim).map(|i| 1 << i).collect()
    }
    fn order(&self) -> Option<u128> {
        Some(1u128 << self.dim)
    }
    fn dense_key(&self, a: u64) -> Option<usize> {
        (self.dim <= 26).then_some(a as usize)
    }
    fn dense_len(&self) -> Option<usize> {
        (self.dim <= 26).then(|| 1 << self.dim)
    }
}

/// A candidate loop folder `(G, H, K)`.
pub struct Folder<'a, G: FolderGroup> {
    pub group: &'a G,
    h: Vec<G::Elem>,
    h_set: FxHashSet<G::Elem>,
    k: Vec<G::Elem>,
}

impl<'a, G: FolderGroup> Folder<'a, G> {
    /// Sorts `H`, and puts `K` in canonical order: the unit first, then increasing.
    pub fn new(group: &'a G, mut h: Vec<G::Elem>, mut k: Vec<G::Elem>) -> Folder<'a, G> {
        h.sort_unstable();
        let e = group.identity();
        k.sort_unstable_by_key(|&x| (x != e, x));
        let h_set = h.iter().copied().collect();
        Folder { group, h, h_set, k }
    }

    pub fn h(&self) -> &[G::Elem] {
        &self.h
    }

    pub fn k(&self) -> &[G::Elem] {
        &self.k
    }

    pub fn in_h(&self, x: G::Elem) -> bool {
        self.h_set.contains(&x)
    }

    pub fn order(&self) -> usize {
        self.k.len()
    }

    /// Position of each element of `K`.
    pub fn k_index(&self) -> FxHashMap<G::Elem, u32> {
        self.k.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect()
    }

    /// First pair `i < j` with `K[i]·K[j]⁻¹` in `H^g` for some conjugator `g`,
    /// testing each conjugate directly.
    pub fn all_conjugates_violation(&self, conjugators: &[G::Elem]) -> Option<(G::Elem, usize, usize)> {
        let g = self.group;
        for &c in conjugators {
            let ci = g.inv(c);
            for i in 0..self.k.len() {
                for j in i + 1..self.k.len() {
                    let q = g.mul(self.k[i], g.inv(self.k[j]));
                    if self.in_h(g.mul(g.mul(c, q), ci)) {
                        return Some((c, i, j));
                    }
                }
            }
        }
        None
    }

    /// First pair `i < j` with `K[i]·K[j] ∈ H`. Rows are scanned in
    /// parallel; the reported pair is the first in row order.
    pub fn pairwise_violation(&self) -> Option<(usize, usize)> {
        let g = self.group;
        let n = self.k.len();
        let all_involutive = self.k.iter().all(|&x| g.mul(x, x) == g.identity());
        (0..n).into_par_iter().find_map_first(|i| {
            let start = if all_involutive { i + 1 } else { 0 };
            (start..n)
                .filter(|&j| j != i)
                .find(|&j| self.in_h(g.mul(self.k[i], self.k[j])))
                .map(|j| (i.min(j), i.max(j)))
        })
    }
}

/// Checks the folder axioms in exponent-2 form.
///
/// Since `K` is conjugation invariant, being a transversal to `H` makes it a
/// transversal to every `H^g`; the pairwise test against `H` suffices.
pub fn verify_folder<G: FolderGroup>(f: &Folder<G>) -> Certificate {
    let g = f.group;
    let e = g.identity();
    let mut cert = Certificate::new("folder");
    cert.param("order", f.k.len());
    cert.record(
        "unit in K",
        f.k.first() == Some(&e),
        format!("K[0] = {:?}", f.k.first()),
    );
    let dup = f.k.windows(2).skip(1).find(|w| w[0] == w[1]);
    cert.record("K has no repeats", dup.is_none(), format!("{dup:?}"));
    let bad = f.k.iter().skip(1).find(|&&x| !g.is_involution(x));
    cert.record(
        "K\\1 consists of involutions",
        bad.is_none(),
        bad.map_or(String::new(), |x| format!("{x:?}")),
    );
    cert.run("K is conjugation invariant", || {
        let set: FxHashSet<G::Elem> = f.k.iter().copied().collect();
        for s in g.generators() {
            if let Some(x) = f.k.iter().find(|&&x| !set.contains(&g.conj(x, s))) {
                return (false, format!("{x:?} conjugated by {s:?}"));
            }
        }
        (true, String::new())
    });
    cert.record("H contains the unit", f.in_h(e), String::new());
    if let Some(order) = g.order() {
        let product = (f.k.len() as u128) * (f.h.len() as u128);
        cert.record(
            "|K| = |G:H|",
            product == order,
            format!("|K| = {}, |H| = {}, |G| = {order}", f.k.len(), f.h.len()),
        );
    }
    cert.run("x*y not in H for distinct x, y in K", || match f.pairwise_violation() {
        None => (true, format!("{} pairs", f.k.len() * f.k.len().saturating_sub(1) / 2)),
        Some((i, j)) => (false, format!("K[{i}]*K[{j}] in H")),
    });
    cert
}

/// Coset labels: every element of `Hz` maps to the position of `z` in `K`.
enum Labels<E: Hash + Eq> {
    Dense(Vec<u32>),
    Sparse(FxHashMap<E, u32>),
}

const UNLABELED: u32 = u32::MAX;

/// Materializes `x∘y` on `K` with `H(x∘y) = Hxy`.
pub fn build_loop<G: FolderGroup>(f: &Folder<G>) -> Result<LoopTable> {
    let g = f.group;
    let n = f.k.len();
    let dense = match (g.dense_len(), g.dense_key(g.identity())) {
        (Some(len), Some(_)) if len <= 1 << 27 => Some(len),
        _ => None,
    };
    let mut labels = match dense {
        Some(len) => Labels::Dense(vec![UNLABELED; len]),
        None => Labels::Sparse(FxHashMap::default()),
    };
    for (i, &z) in f.k.iter().enumerate() {
        for &h in &f.h {
            let x = g.mul(h, z);
            let clash = match &mut labels {
                Labels::Dense(v) => {
                    let slot = &mut v[g.dense_key(x).expect("dense key")];
                    std::mem::replace(slot, i as u32) != UNLABELED
                }
                Labels::Sparse(m) => m.insert(x, i as u32).is_some(),
            };
            if clash {
                return Err(Error::Inconsistent(format!(
                    "cosets of K[{i}] and another K element overlap"
                )));
            }
        }
    }
    let label = |x: G::Elem| -> Option<u32> {
        match &labels {
            Labels::Dense(v) => Some(v[g.dense_key(x)?]).filter(|&l| l != UNLABELED),
            Labels::Sparse(m) => m.get(&x).copied(),
        }
    };
    let mut cells = Vec::with_capacity(n * n);
    for &x in &f.k {
        for &y in &f.k {
            let l =
                label(g.mul(x, y)).ok_or_else(|| Error::Inconsistent(format!("{x:?}*{y:?} lies in no coset of K")))?;
            cells.push(l);
        }
    }
    LoopTable::from_cells(n, cells)
}
