use std::collections::BTreeSet;

use super::{all_vectors, nullspace_of_rows, F2Mat, F2Vec, Subspace};
use crate::error::{Error, Result};
use crate::word::{GroupElement, Presentation};

/// Which abstract group a generator list presents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupTag {
    /// Images of `(c, d)` with `c² = d⁴ = (cd)⁵ = [c,d]³ = 1`.
    S5Pair,
    /// Images of `(a, b)` with `a² = b³ = (ab)⁵ = 1`.
    A5Pair,
    /// Images of `(x, y)` with `x` of order 5 normalized by `y` of order 4.
    F20Pair,
    /// A single element of order 5.
    C5,
}

impl GroupTag {
    pub fn presentation(self) -> Presentation {
        match self {
            GroupTag::S5Pair => Presentation::S5,
            GroupTag::A5Pair => Presentation::A5,
            GroupTag::F20Pair => Presentation::F20,
            GroupTag::C5 => Presentation::C5,
        }
    }
}

/// A linear right action given by one matrix per abstract generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAction {
    dim: usize,
    gens: Vec<F2Mat>,
    tag: GroupTag,
}

impl ModuleAction {
    /// Checks invertibility and the relations of `tag`.
    pub fn new(tag: GroupTag, gens: Vec<F2Mat>) -> Result<ModuleAction> {
        let p = tag.presentation();
        if gens.len() != p.generator_count() {
            return Err(Error::Inconsistent(format!(
                "{} expects {} generators, got {}",
                p.name(),
                p.generator_count(),
                gens.len()
            )));
        }
        let dim = gens[0].nrows();
        for g in &gens {
            if !g.is_square() || g.nrows() != dim {
                return Err(Error::DimensionMismatch(g.nrows(), dim));
            }
            if !g.is_invertible() {
                return Err(Error::Singular);
            }
        }
        if let Some(bad) = p.failing(&gens, |m| m.is_identity()).first() {
            return Err(Error::Relation {
                group: p.name(),
                relation: (*bad).to_string(),
            });
        }
        Ok(ModuleAction { dim, gens, tag })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[F2Mat] {
        &self.gens
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    pub fn is_invariant(&self, s: &Subspace) -> bool {
        self.gens.iter().all(|g| s.is_invariant(g))
    }

    /// Action on an invariant subspace, in its echelon coordinates.
    pub fn restrict(&self, s: &Subspace) -> Result<ModuleAction> {
        let gens = self.gens.iter().map(|g| s.restrict(g)).collect::<Result<Vec<_>>>()?;
        ModuleAction::new(self.tag, gens)
    }

    /// Orbit of `v` under the generated group, sorted.
    pub fn orbit(&self, v: F2Vec) -> Vec<F2Vec> {
        let mut seen = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for g in &self.gens {
                let y = g.apply(x);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Orbits on all vectors, each sorted, listed by least element.
    pub fn orbits(&self) -> Vec<Vec<F2Vec>> {
        let mut done = BTreeSet::new();
        let mut out = Vec::new();
        for v in all_vectors(self.dim) {
            if done.contains(&v) {
                continue;
            }
            let orb = self.orbit(v);
            done.extend(orb.iter().copied());
            out.push(orb);
        }
        out
    }

    /// An element of order 5 among the generators and their pairwise products.
    fn order_five(&self) -> Option<F2Mat> {
        let mut candidates = self.gens.clone();
        for a in &self.gens {
            for b in &self.gens {
                candidates.push(a.mul(b));
            }
        }
        candidates.into_iter().find(|m| m.order(5) == Some(5))
    }
}

/// Smallest invariant subspace containing `seeds`.
pub fn spin(seeds: &[F2Vec], act: &ModuleAction) -> Subspace {
    spin_under(seeds, act.dim, &act.gens)
}

fn spin_under(seeds: &[F2Vec], dim: usize, gens: &[F2Mat]) -> Subspace {
    let mut s = Subspace::zero(dim);
    let mut queue: Vec<F2Vec> = Vec::new();
    for &v in seeds {
        if s.insert(v) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        for g in gens {
            let w = g.apply(v);
            if s.insert(w) {
                queue.push(w);
            }
        }
    }
    s
}

/// All proper nonzero invariant subspaces, sorted by dimension then basis.
///
/// Every invariant subspace is a sum of cyclic submodules for an element of
/// order 5 (taken from `within` if given, else from the generators and their
/// products), so closing the cyclic ones under sums and filtering is
/// exhaustive. Spaces of dimension at most 5 fall back to all subspaces.
pub fn submodule_scan(act: &ModuleAction, within: Option<&ModuleAction>) -> Result<Vec<Subspace>> {
    let dim = act.dim;
    let scanner: Vec<F2Mat> = match within {
        Some(w) => {
            if w.dim != dim {
                return Err(Error::DimensionMismatch(w.dim, dim));
            }
            w.gens.clone()
        }
        None => match act.order_five() {
            Some(x) => vec![x],
            None if dim <= 5 => Vec::new(),
            None => return Err(Error::ScanInapplicable(dim)),
        },
    };
    let mut all: BTreeSet<Subspace> = all_vectors(dim)
        .skip(1)
        .map(|v| spin_under(&[v], dim, &scanner))
        .collect();
    let mut frontier: Vec<Subspace> = all.iter().cloned().collect();
    let cyclic: Vec<Subspace> = frontier.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for b in &cyclic {
                let s = a.sum(b);
                if all.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    Ok(all
        .into_iter()
        .filter(|s| !s.is_full() && !s.is_zero() && act.is_invariant(s))
        .collect())
}

/// Basis of `{X : ρa(g)·X = X·ρb(g) for every generator g}`.
pub fn hom_space(a: &ModuleAction, b: &ModuleAction) -> Result<Vec<F2Mat>> {
    if a.tag != b.tag || a.gens.len() != b.gens.len() {
        return Err(Error::Inconsistent("actions of different groups".into()));
    }
    let (m, n) = (a.dim, b.dim);
    let nvars = m * n;
    if nvars > super::MAX_DIM {
        return Err(Error::DimensionTooLarge(nvars));
    }
    let var = |i: usize, j: usize| 1u64 << (i * n + j);
    let mut rows = Vec::new();
    for (ga, gb) in a.gens.iter().zip(&b.gens) {
        for i in 0..m {
            for j in 0..n {
                let mut eq = 0u64;
                for k in 0..m {
                    if ga.get(i, k) {
                        eq ^= var(k, j);
                    }
                }
                for k in 0..n {
                    if gb.get(k, j) {
                        eq ^= var(i, k);
                    }
                }
                if eq != 0 {
                    rows.push(eq);
                }
            }
        }
    }
    let sols = nullspace_of_rows(&rows, nvars);
    let mats: Vec<F2Mat> = sols
        .basis()
        .iter()
        .map(|x| F2Mat::from_fn(m, n, |i| x.slice(i * n, n)))
        .collect();
    for x in &mats {
        for (ga, gb) in a.gens.iter().zip(&b.gens) {
            if ga.mul(x) != x.mul(gb) {
                return Err(Error::check("intertwiner", format!("{x:?}")));
            }
        }
    }
    Ok(mats)
}

/// Irreducibility and endomorphism data of a small module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub irreducible: bool,
    pub endo_dim: usize,
    /// Present when an order-4 element was supplied.
    pub free_over_c4: Option<bool>,
}

pub fn module_diagnostics(act: &ModuleAction, c4: Option<&F2Mat>) -> Result<Diagnostics> {
    if act.dim > 16 {
        return Err(Error::DimensionTooLarge(act.dim));
    }
    let irreducible = act.dim > 0 && all_vectors(act.dim).skip(1).all(|v| spin(&[v], act).is_full());
    let endo_dim = hom_space(act, act)?.len();
    let free_over_c4 = match c4 {
        None => None,
        Some(g) => {
            if g.nrows() != act.dim || g.order(4) != Some(4) {
                return Err(Error::NoOrderFour);
            }
            // Free of rank 1 needs dim 4 and a vector with independent orbit.
            Some(
                act.dim == 4
                    && all_vectors(4).any(|v| {
                        let orbit = [v, g.apply(v), g.pow(2).apply(v), g.pow(3).apply(v)];
                        super::rank(&orbit) == 4
                    }),
            )
        }
    };
    Ok(Diagnostics {
        irreducible,
        endo_dim,
        free_over_c4,
    })
}
