//! The `S₅`-modules `M`, `N` and the twisted 8-dimensional module `U = N ⊕ N`.
//!
//! Vectors of `N` are sum-zero vectors of the 5-point permutation module,
//! stored by their first four coordinates (basis `eᵢ + e₄`). Vectors of `M`
//! are sum-zero vectors of the 6-point module modulo the all-ones vector,
//! normalized so the last coordinate is 0 and again stored by the first four.
//! `U` keeps `U₁` in bits 0..4 and `U₂` in bits 4..8.

mod certify;

pub use certify::certify_modules;

use std::collections::BTreeSet;

use crate::baseg::GroupG;
use crate::error::{Error, Result};
use crate::f2::{submodule_scan, F2Mat, F2Vec, GroupTag, ModuleAction, QuadForm, Subspace};
use crate::perm::Perm;

/// Matrix of a degree-5 permutation on `N`.
pub fn n_matrix(p: &Perm) -> F2Mat {
    assert_eq!(p.degree(), 5, "N is a module for S5 on 5 points");
    let last = p.apply(4);
    F2Mat::from_fn(4, 4, |r| {
        let bits = 1u64 << p.apply(r) ^ 1u64 << last;
        F2Vec::from_bits(5, bits).slice(0, 4)
    })
}

/// Matrix of a degree-6 permutation on `M`.
pub fn m_matrix(p: &Perm) -> F2Mat {
    assert_eq!(p.degree(), 6, "M is a module for S5 on 6 points");
    F2Mat::from_fn(4, 4, |r| {
        let mut bits = 1u64 << p.apply(r) ^ 1u64 << p.apply(4);
        if bits >> 5 & 1 == 1 {
            bits ^= 0b11_1111;
        }
        F2Vec::from_bits(6, bits).slice(0, 4)
    })
}

/// `ρ_U(p)`: both copies act by `ρ_N(p)`; odd `p` also swaps the copies.
pub fn rho_u(p: &Perm) -> F2Mat {
    let n = n_matrix(p);
    let diag = F2Mat::block_diag(&[&n, &n]);
    if p.is_odd() {
        F2Mat::block_swap(4).mul(&diag)
    } else {
        diag
    }
}

/// `∩ ker(A + I)`.
pub fn fixed_space(mats: &[F2Mat]) -> Subspace {
    let dim = mats.first().map_or(0, F2Mat::nrows);
    mats.iter().fold(Subspace::full(dim), |acc, m| {
        acc.intersection(&Subspace::left_kernel(&m.plus_identity()))
    })
}

/// An `S₅`-module given by the images of `c` and `d`.
#[derive(Clone, Debug)]
pub struct S5Module {
    pub act: ModuleAction,
    pub form: Option<QuadForm>,
}

impl S5Module {
    pub fn dim(&self) -> usize {
        self.act.dim()
    }
}

/// Generating pairs of the subgroups of `G` that the module checks use,
/// as indices into `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pairs {
    /// `(a, b)` with `a² = b³ = (ab)⁵ = 1` modulo `J`.
    pub l: (usize, usize),
    /// `(x, y)`: `x = cd` of order 5 and `y` the order-8 generator of `H`.
    pub f20: (usize, usize),
    /// An element of order 3 modulo `J`.
    pub three: usize,
}

impl Pairs {
    pub fn find(g: &GroupG) -> Result<Pairs> {
        let gr = &g.group;
        let (c, d) = (g.c_idx(), g.d_idx());
        let d2 = gr.mul_idx(d, d);
        // [d, c] = d⁻¹c⁻¹dc
        let comm = gr.mul_idx(gr.mul_idx(gr.inv_idx(d), gr.inv_idx(c)), gr.mul_idx(d, c));
        let is_a5 = |a: usize, b: usize| {
            let (pa, pb) = (g.phi5(a), g.phi5(b));
            pa.order() == 2 && pb.order() == 3 && pa.compose(pb).order() == 5
        };
        let l = if is_a5(d2, comm) {
            (d2, comm)
        } else {
            (0..g.order())
                .flat_map(|a| (0..g.order()).map(move |b| (a, b)))
                .find(|&(a, b)| is_a5(a, b))
                .ok_or_else(|| Error::check("A5 generating pair", "none found"))?
        };
        let cd = gr.mul_idx(c, d);
        Ok(Pairs {
            l,
            f20: (cd, g.index(&g.h8)),
            three: comm,
        })
    }
}

/// `N` as an `S₅`-module through `φ₅`, with its quadratic form.
pub fn build_n(g: &GroupG) -> Result<S5Module> {
    let gens = [g.c_idx(), g.d_idx()].map(|i| n_matrix(g.phi5(i)));
    let act = ModuleAction::new(GroupTag::S5Pair, gens.to_vec())?;
    Ok(S5Module {
        act,
        form: Some(QuadForm::N),
    })
}

/// `M` as an `S₅`-module through `φ₆`.
pub fn build_m(g: &GroupG) -> Result<S5Module> {
    let gens = [g.c_idx(), g.d_idx()].map(|i| m_matrix(g.phi6(i)));
    let act = ModuleAction::new(GroupTag::S5Pair, gens.to_vec())?;
    Ok(S5Module { act, form: None })
}

/// `U = U₁ ⊕ U₂` with the twisted action and its distinguished subspaces.
#[derive(Clone, Debug)]
pub struct USpace {
    pub pairs: Pairs,
    /// The block swap.
    pub tau: F2Mat,
    /// `ρ_U(φ₅(c))`.
    pub t: F2Mat,
    /// `D`: the images of `c` and `d`.
    pub d_act: ModuleAction,
    /// `L`: the images of the `A₅` pair.
    pub l_act: ModuleAction,
    /// `D₁ = ρ_U(φ₅(H))`: the images of the `F₂₀` pair.
    pub d1_act: ModuleAction,
    /// `ρ_U(φ₅(cd))`.
    pub p_act: ModuleAction,
    pub u1: Subspace,
    pub u2: Subspace,
    pub w: Subspace,
    pub t1: Subspace,
    pub t2: Subspace,
    /// All `D₁`-submodules other than `W`, in scan order.
    pub d1_submodules: Vec<Subspace>,
}

impl USpace {
    /// `ρ_U(φ₅(g))` for an index of `G`.
    pub fn rho(&self, g: &GroupG, i: usize) -> F2Mat {
        rho_u(g.phi5(i))
    }
}

/// Builds `U`; `T₁` is the first non-`W` `D₁`-submodule, or the second
/// when `swap_t` is set.
pub fn build_u(g: &GroupG, swap_t: bool) -> Result<USpace> {
    let pairs = Pairs::find(g)?;
    let rho = |i: usize| rho_u(g.phi5(i));
    let d_act = ModuleAction::new(GroupTag::S5Pair, vec![rho(g.c_idx()), rho(g.d_idx())])?;
    let l_act = ModuleAction::new(GroupTag::A5Pair, vec![rho(pairs.l.0), rho(pairs.l.1)])?;
    let d1_act = ModuleAction::new(GroupTag::F20Pair, vec![rho(pairs.f20.0), rho(pairs.f20.1)])?;
    let p_act = ModuleAction::new(GroupTag::C5, vec![rho(pairs.f20.0)])?;
    let tau = F2Mat::block_swap(4);
    let t = rho(g.c_idx());
    let u1 = Subspace::span(8, (0..4).map(|i| F2Vec::unit(8, i)));
    let u2 = Subspace::span(8, (4..8).map(|i| F2Vec::unit(8, i)));
    let w = fixed_space(std::slice::from_ref(&tau));

    let subs = submodule_scan(&d1_act, Some(&p_act))?;
    if subs.len() != 3 || !subs.contains(&w) {
        return Err(Error::check(
            "U has exactly three D1-submodules including W",
            format!("{} found", subs.len()),
        ));
    }
    let others: Vec<Subspace> = subs.into_iter().filter(|s| *s != w).collect();
    let (t1, t2) = if swap_t {
        (others[1].clone(), others[0].clone())
    } else {
        (others[0].clone(), others[1].clone())
    };
    Ok(USpace {
        pairs,
        tau,
        t,
        d_act,
        l_act,
        d1_act,
        p_act,
        u1,
        u2,
        w,
        t1,
        t2,
        d1_submodules: others,
    })
}

/// `S = {0} ∪ S₀ ∪ S₁ ∪ S₂`: zero and the length-5 `L`-orbits in `W`, `U₁`, `U₂`.
pub fn build_s(u: &USpace) -> Result<Vec<F2Vec>> {
    let mut s = BTreeSet::from([F2Vec::zero(8)]);
    for part in [&u.w, &u.u1, &u.u2] {
        let fives: Vec<Vec<F2Vec>> = orbits_within(&u.l_act, part)
            .into_iter()
            .filter(|o| o.len() == 5)
            .collect();
        if fives.len() != 1 {
            return Err(Error::check(
                "one L-orbit of length 5",
                format!("{} found", fives.len()),
            ));
        }
        s.extend(fives[0].iter().copied());
    }
    let s: Vec<F2Vec> = s.into_iter().collect();
    if s.len() != 16 {
        return Err(Error::check("|S| = 16", s.len().to_string()));
    }
    for m in u.d_act.gens() {
        let image: BTreeSet<F2Vec> = s.iter().map(|&v| m.apply(v)).collect();
        if image.into_iter().ne(s.iter().copied()) {
            return Err(Error::check("S is S5-invariant", format!("{m:?}")));
        }
    }
    if let Some((x, y)) = complement_violation(&s, &u.t1) {
        return Err(Error::check("S is a complement to T1", format!("{x} + {y}")));
    }
    Ok(s)
}

/// Orbits of `act` on the vectors of an invariant subspace, by least element.
pub fn orbits_within(act: &ModuleAction, part: &Subspace) -> Vec<Vec<F2Vec>> {
    let mut done = BTreeSet::new();
    let mut out = Vec::new();
    for v in part.elements() {
        if done.insert(v) {
            let orb = act.orbit(v);
            done.extend(orb.iter().copied());
            out.push(orb);
        }
    }
    out
}

/// First pair of distinct elements whose sum lies in `t`.
pub fn complement_violation(s: &[F2Vec], t: &Subspace) -> Option<(F2Vec, F2Vec)> {
    s.iter()
        .enumerate()
        .flat_map(|(i, &x)| s[i + 1..].iter().map(move |&y| (x, y)))
        .find(|&(x, y)| t.contains(x + y))
}

/// The `F₂₀`-isomorphism `ψ : J₀ → T₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiMap {
    /// From `J₀` coordinates to echelon coordinates of `T₁`.
    pub mat: F2Mat,
    pub t1: Subspace,
}

impl PsiMap {
    /// `ψ(v)` as a vector of `U`, for `v` in `J₀` coordinates.
    pub fn apply(&self, v: F2Vec) -> F2Vec {
        self.t1.from_coords(self.mat.apply(v))
    }
}

/// The `H`-action on `J₀` by conjugation, as an `F₂₀` pair.
pub fn j0_f20(g: &GroupG, pairs: &Pairs) -> Result<ModuleAction> {
    ModuleAction::new(
        GroupTag::F20Pair,
        vec![g.j0_matrix(pairs.f20.0), g.j0_matrix(pairs.f20.1)],
    )
}

/// The unique nonzero intertwiner from `J₀` to `T₁` under `H`.
pub fn build_psi(g: &GroupG, u: &USpace) -> Result<PsiMap> {
    let j0 = j0_f20(g, &u.pairs)?;
    let t1 = u.d1_act.restrict(&u.t1)?;
    let homs = crate::f2::hom_space(&j0, &t1)?;
    if homs.len() != 1 {
        return Err(Error::check("dim Hom_F20(J0, T1) = 1", homs.len().to_string()));
    }
    let mat = homs.into_iter().next().expect("one element");
    if !mat.is_invertible() {
        return Err(Error::check("psi invertible", format!("{mat:?}")));
    }
    Ok(PsiMap { mat, t1: u.t1.clone() })
}
