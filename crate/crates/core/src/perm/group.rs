use std::collections::VecDeque;

use rustc_hash::{FxHashMap, FxHashSet};

use super::Perm;
use crate::error::{Error, Result};

/// Default cap on the number of elements an enumeration may produce.
pub const DEFAULT_BUDGET: usize = 1 << 24;

/// Maps an element to its position via the images of a few base points.
#[derive(Clone, Debug)]
enum Locator {
    Dense {
        base: Vec<usize>,
        table: Vec<u32>,
    },
    Sparse {
        base: Vec<usize>,
        table: FxHashMap<u128, u32>,
    },
}

const DENSE_LIMIT: u128 = 1 << 22;
const NONE: u32 = u32::MAX;

fn key(images: &[u16], base: &[usize], degree: usize) -> u128 {
    base.iter()
        .fold(0u128, |acc, &b| acc * degree as u128 + images[b] as u128)
}

impl Locator {
    fn build(degree: usize, elements: &[Perm]) -> Locator {
        // Greedily add points until their images separate all elements.
        let mut base = Vec::new();
        let mut classes = 1usize;
        let mut keys: Vec<u128> = vec![0; elements.len()];
        if elements.len() > 1 {
            for pt in 0..degree {
                let trial: Vec<u128> = keys
                    .iter()
                    .zip(elements)
                    .map(|(&k, e)| k * degree as u128 + e.images()[pt] as u128)
                    .collect();
                let distinct = trial.iter().collect::<FxHashSet<_>>().len();
                if distinct > classes {
                    classes = distinct;
                    keys = trial;
                    base.push(pt);
                    if classes == elements.len() {
                        break;
                    }
                }
            }
        }
        let space = (degree as u128).checked_pow(base.len() as u32);
        match space {
            Some(s) if s <= DENSE_LIMIT => {
                let mut table = vec![NONE; s as usize];
                for (i, e) in elements.iter().enumerate() {
                    table[key(e.images(), &base, degree) as usize] = i as u32;
                }
                Locator::Dense { base, table }
            }
            _ => {
                let table = elements
                    .iter()
                    .enumerate()
                    .map(|(i, e)| (key(e.images(), &base, degree), i as u32))
                    .collect();
                Locator::Sparse { base, table }
            }
        }
    }

    fn base(&self) -> &[usize] {
        match self {
            Locator::Dense { base, .. } | Locator::Sparse { base, .. } => base,
        }
    }

    fn lookup(&self, k: u128) -> Option<usize> {
        let found = match self {
            Locator::Dense { table, .. } => table.get(k as usize).copied().unwrap_or(NONE),
            Locator::Sparse { table, .. } => table.get(&k).copied().unwrap_or(NONE),
        };
        (found != NONE).then_some(found as usize)
    }
}

/// A finite permutation group with every element listed in increasing
/// (lexicographic image) order.
#[derive(Clone, Debug)]
pub struct GroupEnum {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    locator: Locator,
}

impl GroupEnum {
    /// Breadth-first closure of `gens` with the default budget.
    pub fn generate(gens: &[Perm]) -> Result<GroupEnum> {
        Self::generate_with_budget(gens, DEFAULT_BUDGET)
    }

    pub fn generate_with_budget(gens: &[Perm], budget: usize) -> Result<GroupEnum> {
        let degree = gens
            .first()
            .map(Perm::degree)
            .ok_or_else(|| Error::Unsupported("empty generator list".into()))?;
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let id = Perm::identity(degree);
        let mut seen: FxHashSet<Perm> = FxHashSet::default();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.compose(g);
                if !seen.contains(&y) {
                    if seen.len() >= budget {
                        return Err(Error::BudgetExceeded { budget });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort_unstable();
        Ok(Self::from_sorted(degree, gens.to_vec(), elements))
    }

    fn from_sorted(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> GroupEnum {
        let locator = Locator::build(degree, &elements);
        GroupEnum {
            degree,
            generators,
            elements,
            locator,
        }
    }

    /// Subgroup made of the listed elements of `self`; a small generating set
    /// is chosen greedily (least element not yet generated).
    pub fn subgroup_from_elements(&self, mut elements: Vec<Perm>) -> Result<GroupEnum> {
        elements.sort_unstable();
        elements.dedup();
        let members: FxHashSet<&Perm> = elements.iter().collect();
        let mut gens: Vec<Perm> = Vec::new();
        let mut current: FxHashSet<Perm> = FxHashSet::default();
        current.insert(Perm::identity(self.degree));
        for e in &elements {
            if !self.contains(e) {
                return Err(Error::NotInGroup);
            }
            if current.contains(e) {
                continue;
            }
            gens.push(e.clone());
            current = GroupEnum::generate(&gens)?.elements.into_iter().collect();
            if current.iter().any(|x| !members.contains(x)) {
                return Err(Error::NotASubgroup);
            }
        }
        if current.len() != elements.len() {
            return Err(Error::NotASubgroup);
        }
        if gens.is_empty() {
            gens.push(Perm::identity(self.degree));
        }
        Ok(Self::from_sorted(self.degree, gens, elements))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        if p.degree() != self.degree {
            return None;
        }
        let i = self.locator.lookup(key(p.images(), self.locator.base(), self.degree))?;
        (self.elements[i] == *p).then_some(i)
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index_of(p).is_some()
    }

    /// Index of `elements[i] · elements[j]`, computed from base images only.
    #[inline]
    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        let a = self.elements[i].images();
        let b = self.elements[j].images();
        let k = self
            .locator
            .base()
            .iter()
            .fold(0u128, |acc, &pt| acc * self.degree as u128 + b[a[pt] as usize] as u128);
        self.locator.lookup(k).expect("group is closed under multiplication")
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        self.index_of(&self.elements[i].inverse())
            .expect("group is closed under inversion")
    }

    pub fn identity_idx(&self) -> usize {
        // The identity is the lexicographically least permutation.
        0
    }

    pub fn is_subgroup_of(&self, other: &GroupEnum) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    /// Conjugacy class of `g`: its orbit under conjugation by the generators.
    pub fn conj_class(&self, g: &Perm) -> Result<Vec<Perm>> {
        if !self.contains(g) {
            return Err(Error::NotInGroup);
        }
        let mut seen: FxHashSet<Perm> = FxHashSet::default();
        seen.insert(g.clone());
        let mut queue = vec![g.clone()];
        while let Some(x) = queue.pop() {
            for s in &self.generators {
                let y = x.conjugate(s);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        let mut class: Vec<Perm> = seen.into_iter().collect();
        class.sort_unstable();
        Ok(class)
    }

    /// Representatives (least elements) and sizes of all conjugacy classes.
    pub fn classes(&self) -> Vec<Vec<Perm>> {
        let mut done = vec![false; self.order()];
        let mut out = Vec::new();
        for i in 0..self.order() {
            if done[i] {
                continue;
            }
            let class = self.conj_class(&self.elements[i]).expect("member");
            for x in &class {
                done[self.index_of(x).expect("member")] = true;
            }
            out.push(class);
        }
        out
    }

    pub fn centralizer(&self, g: &Perm) -> Result<GroupEnum> {
        if !self.contains(g) {
            return Err(Error::NotInGroup);
        }
        let elems = self
            .elements
            .iter()
            .filter(|x| x.compose(g) == g.compose(x))
            .cloned()
            .collect();
        self.subgroup_from_elements(elems)
    }

    pub fn normalizer(&self, h: &GroupEnum) -> Result<GroupEnum> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotASubgroup);
        }
        let elems = self
            .elements
            .iter()
            .filter(|x| h.generators.iter().all(|s| h.contains(&s.conjugate(x))))
            .cloned()
            .collect();
        self.subgroup_from_elements(elems)
    }

    /// Largest normal subgroup of `self` inside `h`.
    pub fn core(&self, h: &GroupEnum) -> Result<GroupEnum> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotASubgroup);
        }
        let mut current: FxHashSet<Perm> = h.elements.iter().cloned().collect();
        loop {
            let next: FxHashSet<Perm> = current
                .iter()
                .filter(|x| self.generators.iter().all(|s| current.contains(&x.conjugate(s))))
                .cloned()
                .collect();
            if next.len() == current.len() {
                break;
            }
            current = next;
        }
        self.subgroup_from_elements(current.into_iter().collect())
    }

    /// Commutator subgroup: normal closure of the generator commutators.
    pub fn derived(&self) -> Result<GroupEnum> {
        let mut gens: Vec<Perm> = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                let c = a.inverse().compose(&b.inverse()).compose(a).compose(b);
                if !c.is_identity() && !gens.contains(&c) {
                    gens.push(c);
                }
            }
        }
        if gens.is_empty() {
            return self.subgroup_from_elements(vec![Perm::identity(self.degree)]);
        }
        self.normal_closure(gens)
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, mut gens: Vec<Perm>) -> Result<GroupEnum> {
        loop {
            let sub = GroupEnum::generate(&gens)?;
            let extra: Vec<Perm> = gens
                .iter()
                .flat_map(|x| self.generators.iter().map(move |s| x.conjugate(s)))
                .filter(|y| !sub.contains(y))
                .collect();
            if extra.is_empty() {
                let mut sub = sub;
                sub.generators = gens;
                return Ok(sub);
            }
            for y in extra {
                if !gens.contains(&y) {
                    gens.push(y);
                }
            }
        }
    }

    /// The subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: &[Perm]) -> Result<GroupEnum> {
        if gens.iter().any(|g| !self.contains(g)) {
            return Err(Error::NotInGroup);
        }
        GroupEnum::generate(gens)
    }

    /// `H·K` for subgroups where the product is again a subgroup.
    pub fn join(&self, a: &GroupEnum, b: &GroupEnum) -> Result<GroupEnum> {
        let gens: Vec<Perm> = a.generators.iter().chain(&b.generators).cloned().collect();
        self.subgroup(&gens)
    }
}

/// The right-coset action of a group on a subgroup.
#[derive(Clone, Debug)]
pub struct CosetAction {
    /// Coset label of every element of the group (by element index).
    pub label: Vec<u32>,
    /// Least element of each coset (by element index).
    pub reps: Vec<usize>,
    /// Images of the group's generators on the cosets.
    pub generator_images: Vec<Perm>,
}

impl CosetAction {
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Permutation of the cosets induced by the element with index `g`.
    pub fn perm_of(&self, group: &GroupEnum, g: usize) -> Perm {
        let images = self
            .reps
            .iter()
            .map(|&r| self.label[group.mul_idx(r, g)] as u16)
            .collect();
        Perm::from_images_unchecked(images)
    }
}

/// Action of `g` on the right cosets `Hx` of `h`. Coset 0 is `H`; the rest are
/// numbered by their least element.
pub fn coset_action(g: &GroupEnum, h: &GroupEnum) -> Result<CosetAction> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotASubgroup);
    }
    let h_idx: Vec<usize> = h
        .elements()
        .iter()
        .map(|x| g.index_of(x).expect("subgroup member"))
        .collect();
    let mut label = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if label[x] != u32::MAX {
            continue;
        }
        let l = reps.len() as u32;
        reps.push(x);
        for &hh in &h_idx {
            label[g.mul_idx(hh, x)] = l;
        }
    }
    let mut action = CosetAction {
        label,
        reps,
        generator_images: Vec::new(),
    };
    action.generator_images = g
        .generators()
        .iter()
        .map(|s| action.perm_of(g, g.index_of(s).expect("generator")))
        .collect();
    Ok(action)
}
