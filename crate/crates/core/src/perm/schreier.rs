//! Deterministic Schreier–Sims.
//!
//! Base points are chosen as the least point moved by the generator that
//! forces a new level. Generators are added one at a time and skipped when
//! they already sift, which keeps the strong generating set small even when
//! thousands of generators are supplied.

use num_bigint::BigUint;

use super::Perm;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `reps[β] = (u, u⁻¹)` with `base^u = β`.
    reps: Vec<Option<(Perm, Perm)>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Level {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            reps: vec![None; degree],
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        self.reps = vec![None; degree];
        let id = Perm::identity(degree);
        self.reps[self.base] = Some((id.clone(), id));
        self.orbit = vec![self.base];
        let mut head = 0;
        while head < self.orbit.len() {
            let beta = self.orbit[head];
            head += 1;
            for g in &self.gens {
                let gamma = g.apply(beta);
                if self.reps[gamma].is_none() {
                    let u = self.reps[beta].as_ref().expect("orbit point").0.compose(g);
                    let ui = u.inverse();
                    self.reps[gamma] = Some((u, ui));
                    self.orbit.push(gamma);
                }
            }
        }
    }
}

/// A base and strong generating set.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize) -> StabChain {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    pub fn from_generators(gens: &[Perm]) -> StabChain {
        let degree = gens.first().map(Perm::degree).unwrap_or(0);
        let mut chain = StabChain::new(degree);
        for g in gens {
            chain.add_generator(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.levels.first().map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// Sifts `g` starting at `from`; returns the residue and the level at
    /// which sifting stopped (`levels.len()` when it passed every level).
    fn strip(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base);
            match &level.reps[beta] {
                None => return (h, i),
                Some((_, ui)) => h = h.compose(ui),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    /// Adds `g` to the group; returns `false` if it was already a member.
    pub fn add_generator(&mut self, g: &Perm) -> bool {
        assert_eq!(g.degree(), self.degree, "degree mismatch");
        if self.contains(g) {
            return false;
        }
        // g belongs to S_l for every level whose earlier base points it fixes.
        let mut deepest = 0;
        while deepest < self.levels.len() && g.apply(self.levels[deepest].base) == self.levels[deepest].base {
            deepest += 1;
        }
        if deepest == self.levels.len() {
            let pt = g.first_moved().expect("non-identity");
            self.levels.push(Level::new(pt, self.degree));
        }
        for l in 0..=deepest {
            self.levels[l].gens.push(g.clone());
            self.levels[l].rebuild(self.degree);
        }
        self.complete(deepest);
        true
    }

    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let orbit = self.levels[lvl].orbit.clone();
            let gens = self.levels[lvl].gens.clone();
            for &beta in &orbit {
                for x in &gens {
                    let (u_beta, _) = self.levels[lvl].reps[beta].as_ref().expect("orbit point");
                    let ux = u_beta.compose(x);
                    let (u_img, u_img_inv) = self.levels[lvl].reps[x.apply(beta)].as_ref().expect("orbit closed");
                    if ux == *u_img {
                        continue;
                    }
                    let h = ux.compose(u_img_inv);
                    let (y, j) = self.strip(&h, lvl + 1);
                    if j < self.levels.len() || !y.is_identity() {
                        if j == self.levels.len() {
                            let pt = y.first_moved().expect("non-identity residue");
                            self.levels.push(Level::new(pt, self.degree));
                        }
                        for l in lvl + 1..=j {
                            self.levels[l].gens.push(y.clone());
                            self.levels[l].rebuild(self.degree);
                        }
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }
}

/// Order of the group generated by `gens`.
pub fn ss_order(gens: &[Perm]) -> BigUint {
    StabChain::from_generators(gens).order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::GroupEnum;
    use crate::rng::SplitMix64;

    fn p(n: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(ss_order(&[p(4, &[&[0, 1], &[2, 3]])]), BigUint::from(2u32));
        assert_eq!(ss_order(&[Perm::identity(3)]), BigUint::from(1u32));
        let s8 = [p(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]]), p(8, &[&[0, 1]])];
        assert_eq!(ss_order(&s8), BigUint::from(40320u32));
    }

    #[test]
    fn large_symmetric_group() {
        // S_30 has order 30!, far beyond enumeration.
        let n = 30;
        let cyc: Vec<usize> = (0..n).collect();
        let gens = [p(n, &[&cyc]), p(n, &[&[0, 1]])];
        let expected = (1..=n as u32).fold(BigUint::from(1u32), |a, k| a * k);
        assert_eq!(ss_order(&gens), expected);
    }

    #[test]
    fn membership() {
        let gens = [p(6, &[&[0, 1, 2]]), p(6, &[&[3, 4, 5]])];
        let chain = StabChain::from_generators(&gens);
        assert!(chain.contains(&p(6, &[&[0, 2, 1], &[3, 4, 5]])));
        assert!(!chain.contains(&p(6, &[&[0, 1]])));
    }

    #[test]
    fn agrees_with_enumeration_on_random_groups() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..25 {
            let n = 3 + rng.below(5);
            let gens: Vec<Perm> = (0..1 + rng.below(3))
                .map(|_| {
                    let mut imgs: Vec<usize> = (0..n).collect();
                    for i in (1..n).rev() {
                        imgs.swap(i, rng.below(i + 1));
                    }
                    Perm::from_images(imgs).unwrap()
                })
                .collect();
            let e = GroupEnum::generate(&gens).unwrap().order();
            assert_eq!(ss_order(&gens), BigUint::from(e));
        }
    }
}
