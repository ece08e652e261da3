//! Normal subloops through blocks of the multiplication group.
//!
//! The normal subloops of a loop `Q` are exactly the blocks containing the
//! unit of `Mlt(Q) = ⟨L_x, R_x⟩`, so the normal closure of `x` is the minimal
//! block through `{1, x}`.

use num_bigint::BigUint;
use rayon::prelude::*;

use super::LoopTable;
use crate::error::{Error, Result};
use crate::perm::{BlockFinder, Perm, StabChain};

/// Left translations `L_x: y ↦ x∘y` and right translations `R_x: y ↦ y∘x`.
pub fn translations(t: &LoopTable) -> (Vec<Perm>, Vec<Perm>) {
    let n = t.order();
    assert!(n <= u16::MAX as usize, "order too large for permutations");
    let rows = (0..n)
        .map(|x| Perm::from_images(t.row(x).iter().map(|&v| v as usize).collect()).expect("Latin row"))
        .collect();
    let cols = (0..n)
        .map(|y| Perm::from_images(t.column(y).into_iter().map(|v| v as usize).collect()).expect("Latin column"))
        .collect();
    (rows, cols)
}

fn mlt_generators(t: &LoopTable) -> Vec<Perm> {
    let (mut rows, cols) = translations(t);
    rows.extend(cols);
    rows
}

/// The normal subloop generated by `x`.
pub fn normal_closure_block(t: &LoopTable, x: usize) -> Result<Vec<usize>> {
    let gens = mlt_generators(t);
    Ok(BlockFinder::new(&gens)?.block(0, x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub simple: bool,
    /// Least `x` whose normal closure is proper, with that closure.
    pub witness: Option<(usize, Vec<usize>)>,
    /// Seeds confirmed to generate the whole loop.
    pub full_seeds: usize,
}

/// Simple iff every `x ≠ 1` has the whole loop as normal closure.
pub fn is_simple(t: &LoopTable) -> Result<SimplicityReport> {
    let n = t.order();
    let gens = mlt_generators(t);
    if n <= 1 {
        return Ok(SimplicityReport {
            simple: true,
            witness: None,
            full_seeds: 0,
        });
    }
    let finder = BlockFinder::new(&gens)?;
    let witness = (1..n)
        .into_par_iter()
        .map(|x| (x, finder.block(0, x)))
        .find_first(|(_, b)| b.len() < n);
    let full_seeds = match &witness {
        None => n - 1,
        Some((x, _)) => x - 1,
    };
    Ok(SimplicityReport {
        simple: witness.is_none(),
        witness,
        full_seeds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub well_defined: bool,
    /// Two products whose fibers disagree: `(x, y)` and `(x', y')` with
    /// `f(x) = f(x')`, `f(y) = f(y')` but `f(xy) ≠ f(x'y')`.
    pub witness: Option<((usize, usize), (usize, usize))>,
    pub table: Option<LoopTable>,
    /// Whether the induced table equals the supplied base table.
    pub matches_base: Option<bool>,
}

/// Tries to push the multiplication of `big` through `fiber`.
pub fn quotient_induce(big: &LoopTable, fiber: &[u32], base: Option<&LoopTable>) -> Result<QuotientReport> {
    let n = big.order();
    if fiber.len() != n {
        return Err(Error::DimensionMismatch(fiber.len(), n));
    }
    let m = fiber.iter().max().map_or(0, |&x| x as usize + 1);
    let mut sizes = vec![0usize; m];
    for &f in fiber {
        sizes[f as usize] += 1;
    }
    if sizes.iter().any(|&s| s != sizes[0]) {
        return Err(Error::Inconsistent("fibers are empty or of unequal size".into()));
    }
    const UNSET: u32 = u32::MAX;
    let mut induced = vec![UNSET; m * m];
    let mut origin = vec![(0usize, 0usize); m * m];
    for x in 0..n {
        for y in 0..n {
            let cell = fiber[x] as usize * m + fiber[y] as usize;
            let value = fiber[big.mul(x, y)];
            if induced[cell] == UNSET {
                induced[cell] = value;
                origin[cell] = (x, y);
            } else if induced[cell] != value {
                return Ok(QuotientReport {
                    well_defined: false,
                    witness: Some((origin[cell], (x, y))),
                    table: None,
                    matches_base: None,
                });
            }
        }
    }
    let table = LoopTable::from_cells(m, induced)?;
    let matches_base = base.map(|b| *b == table);
    Ok(QuotientReport {
        well_defined: true,
        witness: None,
        table: Some(table),
        matches_base,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultKind {
    /// Generated by the right translations.
    Right,
    /// Generated by all left and right translations.
    Full,
}

#[derive(Clone, Debug)]
pub struct MultGroup {
    pub order: BigUint,
    /// Translations that enlarged the group when added in order.
    pub essential_generators: usize,
}

/// Order of the right or full multiplication group.
pub fn mult_groups(t: &LoopTable, which: MultKind) -> MultGroup {
    let (rows, cols) = translations(t);
    let gens: Vec<Perm> = match which {
        MultKind::Right => cols,
        MultKind::Full => cols.into_iter().chain(rows).collect(),
    };
    let mut chain = StabChain::new(t.order());
    let essential_generators = gens.iter().filter(|g| chain.add_generator(g)).count();
    MultGroup {
        order: chain.order(),
        essential_generators,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_four_group() {
        let t = LoopTable::from_fn(4, |x, y| x ^ y).unwrap();
        assert_eq!(mult_groups(&t, MultKind::Right).order, BigUint::from(4u32));
        assert_eq!(mult_groups(&t, MultKind::Full).order, BigUint::from(4u32));
        // Every subgroup of an abelian group is normal.
        assert_eq!(normal_closure_block(&t, 1).unwrap(), vec![0, 1]);
        assert_eq!(normal_closure_block(&t, 0).unwrap(), vec![0]);
        let r = is_simple(&t).unwrap();
        assert!(!r.simple);
        assert_eq!(r.witness, Some((1, vec![0, 1])));
    }

    #[test]
    fn cyclic_prime_order_is_simple() {
        let t = LoopTable::from_fn(5, |x, y| (x + y) % 5).unwrap();
        assert!(is_simple(&t).unwrap().simple);
        assert_eq!(is_simple(&t).unwrap().full_seeds, 4);
    }

    #[test]
    fn quotient_of_z4_by_subgroup() {
        let t = LoopTable::from_fn(4, |x, y| (x + y) % 4).unwrap();
        let identity: Vec<u32> = (0..4).collect();
        let q = quotient_induce(&t, &identity, Some(&t)).unwrap();
        assert!(q.well_defined);
        assert_eq!(q.matches_base, Some(true));
        // x ↦ x mod 2 is a homomorphism onto Z2.
        let parity = [0, 1, 0, 1];
        let z2 = LoopTable::from_fn(2, |x, y| x ^ y).unwrap();
        let q = quotient_induce(&t, &parity, Some(&z2)).unwrap();
        assert_eq!(q.matches_base, Some(true));
        // Grouping {0,1} and {2,3} is not.
        let q = quotient_induce(&t, &[0, 0, 1, 1], None).unwrap();
        assert!(!q.well_defined);
        assert!(q.witness.is_some());
    }

    #[test]
    fn unequal_fibers_are_rejected() {
        let t = LoopTable::from_fn(4, |x, y| x ^ y).unwrap();
        assert!(quotient_induce(&t, &[0, 0, 0, 1], None).is_err());
    }
}
