//! Minimal block containing two seed points (Atkinson's union-find method).
//!
//! Starting from the partition in which only `a` and `b` are merged, every
//! merged pair `{x, y}` forces `{x^g, y^g}` to be merged for each generator
//! `g`. The fixpoint is the finest block system joining `a` and `b`.

use super::Perm;
use crate::error::{Error, Result};

/// Reusable block computations for one transitive generating set.
pub struct BlockFinder<'a> {
    degree: usize,
    gens: &'a [Perm],
}

impl<'a> BlockFinder<'a> {
    pub fn new(gens: &'a [Perm]) -> Result<BlockFinder<'a>> {
        let degree = gens.first().map(Perm::degree).unwrap_or(0);
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let mut seen = vec![false; degree];
        let mut stack = Vec::new();
        if degree > 0 {
            seen[0] = true;
            stack.push(0);
        }
        let mut count = usize::from(degree > 0);
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        if count != degree {
            return Err(Error::Intransitive);
        }
        Ok(BlockFinder { degree, gens })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The block of `a` in the finest block system with `a` and `b` together.
    pub fn block(&self, a: usize, b: usize) -> Vec<usize> {
        let n = self.degree;
        if a == b {
            return vec![a];
        }
        let mut parent: Vec<u32> = (0..n as u32).collect();
        let mut classes = n;
        fn find(parent: &mut [u32], mut x: usize) -> usize {
            while parent[x] as usize != x {
                let up = parent[parent[x] as usize];
                parent[x] = up;
                x = up as usize;
            }
            x
        }
        let mut queue: Vec<(u32, u32)> = Vec::new();
        parent[b] = a as u32;
        classes -= 1;
        queue.push((a as u32, b as u32));
        let mut head = 0;
        while head < queue.len() && classes > 1 {
            let (x, y) = queue[head];
            head += 1;
            for g in self.gens {
                let rx = find(&mut parent, g.apply(x as usize));
                let ry = find(&mut parent, g.apply(y as usize));
                if rx != ry {
                    let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
                    parent[hi] = lo as u32;
                    classes -= 1;
                    queue.push((lo as u32, hi as u32));
                    if classes == 1 {
                        break;
                    }
                }
            }
        }
        if classes == 1 {
            return (0..n).collect();
        }
        let root = find(&mut parent, a);
        (0..n).filter(|&x| find(&mut parent, x) == root).collect()
    }
}

/// Minimal block containing `a` and `b` for the group generated by `gens`.
pub fn minimal_block(gens: &[Perm], a: usize, b: usize) -> Result<Vec<usize>> {
    Ok(BlockFinder::new(gens)?.block(a, b))
}

/// True when `block·g` equals `block` or is disjoint from it, for every `g`.
pub fn is_block(gens: &[Perm], block: &[usize]) -> bool {
    let degree = gens.first().map(Perm::degree).unwrap_or(0);
    let mut member = vec![false; degree];
    for &x in block {
        member[x] = true;
    }
    gens.iter().all(|g| {
        let hits = block.iter().filter(|&&x| member[g.apply(x)]).count();
        hits == 0 || hits == block.len()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn trivial_seed() {
        let g = [p(4, &[&[0, 1, 2, 3]])];
        assert_eq!(minimal_block(&g, 2, 2).unwrap(), vec![2]);
    }

    #[test]
    fn cyclic_four() {
        let g = [p(4, &[&[0, 1, 2, 3]])];
        let b = minimal_block(&g, 0, 2).unwrap();
        assert_eq!(b, vec![0, 2]);
        assert!(is_block(&g, &b));
        assert_eq!(minimal_block(&g, 0, 1).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn primitive_group_gives_everything() {
        let g = [p(5, &[&[0, 1, 2, 3, 4]]), p(5, &[&[0, 1]])];
        assert_eq!(minimal_block(&g, 0, 3).unwrap().len(), 5);
    }

    #[test]
    fn intransitive_input_rejected() {
        let g = [p(4, &[&[0, 1]])];
        assert_eq!(minimal_block(&g, 0, 1).unwrap_err(), Error::Intransitive);
    }

    #[test]
    fn wreath_blocks() {
        // C2 wr C3 on 6 points: blocks {0,1},{2,3},{4,5}.
        let g = [p(6, &[&[0, 1]]), p(6, &[&[0, 2, 4], &[1, 3, 5]])];
        assert_eq!(minimal_block(&g, 2, 3).unwrap(), vec![2, 3]);
        assert_eq!(minimal_block(&g, 0, 2).unwrap().len(), 6);
    }
}
