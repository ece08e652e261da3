use std::str::FromStr;

use rayon::prelude::*;

use super::Certificate;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// A loop multiplication table on `0..n` with unit `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopTable {
    n: usize,
    cells: Vec<u32>,
}

impl LoopTable {
    pub fn from_cells(n: usize, cells: Vec<u32>) -> Result<LoopTable> {
        if cells.len() != n * n {
            return Err(Error::DimensionMismatch(cells.len(), n * n));
        }
        if let Some(&c) = cells.iter().find(|&&c| c as usize >= n) {
            return Err(Error::Parse(format!("entry {c} out of range for order {n}")));
        }
        Ok(LoopTable { n, cells })
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<LoopTable> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(r.len(), n));
        }
        LoopTable::from_cells(n, rows.concat())
    }

    /// Cayley table of a group given by its multiplication on indices, unit at 0.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<LoopTable> {
        LoopTable::from_cells(n, (0..n * n).map(|c| f(c / n, c % n) as u32).collect())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y] as usize
    }

    pub fn row(&self, x: usize) -> &[u32] {
        &self.cells[x * self.n..(x + 1) * self.n]
    }

    pub fn column(&self, y: usize) -> Vec<u32> {
        (0..self.n).map(|x| self.cells[x * self.n + y]).collect()
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    #[inline]
    fn bol_holds(&self, x: usize, y: usize, z: usize) -> bool {
        let yz = self.mul(y, z);
        self.mul(self.mul(self.mul(x, y), z), y) == self.mul(x, self.mul(yz, y))
    }
}

fn is_permutation(values: impl Iterator<Item = u32>, n: usize) -> bool {
    let mut seen = vec![false; n];
    values
        .into_iter()
        .all(|v| !std::mem::replace(&mut seen[v as usize], true))
}

/// Latin square, unit and exponent-2 checks.
pub fn table_checks(t: &LoopTable) -> Certificate {
    let n = t.n;
    let mut cert = Certificate::new("loop-table");
    cert.param("order", n);
    let bad_row = (0..n).find(|&x| !is_permutation(t.row(x).iter().copied(), n));
    cert.record(
        "rows are permutations",
        bad_row.is_none(),
        bad_row.map_or(String::new(), |x| format!("row {x}")),
    );
    let bad_col = (0..n).find(|&y| !is_permutation((0..n).map(|x| t.cells[x * n + y]), n));
    cert.record(
        "columns are permutations",
        bad_col.is_none(),
        bad_col.map_or(String::new(), |y| format!("column {y}")),
    );
    let bad_unit = (0..n).find(|&x| t.mul(0, x) != x || t.mul(x, 0) != x);
    cert.record(
        "0 is a two-sided unit",
        bad_unit.is_none(),
        bad_unit.map_or(String::new(), |x| format!("x = {x}")),
    );
    let bad_sq = (0..n).find(|&x| t.mul(x, x) != 0);
    cert.record(
        "x*x = 1 for all x",
        bad_sq.is_none(),
        bad_sq.map_or(String::new(), |x| format!("x = {x}")),
    );
    cert
}

/// How many triples the Bol identity is evaluated on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BolMode {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

impl BolMode {
    pub fn with_seed(self, seed: u64) -> BolMode {
        match self {
            BolMode::Sample { count, .. } => BolMode::Sample { count, seed },
            m => m,
        }
    }
}

impl FromStr for BolMode {
    type Err = Error;

    /// `exhaustive` or `sample=N` (seed 1 unless set separately).
    fn from_str(s: &str) -> Result<BolMode> {
        if s == "exhaustive" {
            return Ok(BolMode::Exhaustive);
        }
        let count = s
            .strip_prefix("sample=")
            .and_then(|c| c.parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected `exhaustive` or `sample=N`, got `{s}`")))?;
        Ok(BolMode::Sample { count, seed: 1 })
    }
}

/// Evaluates the right Bol identity `((xy)z)y = x((yz)y)`; the witness is the first failing triple.
pub fn check_bol(t: &LoopTable, mode: BolMode) -> Certificate {
    let n = t.n;
    let mut cert = Certificate::new("bol");
    cert.param("order", n);
    // y⁻¹ is the solution of y·y⁻¹ = 1; it is y itself in exponent 2.
    let inv: Vec<usize> = (0..n)
        .map(|y| t.row(y).iter().position(|&p| p == 0).unwrap_or(y))
        .collect();
    let ri = (0..n).find_map(|x| (0..n).find(|&y| t.mul(t.mul(x, y), inv[y]) != x).map(|y| (x, y)));
    cert.record(
        "right inverse property (xy)y⁻¹ = x",
        ri.is_none(),
        ri.map_or(String::new(), |w| format!("{w:?}")),
    );
    match mode {
        BolMode::Exhaustive => {
            cert.param("mode", "exhaustive");
            cert.run("Bol identity", || {
                let bad = (0..n).into_par_iter().find_map_first(|x| {
                    (0..n).find_map(|y| (0..n).find(|&z| !t.bol_holds(x, y, z)).map(|z| (x, y, z)))
                });
                match bad {
                    None => (true, format!("{} triples", (n as u128).pow(3))),
                    Some(w) => (false, format!("(x, y, z) = {w:?}")),
                }
            });
        }
        BolMode::Sample { count, seed } => {
            cert.param("mode", format!("sample={count}"));
            cert.param("seed", seed);
            cert.run("Bol identity", || {
                let mut rng = SplitMix64::new(seed);
                for i in 0..count {
                    let x = rng.below(n);
                    let y = rng.below(n);
                    let z = rng.below(n);
                    if !t.bol_holds(x, y, z) {
                        return (false, format!("sample {i}: (x, y, z) = {:?}", (x, y, z)));
                    }
                }
                (true, format!("{count} sampled triples"))
            });
        }
    }
    cert
}
