//! The `ltab 1` text format: a header line, the order `n`, then `n` rows of
//! `n` space-separated 0-based indices. Row `i`, column `j` holds the index
//! of `xᵢ∘xⱼ`; index 0 is the unit.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::loopcore::LoopTable;

pub const LTAB_HEADER: &str = "ltab 1";

pub fn write_ltab(t: &LoopTable, mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "{LTAB_HEADER}")?;
    writeln!(w, "{}", t.order())?;
    let mut line = String::new();
    for x in 0..t.order() {
        line.clear();
        for (j, v) in t.row(x).iter().enumerate() {
            if j > 0 {
                line.push(' ');
            }
            line.push_str(&v.to_string());
        }
        writeln!(w, "{line}")?;
    }
    w.flush()
}

pub fn to_ltab_string(t: &LoopTable) -> String {
    let mut buf = Vec::new();
    write_ltab(t, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ASCII output")
}

pub fn read_ltab(r: impl BufRead) -> Result<LoopTable> {
    let mut lines = r.lines();
    let mut next = |what: &str| -> Result<String> {
        lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing {what}")))?
            .map_err(|e| Error::Parse(e.to_string()))
    };
    let header = next("header")?;
    if header.trim_end() != LTAB_HEADER {
        return Err(Error::Parse(format!("expected `{LTAB_HEADER}`, got `{header}`")));
    }
    let n: usize = next("order")?
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("order: {e}")))?;
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n {
        let row = next(&format!("row {i}"))?;
        let before = cells.len();
        for tok in row.split_ascii_whitespace() {
            cells.push(tok.parse::<u32>().map_err(|e| Error::Parse(format!("row {i}: {e}")))?);
        }
        if cells.len() - before != n {
            return Err(Error::Parse(format!(
                "row {i} has {} entries, expected {n}",
                cells.len() - before
            )));
        }
    }
    LoopTable::from_cells(n, cells)
}

pub fn parse_ltab(s: &str) -> Result<LoopTable> {
    read_ltab(s.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn klein_four_text() {
        let t = LoopTable::from_fn(4, |x, y| x ^ y).unwrap();
        assert_eq!(to_ltab_string(&t), "ltab 1\n4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n");
    }

    #[test]
    fn malformed_input() {
        assert!(parse_ltab("ltab 2\n1\n0\n").is_err());
        assert!(parse_ltab("ltab 1\n2\n0 1\n1\n").is_err());
        assert!(parse_ltab("ltab 1\n2\n0 1\n1 2\n").is_err());
        assert!(parse_ltab("ltab 1\n2\n0 1\n").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..40) {
            let t = LoopTable::from_fn(n, |x, y| (x + y) % n).unwrap();
            prop_assert_eq!(parse_ltab(&to_ltab_string(&t)).unwrap(), t);
        }
    }
}
