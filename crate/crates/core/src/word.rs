//! Words in group generators and the relator sets used throughout.
//!
//! Commutators follow `[x, y] = x⁻¹y⁻¹xy`; conjugation is `xʸ = y⁻¹xy`.

use std::fmt;

/// Anything that can be multiplied, inverted and compared to the identity.
pub trait GroupElement: Clone {
    fn op(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn is_identity(&self) -> bool;
    /// The identity of the group `self` lives in.
    fn identity_like(&self) -> Self;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Gen(usize),
    Product(Vec<Word>),
    Pow(Box<Word>, i64),
    Comm(Box<Word>, Box<Word>),
}

impl Word {
    pub fn gen(i: usize) -> Word {
        Word::Gen(i)
    }

    pub fn pow(self, e: i64) -> Word {
        Word::Pow(Box::new(self), e)
    }

    pub fn comm(a: Word, b: Word) -> Word {
        Word::Comm(Box::new(a), Box::new(b))
    }

    pub fn product(parts: impl IntoIterator<Item = Word>) -> Word {
        Word::Product(parts.into_iter().collect())
    }

    /// Parses a product of generator letters, e.g. `"cdcd"` with `letters = "cd"`.
    /// An uppercase letter denotes the inverse of its lowercase generator.
    pub fn letters(s: &str, letters: &str) -> Word {
        let parts = s
            .chars()
            .map(|ch| {
                let lower = ch.to_ascii_lowercase();
                let idx = letters
                    .find(lower)
                    .unwrap_or_else(|| panic!("unknown generator letter {ch}"));
                if ch.is_ascii_uppercase() {
                    Word::gen(idx).pow(-1)
                } else {
                    Word::gen(idx)
                }
            })
            .collect();
        Word::Product(parts)
    }

    pub fn eval<E: GroupElement>(&self, gens: &[E]) -> E {
        match self {
            Word::Gen(i) => gens[*i].clone(),
            Word::Product(parts) => {
                let mut acc = gens[0].identity_like();
                for p in parts {
                    acc = acc.op(&p.eval(gens));
                }
                acc
            }
            Word::Pow(w, e) => power(&w.eval(gens), *e),
            Word::Comm(a, b) => {
                let a = a.eval(gens);
                let b = b.eval(gens);
                a.inverse().op(&b.inverse()).op(&a).op(&b)
            }
        }
    }
}

pub fn power<E: GroupElement>(x: &E, e: i64) -> E {
    let base = if e < 0 { x.inverse() } else { x.clone() };
    let mut n = e.unsigned_abs();
    let mut acc = x.identity_like();
    let mut sq = base;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.op(&sq);
        }
        sq = sq.op(&sq);
        n >>= 1;
    }
    acc
}

/// Order of an element, searching up to `limit`.
pub fn element_order<E: GroupElement>(x: &E, limit: usize) -> Option<usize> {
    let mut acc = x.clone();
    for n in 1..=limit {
        if acc.is_identity() {
            return Some(n);
        }
        acc = acc.op(x);
    }
    None
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Gen(i) => write!(f, "g{i}"),
            Word::Product(parts) => {
                for p in parts {
                    match p {
                        Word::Gen(_) | Word::Comm(..) => write!(f, "{p}")?,
                        _ => write!(f, "({p})")?,
                    }
                }
                Ok(())
            }
            Word::Pow(w, e) => write!(f, "{w}^{e}"),
            Word::Comm(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// A named relator.
#[derive(Clone, Debug)]
pub struct Relator {
    pub name: &'static str,
    pub word: Word,
}

fn rel(name: &'static str, word: Word) -> Relator {
    Relator { name, word }
}

/// Presentations checked on explicit witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// `a² = b³ = (ab)⁵ = 1`
    A5,
    /// `c² = d⁴ = (cd)⁵ = [c,d]³ = 1`
    S5,
    /// `C² = D⁸ = (CD)⁵ = [C,D]³ = [C,D⁴] = 1`
    TwoS5,
    /// The six relators satisfied by the 40-point generators.
    Extension,
    /// `x⁵ = y⁴ = 1`, `xʸ ∈ {x², x³}`; the membership clause is checked separately.
    F20,
    /// `x⁵ = 1`
    C5,
}

impl Presentation {
    pub fn name(self) -> &'static str {
        match self {
            Presentation::A5 => "A5",
            Presentation::S5 => "S5",
            Presentation::TwoS5 => "2.S5",
            Presentation::Extension => "2^5.S5",
            Presentation::F20 => "F20",
            Presentation::C5 => "C5",
        }
    }

    pub fn generator_count(self) -> usize {
        match self {
            Presentation::C5 => 1,
            _ => 2,
        }
    }

    pub fn relators(self) -> Vec<Relator> {
        let x = || Word::gen(0);
        let y = || Word::gen(1);
        let xy = || Word::product([x(), y()]);
        match self {
            Presentation::A5 => vec![
                rel("a^2", x().pow(2)),
                rel("b^3", y().pow(3)),
                rel("(ab)^5", xy().pow(5)),
            ],
            Presentation::S5 => vec![
                rel("c^2", x().pow(2)),
                rel("d^4", y().pow(4)),
                rel("(cd)^5", xy().pow(5)),
                rel("[c,d]^3", Word::comm(x(), y()).pow(3)),
            ],
            Presentation::TwoS5 => vec![
                rel("C^2", x().pow(2)),
                rel("D^8", y().pow(8)),
                rel("(CD)^5", xy().pow(5)),
                rel("[C,D]^3", Word::comm(x(), y()).pow(3)),
                rel("[C,D^4]", Word::comm(x(), y().pow(4))),
            ],
            Presentation::Extension => vec![
                rel("c^2", x().pow(2)),
                rel("d^8", y().pow(8)),
                rel("(cd)^5", xy().pow(5)),
                rel("[c,d]^3", Word::comm(x(), y()).pow(3)),
                rel("[d^4,c]^2", Word::comm(y().pow(4), x()).pow(2)),
                rel("[d^4,cdcd^-2c]", Word::comm(y().pow(4), Word::letters("cdcDDc", "cd"))),
            ],
            Presentation::F20 => vec![rel("x^5", x().pow(5)), rel("y^4", y().pow(4))],
            Presentation::C5 => vec![rel("x^5", x().pow(5))],
        }
    }

    /// Names of the relators that fail on `gens`, using `is_trivial` to decide
    /// triviality (so relators can be evaluated modulo a normal subgroup).
    pub fn failing<E: GroupElement>(self, gens: &[E], is_trivial: impl Fn(&E) -> bool) -> Vec<&'static str> {
        assert_eq!(gens.len(), self.generator_count(), "generator count");
        let mut bad: Vec<&'static str> = self
            .relators()
            .into_iter()
            .filter(|r| !is_trivial(&r.word.eval(gens)))
            .map(|r| r.name)
            .collect();
        if self == Presentation::F20 {
            let conj = gens[1].inverse().op(&gens[0]).op(&gens[1]);
            let sq = power(&gens[0], 2);
            let cube = power(&gens[0], 3);
            if !is_trivial(&conj.op(&sq.inverse())) && !is_trivial(&conj.op(&cube.inverse())) {
                bad.push("x^y in {x^2, x^3}");
            }
        }
        bad
    }

    pub fn holds<E: GroupElement>(self, gens: &[E]) -> bool {
        self.failing(gens, |e| e.is_identity()).is_empty()
    }
}
