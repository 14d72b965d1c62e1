use std::sync::OnceLock;

use super::relation::{Cmp, Relation};
use crate::automata::{Dfao, DEFAULT_STATE_CAP};
use crate::error::Result;

/// Compiles the factor predicates of one sequence, sharing the
/// factor-equality automaton between them.
#[derive(Debug)]
pub struct PredicateCompiler {
    seq: Dfao,
    state_cap: usize,
    factor_eq: OnceLock<Relation>,
    novel: OnceLock<Relation>,
    power_len: OnceLock<Relation>,
}

impl PredicateCompiler {
    pub fn new(seq: &Dfao) -> Self {
        Self::with_state_cap(seq, DEFAULT_STATE_CAP)
    }

    pub fn with_state_cap(seq: &Dfao, state_cap: usize) -> Self {
        PredicateCompiler {
            seq: seq.clone(),
            state_cap,
            factor_eq: OnceLock::new(),
            novel: OnceLock::new(),
            power_len: OnceLock::new(),
        }
    }

    pub fn sequence(&self) -> &Dfao {
        &self.seq
    }

    pub fn base(&self) -> u32 {
        self.seq.base()
    }

    pub fn state_cap(&self) -> usize {
        self.state_cap
    }

    fn capped(&self, r: Result<Relation>) -> Result<Relation> {
        r.map(|r| r.with_state_cap(self.state_cap))
    }

    pub fn add(&self, a: &str, b: &str, c: &str) -> Result<Relation> {
        self.capped(Relation::add(self.base(), a, b, c))
    }

    pub fn cmp(&self, cmp: Cmp, a: &str, b: &str) -> Result<Relation> {
        self.capped(Relation::compare(self.base(), cmp, a, b))
    }

    pub fn constant(&self, v: &str, value: u64) -> Result<Relation> {
        self.capped(Relation::constant(self.base(), v, value))
    }

    fn cached(&self, cell: &OnceLock<Relation>, build: impl FnOnce() -> Result<Relation>) -> Result<Relation> {
        if let Some(r) = cell.get() {
            return Ok(r.clone());
        }
        let r = build()?;
        Ok(cell.get_or_init(|| r).clone())
    }

    /// `x[i..i+n-1] = x[j..j+n-1]`, over `(i, j, n)`.
    pub fn factor_eq(&self) -> Result<Relation> {
        self.cached(&self.factor_eq, || {
            // exists m < n with x[i+m] != x[j+m], then negated
            let differ = self.capped(Relation::seq_eq_positions(&self.seq, "a", "b"))?.negate();
            let step = self.add("i", "m", "a")?.and(&differ)?.exists("a")?;
            let step = step.and(&self.add("j", "m", "b")?)?.exists("b")?;
            let mismatch = step.and(&self.cmp(Cmp::Lt, "m", "n")?)?.exists("m")?;
            Ok(mismatch.negate())
        })
    }

    /// The occurrence `x[i..i+n-1]` is the leftmost one of its factor, over `(i, n)`.
    pub fn novel(&self) -> Result<Relation> {
        self.cached(&self.novel, || {
            let earlier = self.cmp(Cmp::Lt, "j", "i")?.and(&self.factor_eq()?)?.exists("j")?;
            Ok(earlier.negate())
        })
    }

    /// `x[i..i+n-1]` is a power (`yz = zy` with `|y| = d`, `0 < d < n`), over `(i, n)`.
    pub fn power_len(&self) -> Result<Relation> {
        self.cached(&self.power_len, || {
            let feq = self.factor_eq()?;
            let rest = self.add("l", "d", "n")?;
            // x[i..i+n-d-1] = x[i+d..i+n-1]
            let shifted = self
                .add("i", "d", "a")?
                .and(&rest)?
                .and(&feq.rename(&[("j", "a"), ("n", "l")])?)?
                .exists_all(&["a", "l"])?;
            // x[i+n-d..i+n-1] = x[i..i+d-1]
            let wrapped = self
                .add("i", "l", "b")?
                .and(&rest)?
                .and(&feq.rename(&[("i", "b"), ("j", "i"), ("n", "d")])?)?
                .exists_all(&["b", "l"])?;
            let bounds = self.constant("d", 0)?.negate().and(&self.cmp(Cmp::Lt, "d", "n")?)?;
            bounds.and(&shifted)?.and(&wrapped)?.exists("d")
        })
    }

    /// `x[i..j]` is a power, over `(i, j)`.
    pub fn is_power(&self) -> Result<Relation> {
        // i + n = j + 1
        let one = self.constant("o", 1)?;
        let end = self.add("j", "o", "e")?.and(&one)?.exists("o")?;
        end.and(&self.add("i", "n", "e")?)?.exists("e")?.and(&self.power_len()?)?.exists("n")
    }

    /// `x[i..i+n-1]` is a power and the leftmost occurrence of that factor, over `(i, n)`.
    pub fn novel_power(&self) -> Result<Relation> {
        self.power_len()?.and(&self.novel()?)
    }
}

pub fn rel_add(k: u32) -> Result<Relation> {
    Relation::add(k, "a", "b", "c")
}

pub fn rel_compare(k: u32, cmp: Cmp) -> Result<Relation> {
    Relation::compare(k, cmp, "a", "b")
}

pub fn seq_eq_positions(x: &Dfao, u: &str, v: &str) -> Result<Relation> {
    Relation::seq_eq_positions(x, u, v)
}

pub fn seq_letter_at(x: &Dfao, u: &str, letter: u32) -> Result<Relation> {
    Relation::seq_letter_at(x, u, letter)
}

pub fn pred_factor_eq(x: &Dfao) -> Result<Relation> {
    PredicateCompiler::new(x).factor_eq()
}

pub fn pred_novel(x: &Dfao) -> Result<Relation> {
    PredicateCompiler::new(x).novel()
}

pub fn pred_is_power(x: &Dfao) -> Result<Relation> {
    PredicateCompiler::new(x).is_power()
}

pub fn pred_novel_power(x: &Dfao) -> Result<Relation> {
    PredicateCompiler::new(x).novel_power()
}
