use rustc_hash::FxHashMap;

use crate::automata::{Dfa, Dfao};
use crate::error::{Error, Result};
use crate::numeration::{DigitAlphabet, Symbol};
use crate::predicates::{Cmp, Relation};

use super::{BuildOptions, SyncFunction};

/// Relation over `(n, s, e, l)`: either `[e-l+1, e]` is the first maximal run
/// of positions `i >= s` with `pos(n, i)`, or `l = 0`, `e = s` and no such
/// position exists.
#[derive(Debug, Clone)]
pub struct BlockAutomaton {
    relation: Relation,
    done: Relation,
    step: Relation,
}

impl BlockAutomaton {
    /// `pos` must relate the variables `n` and `i`.
    pub fn build(pos: &Relation) -> Result<Self> {
        let mut names = pos.vars().to_vec();
        names.sort();
        if names != ["i", "n"] {
            return Err(Error::Malformed(format!("a position predicate relates n and i, got {:?}", pos.vars())));
        }
        let k = pos.base();
        let cap = pos.state_cap();
        let rel = |r: Result<Relation>| r.map(|r| r.with_state_cap(cap));
        let at = |v: &str| pos.rename(&[("i", v)]);

        // no position in [lo, hi)
        let none_between = |lo: &str, hi: &str| -> Result<Relation> {
            let window =
                rel(Relation::compare(k, Cmp::Le, lo, "i"))?.and(&rel(Relation::compare(k, Cmp::Lt, "i", hi))?)?;
            Ok(window.and(pos)?.exists("i")?.negate())
        };
        // every position in [lo, hi]
        let all_between = |lo: &str, hi: &str| -> Result<Relation> {
            let window =
                rel(Relation::compare(k, Cmp::Le, lo, "i"))?.and(&rel(Relation::compare(k, Cmp::Le, "i", hi))?)?;
            Ok(window.and(&pos.negate())?.exists("i")?.negate())
        };

        let succ = |a: &str, b: &str| -> Result<Relation> {
            rel(Relation::add(k, a, "one", b))?.and(&rel(Relation::constant(k, "one", 1))?)?.exists("one")
        };

        let run = rel(Relation::compare(k, Cmp::Le, "s", "b"))?
            .and(&none_between("s", "b")?)?
            .and(&at("b")?)?
            .and(&all_between("b", "e")?)?
            .and(&succ("e", "f")?)?
            .and(&at("f")?.negate())?
            .and(&rel(Relation::add(k, "b", "l", "f"))?)?
            .exists_all(&["b", "f"])?;

        let done = pos.and(&rel(Relation::compare(k, Cmp::Le, "s", "i"))?)?.exists("i")?.negate();
        let empty =
            done.and(&rel(Relation::compare(k, Cmp::Eq, "s", "e"))?)?.and(&rel(Relation::constant(k, "l", 0))?)?;
        let relation = run.or(&empty)?;

        // step(n, s, p, l): the next search position after the block found from s
        let after = rel(Relation::constant(k, "l", 0))?.and(&rel(Relation::compare(k, Cmp::Eq, "p", "e"))?)?.or(
            &rel(Relation::compare(k, Cmp::Le, "one", "l"))?
                .and(&rel(Relation::constant(k, "one", 1))?)?
                .exists("one")?
                .and(&succ("e", "p")?)?,
        )?;
        let step = relation.and(&after)?.exists("e")?;
        Ok(BlockAutomaton { relation, done: done.rename(&[("s", "p")])?, step })
    }

    /// The relation over `(e, l, n, s)`.
    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    /// `done(n, p)`: no position at or after `p`.
    pub fn exhausted(&self) -> &Relation {
        &self.done
    }

    /// `step(n, s, p, l)`: a block of length `l` is found from `s` and the
    /// search resumes at `p`. Exhaustion loops with `l = 0` and `p = s`.
    pub fn step(&self) -> &Relation {
        &self.step
    }

    pub fn num_states(&self) -> usize {
        self.relation.num_states()
    }
}

pub fn build_block_automaton(pos: &Relation) -> Result<BlockAutomaton> {
    BlockAutomaton::build(pos)
}

/// Result of the fixed-point iteration building a count function.
#[derive(Debug, Clone)]
pub struct CountBuild {
    /// Graph of `n -> |{i : pos(n, i)}|`, not yet adjusted at `n = 0`.
    pub function: SyncFunction,
    /// Number of steps until the reachable set stopped growing.
    pub iterations: usize,
    /// The reachable sets over `(acc, at, n)`, one per step, starting from the seed.
    pub chain: Vec<Relation>,
}

/// Counts the positions satisfying `pos(n, i)` by summing block lengths.
///
/// Tracks `(n, acc, at)`: `acc` positions have been counted and the search
/// resumes at `at`. Each step adds one block per `n`; the union is
/// cumulative so the chain is monotone, and the loop stops at the first
/// step adding nothing.
pub fn build_count_sync(pos: &Relation, opts: &BuildOptions) -> Result<CountBuild> {
    let pos = pos.clone().with_state_cap(opts.state_cap);
    let blocks = BlockAutomaton::build(&pos)?;
    count_from_blocks(&blocks, opts)
}

pub(crate) fn count_from_blocks(blocks: &BlockAutomaton, opts: &BuildOptions) -> Result<CountBuild> {
    let k = blocks.relation.base();
    let cap = opts.state_cap;
    let c = |v: &str, x: u64| Relation::constant(k, v, x).map(|r| r.with_state_cap(cap));
    let step = blocks.step.rename(&[("s", "q"), ("p", "at")])?;
    let sum = Relation::add(k, "a0", "l", "acc")?.with_state_cap(cap);

    let seed = c("acc", 0)?.and(&c("at", 0)?)?.and(&Relation::always(k, &["n"])?)?;
    let mut chain = vec![seed];
    loop {
        let current = chain.last().expect("seeded");
        if chain.len() > opts.iter_cap {
            return Err(Error::IterationCapExceeded { cap: opts.iter_cap });
        }
        let advanced =
            current.rename(&[("acc", "a0"), ("at", "q")])?.and(&step)?.and(&sum)?.exists_all(&["a0", "q", "l"])?;
        let grown = current.or(&advanced)?;
        if grown.equivalent(current) {
            break;
        }
        chain.push(grown);
    }
    let iterations = chain.len();
    let finished = chain.last().expect("seeded").and(&blocks.done.rename(&[("p", "at")])?)?.exists("at")?;
    let function = SyncFunction::from_relation(&finished, "n", "acc")?;
    Ok(CountBuild { function, iterations, chain })
}

/// A DFAO computing the number of maximal blocks of a position predicate,
/// together with the largest block count seen.
#[derive(Debug, Clone)]
pub struct BlockCountDfao {
    pub dfao: Dfao,
    pub bound: u32,
}

pub fn build_block_count_dfao(pos: &Relation, opts: &BuildOptions) -> Result<BlockCountDfao> {
    let pos = pos.clone().with_state_cap(opts.state_cap);
    let blocks = BlockAutomaton::build(&pos)?;
    block_count_from_blocks(&blocks, opts)
}

pub(crate) fn block_count_from_blocks(blocks: &BlockAutomaton, opts: &BuildOptions) -> Result<BlockCountDfao> {
    let k = blocks.relation.base();
    let cap = opts.state_cap;
    let nonempty = Relation::compare(k, Cmp::Lt, "z", "l")?.and(&Relation::constant(k, "z", 0)?)?.exists("z")?;
    let step = blocks.step.and(&nonempty)?.exists("l")?.rename(&[("s", "q"), ("p", "at")])?;
    let done = blocks.done.rename(&[("p", "at")])?;

    // layers[i](n): the positions split into exactly i blocks
    let mut frontier = Relation::constant(k, "at", 0)?.with_state_cap(cap).and(&Relation::always(k, &["n"])?)?;
    let mut layers = Vec::new();
    while !frontier.is_empty() {
        if layers.len() > opts.iter_cap {
            return Err(Error::IterationCapExceeded { cap: opts.iter_cap });
        }
        layers.push(frontier.and(&done)?.exists("at")?);
        frontier = frontier.rename(&[("at", "q")])?.and(&step)?.exists("q")?;
    }
    let bound = layers.iter().rposition(|l| !l.is_empty()).unwrap_or(0) as u32;
    let dfas: Vec<&Dfa> = layers.iter().map(|l| l.dfa()).collect();
    let dfao = index_product(k, &dfas, cap)?;
    Ok(BlockCountDfao { dfao, bound })
}

/// DFAO outputting the index of the (first) accepting machine, or 0 if none.
fn index_product(k: u32, dfas: &[&Dfa], cap: usize) -> Result<Dfao> {
    let alphabet = DigitAlphabet::new(k, 1)?;
    let size = alphabet.size();
    let start: Vec<u32> = dfas.iter().map(|d| d.initial()).collect();
    let mut index = FxHashMap::default();
    index.insert(start.clone(), 0u32);
    let mut states = vec![start];
    let mut delta = Vec::new();
    let mut outputs = Vec::new();
    let mut cursor = 0;
    while cursor < states.len() {
        let tuple = states[cursor].clone();
        cursor += 1;
        let out = tuple.iter().zip(dfas).position(|(&q, d)| d.is_accepting(q)).unwrap_or(0);
        outputs.push(out as u32);
        for s in 0..size as Symbol {
            let next: Vec<u32> = tuple.iter().zip(dfas).map(|(&q, d)| d.next(q, s)).collect();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if states.len() >= cap {
                        return Err(Error::StateCapExceeded { cap, during: "block count product" });
                    }
                    let id = states.len() as u32;
                    index.insert(next.clone(), id);
                    states.push(next);
                    id
                }
            };
            delta.push(id);
        }
    }
    Ok(Dfao::new(alphabet, 0, delta, outputs)?.minimize())
}
