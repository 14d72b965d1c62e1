use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::words::{is_power, is_unbordered};
use crate::automata::Dfao;
use crate::error::{Error, Result};

/// Hard cap on materialized prefix length.
pub const PREFIX_CAP: usize = 1 << 22;

type Generator = Arc<dyn Fn(usize) -> Vec<u32> + Send + Sync>;

/// A source of arbitrarily long prefixes of an infinite word.
#[derive(Clone)]
pub struct PrefixView {
    name: String,
    source: Source,
}

#[derive(Clone)]
enum Source {
    Automaton(Dfao),
    Function(Generator),
}

impl fmt::Debug for PrefixView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrefixView").field("name", &self.name).finish()
    }
}

impl PrefixView {
    pub fn from_dfao(name: &str, dfao: &Dfao) -> Self {
        PrefixView { name: name.to_string(), source: Source::Automaton(dfao.clone()) }
    }

    /// `generate(len)` must return the first `len` letters.
    pub fn from_fn(name: &str, generate: impl Fn(usize) -> Vec<u32> + Send + Sync + 'static) -> Self {
        PrefixView { name: name.to_string(), source: Source::Function(Arc::new(generate)) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prefix(&self, len: usize) -> Vec<u32> {
        match &self.source {
            Source::Automaton(d) => d.prefix(len),
            Source::Function(g) => g(len),
        }
    }
}

/// Novel-occurrence positions of length-`n` factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NovelSet {
    pub n: usize,
    pub positions: Vec<usize>,
    pub block_count: usize,
}

impl NovelSet {
    fn new(n: usize, positions: Vec<usize>) -> Self {
        let block_count = positions.windows(2).filter(|w| w[1] != w[0] + 1).count() + !positions.is_empty() as usize;
        NovelSet { n, positions, block_count }
    }

    /// Maximal runs as inclusive `(start, end)` pairs.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.positions {
            match out.last_mut() {
                Some((_, end)) if *end + 1 == p => *end = p,
                _ => out.push((p, p)),
            }
        }
        out
    }

    pub fn contains(&self, i: usize) -> bool {
        self.positions.binary_search(&i).is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorKind {
    Factors,
    Powers,
    Primitive,
    Unbordered,
}

/// Novel-occurrence sets for every length `0..=nmax`, computed on a prefix
/// long enough that doubling it changes nothing.
#[derive(Debug, Clone)]
pub struct FactorTable {
    word: Vec<u32>,
    stable_len: usize,
    novel: Vec<Vec<usize>>,
}

/// Leftmost-occurrence positions for each length, by refining factor classes
/// one letter at a time.
fn sweep(word: &[u32], nmax: usize) -> Vec<Vec<usize>> {
    let len = word.len();
    let mut class = vec![0u32; len + 1];
    let mut out = vec![vec![0]];
    let mut map: FxHashMap<(u32, u32), u32> = FxHashMap::default();
    for n in 1..=nmax.min(len) {
        map.clear();
        let mut novel = Vec::new();
        let count = len + 1 - n;
        for i in 0..count {
            let key = (class[i], word[i + n - 1]);
            let next = map.len() as u32;
            let c = *map.entry(key).or_insert(next);
            if c == next {
                novel.push(i);
            }
            class[i] = c;
        }
        class.truncate(count);
        out.push(novel);
    }
    out
}

impl FactorTable {
    pub fn build(view: &PrefixView, nmax: usize) -> Result<Self> {
        let mut len = 32 * (nmax + 1);
        loop {
            if 2 * len > PREFIX_CAP {
                return Err(Error::Instability {
                    what: format!("factors of length <= {nmax} of {}", view.name()),
                    len,
                    cap: PREFIX_CAP,
                });
            }
            let word = view.prefix(2 * len);
            let novel = sweep(&word, nmax);
            let stable = novel.iter().enumerate().all(|(n, pos)| pos.last().is_none_or(|&i| i + n <= len));
            if stable && novel.len() == nmax + 1 {
                return Ok(FactorTable { word, stable_len: len, novel });
            }
            len *= 2;
        }
    }

    pub fn nmax(&self) -> usize {
        self.novel.len() - 1
    }

    /// Length `L` at which the counts agreed with those at `2L`.
    pub fn stable_len(&self) -> usize {
        self.stable_len
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn novel_set(&self, n: usize) -> NovelSet {
        NovelSet::new(n, self.novel[n].clone())
    }

    pub fn factors(&self, n: usize) -> impl Iterator<Item = &[u32]> + '_ {
        self.novel[n].iter().map(move |&i| &self.word[i..i + n])
    }

    pub fn count(&self, n: usize, kind: FactorKind) -> u64 {
        let c = match kind {
            FactorKind::Factors => self.novel[n].len(),
            FactorKind::Powers => self.factors(n).filter(|f| is_power(f)).count(),
            FactorKind::Primitive => self.factors(n).filter(|f| !is_power(f)).count(),
            FactorKind::Unbordered => self.factors(n).filter(|f| is_unbordered(f)).count(),
        };
        c as u64
    }

    /// Least `i` such that every length-`n` factor occurs in `x[0..i+n-1]`.
    pub fn appearance(&self, n: usize) -> u64 {
        *self.novel[n].last().expect("position 0 is always novel") as u64
    }
}

pub fn novel_set_naive(view: &PrefixView, n: usize) -> Result<NovelSet> {
    Ok(FactorTable::build(view, n)?.novel_set(n))
}

pub fn count_naive(view: &PrefixView, n: usize, kind: FactorKind) -> Result<u64> {
    Ok(FactorTable::build(view, n)?.count(n, kind))
}

pub fn appearance_naive(view: &PrefixView, n: usize) -> Result<u64> {
    Ok(FactorTable::build(view, n)?.appearance(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::words::binary_concatenation;
    use crate::sequences::{builtin, thue_morse_dfao};

    fn tm() -> PrefixView {
        PrefixView::from_dfao("thue_morse", &thue_morse_dfao())
    }

    /// Independent route: distinct slices and leftmost occurrences by hashing.
    fn slow_novel(word: &[u32], n: usize) -> Vec<usize> {
        let mut seen = std::collections::HashSet::new();
        (0..=word.len() - n).filter(|&i| seen.insert(&word[i..i + n])).collect()
    }

    #[test]
    fn sweep_matches_slice_hashing() {
        let word = thue_morse_dfao().prefix(300);
        let fast = sweep(&word, 40);
        for (n, novel) in fast.iter().enumerate() {
            assert_eq!(*novel, slow_novel(&word, n), "n = {n}");
        }
    }

    #[test]
    fn thue_morse_examples() {
        let e1 = novel_set_naive(&tm(), 1).unwrap();
        assert_eq!(e1.positions, vec![0, 1]);
        assert_eq!(e1.block_count, 1);
        assert_eq!(novel_set_naive(&tm(), 6).unwrap().block_count, 5);
        assert_eq!(count_naive(&tm(), 4, FactorKind::Factors).unwrap(), 10);
        assert_eq!(count_naive(&tm(), 2, FactorKind::Powers).unwrap(), 2);
        assert_eq!(appearance_naive(&tm(), 0).unwrap(), 0);
        assert_eq!(appearance_naive(&tm(), 1).unwrap(), 1);
        assert_eq!(appearance_naive(&tm(), 2).unwrap(), 5);
    }

    #[test]
    fn powers_of_two_unbordered() {
        let c = builtin("powers_of_two_char").unwrap();
        let view = PrefixView::from_dfao("c", &c.dfao);
        assert_eq!(count_naive(&view, 5, FactorKind::Unbordered).unwrap(), 4);
    }

    #[test]
    fn binary_concatenation_blocks() {
        let w = PrefixView::from_fn("w", binary_concatenation);
        assert!(novel_set_naive(&w, 7).unwrap().block_count >= 5);
    }

    #[test]
    fn blocks_of_a_set() {
        let s = NovelSet::new(3, vec![0, 1, 2, 5, 7, 8]);
        assert_eq!(s.block_count, 3);
        assert_eq!(s.blocks(), vec![(0, 2), (5, 5), (7, 8)]);
        assert_eq!(NovelSet::new(0, vec![]).block_count, 0);
    }

    #[test]
    fn instability_is_reported() {
        // the starting length 32 * (nmax + 1) already exceeds the cap
        let view = PrefixView::from_fn("zeros", |len| vec![0; len]);
        assert!(matches!(FactorTable::build(&view, PREFIX_CAP / 32), Err(Error::Instability { .. })));
    }
}
