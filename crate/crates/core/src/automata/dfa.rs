use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use super::minimize::RawMachine;
use crate::error::{Error, Result};
use crate::numeration::{encode_tuple, DigitAlphabet, Symbol, TrackWord};

/// Boolean connective used by the product construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoolOp {
    And,
    Or,
    AndNot,
    Xor,
}

impl BoolOp {
    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::And => a && b,
            BoolOp::Or => a || b,
            BoolOp::AndNot => a && !b,
            BoolOp::Xor => a != b,
        }
    }
}

/// Default bound on the number of states any single construction may create.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// A complete deterministic automaton over a multi-track digit alphabet,
/// reading most significant digits first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: DigitAlphabet,
    initial: u32,
    accepting: Vec<bool>,
    delta: Vec<u32>,
}

impl Dfa {
    /// `delta[q * |alphabet| + a]` is the successor of `q` on symbol `a`.
    pub fn new(alphabet: DigitAlphabet, initial: u32, accepting: Vec<bool>, delta: Vec<u32>) -> Result<Self> {
        let n = accepting.len();
        if n == 0 || initial as usize >= n {
            return Err(Error::Malformed("initial state out of range".into()));
        }
        if delta.len() != n * alphabet.size() {
            return Err(Error::Malformed(format!(
                "transition table has {} entries, expected {}",
                delta.len(),
                n * alphabet.size()
            )));
        }
        if delta.iter().any(|&t| t as usize >= n) {
            return Err(Error::Malformed("transition to an unknown state".into()));
        }
        Ok(Dfa { alphabet, initial, accepting, delta })
    }

    pub fn empty(alphabet: DigitAlphabet) -> Self {
        Dfa { alphabet, initial: 0, accepting: vec![false], delta: vec![0; alphabet.size()] }
    }

    pub fn universal(alphabet: DigitAlphabet) -> Self {
        Dfa { alphabet, initial: 0, accepting: vec![true], delta: vec![0; alphabet.size()] }
    }

    pub fn alphabet(&self) -> DigitAlphabet {
        self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> u32 {
        self.initial
    }

    pub fn is_accepting(&self, q: u32) -> bool {
        self.accepting[q as usize]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.num_states() as u32).filter(|&q| self.accepting[q as usize])
    }

    #[inline]
    pub fn next(&self, q: u32, sym: Symbol) -> u32 {
        self.delta[q as usize * self.alphabet.size() + sym as usize]
    }

    pub(crate) fn delta(&self) -> &[u32] {
        &self.delta
    }

    pub fn run(&self, symbols: &[Symbol]) -> u32 {
        symbols.iter().fold(self.initial, |q, &s| self.next(q, s))
    }

    pub fn accepts(&self, word: &TrackWord) -> Result<bool> {
        if word.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "word over {:?}, automaton over {:?}",
                word.alphabet(),
                self.alphabet
            )));
        }
        Ok(self.is_accepting(self.run(word.symbols())))
    }

    /// Membership of the canonical padded encoding of `values`.
    pub fn accepts_values(&self, values: &[u64]) -> Result<bool> {
        self.accepts(&encode_tuple(values, self.alphabet.base())?)
    }

    fn raw(&self) -> RawMachine {
        RawMachine {
            nsym: self.alphabet.size(),
            initial: self.initial,
            delta: self.delta.clone(),
            labels: self.accepting.iter().map(|&b| b as u32).collect(),
        }
    }

    /// Minimal complete automaton, states numbered in BFS order from the
    /// initial state with symbols taken in ascending order.
    pub fn minimize(&self) -> Dfa {
        let m = self.raw().minimize();
        Dfa {
            alphabet: self.alphabet,
            initial: m.initial,
            accepting: m.labels.iter().map(|&l| l == 1).collect(),
            delta: m.delta,
        }
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            alphabet: self.alphabet,
            initial: self.initial,
            accepting: self.accepting.iter().map(|&b| !b).collect(),
            delta: self.delta.clone(),
        }
    }

    /// Product automaton for `op`, minimized.
    pub fn boolean_combine(&self, other: &Dfa, op: BoolOp) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", self.alphabet, other.alphabet)));
        }
        Ok(product(self.alphabet, self, None, other, None, op, DEFAULT_STATE_CAP)?.minimize())
    }

    /// Language equality, decided by comparing canonical minimal forms.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", self.alphabet, other.alphabet)));
        }
        Ok(self.minimize() == other.minimize())
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_witness().is_none()
    }

    /// Shortest accepted word, least in symbol order among the shortest.
    pub fn shortest_witness(&self) -> Option<TrackWord> {
        let nsym = self.alphabet.size();
        let mut parent: Vec<Option<(u32, Symbol)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::new();
        seen[self.initial as usize] = true;
        queue.push_back(self.initial);
        while let Some(q) = queue.pop_front() {
            if self.is_accepting(q) {
                let mut symbols = Vec::new();
                let mut cur = q;
                while let Some((p, a)) = parent[cur as usize] {
                    symbols.push(a);
                    cur = p;
                }
                symbols.reverse();
                return Some(TrackWord::new(self.alphabet, symbols).expect("symbols from the alphabet"));
            }
            for a in 0..nsym as Symbol {
                let r = self.next(q, a);
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    parent[r as usize] = Some((q, a));
                    queue.push_back(r);
                }
            }
        }
        None
    }

    /// True iff prepending an all-zero tuple never changes membership.
    pub fn is_leading_zero_invariant(&self) -> bool {
        let m = self.minimize();
        m.next(m.initial, m.alphabet.zero()) == m.initial
    }

    /// Re-labels the automaton over `alphabet`, where `sym_map[b]` is the
    /// symbol of the current alphabet read when `b` is read. Used for track
    /// permutation and cylindrification.
    pub fn remap(&self, alphabet: DigitAlphabet, sym_map: &[Symbol]) -> Dfa {
        let nsym = alphabet.size();
        debug_assert_eq!(sym_map.len(), nsym);
        let old = self.alphabet.size();
        let mut delta = Vec::with_capacity(self.num_states() * nsym);
        for q in 0..self.num_states() {
            let row = &self.delta[q * old..(q + 1) * old];
            delta.extend(sym_map.iter().map(|&s| row[s as usize]));
        }
        Dfa { alphabet, initial: self.initial, accepting: self.accepting.clone(), delta }
    }

    /// Reorders tracks: track `t` of the result is track `order[t]` of `self`.
    pub fn permute_tracks(&self, order: &[usize]) -> Result<Dfa> {
        let t = self.alphabet.tracks();
        let mut check = order.to_vec();
        check.sort_unstable();
        if check != (0..t).collect::<Vec<_>>() {
            return Err(Error::Malformed(format!("{order:?} is not a permutation of {t} tracks")));
        }
        let map: Vec<Symbol> = (0..self.alphabet.size() as Symbol)
            .map(|b| {
                let digits = self.alphabet.unpack(b);
                let mut old = vec![0; t];
                for (new_t, &old_t) in order.iter().enumerate() {
                    old[old_t] = digits[new_t];
                }
                self.alphabet.pack(&old).expect("digits in range")
            })
            .collect();
        Ok(self.remap(self.alphabet, &map))
    }

    /// Number of accepted words without a leading all-zero symbol, `None`
    /// when infinite. For a leading-zero-invariant automaton this counts the
    /// accepted tuples.
    pub fn count_canonical(&self) -> Option<u64> {
        let n = self.num_states();
        let nsym = self.alphabet.size();
        // co-reachable states
        let mut live = self.accepting.clone();
        loop {
            let mut changed = false;
            for q in 0..n {
                if !live[q] && (0..nsym).any(|a| live[self.delta[q * nsym + a] as usize]) {
                    live[q] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        // paths counted from each live state, with cycle detection
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Fresh,
            Open,
            Done(u64),
        }
        fn count(q: usize, dfa: &Dfa, live: &[bool], memo: &mut [Mark]) -> Option<u64> {
            match memo[q] {
                Mark::Done(c) => return Some(c),
                Mark::Open => return None,
                Mark::Fresh => {}
            }
            memo[q] = Mark::Open;
            let mut total = dfa.accepting[q] as u64;
            for a in 0..dfa.alphabet.size() as Symbol {
                let r = dfa.next(q as u32, a) as usize;
                if live[r] {
                    total = total.saturating_add(count(r, dfa, live, memo)?);
                }
            }
            memo[q] = Mark::Done(total);
            Some(total)
        }
        let mut memo = vec![Mark::Fresh; n];
        let q0 = self.initial as usize;
        let mut total = self.accepting[q0] as u64;
        for a in 1..nsym as Symbol {
            let r = self.next(self.initial, a) as usize;
            if live[r] {
                total = total.saturating_add(count(r, self, &live, &mut memo)?);
            }
        }
        Some(total)
    }
}

/// Reachable product of `a` and `b` over `alphabet`; the optional maps send a
/// symbol of `alphabet` to the symbol each operand reads.
pub(crate) fn product(
    alphabet: DigitAlphabet,
    a: &Dfa,
    amap: Option<&[Symbol]>,
    b: &Dfa,
    bmap: Option<&[Symbol]>,
    op: BoolOp,
    cap: usize,
) -> Result<Dfa> {
    let nsym = alphabet.size();
    let mut index: FxHashMap<(u32, u32), u32> = FxHashMap::default();
    let mut pairs = vec![(a.initial, b.initial)];
    index.insert((a.initial, b.initial), 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        for s in 0..nsym {
            let sa = amap.map_or(s as Symbol, |m| m[s]);
            let sb = bmap.map_or(s as Symbol, |m| m[s]);
            let key = (a.next(p, sa), b.next(q, sb));
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    let id = pairs.len() as u32;
                    if pairs.len() >= cap {
                        return Err(Error::StateCapExceeded { cap, during: "product" });
                    }
                    index.insert(key, id);
                    pairs.push(key);
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let accepting = pairs.iter().map(|&(p, q)| op.apply(a.is_accepting(p), b.is_accepting(q))).collect();
    Ok(Dfa { alphabet, initial: 0, accepting, delta })
}
