use super::dfa::Dfa;
use super::minimize::RawMachine;
use crate::error::{Error, Result};
use crate::numeration::{encode_base_k, DigitAlphabet, Symbol};

/// Deterministic automaton with an output letter on every state. Reading
/// `(n)_k` lands in a state whose output is the `n`-th term of the sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfao {
    alphabet: DigitAlphabet,
    initial: u32,
    delta: Vec<u32>,
    outputs: Vec<u32>,
}

impl Dfao {
    pub fn new(alphabet: DigitAlphabet, initial: u32, delta: Vec<u32>, outputs: Vec<u32>) -> Result<Self> {
        // reuse the acceptor validation for the transition table
        Dfa::new(alphabet, initial, vec![false; outputs.len()], delta.clone())?;
        Ok(Dfao { alphabet, initial, delta, outputs })
    }

    pub fn alphabet(&self) -> DigitAlphabet {
        self.alphabet
    }

    pub fn base(&self) -> u32 {
        self.alphabet.base()
    }

    pub fn num_states(&self) -> usize {
        self.outputs.len()
    }

    pub fn initial(&self) -> u32 {
        self.initial
    }

    #[inline]
    pub fn next(&self, q: u32, sym: Symbol) -> u32 {
        self.delta[q as usize * self.alphabet.size() + sym as usize]
    }

    pub fn output_of(&self, q: u32) -> u32 {
        self.outputs[q as usize]
    }

    pub fn outputs(&self) -> &[u32] {
        &self.outputs
    }

    /// Sorted distinct output letters of reachable states.
    pub fn letters(&self) -> Vec<u32> {
        let min = self.minimize();
        let mut l = min.outputs.clone();
        l.sort_unstable();
        l.dedup();
        l
    }

    pub fn run(&self, symbols: &[Symbol]) -> u32 {
        symbols.iter().fold(self.initial, |q, &s| self.next(q, s))
    }

    /// The `n`-th term, reading `(n)_k` on a single-track automaton.
    pub fn output(&self, n: u64) -> u32 {
        assert_eq!(self.alphabet.tracks(), 1, "sequence automata read one track");
        let q = self.run(&encode_base_k(n, self.alphabet.base()));
        self.outputs[q as usize]
    }

    /// Materializes the first `len` terms, walking the automaton once per term.
    pub fn prefix(&self, len: usize) -> Vec<u32> {
        (0..len as u64).map(|n| self.output(n)).collect()
    }

    /// Acceptor for the states whose output is `letter`.
    pub fn letter_acceptor(&self, letter: u32) -> Result<Dfa> {
        if !self.letters().contains(&letter) {
            return Err(Error::UnknownLetter(letter));
        }
        Dfa::new(self.alphabet, self.initial, self.outputs.iter().map(|&o| o == letter).collect(), self.delta.clone())
    }

    pub fn minimize(&self) -> Dfao {
        let m = RawMachine {
            nsym: self.alphabet.size(),
            initial: self.initial,
            delta: self.delta.clone(),
            labels: self.outputs.clone(),
        }
        .minimize();
        Dfao { alphabet: self.alphabet, initial: m.initial, delta: m.delta, outputs: m.labels }
    }

    /// Checks that leading zeros never change the output; on failure returns
    /// an `n` whose output changes under zero padding.
    pub fn check_leading_zeros(&self) -> Result<()> {
        let m = self.minimize();
        if m.next(m.initial, 0) == m.initial {
            return Ok(());
        }
        // find a witness by breadth-first search over the pair (q0, delta(q0, 0))
        let k = self.alphabet.base();
        let mut seen = std::collections::HashSet::new();
        let mut queue = std::collections::VecDeque::new();
        queue.push_back((m.initial, m.next(m.initial, 0), 0u64));
        while let Some((p, q, n)) = queue.pop_front() {
            if m.outputs[p as usize] != m.outputs[q as usize] {
                return Err(Error::LeadingZeros(n));
            }
            if !seen.insert((p, q)) {
                continue;
            }
            for d in 0..k {
                if n == 0 && d == 0 {
                    continue;
                }
                queue.push_back((m.next(p, d), m.next(q, d), n * k as u64 + d as u64));
            }
        }
        // unreachable for a minimal automaton; report padding of the empty word
        Err(Error::LeadingZeros(0))
    }

    pub(crate) fn delta(&self) -> &[u32] {
        &self.delta
    }
}
