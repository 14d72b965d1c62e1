use rustc_hash::FxHashMap;

use super::dfa::Dfa;
use crate::error::{Error, Result};
use crate::numeration::{DigitAlphabet, Symbol, TrackWord};

/// Nondeterministic automaton, the intermediate of projection.
#[derive(Debug, Clone)]
pub struct Nfa {
    alphabet: DigitAlphabet,
    initial: Vec<u32>,
    accepting: Vec<bool>,
    // successors of (q, a) are succ[start[q * nsym + a]..start[q * nsym + a + 1]]
    start: Vec<u32>,
    succ: Vec<u32>,
}

impl Nfa {
    /// Forgets `track` of `dfa`: reading a symbol of the remaining tracks
    /// moves to every state reachable by some digit on the erased track.
    pub fn erase_track(dfa: &Dfa, track: usize) -> Result<Nfa> {
        let from = dfa.alphabet();
        let tracks = from.tracks();
        if tracks < 2 {
            return Err(Error::SingleTrack);
        }
        if track >= tracks {
            return Err(Error::TrackOutOfRange { index: track, tracks });
        }
        let alphabet = DigitAlphabet::new(from.base(), tracks - 1)?;
        let k = from.base();
        // symbol of the full alphabet for (reduced symbol, erased digit)
        let expand: Vec<Vec<Symbol>> = (0..alphabet.size() as Symbol)
            .map(|s| {
                let digits = alphabet.unpack(s);
                (0..k)
                    .map(|d| {
                        let mut full = digits.clone();
                        full.insert(track, d);
                        from.pack(&full).expect("digits in range")
                    })
                    .collect()
            })
            .collect();
        let n = dfa.num_states();
        let mut start = Vec::with_capacity(n * alphabet.size() + 1);
        let mut succ = Vec::new();
        start.push(0);
        let mut buf = Vec::with_capacity(k as usize);
        for q in 0..n as u32 {
            for syms in &expand {
                buf.clear();
                buf.extend(syms.iter().map(|&s| dfa.next(q, s)));
                buf.sort_unstable();
                buf.dedup();
                succ.extend_from_slice(&buf);
                start.push(succ.len() as u32);
            }
        }
        Ok(Nfa {
            alphabet,
            initial: vec![dfa.initial()],
            accepting: (0..n as u32).map(|q| dfa.is_accepting(q)).collect(),
            start,
            succ,
        })
    }

    pub fn alphabet(&self) -> DigitAlphabet {
        self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    fn successors(&self, q: u32, a: Symbol) -> &[u32] {
        let i = q as usize * self.alphabet.size() + a as usize;
        &self.succ[self.start[i] as usize..self.start[i + 1] as usize]
    }

    /// Adds to the initial set every state reachable by reading all-zero
    /// tuples, so that a word is accepted whenever some zero-padding of it
    /// was accepted before.
    pub fn close_leading_zeros(&mut self) {
        let mut seen = vec![false; self.num_states()];
        let mut stack = self.initial.clone();
        for &q in &stack {
            seen[q as usize] = true;
        }
        while let Some(q) = stack.pop() {
            for &r in self.successors(q, self.alphabet.zero()) {
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    stack.push(r);
                }
            }
        }
        self.initial = (0..self.num_states() as u32).filter(|&q| seen[q as usize]).collect();
    }

    pub fn accepts(&self, word: &TrackWord) -> Result<bool> {
        if word.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", word.alphabet(), self.alphabet)));
        }
        let mut current = self.initial.clone();
        for &a in word.symbols() {
            let mut next: Vec<u32> = current.iter().flat_map(|&q| self.successors(q, a).iter().copied()).collect();
            next.sort_unstable();
            next.dedup();
            current = next;
        }
        Ok(current.iter().any(|&q| self.accepting[q as usize]))
    }

    /// Subset construction; fails once more than `cap` subsets are created.
    pub fn determinize(&self, cap: usize) -> Result<Dfa> {
        let nsym = self.alphabet.size();
        let mut index: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
        let mut subsets: Vec<Vec<u32>> = Vec::new();
        let mut init = self.initial.clone();
        init.sort_unstable();
        init.dedup();
        index.insert(init.clone(), 0);
        subsets.push(init);
        let mut delta = Vec::new();
        let mut stamp = vec![u32::MAX; self.num_states()];
        let mut epoch = 0u32;
        let mut buf = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            for a in 0..nsym as Symbol {
                buf.clear();
                for &q in &subsets[i] {
                    for &r in self.successors(q, a) {
                        if stamp[r as usize] != epoch {
                            stamp[r as usize] = epoch;
                            buf.push(r);
                        }
                    }
                }
                epoch = epoch.wrapping_add(1);
                if epoch == u32::MAX {
                    stamp.iter_mut().for_each(|s| *s = u32::MAX);
                    epoch = 0;
                }
                buf.sort_unstable();
                let id = match index.get(&buf) {
                    Some(&id) => id,
                    None => {
                        if subsets.len() >= cap {
                            return Err(Error::StateCapExceeded { cap, during: "subset construction" });
                        }
                        let id = subsets.len() as u32;
                        index.insert(buf.clone(), id);
                        subsets.push(buf.clone());
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accepting = subsets.iter().map(|s| s.iter().any(|&q| self.accepting[q as usize])).collect();
        Dfa::new(self.alphabet, 0, accepting, delta)
    }
}

/// Existential projection of `track`: erase it, close under leading zeros,
/// determinize and minimize.
pub fn project_and_determinize(dfa: &Dfa, track: usize, cap: usize) -> Result<Dfa> {
    let mut nfa = Nfa::erase_track(dfa, track)?;
    nfa.close_leading_zeros();
    Ok(nfa.determinize(cap)?.minimize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::dfa::DEFAULT_STATE_CAP;
    use crate::numeration::encode_tuple;

    /// (n, m) with n = 2m, as a two-track automaton: n's digits are m's
    /// digits shifted left by one.
    fn doubles() -> Dfa {
        // state = digit of n just read, which must reappear as m's next digit; 2 = dead
        let al = DigitAlphabet::new(2, 2).unwrap();
        let mut delta = vec![0; 3 * 4];
        for p in 0..2u32 {
            for s in 0..4u32 {
                let (n, m) = (al.digit(s, 0), al.digit(s, 1));
                delta[(p * 4 + s) as usize] = if m == p { n } else { 2 };
            }
        }
        for s in 0..4 {
            delta[8 + s] = 2;
        }
        Dfa::new(al, 0, vec![true, false, false], delta).unwrap()
    }

    #[test]
    fn doubles_relation_is_correct() {
        let d = doubles();
        for n in 0..40u64 {
            for m in 0..40u64 {
                assert_eq!(d.accepts_values(&[n, m]).unwrap(), n == 2 * m, "{n} {m}");
            }
        }
    }

    #[test]
    fn projection_gives_even_numbers() {
        let evens = project_and_determinize(&doubles(), 1, DEFAULT_STATE_CAP).unwrap();
        for n in 0..=64u64 {
            assert_eq!(evens.accepts_values(&[n]).unwrap(), n % 2 == 0);
        }
        assert!(evens.is_leading_zero_invariant());
    }

    #[test]
    fn projection_needs_leading_zero_closure() {
        // (n, m) with m = 2n: the witness m is longer than n
        let d = doubles().permute_tracks(&[1, 0]).unwrap();
        let all = project_and_determinize(&d, 1, DEFAULT_STATE_CAP).unwrap();
        for n in 0..64u64 {
            assert!(all.accepts_values(&[n]).unwrap());
        }
        let w = encode_tuple(&[5], 2).unwrap();
        assert!(all.accepts(&w.padded(3)).unwrap());
    }

    #[test]
    fn projection_errors_and_empty() {
        let one = Dfa::universal(DigitAlphabet::new(2, 1).unwrap());
        assert!(matches!(project_and_determinize(&one, 0, 10), Err(Error::SingleTrack)));
        let empty = Dfa::empty(DigitAlphabet::new(2, 3).unwrap());
        assert!(project_and_determinize(&empty, 2, 10).unwrap().is_empty());
        assert!(matches!(project_and_determinize(&empty, 3, 10), Err(Error::TrackOutOfRange { .. })));
    }

    #[test]
    fn nfa_membership_matches_determinization() {
        let nfa = Nfa::erase_track(&doubles(), 0).unwrap();
        let dfa = nfa.determinize(DEFAULT_STATE_CAP).unwrap();
        for m in 0..30u64 {
            for pad in 0..3 {
                let w = encode_tuple(&[m], 2).unwrap().padded(pad);
                assert_eq!(nfa.accepts(&w).unwrap(), dfa.accepts(&w).unwrap());
            }
        }
    }

    #[test]
    fn subset_cap_is_enforced() {
        let nfa = Nfa::erase_track(&doubles(), 0).unwrap();
        assert!(matches!(nfa.determinize(1), Err(Error::StateCapExceeded { .. })));
    }
}
